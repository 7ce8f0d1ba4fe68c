#pragma once

#include <string>
#include <vector>

#include "kgapp/graph.hpp"
#include "kgapp/preprocess.hpp"
#include "kgapp/resolver.hpp"

namespace kgapp {

struct BuildOptions {
  // Concurrent resolver calls per essay.
  std::size_t parallelism = 1;
  // Union in the description of a `dbo:wikiPageRedirects` target, one hop.
  bool follow_redirects = true;
};

struct Unresolved {
  std::string key;
  std::string detail;
};

struct BuildResult {
  KnowledgeGraph graph;
  std::vector<Unresolved> unresolved;
  // Essay-level problems only; per-concept misses live in `unresolved`.
  std::vector<std::string> warnings;
};

BuildResult BuildGraph(const ConceptSet& concepts, ConceptResolver& resolver,
                       const BuildOptions& options = {});

}  // namespace kgapp
