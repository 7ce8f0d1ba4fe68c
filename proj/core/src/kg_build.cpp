#include "kgapp/kg_build.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace kgapp {

namespace {

Resolution ResolveWithRedirect(const std::string& key, ConceptResolver& resolver,
                               bool follow_redirects) {
  Resolution r = resolver.Resolve(key);
  if (!r.resolved() || !follow_redirects) return r;
  const std::string base = resolver.base_iri();
  const std::string iri = ConceptIri(base, key);
  std::vector<std::string> targets;
  for (const auto& t : r.triples) {
    if (t.subject.value == iri && t.predicate.value == vocab::kDboRedirects && t.object.is_iri() &&
        t.object.value.starts_with(base)) {
      targets.push_back(t.object.value.substr(base.size()));
    }
  }
  for (const auto& target : targets) {
    if (target == key) continue;
    Resolution hop = resolver.Resolve(target);
    if (hop.resolved()) {
      r.triples.insert(r.triples.end(), hop.triples.begin(), hop.triples.end());
    }
  }
  return r;
}

}  // namespace

BuildResult BuildGraph(const ConceptSet& concepts, ConceptResolver& resolver,
                       const BuildOptions& options) {
  const auto& keys = concepts.concepts;
  std::vector<Resolution> results(keys.size());

  const std::size_t workers = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(keys.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      results[i] = ResolveWithRedirect(keys[i], resolver, options.follow_redirects);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < keys.size(); i = next++) {
          results[i] = ResolveWithRedirect(keys[i], resolver, options.follow_redirects);
        }
      });
    }
  }

  BuildResult out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (results[i].resolved()) {
      out.graph.InsertAll(results[i].triples);
    } else {
      out.unresolved.push_back({keys[i], results[i].detail});
    }
  }
  if (!keys.empty() && out.unresolved.size() == keys.size()) {
    out.warnings.push_back("essay " + concepts.essay_id + ": no concept resolved; graph is empty");
  }
  return out;
}

}  // namespace kgapp
