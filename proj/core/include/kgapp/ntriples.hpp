#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/error.hpp"
#include "kgapp/rdf.hpp"

namespace kgapp {

struct RdfParseOptions {
  // Blank node `_:x` becomes `<urn:kgapp:bnode:{scope}:x>`, keeping terms
  // to IRIs and literals and making labels stable per source.
  std::string blank_node_scope;
  // How parse errors are located: line number (files) or byte offset
  // (network response bodies).
  ParseError::Unit error_unit = ParseError::Unit::kLine;
};

std::vector<Triple> ParseNTriples(std::string_view document, const RdfParseOptions& options = {});
std::vector<Triple> LoadNTriples(const std::filesystem::path& path,
                                 const RdfParseOptions& options = {});

// Turtle subset: @prefix/@base (and SPARQL-style PREFIX/BASE), prefixed
// names, `a`, predicate lists (`;`), object lists (`,`), typed and language
// tagged literals, long strings, numeric and boolean shorthands, labelled
// blank nodes. Anonymous `[]` nodes and collections are rejected.
std::vector<Triple> ParseTurtle(std::string_view document, const RdfParseOptions& options = {});

}  // namespace kgapp
