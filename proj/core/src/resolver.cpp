#include "kgapp/resolver.hpp"

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/ntriples.hpp"

namespace kgapp {

std::string ConceptIri(std::string_view base_iri, std::string_view concept_key) {
  return std::string(base_iri) + std::string(concept_key);
}

TripleCache::TripleCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TripleCache::PathFor(const std::string& concept_key) const {
  return dir_ / (io::PercentEncode(concept_key) + ".nt");
}

std::optional<std::vector<Triple>> TripleCache::Get(const std::string& concept_key) const {
  auto path = PathFor(concept_key);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  RdfParseOptions options;
  options.blank_node_scope = io::PercentEncode(concept_key);
  try {
    return LoadNTriples(path, options);
  } catch (const ParseError& e) {
    throw ParseError(std::string("cache file ") + path.string() + ": " + e.what(), e.unit(),
                     e.position());
  }
}

void TripleCache::Put(const std::string& concept_key, const std::vector<Triple>& triples) {
  std::lock_guard lock(KeyMutex(concept_key));
  io::WriteFileAtomic(PathFor(concept_key), SerializeNTriples(triples));
}

std::mutex& TripleCache::KeyMutex(const std::string& concept_key) {
  std::lock_guard lock(map_mutex_);
  auto& slot = key_mutexes_[concept_key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

CacheOnlyResolver::CacheOnlyResolver(std::filesystem::path cache_dir, std::string base_iri)
    : cache_(std::move(cache_dir)), base_iri_(std::move(base_iri)) {}

Resolution CacheOnlyResolver::Resolve(const std::string& concept_key) {
  Resolution r;
  if (auto triples = cache_.Get(concept_key)) {
    r.status = Resolution::Status::kResolved;
    r.triples = std::move(*triples);
  } else {
    r.detail = "offline: no cached description";
  }
  return r;
}

void MapResolver::Add(const std::string& concept_key, std::vector<Triple> triples) {
  descriptions_[concept_key] = std::move(triples);
}

Resolution MapResolver::Resolve(const std::string& concept_key) {
  Resolution r;
  if (auto it = descriptions_.find(concept_key); it != descriptions_.end()) {
    r.status = Resolution::Status::kResolved;
    r.triples = it->second;
  } else {
    r.detail = "unknown concept";
  }
  return r;
}

}  // namespace kgapp
