#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgapp/rdf.hpp"

namespace kgapp {

std::string ConceptIri(std::string_view base_iri, std::string_view concept_key);

struct Resolution {
  enum class Status { kResolved, kUnresolved };

  Status status = Status::kUnresolved;
  std::vector<Triple> triples;
  // Why the concept is unresolved (fetch error, offline miss, ...).
  std::string detail;

  bool resolved() const noexcept { return status == Status::kResolved; }
};

// Source of per-concept descriptions. Implementations must be safe to call
// from several threads at once.
class ConceptResolver {
 public:
  virtual ~ConceptResolver() = default;
  virtual Resolution Resolve(const std::string& concept_key) = 0;
  virtual std::string base_iri() const = 0;
};

// One N-Triples file per concept key, named by its percent-encoding. An
// empty file records an empty description (e.g. HTTP 404).
class TripleCache {
 public:
  explicit TripleCache(std::filesystem::path dir);

  std::filesystem::path PathFor(const std::string& concept_key) const;
  std::optional<std::vector<Triple>> Get(const std::string& concept_key) const;
  void Put(const std::string& concept_key, const std::vector<Triple>& triples);
  const std::filesystem::path& dir() const noexcept { return dir_; }

  // Writers to the same key are serialized; readers see whole files only.
  std::mutex& KeyMutex(const std::string& concept_key);

 private:
  std::filesystem::path dir_;
  std::mutex map_mutex_;
  std::unordered_map<std::string, std::unique_ptr<std::mutex>> key_mutexes_;
};

// Offline resolver over a cache directory. A miss leaves the concept
// unresolved; the network is never touched.
class CacheOnlyResolver final : public ConceptResolver {
 public:
  CacheOnlyResolver(std::filesystem::path cache_dir, std::string base_iri);
  Resolution Resolve(const std::string& concept_key) override;
  std::string base_iri() const override { return base_iri_; }

 private:
  TripleCache cache_;
  std::string base_iri_;
};

// In-memory resolver, used for tests and programmatic fixtures.
class MapResolver final : public ConceptResolver {
 public:
  explicit MapResolver(std::string base_iri = std::string(vocab::kDbpediaResource))
      : base_iri_(std::move(base_iri)) {}
  void Add(const std::string& concept_key, std::vector<Triple> triples);
  Resolution Resolve(const std::string& concept_key) override;
  std::string base_iri() const override { return base_iri_; }

 private:
  std::string base_iri_;
  std::unordered_map<std::string, std::vector<Triple>> descriptions_;
};

}  // namespace kgapp
