#pragma once

#include <chrono>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/rdf.hpp"
#include "kgapp/resolver.hpp"

namespace kgapp {

struct SparqlOptions {
  // e.g. https://dbpedia.org/sparql
  std::string endpoint;
  std::string base_iri = std::string(vocab::kDbpediaResource);
  double requests_per_second = 2.0;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{30};
  bool use_post = false;
};

// Spaces requests at least 1/rate apart across all callers.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void Acquire();

 private:
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
  std::mutex mutex_;
};

class SparqlClient {
 public:
  explicit SparqlClient(SparqlOptions options);

  // DESCRIBE <base_iri + key>. HTTP 404 yields an empty set. Transport
  // failures and 5xx responses are retried with exponential backoff, then
  // surface as FetchError. Malformed bodies raise ParseError with a byte
  // offset.
  std::vector<Triple> Describe(const std::string& concept_key);

  static std::string DescribeQuery(std::string_view iri);
  const SparqlOptions& options() const noexcept { return options_; }

 private:
  SparqlOptions options_;
  std::string scheme_host_port_;
  std::string path_;
  RateLimiter limiter_;
};

// Parses a DESCRIBE response body by its media type, falling back from
// N-Triples to the Turtle subset when the type is unknown.
std::vector<Triple> ParseDescribeBody(std::string_view body, std::string_view content_type,
                                      std::string_view blank_node_scope);

// Cache hit short-circuits the network; a fetched description (possibly
// empty) is persisted before returning.
std::vector<Triple> DescribeConcept(const std::string& concept_key, SparqlClient& endpoint,
                                    TripleCache& cache);

class SparqlResolver final : public ConceptResolver {
 public:
  SparqlResolver(SparqlOptions options, std::filesystem::path cache_dir);
  Resolution Resolve(const std::string& concept_key) override;
  std::string base_iri() const override { return client_.options().base_iri; }

 private:
  SparqlClient client_;
  TripleCache cache_;
};

}  // namespace kgapp
