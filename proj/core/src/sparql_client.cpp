#include "kgapp/sparql_client.hpp"

#include <httplib.h>

#include <thread>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/ntriples.hpp"

namespace kgapp {

RateLimiter::RateLimiter(double requests_per_second) {
  if (requests_per_second <= 0.0) {
    interval_ = std::chrono::steady_clock::duration::zero();
  } else {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

void RateLimiter::Acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

SparqlClient::SparqlClient(SparqlOptions options)
    : options_(std::move(options)), limiter_(options_.requests_per_second) {
  const std::string& url = options_.endpoint;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string SparqlClient::DescribeQuery(std::string_view iri) {
  return "DESCRIBE <" + std::string(iri) + ">";
}

std::vector<Triple> ParseDescribeBody(std::string_view body, std::string_view content_type,
                                      std::string_view blank_node_scope) {
  RdfParseOptions options;
  options.blank_node_scope = std::string(blank_node_scope);
  options.error_unit = ParseError::Unit::kByte;
  std::string type(content_type.substr(0, content_type.find(';')));
  if (type == "application/n-triples" || type == "text/plain" || type == "text/ntriples") {
    return ParseNTriples(body, options);
  }
  if (type == "text/turtle" || type == "application/x-turtle") return ParseTurtle(body, options);
  try {
    return ParseNTriples(body, options);
  } catch (const ParseError&) {
    return ParseTurtle(body, options);
  }
}

std::vector<Triple> SparqlClient::Describe(const std::string& concept_key) {
  const std::string query = DescribeQuery(ConceptIri(options_.base_iri, concept_key));
  const httplib::Headers headers = {
      {"Accept", "application/n-triples, text/turtle;q=0.9, text/plain;q=0.5"}};

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    limiter_.Acquire();
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_follow_location(true);

    httplib::Result res;
    if (options_.use_post) {
      httplib::Params params{{"query", query}};
      res = client.Post(path_, headers, params);
    } else {
      httplib::Params params{{"query", query}};
      res = client.Get(path_, params, headers);
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 404) return {};
    if (res->status >= 500 || res->status == 429) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw FetchError("DESCRIBE " + concept_key + ": HTTP " + std::to_string(res->status));
    }
    return ParseDescribeBody(res->body, res->get_header_value("Content-Type"),
                             io::PercentEncode(concept_key));
  }
  throw FetchError("DESCRIBE " + concept_key + " failed after " +
                   std::to_string(options_.max_retries + 1) + " attempts: " + last_error);
}

std::vector<Triple> DescribeConcept(const std::string& concept_key, SparqlClient& endpoint,
                                    TripleCache& cache) {
  if (auto cached = cache.Get(concept_key)) return std::move(*cached);
  auto triples = endpoint.Describe(concept_key);
  cache.Put(concept_key, triples);
  // Reload so callers see exactly what a later cache hit returns.
  return cache.Get(concept_key).value_or(std::vector<Triple>{});
}

SparqlResolver::SparqlResolver(SparqlOptions options, std::filesystem::path cache_dir)
    : client_(std::move(options)), cache_(std::move(cache_dir)) {}

Resolution SparqlResolver::Resolve(const std::string& concept_key) {
  Resolution r;
  try {
    r.triples = DescribeConcept(concept_key, client_, cache_);
    r.status = Resolution::Status::kResolved;
  } catch (const FetchError& e) {
    r.detail = e.what();
  } catch (const ParseError& e) {
    r.detail = std::string("malformed response: ") + e.what();
  }
  return r;
}

}  // namespace kgapp
