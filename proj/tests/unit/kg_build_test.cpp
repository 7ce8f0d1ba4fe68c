#include <atomic>
#include <set>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/kg_build.hpp"
#include "kgapp/ntriples.hpp"
#include "kgapp/resolver.hpp"
#include "kgapp/sparql_client.hpp"
#include "test_support.hpp"

namespace kgapp {
namespace {

const std::string kBase(vocab::kDbpediaResource);

Triple T(const std::string& s, const std::string& p, const std::string& o) {
  return {Term::Iri(kBase + s), Term::Iri("http://x/" + p), Term::Iri(kBase + o)};
}

std::vector<Triple> Describe(const std::string& key, int n) {
  std::vector<Triple> out;
  for (int i = 0; i < n; ++i) out.push_back(T(key, "link", key + "_" + std::to_string(i)));
  return out;
}

TEST(BuildGraph, DisjointDescriptionsUnion) {
  MapResolver r;
  r.Add("A", Describe("A", 3));
  r.Add("B", Describe("B", 3));
  const auto out = BuildGraph({"e", {"A", "B"}}, r);
  EXPECT_EQ(out.graph.size(), 6u);
  EXPECT_TRUE(out.unresolved.empty());
}

TEST(BuildGraph, SharedTripleOnce) {
  MapResolver r;
  auto a = Describe("A", 2), b = Describe("B", 2);
  a.push_back(T("A", "rel", "B"));
  b.push_back(T("A", "rel", "B"));
  r.Add("A", a);
  r.Add("B", b);
  EXPECT_EQ(BuildGraph({"e", {"A", "B"}}, r).graph.size(), 5u);
}

TEST(BuildGraph, FiveConceptFixtureMatchesBruteForceUnion) {
  testing::TempDir dir;
  const std::vector<std::string> keys = {"Art", "Dog", "Music", "New_York", "Pizza"};
  std::set<Triple> oracle;
  std::set<Term> vertices;
  Rng rng(3);
  for (const auto& k : keys) {
    std::vector<Triple> d;
    for (int i = 0; i < 6; ++i) {
      // Objects overlap across concepts so the union is not a plain sum.
      d.push_back(T(k, "link", keys[UniformIndex(rng, keys.size())] + "_hub" + std::to_string(i % 3)));
    }
    d.push_back({Term::Iri(kBase + k), Term::Iri(std::string(vocab::kRdfsLabel)), Term::Literal(k, {}, "en")});
    testing::WriteText(dir / (io::PercentEncode(k) + ".nt"), SerializeNTriples(d));
    for (const auto& t : LoadNTriples(dir / (io::PercentEncode(k) + ".nt"))) {
      oracle.insert(t);
      vertices.insert(t.subject);
      vertices.insert(t.object);
    }
  }
  CacheOnlyResolver r(dir.path(), kBase);
  const auto out = BuildGraph({"e", keys}, r);
  EXPECT_EQ(out.graph.triples(), oracle);
  EXPECT_EQ(out.graph.Vertices(), vertices);
}

TEST(BuildGraph, AllUnresolvedGivesEmptyGraphWithWarning) {
  MapResolver r;
  const auto out = BuildGraph({"e", {"X", "Y"}}, r);
  EXPECT_TRUE(out.graph.empty());
  EXPECT_EQ(out.unresolved.size(), 2u);
  EXPECT_EQ(out.warnings.size(), 1u);
}

TEST(BuildGraph, FollowsOneRedirectHop) {
  MapResolver r;
  r.Add("Theater", {{Term::Iri(kBase + "Theater"), Term::Iri(std::string(vocab::kDboRedirects)),
                     Term::Iri(kBase + "Theatre")}});
  r.Add("Theatre", Describe("Theatre", 4));
  EXPECT_EQ(BuildGraph({"e", {"Theater"}}, r).graph.size(), 5u);
  BuildOptions no_follow;
  no_follow.follow_redirects = false;
  EXPECT_EQ(BuildGraph({"e", {"Theater"}}, r, no_follow).graph.size(), 1u);
}

TEST(BuildGraph, ParallelResolutionMatchesSerial) {
  MapResolver r;
  std::vector<std::string> keys;
  for (int i = 0; i < 40; ++i) {
    keys.push_back("K" + std::to_string(i));
    if (i % 7) r.Add(keys.back(), Describe(keys.back(), i % 5 + 1));
  }
  BuildOptions par;
  par.parallelism = 4;
  const auto a = BuildGraph({"e", keys}, r);
  const auto b = BuildGraph({"e", keys}, r, par);
  EXPECT_EQ(a.graph, b.graph);
  ASSERT_EQ(a.unresolved.size(), b.unresolved.size());
  for (std::size_t i = 0; i < a.unresolved.size(); ++i) EXPECT_EQ(a.unresolved[i].key, b.unresolved[i].key);
}

TEST(TripleCache, EmptyDescriptionIsAHit) {
  testing::TempDir dir;
  TripleCache cache(dir.path());
  EXPECT_FALSE(cache.Get("Nothing").has_value());
  cache.Put("Nothing", {});
  ASSERT_TRUE(cache.Get("Nothing").has_value());
  EXPECT_TRUE(cache.Get("Nothing")->empty());
  cache.Put("A/B c", Describe("A", 2));
  EXPECT_EQ(cache.PathFor("A/B c").filename(), "A%2FB%20c.nt");
  EXPECT_EQ(cache.Get("A/B c")->size(), 2u);
}

TEST(CacheOnlyResolver, MissIsUnresolvedWithDetail) {
  testing::TempDir dir;
  CacheOnlyResolver r(dir.path(), kBase);
  const auto res = r.Resolve("Missing");
  EXPECT_FALSE(res.resolved());
  EXPECT_FALSE(res.detail.empty());
}

// Minimal SPARQL endpoint serving fixed descriptions.
class StubEndpoint {
 public:
  StubEndpoint() {
    server_.Get("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      const std::string q = req.get_param_value("query");
      if (q.find("Flaky") != std::string::npos && flaky_failures_-- > 0) {
        res.status = 503;
        return;
      }
      for (const auto& [key, body] : bodies_) {
        if (q == SparqlClient::DescribeQuery(kBase + key)) {
          res.set_content(body, "application/n-triples");
          return;
        }
      }
      res.status = 404;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubEndpoint() { Stop(); }

  void Stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/sparql"; }
  void Serve(const std::string& key, std::string body) { bodies_.emplace_back(key, std::move(body)); }
  int requests() const { return requests_; }
  void FailFlakyTimes(int n) { flaky_failures_ = n; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::vector<std::pair<std::string, std::string>> bodies_;
  std::atomic<int> requests_{0};
  std::atomic<int> flaky_failures_{0};
};

SparqlOptions Options(const StubEndpoint& stub) {
  SparqlOptions o;
  o.endpoint = stub.url();
  o.requests_per_second = 0;
  o.max_retries = 2;
  o.initial_backoff = std::chrono::milliseconds(1);
  o.timeout = std::chrono::seconds(5);
  return o;
}

TEST(SparqlClient, DescribeEchoesStubTriples) {
  StubEndpoint stub;
  const auto twelve = Describe("Dog", 12);
  stub.Serve("Dog", SerializeNTriples(twelve));
  SparqlClient client(Options(stub));
  const auto got = client.Describe("Dog");
  EXPECT_EQ(std::set<Triple>(got.begin(), got.end()), std::set<Triple>(twelve.begin(), twelve.end()));
  EXPECT_EQ(got.size(), 12u);
}

TEST(SparqlClient, UnknownConceptIsEmpty) {
  StubEndpoint stub;
  SparqlClient client(Options(stub));
  EXPECT_TRUE(client.Describe("Nope").empty());
}

TEST(SparqlClient, CacheServesSecondCallWhileOffline) {
  testing::TempDir dir;
  TripleCache cache(dir.path());
  const auto triples = Describe("Cat", 5);
  std::vector<Triple> first;
  {
    StubEndpoint stub;
    stub.Serve("Cat", SerializeNTriples(triples));
    SparqlClient client(Options(stub));
    first = DescribeConcept("Cat", client, cache);
    stub.Stop();
    const auto second = DescribeConcept("Cat", client, cache);
    EXPECT_EQ(second, first);
    EXPECT_EQ(stub.requests(), 1);
  }
  EXPECT_EQ(first.size(), 5u);
}

TEST(SparqlClient, ServerErrorsAreRetriedThenSucceed) {
  StubEndpoint stub;
  stub.Serve("Flaky", SerializeNTriples(Describe("Flaky", 2)));
  stub.FailFlakyTimes(2);
  SparqlClient client(Options(stub));
  EXPECT_EQ(client.Describe("Flaky").size(), 2u);
  EXPECT_EQ(stub.requests(), 3);
}

TEST(SparqlClient, ExhaustedRetriesAreFetchError) {
  StubEndpoint stub;
  stub.Serve("Flaky", SerializeNTriples(Describe("Flaky", 2)));
  stub.FailFlakyTimes(10);
  SparqlClient client(Options(stub));
  EXPECT_THROW(client.Describe("Flaky"), FetchError);
}

TEST(SparqlClient, MalformedBodyIsParseErrorWithByteOffset) {
  StubEndpoint stub;
  stub.Serve("Bad", "<http://x/s> <http://x/p> <http://x/o> .\n<http://x/s> <http://x/p> oops .\n");
  SparqlClient client(Options(stub));
  try {
    client.Describe("Bad");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.unit(), ParseError::Unit::kByte);
  }
}

TEST(SparqlClient, NetworkFailureLeavesConceptUnresolved) {
  testing::TempDir dir;
  SparqlOptions o;
  o.endpoint = "http://127.0.0.1:9/sparql";
  o.requests_per_second = 0;
  o.max_retries = 1;
  o.initial_backoff = std::chrono::milliseconds(1);
  o.timeout = std::chrono::seconds(2);
  SparqlResolver r(o, dir.path());
  const auto res = r.Resolve("Dog");
  EXPECT_FALSE(res.resolved());
  EXPECT_NE(res.detail.find("attempts"), std::string::npos) << res.detail;
}

TEST(ParseDescribeBody, TurtleFallback) {
  const auto t = ParseDescribeBody("@prefix d: <http://x/> .\nd:s d:p d:o .\n", "application/octet-stream", "s");
  EXPECT_EQ(t.size(), 1u);
}

}  // namespace
}  // namespace kgapp
