// One line per acceptance criterion: PASS, FAIL or SKIP. Exit status is 1
// when anything fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgapp/config.hpp"
#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/kg_enrich.hpp"
#include "kgapp/metrics.hpp"
#include "kgapp/nn/layers.hpp"
#include "kgapp/nn/recurrent.hpp"
#include "kgapp/ntriples.hpp"
#include "kgapp/walks.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace kgapp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  enum class Status { kPass, kFail, kSkip } status = Status::kPass;
  std::string detail;
};

Outcome Pass(std::string d) { return {Outcome::Status::kPass, std::move(d)}; }
Outcome Fail(std::string d) { return {Outcome::Status::kFail, std::move(d)}; }
Outcome Skip(std::string d) { return {Outcome::Status::kSkip, std::move(d)}; }

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::size_t Between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + UniformIndex(rng, hi - lo + 1); }

// ---- 1 ----

Outcome GradientSuite() {
  const auto start = Clock::now();
  constexpr int kDraws = 20;
  constexpr double kTolerance = 1e-4;
  Rng rng(2024);
  std::vector<std::pair<std::string, std::function<testing::GradCheck()>>> layers = {
      {"conv1d",
       [&] {
         const std::size_t k = 1 + 2 * UniformIndex(rng, 3), rows = Between(rng, k, 9), d = Between(rng, 2, 4);
         nn::Conv1d layer(d, Between(rng, 2, 4), k, rng);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 1, 3), rows, d}, rng), rng);
       }},
      {"rnn_step",
       [&] {
         const std::size_t c = Between(rng, 1, 4);
         nn::SimpleRnn layer(c, Between(rng, 1, 4), rng);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 1, 3), Between(rng, 1, 5), c}, rng),
                                    rng);
       }},
      {"lstm_step",
       [&] {
         const std::size_t c = Between(rng, 1, 4);
         nn::Lstm layer(c, Between(rng, 1, 4), rng, UniformIndex(rng, 2) == 1);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 1, 3), Between(rng, 1, 5), c}, rng),
                                    rng);
       }},
      {"bilstm",
       [&] {
         const std::size_t c = Between(rng, 1, 4);
         nn::BiLstm layer(c, Between(rng, 1, 3), rng);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 1, 3), Between(rng, 1, 5), c}, rng),
                                    rng);
       }},
      {"batch_norm",
       [&] {
         const std::size_t f = Between(rng, 1, 4);
         nn::BatchNorm layer(f);
         layer.gamma().value = testing::RandomTensor({f}, rng);
         layer.beta().value = testing::RandomTensor({f}, rng);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 2, 4), Between(rng, 1, 5), f}, rng),
                                    rng);
       }},
      {"dense",
       [&] {
         const std::size_t in = Between(rng, 1, 6);
         nn::Dense layer(in, Between(rng, 1, 5), nn::Activation::kSigmoid, rng);
         return testing::CheckLayer(layer, testing::RandomTensor({Between(rng, 1, 4), in}, rng), rng);
       }},
      {"bce_loss",
       [&] {
         const nn::Shape shape{Between(rng, 1, 4), 5};
         nn::Tensor p(shape), t(shape);
         for (std::size_t i = 0; i < p.size(); ++i) {
           p[i] = 0.05 + 0.9 * UniformReal(rng);
           t[i] = static_cast<double>(UniformIndex(rng, 2));
         }
         return testing::CheckBce(p, t);
       }},
  };
  double worst = 0.0;
  std::string worst_layer;
  for (auto& [name, draw] : layers) {
    for (int i = 0; i < kDraws; ++i) {
      const auto r = draw();
      if (!(r.max_rel_error < kTolerance)) {
        return Fail(name + " draw " + std::to_string(i) + " rel error " + std::to_string(r.max_rel_error) + " in " +
                    r.worst);
      }
      if (r.max_rel_error > worst) {
        worst = r.max_rel_error;
        worst_layer = name;
      }
    }
  }
  const double secs = Seconds(start);
  const std::string detail = "7 layers x " + std::to_string(kDraws) + " draws, max rel error " +
                             std::to_string(worst) + " (" + worst_layer + "), " + Fixed(secs) + " s";
  return secs < 60 ? Pass(detail) : Fail(detail + " exceeds 60 s");
}

// ---- 2 ----

Outcome MetricsOracle() {
  const auto start = Clock::now();
  std::uint64_t pairs = 0;
  std::array<bool, 12> gold{}, pred{};
  for (unsigned n = 1; n <= 12; ++n) {
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t g = 0; g < limit; ++g) {
      for (unsigned i = 0; i < n; ++i) gold[i] = (g >> i) & 1u;
      for (std::uint32_t p = 0; p < limit; ++p) {
        for (unsigned i = 0; i < n; ++i) pred[i] = (p >> i) & 1u;
        const auto c = CountConfusion(std::span<const bool>(gold.data(), n), std::span<const bool>(pred.data(), n));
        const auto tally = testing::TallyMasks(g, p, n);
        if (!(c == tally)) return Fail("counts differ at n=" + std::to_string(n));
        const auto m = ComputeMetrics(c);
        const double tp = tally.tp, tn = tally.tn, fp = tally.fp, fn = tally.fn;
        const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        const double f = 2 * tp + fp + fn > 0 ? 2 * tp / (2 * tp + fp + fn) : 0.0;
        if (m.accuracy != (tp + tn) / (tp + tn + fp + fn) || std::abs(m.precision - precision) > 1e-12 ||
            std::abs(m.recall - recall) > 1e-12 || std::abs(m.f_measure - f) > 1e-12 ||
            m.precision_undefined != (tp + fp == 0) || m.recall_undefined != (tp + fn == 0)) {
          return Fail("metrics differ at n=" + std::to_string(n) + " gold=" + std::to_string(g) +
                      " pred=" + std::to_string(p));
        }
        ++pairs;
      }
    }
  }
  return Pass(std::to_string(pairs) + " exhaustive pairs for n <= 12, " + Fixed(Seconds(start)) + " s");
}

// ---- 3 ----

Outcome WalkValidity() {
  const auto start = Clock::now();
  Rng rng(3);
  std::size_t total = 0;
  for (int g = 0; g < 100; ++g) {
    const std::size_t vertices = Between(rng, 2, 200);
    const auto graph = testing::RandomGraph(rng, vertices, Between(rng, 1, 3 * vertices), Between(rng, 1, 4), 0.1);
    WalkOptions o;  // depth 5, 5 walks per entity
    o.seed = static_cast<std::uint64_t>(g);
    const auto walks = GenerateWalks(graph, o);
    std::map<std::string, int> per_start;
    for (const auto& w : walks) {
      if (!IsValidPath(graph, w)) return Fail("graph " + std::to_string(g) + ": walk is not a path");
      if (w.tokens.size() > 11) return Fail("graph " + std::to_string(g) + ": walk longer than 11 tokens");
      if (++per_start[w.tokens.front()] > 5) return Fail("graph " + std::to_string(g) + ": more than 5 walks");
    }
    total += walks.size();
  }
  const double secs = Seconds(start);
  const std::string detail = "100 graphs, " + std::to_string(total) + " walks, " + Fixed(secs) + " s";
  return secs < 30 ? Pass(detail) : Fail(detail + " exceeds 30 s");
}

// ---- 4 ----

Outcome SgnsGeometry() {
  const auto start = Clock::now();
  const auto s = testing::EmbedTwoCliques(5, 1);
  const double secs = Seconds(start);
  const std::string detail = "intra " + Fixed(s.intra, 3) + ", inter " + Fixed(s.inter, 3) + ", gap " +
                             Fixed(s.intra - s.inter, 3) + ", " + Fixed(secs) + " s";
  if (s.intra - s.inter < 0.3) return Fail(detail);
  return secs < 60 ? Pass(detail) : Fail(detail + " exceeds 60 s");
}

// ---- 5 ----

Outcome EnrichmentAlgebra() {
  Rng rng(5);
  const std::string nrc_ns = EnrichNamespaces{}.nrc;
  for (int i = 0; i < 50; ++i) {
    const auto f = testing::RandomEnrichFixture(rng);
    using Step = std::function<KnowledgeGraph(const KnowledgeGraph&)>;
    const std::vector<std::pair<std::string, Step>> steps = {
        {"ontology", [&](const KnowledgeGraph& g) { return EnrichOntology(g, f.concepts, f.ontology); }},
        {"nrc", [&](const KnowledgeGraph& g) { return EnrichNrc(g, f.concepts, f.nrc); }},
        {"mrc", [&](const KnowledgeGraph& g) { return EnrichMrc(g, f.concepts, f.mrc); }}};
    const std::string at = "fixture " + std::to_string(i) + ": ";
    for (const auto& [name, step] : steps) {
      const auto once = step(f.graph);
      for (const auto& t : f.graph.triples()) {
        if (!once.triples().contains(t)) return Fail(at + name + " is not monotone");
      }
      if (!(step(once) == once)) return Fail(at + name + " is not idempotent");
    }
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        if (a != b && !(steps[a].second(steps[b].second(f.graph)) == steps[b].second(steps[a].second(f.graph)))) {
          return Fail(at + steps[a].first + " and " + steps[b].first + " do not commute");
        }
      }
    }
    KnowledgeGraph empty;
    const auto nrc = EnrichNrc(empty, f.concepts, f.nrc);
    std::map<std::string, std::size_t> per_subject;
    for (const auto& t : nrc.triples()) {
      if (!t.predicate.value.starts_with(nrc_ns) || t.object.datatype != vocab::kXsdDouble) {
        return Fail(at + "unexpected NRC triple");
      }
      ++per_subject[t.subject.value];
    }
    for (const auto& key : f.concepts.concepts) {
      const auto* row = f.nrc.Find(LexiconKey(key));
      const std::size_t expect = row ? row->size() : 0;
      const auto it = per_subject.find(std::string(vocab::kDbpediaResource) + key);
      const std::size_t got = it == per_subject.end() ? 0 : it->second;
      if (got != expect || got > 8) return Fail(at + key + " has " + std::to_string(got) + " NRC triples");
    }
    if (nrc.triples() != testing::ExpectedNrcTriples(f)) return Fail(at + "NRC triples differ from the oracle");
  }
  return Pass("50 fixtures: monotone, idempotent, pairwise commutative; NRC counts exact");
}

// ---- 6 ----

Outcome NTriplesRoundTrip() {
  const auto path = testing::SourceDir() / "tests" / "data" / "describe_sample.nt";
  const std::string doc = io::ReadFile(path);
  RdfParseOptions opts;
  opts.blank_node_scope = "fixture";
  const auto first = ParseNTriples(doc, opts);
  if (first.size() != 1000) return Fail("fixture parsed to " + std::to_string(first.size()) + " triples");
  const auto once = SerializeNTriples(first);
  const auto second = ParseNTriples(once, opts);
  if (second != first && std::multiset<Triple>(first.begin(), first.end()) !=
                             std::multiset<Triple>(second.begin(), second.end())) {
    return Fail("parse -> serialize -> parse changed the triples");
  }
  if (SerializeNTriples(second) != once) return Fail("serialization is not a fixed point");
  const auto ref = testing::ReferenceParse(doc, "fixture");
  if (ref.size() != first.size()) return Fail("reference reader counts " + std::to_string(ref.size()));
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!(testing::ToRef(first[i]) == ref[i])) return Fail("triple " + std::to_string(i) + " differs from reference");
  }
  return Pass("1000 triples: fixed point, all agree with the reference reader");
}

// ---- 7 and 8 ----

struct ToyRun {
  int status = -1;
  double seconds = 0;
  fs::path report;
  fs::path log;
};

ToyRun RunToy(const std::string& kgapp, const testing::TempDir& dir) {
  ToyRun r;
  const auto config = testing::RelocateConfig(testing::ToyDir() / "toy.conf", dir / "out", dir / "toy.conf");
  r.log = dir / "run.log";
  const auto start = Clock::now();
  r.status = testing::RunCommand(kgapp + " run all --config " + config.string() + " > " + r.log.string() + " 2>&1");
  r.seconds = Seconds(start);
  r.report = dir / "out" / "eval" / "report.json";
  return r;
}

std::string LogTail(const fs::path& log) {
  if (!fs::exists(log)) return {};
  const auto lines = io::ReadLines(log);
  std::string out;
  for (std::size_t i = lines.size() > 5 ? lines.size() - 5 : 0; i < lines.size(); ++i) out += "\n    " + lines[i];
  return out;
}

Outcome PlantedSignal(const ToyRun& run) {
  if (run.status != 0) return Fail("kgapp exited with " + std::to_string(run.status) + LogTail(run.log));
  const auto report = nlohmann::json::parse(io::ReadFile(run.report));
  std::string detail;
  bool ok = true;
  for (const char* arch : {"cnn", "rnn", "lstm", "bilstm"}) {
    if (!report["architectures"].contains(arch)) return Fail(std::string("no result for ") + arch);
    const double acc = report["architectures"][arch]["held_out"]["O"]["accuracy"].get<double>();
    detail += std::string(detail.empty() ? "" : ", ") + arch + " O=" + Fixed(acc);
    ok = ok && acc >= 0.9;
  }
  detail += "; " + Fixed(run.seconds, 1) + " s";
  if (!ok) return Fail(detail);
  return run.seconds < 300 ? Pass(detail) : Fail(detail + " exceeds 300 s");
}

Outcome Determinism(const ToyRun& a, const ToyRun& b) {
  if (a.status != 0 || b.status != 0) return Fail("a toy run failed" + LogTail(b.log));
  const std::string x = io::ReadFile(a.report), y = io::ReadFile(b.report);
  if (x != y) return Fail("report.json differs between runs");
  return Pass("report.json byte-identical across two runs (" + std::to_string(x.size()) + " bytes)");
}

// ---- 9 ----

Outcome ConditionalReproduction(const std::string& kgapp) {
  const char* config = std::getenv("KGAPP_ESSAYS_CONFIG");
  if (config == nullptr || *config == '\0') {
    return Skip("set KGAPP_ESSAYS_CONFIG to a config over the real Essays file and a warm cache");
  }
  const auto cfg = LoadConfig(config);
  const fs::path log = cfg.output_dir / "acceptance.log";
  fs::create_directories(cfg.output_dir);
  const int status =
      testing::RunCommand(kgapp + " run all --config " + std::string(config) + " > " + log.string() + " 2>&1");
  if (status != 0) return Fail("kgapp exited with " + std::to_string(status) + LogTail(log));
  const std::string summary = io::ReadFile(cfg.output_dir / "stats" / "summary.txt");
  if (summary.find("corpus.size=2467\n") == std::string::npos) return Fail("corpus is not 2467 records");
  const auto report = nlohmann::json::parse(io::ReadFile(cfg.output_dir / "eval" / "report.json"));
  std::size_t checked = 0;
  for (const char* arch : {"cnn", "rnn", "lstm", "bilstm"}) {
    const auto& a = report["architectures"][arch];
    for (const char* t : {"O", "C", "E", "A", "N"}) {
      const double acc = a["held_out"][t]["accuracy"].get<double>();
      const double base = a["majority_baseline_accuracy"][t].get<double>();
      if (!(acc > base)) {
        return Fail(std::string(arch) + " " + t + " accuracy " + Fixed(acc, 4) + " <= baseline " + Fixed(base, 4));
      }
      ++checked;
    }
  }
  return Pass("2467 records, " + std::to_string(checked) + " accuracies above the majority baseline");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgapp acceptance checks"};
  std::string kgapp;
  app.add_option("--kgapp", kgapp, "Path to the kgapp executable")->required();
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  auto report = [&](int n, const std::string& what, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Outcome::Status::kPass ? "PASS" : o.status == Outcome::Status::kFail ? "FAIL" : "SKIP";
    failures += o.status == Outcome::Status::kFail;
    std::cout << tag << " criterion " << n << ": " << what << " -- " << o.detail << std::endl;
  };

  report(1, "finite-difference gradient suite", GradientSuite);
  report(2, "exhaustive metrics oracle", MetricsOracle);
  report(3, "random walk validity", WalkValidity);
  report(4, "SGNS two-clique geometry", SgnsGeometry);
  report(5, "enrichment algebra", EnrichmentAlgebra);
  report(6, "N-Triples round trip", NTriplesRoundTrip);

  testing::TempDir first("kgapp-accept-a"), second("kgapp-accept-b");
  ToyRun a, b;
  report(7, "planted signal on the toy corpus", [&] {
    a = RunToy(kgapp, first);
    return PlantedSignal(a);
  });
  report(8, "deterministic report across runs", [&] {
    b = RunToy(kgapp, second);
    return Determinism(a, b);
  });
  report(9, "conditional Essays reproduction", [&] { return ConditionalReproduction(kgapp); });
  return failures == 0 ? 0 : 1;
}
