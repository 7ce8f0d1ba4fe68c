#include "test_support.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sys/wait.h>
#include <unistd.h>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/nn/loss.hpp"
#include "kgapp/skipgram.hpp"
#include "kgapp/walks.hpp"

namespace fs = std::filesystem;

namespace kgapp {

void PrintTo(const Term& t, std::ostream* os) { *os << FormatTerm(t); }
void PrintTo(const Triple& t, std::ostream* os) {
  *os << FormatTerm(t.subject) << " " << FormatTerm(t.predicate) << " " << FormatTerm(t.object);
}

}  // namespace kgapp

namespace kgapp::testing {

namespace {

std::string LexiconKeyFor(const std::string& key) {
  std::string out;
  for (char c : key) out += c == '_' ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

fs::path SourceDir() { return KGAPP_SOURCE_DIR; }
fs::path ToyDir() { return SourceDir() / "data" / "toy"; }

TempDir::TempDir(std::string_view tag) {
  static std::atomic<int> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  path_ = fs::temp_directory_path() /
          (std::string(tag) + "-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
           std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteText(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

nn::Tensor RandomTensor(nn::Shape shape, Rng& rng, double scale) {
  nn::Tensor t(std::move(shape));
  for (auto& v : t.values()) v = (2.0 * UniformReal(rng) - 1.0) * scale;
  return t;
}

double RelativeError(const std::vector<double>& analytic, const std::vector<double>& numeric) {
  double diff = 0, na = 0, nn = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  const double denom = std::sqrt(na) + std::sqrt(nn);
  return denom == 0 ? 0.0 : std::sqrt(diff) / denom;
}

namespace {

template <typename F>
std::vector<double> NumericGradient(std::span<double> values, F&& f, double eps) {
  std::vector<double> g(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double keep = values[i];
    values[i] = keep + eps;
    const double up = f();
    values[i] = keep - eps;
    const double down = f();
    values[i] = keep;
    g[i] = (up - down) / (2 * eps);
  }
  return g;
}

void Record(GradCheck& out, const std::string& name, const std::vector<double>& a,
            const std::vector<double>& n) {
  const double e = RelativeError(a, n);
  if (e >= out.max_rel_error) {
    out.max_rel_error = e;
    out.worst = name;
  }
}

std::vector<double> Copy(std::span<const double> v) { return {v.begin(), v.end()}; }

}  // namespace

GradCheck CheckLayer(nn::Layer& layer, const nn::Tensor& input, Rng& rng, double eps) {
  nn::Tensor x = input;
  const nn::Tensor y = layer.Forward(x, nn::Mode::kTrain);
  const nn::Tensor r = RandomTensor(y.shape(), rng);
  auto params = layer.Parameters();
  nn::ZeroGrad(params);
  const nn::Tensor dx = layer.Backward(r);

  auto objective = [&] {
    const nn::Tensor out = layer.Forward(x, nn::Mode::kTrain);
    double s = 0;
    for (std::size_t i = 0; i < out.size(); ++i) s += out[i] * r[i];
    return s;
  };
  GradCheck result;
  Record(result, "input", Copy(dx.values()), NumericGradient(x.values(), objective, eps));
  for (auto* p : params) {
    const auto analytic = Copy(p->grad.values());
    Record(result, p->name, analytic, NumericGradient(p->value.values(), objective, eps));
  }
  return result;
}

GradCheck CheckBce(const nn::Tensor& predictions, const nn::Tensor& targets, double eps) {
  nn::Tensor p = predictions;
  const auto analytic = Copy(nn::BceLoss(p, targets).grad.values());
  GradCheck result;
  Record(result, "predictions", analytic,
         NumericGradient(p.values(), [&] { return nn::BceLoss(p, targets).loss; }, eps));
  return result;
}

GradCheck CheckModel(nn::Model& model, const nn::Tensor& input, const nn::Tensor& targets, double eps) {
  const auto out = model.Forward(input, nn::Mode::kTrain);
  auto params = model.Parameters();
  nn::ZeroGrad(params);
  model.Backward(nn::BceLoss(out, targets).grad);
  auto objective = [&] { return nn::BceLoss(model.Forward(input, nn::Mode::kTrain), targets).loss; };
  GradCheck result;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto analytic = Copy(params[i]->grad.values());
    Record(result, std::to_string(i) + ":" + params[i]->name, analytic,
           NumericGradient(params[i]->value.values(), objective, eps));
  }
  return result;
}

// ---- reference reader ----

namespace {

void AppendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string Unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    const char c = s.at(++i);
    switch (c) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u':
      case 'U': {
        const std::size_t n = c == 'u' ? 4 : 8;
        AppendUtf8(out, static_cast<std::uint32_t>(std::stoul(s.substr(i + 1, n), nullptr, 16)));
        i += n;
        break;
      }
      default:
        throw std::runtime_error("reference: bad escape");
    }
  }
  return out;
}

std::string RefNode(const std::string& token, std::string_view scope) {
  if (token.rfind("_:", 0) == 0) {
    return "<" + std::string(vocab::kBlankNodePrefix) + std::string(scope) + ":" + token.substr(2) + ">";
  }
  return "<" + Unescape(token.substr(1, token.size() - 2)) + ">";
}

}  // namespace

std::vector<RefTriple> ReferenceParse(std::string_view document, std::string_view scope) {
  static const std::regex line_re(
      R"re(^[ \t]*(<[^>]*>|_:[A-Za-z0-9_.\-]+)[ \t]+(<[^>]*>)[ \t]+)re"
      R"re((<[^>]*>|_:[A-Za-z0-9_.\-]+|"((?:[^"\\]|\\.)*)"(\^\^<([^>]*)>|@([A-Za-z0-9\-]+))?))re"
      R"re([ \t]*\.[ \t]*(#.*)?$)re");
  static const std::regex skip_re(R"(^[ \t]*(#.*)?$)");
  std::vector<RefTriple> out;
  std::size_t start = 0, line_no = 0;
  while (start <= document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    std::string line(document.substr(start, end - start));
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, line_re)) {
      RefTriple t;
      t.s = RefNode(m[1], scope);
      t.p = RefNode(m[2], scope);
      if (m[4].matched || m[3].str().front() == '"') {
        t.o = "\"" + Unescape(m[4]) + "\"";
        if (m[6].matched) t.o += "^^<" + Unescape(m[6]) + ">";
        if (m[7].matched) t.o += "@" + m[7].str();
      } else {
        t.o = RefNode(m[3], scope);
      }
      out.push_back(std::move(t));
    } else if (!std::regex_match(line, skip_re)) {
      throw std::runtime_error("reference: cannot read line " + std::to_string(line_no));
    }
    start = end + 1;
  }
  return out;
}

RefTriple ToRef(const Triple& t) {
  auto node = [](const Term& term) {
    if (term.is_iri()) return "<" + term.value + ">";
    std::string s = "\"" + term.value + "\"";
    if (!term.datatype.empty()) s += "^^<" + term.datatype + ">";
    if (!term.lang.empty()) s += "@" + term.lang;
    return s;
  };
  return {node(t.subject), node(t.predicate), node(t.object)};
}

ConfusionCounts TallyMasks(std::uint32_t gold, std::uint32_t predicted, unsigned n) {
  ConfusionCounts c;
  for (unsigned i = 0; i < n; ++i) {
    const bool g = (gold >> i) & 1u;
    const bool p = (predicted >> i) & 1u;
    if (g && p) ++c.tp;
    if (!g && !p) ++c.tn;
    if (!g && p) ++c.fp;
    if (g && !p) ++c.fn;
  }
  return c;
}

KnowledgeGraph RandomGraph(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t predicates,
                           double literal_share) {
  auto vertex = [&] { return Term::Iri("http://g/v" + std::to_string(UniformIndex(rng, vertices))); };
  KnowledgeGraph g;
  for (std::size_t i = 0; i < edges; ++i) {
    Term s = vertex();
    Term p = Term::Iri("http://g/p" + std::to_string(UniformIndex(rng, predicates)));
    Term o = UniformReal(rng) < literal_share ? Term::Literal("l" + std::to_string(UniformIndex(rng, 5)))
                                              : vertex();
    g.Insert({std::move(s), std::move(p), std::move(o)});
  }
  return g;
}

namespace {

const std::string kRes(vocab::kDbpediaResource);
const std::string kOnt(vocab::kDbpediaOntology);
const std::string kNrc = "http://kgapp.org/nrc#";
const std::string kMrc = "http://kgapp.org/mrc#";

std::string WordKey(std::size_t i) { return i % 3 ? "Word" + std::to_string(i) : "Word_" + std::to_string(i); }

}  // namespace

EnrichFixture RandomEnrichFixture(Rng& rng) {
  EnrichFixture f;
  const std::size_t classes = 3 + UniformIndex(rng, 8);
  std::vector<Triple> onto;
  const Term sub = Term::Iri(std::string(vocab::kRdfsSubClassOf));
  for (std::size_t i = 0; i < classes; ++i) {
    const Term cls = Term::Iri(kOnt + WordKey(i));
    onto.push_back({cls, Term::Iri(std::string(vocab::kRdfType)), Term::Iri(std::string(vocab::kOwlClass))});
    for (std::size_t j = 0; j < i; ++j) {
      if (UniformReal(rng) < 0.3) onto.push_back({cls, sub, Term::Iri(kOnt + WordKey(j))});
    }
  }
  f.ontology = OntologySource(std::move(onto));

  const auto schema = MrcSchema::Default();
  for (std::size_t i = 0; i < 20; ++i) {
    const std::string word = LexiconKeyFor(WordKey(i));
    if (UniformReal(rng) < 0.5) {
      for (auto e : kEmotionNames) {
        if (UniformReal(rng) < 0.4) f.nrc.entries[word][std::string(e)] = UniformIndex(rng, 101) / 100.0;
      }
    }
    if (UniformReal(rng) < 0.5) {
      for (const auto& a : schema.attributes()) {
        if (UniformReal(rng) >= 0.2) continue;
        if (a.type == MrcAttribute::Type::kNumeric) {
          f.mrc.entries[word][a.name] = static_cast<double>(UniformIndex(rng, 700));
        } else {
          f.mrc.entries[word][a.name] = std::string("s") + std::to_string(UniformIndex(rng, 9));
        }
      }
    }
  }

  f.concepts.essay_id = "fixture";
  for (std::size_t i = 0; i < 20; ++i) {
    if (UniformReal(rng) < 0.5) f.concepts.concepts.push_back(WordKey(i));
  }
  for (std::size_t i = 0; i < 15; ++i) {
    f.graph.Insert({Term::Iri(kRes + WordKey(UniformIndex(rng, 20))), Term::Iri("http://g/link"),
                    Term::Iri(kRes + WordKey(UniformIndex(rng, 20)))});
  }
  return f;
}

std::set<Triple> ExpectedOntologyTriples(const EnrichFixture& f) {
  std::set<Triple> out;
  for (const auto& key : f.concepts.concepts) {
    const std::string cls = kOnt + key;
    bool declared = false;
    for (const auto& t : f.ontology.triples()) declared = declared || t.subject.value == cls || t.object.value == cls;
    if (!declared) continue;
    out.insert({Term::Iri(kRes + key), Term::Iri(std::string(vocab::kRdfType)), Term::Iri(cls)});
    std::set<std::string> reached{cls};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& t : f.ontology.triples()) {
        if (t.predicate.value != vocab::kRdfsSubClassOf || !reached.contains(t.subject.value)) continue;
        out.insert(t);
        grew = reached.insert(t.object.value).second || grew;
      }
    }
  }
  return out;
}

std::set<Triple> ExpectedNrcTriples(const EnrichFixture& f) {
  std::set<Triple> out;
  for (const auto& key : f.concepts.concepts) {
    auto it = f.nrc.entries.find(LexiconKeyFor(key));
    if (it == f.nrc.entries.end()) continue;
    for (const auto& [e, v] : it->second) out.insert({Term::Iri(kRes + key), Term::Iri(kNrc + e), Term::Real(v)});
  }
  return out;
}

std::set<Triple> ExpectedMrcTriples(const EnrichFixture& f) {
  std::set<Triple> out;
  for (const auto& key : f.concepts.concepts) {
    auto it = f.mrc.entries.find(LexiconKeyFor(key));
    if (it == f.mrc.entries.end()) continue;
    for (const auto& [a, v] : it->second) {
      Term o = v.index() == 0 ? Term::Real(std::get<double>(v)) : Term::Literal(std::get<std::string>(v));
      out.insert({Term::Iri(kRes + key), Term::Iri(kMrc + a), o});
    }
  }
  return out;
}

KnowledgeGraph TwoCliqueGraph(std::size_t size) {
  KnowledgeGraph g;
  for (const char* side : {"a", "b"}) {
    const Term p = Term::Iri(std::string("http://c/p") + side);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (i == j) continue;
        g.Insert({Term::Iri("http://c/" + std::string(side) + std::to_string(i)), p,
                  Term::Iri("http://c/" + std::string(side) + std::to_string(j))});
      }
    }
  }
  return g;
}

CliqueSimilarity EmbedTwoCliques(std::size_t size, std::uint64_t seed) {
  WalkOptions w;
  w.max_depth = 4;
  w.walks_per_entity = 30;
  w.seed = seed;
  SkipGramOptions o;
  o.dim = 16;
  o.window = 3;
  o.negatives = 5;
  o.epochs = 20;
  o.seed = seed;
  const auto table = TrainSkipGram(GenerateWalks(TwoCliqueGraph(size), w), o);
  auto vec = [&](char side, std::size_t i) {
    return table.Vector("http://c/" + std::string(1, side) + std::to_string(i));
  };
  CliqueSimilarity out;
  std::size_t n_intra = 0, n_inter = 0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i != j) {
        out.intra += CosineSimilarity(vec('a', i), vec('a', j)) + CosineSimilarity(vec('b', i), vec('b', j));
        n_intra += 2;
      }
      out.inter += CosineSimilarity(vec('a', i), vec('b', j));
      ++n_inter;
    }
  }
  out.intra /= static_cast<double>(n_intra);
  out.inter /= static_cast<double>(n_inter);
  return out;
}

fs::path RelocateConfig(const fs::path& config, const fs::path& output_dir, const fs::path& target) {
  static const std::set<std::string> path_keys = {"corpus",  "output_dir", "cache_dir",
                                                  "stopwords", "lemmas",   "gazetteer",
                                                  "ontology", "nrc_lexicon", "mrc_table"};
  const fs::path base = fs::absolute(config).parent_path();
  std::string out;
  bool wrote_output = false;
  for (const auto& raw : io::ReadLines(config)) {
    const auto eq = raw.find('=');
    const std::string key(io::Trim(std::string_view(raw).substr(0, eq == std::string::npos ? 0 : eq)));
    if (eq == std::string::npos || !path_keys.contains(key)) {
      out += raw + "\n";
      continue;
    }
    if (key == "output_dir") {
      out += "output_dir = " + output_dir.string() + "\n";
      wrote_output = true;
      continue;
    }
    const std::string value(io::Trim(std::string_view(raw).substr(eq + 1)));
    out += key + " = " + (value.empty() ? value : (base / value).lexically_normal().string()) + "\n";
  }
  if (!wrote_output) out += "output_dir = " + output_dir.string() + "\n";
  WriteText(target, out);
  return target;
}

int RunCommand(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

}  // namespace kgapp::testing
