#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/graph.hpp"
#include "kgapp/lexicons.hpp"
#include "kgapp/metrics.hpp"
#include "kgapp/nn/layers.hpp"
#include "kgapp/nn/model.hpp"
#include "kgapp/random.hpp"
#include "kgapp/preprocess.hpp"
#include "kgapp/rdf.hpp"

namespace kgapp {

// Readable gtest output for triples.
void PrintTo(const Term& t, std::ostream* os);
void PrintTo(const Triple& t, std::ostream* os);

}  // namespace kgapp

namespace kgapp::testing {

std::filesystem::path SourceDir();
std::filesystem::path ToyDir();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag = "kgapp");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void WriteText(const std::filesystem::path& path, std::string_view text);

nn::Tensor RandomTensor(nn::Shape shape, Rng& rng, double scale = 1.0);

// ---- finite differences ----

// ||analytic - numeric|| / (||analytic|| + ||numeric||), 0 when both vanish.
double RelativeError(const std::vector<double>& analytic, const std::vector<double>& numeric);

struct GradCheck {
  double max_rel_error = 0.0;
  std::string worst;  // tensor with the largest error
};

// Checks d/dx and d/dparams of sum(R * layer(x)) for a random R, by central
// differences, in train mode.
GradCheck CheckLayer(nn::Layer& layer, const nn::Tensor& input, Rng& rng, double eps = 1e-6);

// Checks d loss / d predictions of the BCE loss.
GradCheck CheckBce(const nn::Tensor& predictions, const nn::Tensor& targets, double eps = 1e-6);

// Whole model against the BCE loss; dropout must be 0.
GradCheck CheckModel(nn::Model& model, const nn::Tensor& input, const nn::Tensor& targets,
                     double eps = 1e-6);

// ---- N-Triples reference reader ----

// Triple as display strings: `<iri>`, or the unescaped lexical form
// followed by `^^<dt>` / `@lang` in quotes-free form.
struct RefTriple {
  std::string s, p, o;
  friend auto operator<=>(const RefTriple&, const RefTriple&) = default;
  friend std::ostream& operator<<(std::ostream& os, const RefTriple& t) {
    return os << t.s << " " << t.p << " " << t.o;
  }
};

// Regex-based reader, written separately from the library lexer. Blank
// nodes map to the library's skolem IRIs for `scope`.
std::vector<RefTriple> ReferenceParse(std::string_view document, std::string_view scope = {});
RefTriple ToRef(const Triple& t);

// ---- metrics tally ----

// Element-by-element count over the low `n` bits of two masks.
ConfusionCounts TallyMasks(std::uint32_t gold, std::uint32_t predicted, unsigned n);

// ---- random fixtures ----

// `vertices` IRIs with `edges` random triples over `predicates` labels;
// roughly `literal_share` of objects are literals.
KnowledgeGraph RandomGraph(Rng& rng, std::size_t vertices, std::size_t edges,
                           std::size_t predicates = 3, double literal_share = 0.1);

struct EnrichFixture {
  KnowledgeGraph graph;
  ConceptSet concepts;
  OntologySource ontology;
  EmotionLexicon nrc;
  PsycholinguisticTable mrc;
};

// Random DAG of classes, lexicon rows and a concept set, some of whose keys
// name classes and lexicon words.
EnrichFixture RandomEnrichFixture(Rng& rng);

// Triples each enrichment should add, computed by fixpoint iteration over
// the raw ontology triples and direct lexicon lookups.
std::set<Triple> ExpectedOntologyTriples(const EnrichFixture& f);
std::set<Triple> ExpectedNrcTriples(const EnrichFixture& f);
std::set<Triple> ExpectedMrcTriples(const EnrichFixture& f);

// Two disjoint cliques of `size` vertices each, one predicate per clique.
KnowledgeGraph TwoCliqueGraph(std::size_t size);

struct CliqueSimilarity {
  double intra = 0.0;  // mean cosine over same-clique vertex pairs
  double inter = 0.0;  // mean cosine over cross-clique pairs
};

// Walks over TwoCliqueGraph(size), SGNS, then mean cosines of the vertex
// vectors.
CliqueSimilarity EmbedTwoCliques(std::size_t size, std::uint64_t seed);

// ---- toy run helpers ----

// Copies a config with every path made absolute against the source file's
// directory and output_dir replaced.
std::filesystem::path RelocateConfig(const std::filesystem::path& config,
                                     const std::filesystem::path& output_dir,
                                     const std::filesystem::path& target);

// Runs a command through the shell; returns the exit status.
int RunCommand(const std::string& command);

}  // namespace kgapp::testing
