#include "kgapp/pipeline.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <map>

#include "kgapp/corpus.hpp"
#include "kgapp/embedding.hpp"
#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/kg_build.hpp"
#include "kgapp/kg_enrich.hpp"
#include "kgapp/lexicons.hpp"
#include "kgapp/nn/checkpoint.hpp"
#include "kgapp/ntriples.hpp"
#include "kgapp/preprocess.hpp"
#include "kgapp/random.hpp"
#include "kgapp/resolver.hpp"
#include "kgapp/skipgram.hpp"
#include "kgapp/sparql_client.hpp"
#include "kgapp/train_eval.hpp"
#include "kgapp/walks.hpp"

namespace kgapp {

namespace fs = std::filesystem;

std::string_view StageName(Stage s) {
  switch (s) {
    case Stage::kPreprocess: return "preprocess";
    case Stage::kBuild: return "build";
    case Stage::kEnrich: return "enrich";
    case Stage::kWalks: return "walks";
    case Stage::kEmbed: return "embed";
    case Stage::kAssemble: return "assemble";
    case Stage::kTrain: return "train";
    case Stage::kEval: return "eval";
    case Stage::kStats: return "stats";
  }
  return "?";
}

std::optional<Stage> ParseStage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (StageName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Stage> Upstream(Stage s) {
  switch (s) {
    case Stage::kPreprocess:
    case Stage::kStats: return {};
    case Stage::kBuild: return {Stage::kPreprocess};
    case Stage::kEnrich: return {Stage::kBuild};
    case Stage::kWalks: return {Stage::kEnrich};
    case Stage::kEmbed: return {Stage::kWalks};
    case Stage::kAssemble: return {Stage::kEmbed};
    case Stage::kTrain: return {Stage::kAssemble};
    case Stage::kEval: return {Stage::kTrain};
  }
  return {};
}

DirectoryLock::DirectoryLock(const fs::path& dir) {
  fs::create_directories(dir);
  const auto path = dir / ".lock";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open lock file " + path.string() + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw StageError("another pipeline is running in " + dir.string() + " (lock file " + path.string() + ")");
  }
}

DirectoryLock::~DirectoryLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

namespace {

std::string FileHash(const fs::path& p) { return p.empty() ? "none" : io::Sha256File(p); }

void RequireFile(const fs::path& p, std::string_view key) {
  if (!p.empty() && !fs::is_regular_file(p)) {
    throw ConfigError(std::string(key) + " not found: " + p.string());
  }
}

std::string OutputsDigest(const StageRecord& rec) {
  std::string s;
  for (const auto& [file, hash] : rec.outputs) s += file + "=" + hash + "\n";
  return io::Sha256Hex(s);
}

std::string FormatConcepts(const std::vector<ConceptSet>& sets) {
  std::string out;
  for (const auto& s : sets) {
    out += io::PercentEncode(s.essay_id);
    for (const auto& c : s.concepts) out += "\t" + c;
    out += "\n";
  }
  return out;
}

std::vector<ConceptSet> ParseConcepts(const fs::path& path) {
  std::vector<ConceptSet> out;
  for (const auto& line : io::ReadLines(path)) {
    if (line.empty()) continue;
    auto parts = io::Split(line, '\t');
    ConceptSet s;
    s.essay_id = io::PercentDecode(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) s.concepts.emplace_back(parts[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string EssayFile(const std::string& id, std::string_view ext) { return io::PercentEncode(id) + std::string(ext); }

KnowledgeGraph LoadGraph(const fs::path& path) { return KnowledgeGraph(LoadNTriples(path)); }

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config, LogSink log) : config_(std::move(config)), log_(std::move(log)) {
  config_.Validate();
}

fs::path Pipeline::StageDir(Stage s) const { return config_.output_dir / std::string(StageName(s)); }
fs::path Pipeline::ManifestPath() const { return config_.output_dir / "manifest.json"; }

void Pipeline::Log(Stage s, std::string_view message) const {
  if (log_) log_(StageName(s), message);
}

std::string Pipeline::Fingerprint(Stage s, const Manifest& manifest) const {
  const auto& c = config_;
  std::string text = "stage=" + std::string(StageName(s)) + "\n";
  auto add = [&text](std::string_view key, const std::string& value) {
    text += std::string(key) + "=" + value + "\n";
  };
  switch (s) {
    case Stage::kStats:
      add("corpus", FileHash(c.corpus));
      break;
    case Stage::kPreprocess:
      add("corpus", FileHash(c.corpus));
      add("stopwords", FileHash(c.stopwords));
      add("lemmas", FileHash(c.lemmas));
      add("gazetteer", FileHash(c.gazetteer));
      add("capitalized_entities", c.capitalized_entities ? "true" : "false");
      break;
    case Stage::kBuild:
      add("endpoint", c.endpoint);
      add("resource_base", c.resource_base);
      add("offline", c.offline ? "true" : "false");
      break;
    case Stage::kEnrich:
      add("resource_base", c.resource_base);
      add("ontology", FileHash(c.ontology));
      add("nrc_lexicon", FileHash(c.nrc_lexicon));
      add("mrc_table", FileHash(c.mrc_table));
      break;
    case Stage::kWalks:
      add("walk_depth", std::to_string(c.walk_depth));
      add("walks_per_entity", std::to_string(c.walks_per_entity));
      add("seed", std::to_string(c.seed));
      break;
    case Stage::kEmbed:
      add("embed_dim", std::to_string(c.embed_dim));
      add("embed_window", std::to_string(c.embed_window));
      add("embed_negatives", std::to_string(c.embed_negatives));
      add("embed_epochs", std::to_string(c.embed_epochs));
      add("embed_lr", io::FormatReal(c.embed_lr));
      add("seed", std::to_string(c.seed));
      break;
    case Stage::kAssemble:
      add("vocab_size", std::to_string(c.vocab_size));
      break;
    case Stage::kTrain: {
      add("corpus", FileHash(c.corpus));
      std::vector<std::string> archs;
      for (auto a : c.architectures) archs.emplace_back(nn::ArchitectureName(a));
      add("architectures", Join(archs, ","));
      text += nn::FormatModelConfig(c.model);
      add("split_ratio", io::FormatReal(c.train.split_ratio));
      add("epochs", std::to_string(c.train.epochs));
      add("batch_size", std::to_string(c.train.batch_size));
      add("lr", io::FormatReal(c.train.lr));
      add("patience", std::to_string(c.train.patience));
      add("folds", std::to_string(c.train.folds));
      add("threshold", io::FormatReal(c.train.threshold));
      add("seed", std::to_string(c.seed));
      break;
    }
    case Stage::kEval:
      add("corpus", FileHash(c.corpus));
      break;
  }
  for (Stage up : Upstream(s)) {
    const StageRecord* rec = manifest.Find(std::string(StageName(up)));
    if (rec == nullptr) throw StageError("requires stage: " + std::string(StageName(up)));
    add("upstream." + std::string(StageName(up)), rec->fingerprint + ":" + OutputsDigest(*rec));
  }
  return io::Sha256Hex(text);
}

void Pipeline::CheckUpstream(Stage stage, const Manifest& manifest) const {
  for (Stage up : Upstream(stage)) {
    const std::string name(StageName(up));
    const StageRecord* rec = manifest.Find(name);
    if (rec == nullptr) throw StageError("requires stage: " + name);
    if (auto bad = FirstMismatch(StageDir(up), rec->outputs)) {
      throw StageError("stale cache: output " + name + "/" + *bad +
                       " is missing or was modified; rerun `run " + name + "` (or `run all`)");
    }
    CheckUpstream(up, manifest);
    if (Fingerprint(up, manifest) != rec->fingerprint) {
      throw StageError("stale cache: stage " + name +
                       " was produced from different inputs or config; rerun `run " + name + "` (or `run all`)");
    }
  }
}

StageOutcome Pipeline::Run(Stage stage) {
  DirectoryLock lock(config_.output_dir);
  return RunLocked(stage);
}

std::vector<StageOutcome> Pipeline::RunAll() {
  DirectoryLock lock(config_.output_dir);
  std::vector<StageOutcome> out;
  for (Stage s : kAllStages) out.push_back(RunLocked(s));
  return out;
}

StageOutcome Pipeline::RunLocked(Stage stage) {
  const std::string name(StageName(stage));
  try {
    Manifest manifest = Manifest::Load(ManifestPath());
    CheckUpstream(stage, manifest);
    const std::string fingerprint = Fingerprint(stage, manifest);
    const StageRecord* existing = manifest.Find(name);
    if (existing != nullptr && existing->fingerprint == fingerprint &&
        !FirstMismatch(StageDir(stage), existing->outputs)) {
      Log(stage, "up to date (cache hit)");
      return {stage, true};
    }
    Log(stage, "running");
    const fs::path staging = config_.output_dir / ".staging" / name;
    fs::remove_all(staging);
    fs::create_directories(staging);
    Execute(stage, staging);

    StageRecord rec;
    rec.fingerprint = fingerprint;
    rec.outputs = HashTree(staging);
    const fs::path final_dir = StageDir(stage);
    const fs::path retired = config_.output_dir / ".staging" / (name + ".old");
    fs::remove_all(retired);
    if (fs::exists(final_dir)) fs::rename(final_dir, retired);
    fs::rename(staging, final_dir);
    fs::remove_all(retired);
    manifest.Set(name, std::move(rec));
    manifest.Save(ManifestPath());
    Log(stage, "done");
    return {stage, false};
  } catch (const StageError& e) {
    throw StageError(name + ": " + e.what());
  } catch (const std::exception& e) {
    throw StageError(name + ": " + e.what());
  }
}

void Pipeline::Execute(Stage stage, const fs::path& out) {
  switch (stage) {
    case Stage::kStats: return RunStats(out);
    case Stage::kPreprocess: return RunPreprocess(out);
    case Stage::kBuild: return RunBuild(out);
    case Stage::kEnrich: return RunEnrich(out);
    case Stage::kWalks: return RunWalks(out);
    case Stage::kEmbed: return RunEmbed(out);
    case Stage::kAssemble: return RunAssemble(out);
    case Stage::kTrain: return RunTrain(out);
    case Stage::kEval: return RunEval(out);
  }
}

// ------------------------------------------------------------------ stages

void Pipeline::RunStats(const fs::path& out) {
  RequireFile(config_.corpus, "corpus");
  const Corpus corpus = LoadEssays(config_.corpus, ColumnMap{});
  const CorpusStats stats = ComputeStats(corpus);
  io::WriteFileAtomic(out / "summary.txt", FormatStatsReport(stats, corpus.size()));
  io::WriteFileAtomic(out / "distribution.tsv", FormatDistributionTable(stats));
  io::WriteFileAtomic(out / "correlation.tsv", FormatCorrelationTable(stats));
  io::WriteFileAtomic(out / "intersections.tsv", FormatIntersectionTable(stats));
  Log(Stage::kStats, std::to_string(corpus.size()) + " essays");
}

void Pipeline::RunPreprocess(const fs::path& out) {
  RequireFile(config_.corpus, "corpus");
  RequireFile(config_.stopwords, "stopwords");
  RequireFile(config_.lemmas, "lemmas");
  RequireFile(config_.gazetteer, "gazetteer");
  const Corpus corpus = LoadEssays(config_.corpus, ColumnMap{});
  PreprocessResources res;
  res.stopwords = config_.stopwords.empty() ? DefaultStopwords() : LoadStopwords(config_.stopwords);
  if (!config_.lemmas.empty()) res.lemmas = LoadLemmaTable(config_.lemmas);
  if (!config_.gazetteer.empty()) res.gazetteer = LoadGazetteer(config_.gazetteer);
  res.entity_options.capitalized_spans = config_.capitalized_entities;
  const DefaultAnalyzer analyzer(std::move(res));
  std::vector<ConceptSet> sets;
  std::size_t total = 0;
  for (const auto& essay : corpus) {
    sets.push_back(analyzer.BuildConceptSet(essay));
    total += sets.back().concepts.size();
  }
  io::WriteFileAtomic(out / "concepts.tsv", FormatConcepts(sets));
  Log(Stage::kPreprocess, std::to_string(corpus.size()) + " essays, " + std::to_string(total) + " concepts");
}

void Pipeline::RunBuild(const fs::path& out) {
  const auto sets = ParseConcepts(StageDir(Stage::kPreprocess) / "concepts.tsv");
  std::unique_ptr<ConceptResolver> resolver;
  if (config_.offline) {
    resolver = std::make_unique<CacheOnlyResolver>(config_.cache_dir, config_.resource_base);
  } else {
    SparqlOptions opts;
    opts.endpoint = config_.endpoint;
    opts.base_iri = config_.resource_base;
    opts.requests_per_second = config_.requests_per_second;
    resolver = std::make_unique<SparqlResolver>(opts, config_.cache_dir);
  }
  BuildOptions options;
  options.parallelism = config_.build_parallelism;
  fs::create_directories(out / "graphs");
  std::string unresolved;
  std::size_t resolved = 0, requested = 0, triples = 0;
  for (const auto& set : sets) {
    BuildResult r = BuildGraph(set, *resolver, options);
    for (const auto& w : r.warnings) Log(Stage::kBuild, set.essay_id + ": " + w);
    for (const auto& u : r.unresolved) {
      unresolved += io::PercentEncode(set.essay_id) + "\t" + u.key + "\t" + u.detail + "\n";
    }
    requested += set.concepts.size();
    resolved += set.concepts.size() - r.unresolved.size();
    triples += r.graph.size();
    io::WriteFileAtomic(out / "graphs" / EssayFile(set.essay_id, ".nt"), r.graph.Serialize());
  }
  io::WriteFileAtomic(out / "unresolved.tsv", unresolved);
  Log(Stage::kBuild, std::to_string(resolved) + "/" + std::to_string(requested) + " concepts resolved, " +
                         std::to_string(triples) + " triples; misses listed in unresolved.tsv");
  if (requested > 0 && resolved == 0) {
    throw FetchError(config_.offline ? "no concept could be resolved offline; the triple cache at " +
                                           config_.cache_dir.string() + " is cold (run online once or supply cache files)"
                                     : "no concept could be resolved from " + config_.endpoint);
  }
}

void Pipeline::RunEnrich(const fs::path& out) {
  RequireFile(config_.ontology, "ontology");
  RequireFile(config_.nrc_lexicon, "nrc_lexicon");
  RequireFile(config_.mrc_table, "mrc_table");
  const auto sets = ParseConcepts(StageDir(Stage::kPreprocess) / "concepts.tsv");
  EnrichNamespaces ns;
  ns.resource = config_.resource_base;
  std::optional<OntologySource> ontology;
  std::optional<EmotionLexicon> nrc;
  std::optional<PsycholinguisticTable> mrc;
  if (!config_.ontology.empty()) ontology = OntologySource::Load(config_.ontology);
  else Log(Stage::kEnrich, "no ontology configured; ontology enrichment skipped");
  if (!config_.nrc_lexicon.empty()) nrc = LoadNrcLexicon(config_.nrc_lexicon);
  else Log(Stage::kEnrich, "no NRC lexicon configured; emotion enrichment skipped");
  if (!config_.mrc_table.empty()) mrc = LoadMrcTable(config_.mrc_table, MrcSchema::Default());
  else Log(Stage::kEnrich, "no MRC table configured; psycholinguistic enrichment skipped");
  fs::create_directories(out / "graphs");
  std::size_t before = 0, after = 0;
  for (const auto& set : sets) {
    KnowledgeGraph g = LoadGraph(StageDir(Stage::kBuild) / "graphs" / EssayFile(set.essay_id, ".nt"));
    before += g.size();
    if (ontology) g = EnrichOntology(g, set, *ontology, ns);
    if (nrc) g = EnrichNrc(g, set, *nrc, ns);
    if (mrc) g = EnrichMrc(g, set, *mrc, ns);
    after += g.size();
    io::WriteFileAtomic(out / "graphs" / EssayFile(set.essay_id, ".nt"), g.Serialize());
  }
  Log(Stage::kEnrich, std::to_string(before) + " -> " + std::to_string(after) + " triples");
}

void Pipeline::RunWalks(const fs::path& out) {
  const auto sets = ParseConcepts(StageDir(Stage::kPreprocess) / "concepts.tsv");
  KnowledgeGraph all;
  for (const auto& set : sets) {
    all.Merge(LoadGraph(StageDir(Stage::kEnrich) / "graphs" / EssayFile(set.essay_id, ".nt")));
  }
  WalkOptions opts;
  opts.max_depth = config_.walk_depth;
  opts.walks_per_entity = config_.walks_per_entity;
  opts.seed = DeriveSeed(config_.seed, "walks");
  opts.threads = config_.walk_threads;
  const auto walks = GenerateWalks(all, opts);
  if (walks.empty()) throw DomainError("the enriched graphs are empty; nothing to walk");
  io::WriteFileAtomic(out / "walks.txt", FormatWalks(walks));
  Log(Stage::kWalks, std::to_string(walks.size()) + " walks over " + std::to_string(all.size()) + " triples");
}

void Pipeline::RunEmbed(const fs::path& out) {
  const auto walks = ParseWalks(io::ReadFile(StageDir(Stage::kWalks) / "walks.txt"));
  SkipGramOptions opts;
  opts.dim = config_.embed_dim;
  opts.window = config_.embed_window;
  opts.negatives = config_.embed_negatives;
  opts.epochs = config_.embed_epochs;
  opts.lr = config_.embed_lr;
  opts.seed = DeriveSeed(config_.seed, "embed");
  SkipGramStats stats;
  const auto table = TrainSkipGram(walks, opts, &stats);
  io::WriteFileAtomic(out / "embeddings.txt", table.Format());
  Log(Stage::kEmbed, std::to_string(table.size()) + " tokens, mean pair loss " +
                         io::FormatReal(stats.mean_loss_first_epoch) + " -> " +
                         io::FormatReal(stats.mean_loss_last_epoch));
}

void Pipeline::RunAssemble(const fs::path& out) {
  const auto sets = ParseConcepts(StageDir(Stage::kPreprocess) / "concepts.tsv");
  const auto table = EmbeddingTable::Parse(io::ReadFile(StageDir(Stage::kEmbed) / "embeddings.txt"));
  std::vector<KnowledgeGraph> graphs;
  for (const auto& set : sets) {
    graphs.push_back(LoadGraph(StageDir(Stage::kEnrich) / "graphs" / EssayFile(set.essay_id, ".nt")));
  }
  std::vector<const KnowledgeGraph*> ptrs;
  for (const auto& g : graphs) ptrs.push_back(&g);
  std::vector<std::string> warnings;
  const auto vocab = SelectVocabulary(CountVertexOccurrences(ptrs), config_.vocab_size, &warnings);
  for (const auto& w : warnings) Log(Stage::kAssemble, w);
  std::string vocab_text;
  for (const auto& v : vocab) vocab_text += EscapeToken(v) + "\n";
  io::WriteFileAtomic(out / "vocab.txt", vocab_text);
  fs::create_directories(out / "matrices");
  std::size_t present = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto m = AssembleMatrix(sets[i].essay_id, graphs[i], table, vocab);
    present += m.present_rows();
    io::WriteFileAtomic(out / "matrices" / EssayFile(sets[i].essay_id, ".kgm"), m.Serialize());
  }
  Log(Stage::kAssemble, std::to_string(sets.size()) + " matrices of " + std::to_string(vocab.size()) + "x" +
                            std::to_string(table.dim()) + ", mean present rows " +
                            io::FormatReal(sets.empty() ? 0.0 : static_cast<double>(present) / sets.size()));
}

namespace {

Dataset LoadDataset(const Corpus& corpus, const fs::path& matrices) {
  Dataset d;
  for (const auto& essay : corpus) {
    d.inputs.push_back(EmbeddingMatrix::Deserialize(io::ReadFile(matrices / EssayFile(essay.id, ".kgm"))));
    d.labels.push_back(essay.labels);
  }
  d.Validate();
  return d;
}

TrainConfig StageTrainConfig(const PipelineConfig& c) {
  TrainConfig t = c.train;
  t.seed = DeriveSeed(c.seed, "train");
  return t;
}

nn::ModelConfig ArchConfig(const PipelineConfig& c, nn::Architecture a, std::size_t dim) {
  nn::ModelConfig m = c.model;
  m.architecture = a;
  m.input_dim = dim;
  return m;
}

}  // namespace

void Pipeline::RunTrain(const fs::path& out) {
  const Corpus corpus = LoadEssays(config_.corpus, ColumnMap{});
  const Dataset data = LoadDataset(corpus, StageDir(Stage::kAssemble) / "matrices");
  const TrainConfig tc = StageTrainConfig(config_);
  const Split split = SplitTrainTest(data.size(), tc.split_ratio, DeriveSeed(config_.seed, "split"));
  std::vector<ArchitectureResult> results;
  for (auto arch : config_.architectures) {
    const std::string name(nn::ArchitectureName(arch));
    Log(Stage::kTrain, name + ": " + std::to_string(tc.folds) + "-fold CV on " + std::to_string(split.train.size()) +
                           " essays");
    auto r = RunArchitecture(ArchConfig(config_, arch, data.dim()), tc, data, split);
    const auto& best = r.folds[r.selected_fold].history;
    Log(Stage::kTrain, name + ": selected fold " + std::to_string(r.selected_fold) + " (best epoch " +
                           std::to_string(best.best_epoch) + ", val loss " + io::FormatReal(best.best_val_loss) + ")");
    nn::SaveCheckpoint(*r.model, out / (name + ".ckpt"));
    io::WriteFileAtomic(out / (name + ".summary.json"), FormatTrainingSummary(r));
    results.push_back(std::move(r));
  }
  io::WriteFileAtomic(out / "history.tsv", FormatHistory(results));
}

void Pipeline::RunEval(const fs::path& out) {
  const Corpus corpus = LoadEssays(config_.corpus, ColumnMap{});
  const Dataset data = LoadDataset(corpus, StageDir(Stage::kAssemble) / "matrices");
  const TrainConfig tc = StageTrainConfig(config_);
  const Split split = SplitTrainTest(data.size(), tc.split_ratio, DeriveSeed(config_.seed, "split"));
  std::vector<TraitLabels> gold, reference;
  for (auto i : split.test) gold.push_back(data.labels[i]);
  for (auto i : split.train) reference.push_back(data.labels[i]);
  std::vector<ArchitectureResult> results;
  std::string predictions = "essay_id\tarchitecture";
  for (Trait t : kAllTraits) predictions += "\tp_" + std::string(TraitSymbol(t));
  for (Trait t : kAllTraits) predictions += "\t" + std::string(TraitSymbol(t));
  predictions += "\n";
  for (auto arch : config_.architectures) {
    const std::string name(nn::ArchitectureName(arch));
    const fs::path ckpt = StageDir(Stage::kTrain) / (name + ".ckpt");
    if (!fs::exists(ckpt)) throw StageError("requires stage: train (no checkpoint for " + name + ")");
    auto r = ParseTrainingSummary(io::ReadFile(StageDir(Stage::kTrain) / (name + ".summary.json")));
    r.model = nn::LoadCheckpoint(ckpt);
    const auto probs = PredictProbabilities(*r.model, data, split.test, tc.batch_size);
    std::vector<TraitLabels> predicted;
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      std::span<const double> row(probs.data() + i * kTraitCount, kTraitCount);
      predicted.push_back(PredictLabels(row, tc.threshold));
      predictions += io::PercentEncode(data.inputs[split.test[i]].essay_id) + "\t" + name;
      for (double p : row) predictions += "\t" + io::FormatReal(p);
      for (Trait t : kAllTraits) predictions += std::string("\t") + (predicted.back().get(t) ? "1" : "0");
      predictions += "\n";
    }
    r.held_out = EvaluateLabels(gold, predicted);
    r.baseline = MajorityBaseline(reference, gold);
    Log(Stage::kEval, name + ": held-out average accuracy " + io::FormatReal(r.held_out.average.accuracy));
    results.push_back(std::move(r));
  }
  std::vector<std::string> ids;
  for (const auto& m : data.inputs) ids.push_back(m.essay_id);
  io::WriteFileAtomic(out / "report.json", FormatJsonReport(results, tc, split, ids));
  io::WriteFileAtomic(out / "table_held_out.tsv", FormatMetricTable(results, false));
  io::WriteFileAtomic(out / "table_cv_mean.tsv", FormatMetricTable(results, true));
  io::WriteFileAtomic(out / "predictions.tsv", predictions);
}

}  // namespace kgapp
