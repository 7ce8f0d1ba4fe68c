#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgapp/config.hpp"
#include "kgapp/manifest.hpp"

namespace kgapp {

enum class Stage { kPreprocess, kBuild, kEnrich, kWalks, kEmbed, kAssemble, kTrain, kEval, kStats };

inline constexpr std::array<Stage, 9> kAllStages = {Stage::kStats,  Stage::kPreprocess, Stage::kBuild,
                                                    Stage::kEnrich, Stage::kWalks,      Stage::kEmbed,
                                                    Stage::kAssemble, Stage::kTrain,    Stage::kEval};

std::string_view StageName(Stage s);
std::optional<Stage> ParseStage(std::string_view name);
// Direct prerequisites; empty for preprocess and stats.
std::vector<Stage> Upstream(Stage s);

using LogSink = std::function<void(std::string_view stage, std::string_view message)>;

struct StageOutcome {
  Stage stage;
  bool cache_hit = false;
};

// Exclusive advisory lock on `<dir>/.lock`; throws StageError when held.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

// Stage outputs live in `<output_dir>/<stage>/`; `<output_dir>/manifest.json`
// records what produced them. Failures surface as StageError prefixed with
// the stage name.
class Pipeline {
 public:
  Pipeline(PipelineConfig config, LogSink log = {});

  StageOutcome Run(Stage stage);
  // Every stage in dependency order, stats first.
  std::vector<StageOutcome> RunAll();

  const PipelineConfig& config() const noexcept { return config_; }
  std::filesystem::path StageDir(Stage s) const;
  std::filesystem::path ManifestPath() const;
  // Fingerprint the stage would have if run now; needs upstream records.
  std::string Fingerprint(Stage s, const Manifest& manifest) const;

 private:
  StageOutcome RunLocked(Stage stage);
  void CheckUpstream(Stage stage, const Manifest& manifest) const;
  void Execute(Stage stage, const std::filesystem::path& out);
  void Log(Stage s, std::string_view message) const;

  void RunStats(const std::filesystem::path& out);
  void RunPreprocess(const std::filesystem::path& out);
  void RunBuild(const std::filesystem::path& out);
  void RunEnrich(const std::filesystem::path& out);
  void RunWalks(const std::filesystem::path& out);
  void RunEmbed(const std::filesystem::path& out);
  void RunAssemble(const std::filesystem::path& out);
  void RunTrain(const std::filesystem::path& out);
  void RunEval(const std::filesystem::path& out);

  PipelineConfig config_;
  LogSink log_;
};

}  // namespace kgapp
