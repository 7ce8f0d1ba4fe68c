// kgapp run <stage>|all --config <file> [--offline] [--seed N] [--arch A]
//
// Exit status: 0 success, 1 usage or configuration error, 2 stage failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kgapp/config.hpp"
#include "kgapp/error.hpp"
#include "kgapp/pipeline.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kStageFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-graph personality prediction pipeline"};
  app.require_subcommand(1);

  std::string target;
  std::string config_path;
  bool offline = false;
  std::optional<std::uint64_t> seed;
  std::string arch;

  auto* run = app.add_subcommand("run", "Run one stage, or all of them in order");
  std::string stages = "all";
  for (auto s : kgapp::kAllStages) stages += "|" + std::string(kgapp::StageName(s));
  run->add_option("target", target, stages)->required();
  run->add_option("--config,-c", config_path, "Pipeline configuration file")->required();
  run->add_flag("--offline", offline, "Resolve concepts from the triple cache only");
  run->add_option("--seed", seed, "Override the global seed");
  run->add_option("--arch", arch, "cnn, rnn, lstm, bilstm or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  auto log = [](std::string_view stage, std::string_view message) {
    std::cerr << "[" << stage << "] " << message << "\n";
  };

  std::optional<kgapp::Stage> stage;
  if (target != "all") {
    stage = kgapp::ParseStage(target);
    if (!stage) {
      std::cerr << "kgapp: unknown stage '" << target << "' (expected " << stages << ")\n";
      return kUsageError;
    }
  }

  std::unique_ptr<kgapp::Pipeline> pipeline;
  try {
    kgapp::PipelineConfig config = kgapp::LoadConfig(config_path);
    if (offline) config.offline = true;
    if (seed) config.seed = *seed;
    if (!arch.empty()) config.architectures = kgapp::ParseArchitectureList(arch);
    pipeline = std::make_unique<kgapp::Pipeline>(std::move(config), log);
  } catch (const std::exception& e) {
    std::cerr << "kgapp: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (stage) {
      pipeline->Run(*stage);
    } else {
      pipeline->RunAll();
      log("all", "report: " + (pipeline->StageDir(kgapp::Stage::kEval) / "report.json").string());
    }
  } catch (const std::exception& e) {
    std::cerr << "[" << (stage ? kgapp::StageName(*stage) : "all") << "] error: " << e.what() << "\n";
    return kStageFailure;
  }
  return 0;
}
