#include <fstream>

#include <gtest/gtest.h>

#include "kgapp/config.hpp"
#include "kgapp/error.hpp"
#include "kgapp/io.hpp"
#include "kgapp/manifest.hpp"
#include "kgapp/pipeline.hpp"
#include "test_support.hpp"

namespace kgapp {
namespace {

namespace fs = std::filesystem;

// Toy config relocated into `dir`, with a short single-architecture run.
fs::path ToyConfig(const testing::TempDir& dir, const std::string& extra = {}) {
  const auto path = testing::RelocateConfig(testing::ToyDir() / "toy.conf", dir / "out", dir / "toy.conf");
  std::ofstream(path, std::ios::app) << "architectures = cnn\nepochs = 2\nembed_epochs = 1\n" << extra;
  return path;
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Config, UnknownKeyReportsLine) {
  try {
    ParseConfig("corpus = a.csv\n\n# note\nwalk_dept = 3\n", "/tmp");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.unit(), ParseError::Unit::kLine);
    EXPECT_EQ(e.position(), 4u);
    EXPECT_TRUE(Contains(e.what(), "walk_dept")) << e.what();
  }
}

TEST(Config, BadValueReportsLine) {
  try {
    ParseConfig("corpus = a.csv\nepochs = many\n", "/tmp");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Config, RelativePathsResolveAgainstBase) {
  const auto c = ParseConfig("corpus = data/e.csv\noutput_dir = /abs/out\narchitectures = lstm,cnn\n", "/base");
  EXPECT_EQ(c.corpus, fs::path("/base/data/e.csv"));
  EXPECT_EQ(c.output_dir, fs::path("/abs/out"));
  EXPECT_EQ(c.architectures, (std::vector<nn::Architecture>{nn::Architecture::kLstm, nn::Architecture::kCnn}));
  EXPECT_THROW(ParseArchitectureList("cnn,gru"), ConfigError);
}

TEST(Config, ToyConfigValidates) { EXPECT_NO_THROW(LoadConfig(testing::ToyDir() / "toy.conf").Validate()); }

TEST(Stages, NamesRoundTrip) {
  for (Stage s : kAllStages) EXPECT_EQ(ParseStage(StageName(s)), s);
  EXPECT_FALSE(ParseStage("everything").has_value());
  EXPECT_EQ(kAllStages.front(), Stage::kStats);
  EXPECT_TRUE(Upstream(Stage::kPreprocess).empty());
  EXPECT_EQ(Upstream(Stage::kEmbed), std::vector<Stage>{Stage::kWalks});
}

TEST(Manifest, SerializeParseRoundTrip) {
  Manifest m;
  m.Set("walks", {"abc", {{"walks.txt", "00ff"}, {"sub/x.bin", "12"}}});
  m.Set("build", {"def", {}});
  const auto back = Manifest::Parse(m.Serialize());
  ASSERT_NE(back.Find("walks"), nullptr);
  EXPECT_EQ(*back.Find("walks"), *m.Find("walks"));
  EXPECT_EQ(back.stages(), m.stages());
  EXPECT_EQ(back.Find("embed"), nullptr);
}

TEST(Manifest, MissingFileIsEmptyAndMismatchNamesFile) {
  testing::TempDir dir;
  EXPECT_TRUE(Manifest::Load(dir / "none.json").stages().empty());
  testing::WriteText(dir / "a.txt", "one");
  const auto hashes = HashTree(dir.path());
  EXPECT_FALSE(FirstMismatch(dir.path(), hashes).has_value());
  testing::WriteText(dir / "a.txt", "two");
  EXPECT_EQ(FirstMismatch(dir.path(), hashes), "a.txt");
}

TEST(Pipeline, DownstreamStageFirstNamesMissingStage) {
  testing::TempDir dir;
  Pipeline p(LoadConfig(ToyConfig(dir)));
  try {
    p.Run(Stage::kEmbed);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_TRUE(Contains(e.what(), "requires stage: walks")) << e.what();
  }
}

TEST(Pipeline, RerunIsCacheHitAndStaleInputsAreDetected) {
  testing::TempDir dir;
  const auto config = LoadConfig(ToyConfig(dir));
  Pipeline p(config);
  for (Stage s : {Stage::kPreprocess, Stage::kBuild, Stage::kEnrich, Stage::kWalks}) EXPECT_FALSE(p.Run(s).cache_hit);
  EXPECT_TRUE(p.Run(Stage::kWalks).cache_hit);
  EXPECT_TRUE(p.Run(Stage::kPreprocess).cache_hit);

  // Changed config upstream of embed.
  auto changed = config;
  changed.walk_depth = 3;
  try {
    Pipeline(changed).Run(Stage::kEmbed);
    FAIL() << "expected stale cache";
  } catch (const StageError& e) {
    EXPECT_TRUE(Contains(e.what(), "stale cache")) << e.what();
    EXPECT_TRUE(Contains(e.what(), "walks")) << e.what();
  }

  // Tampered output of an upstream stage.
  const auto concepts = p.StageDir(Stage::kPreprocess) / "concepts.tsv";
  testing::WriteText(concepts, io::ReadFile(concepts) + "\n");
  try {
    p.Run(Stage::kBuild);
    FAIL() << "expected stale cache";
  } catch (const StageError& e) {
    EXPECT_TRUE(Contains(e.what(), "stale cache")) << e.what();
    EXPECT_TRUE(Contains(e.what(), "concepts.tsv")) << e.what();
  }
  EXPECT_FALSE(p.Run(Stage::kPreprocess).cache_hit);
  // Regenerated output is byte-identical, so build's recorded inputs match again.
  EXPECT_TRUE(p.Run(Stage::kBuild).cache_hit);
}

TEST(Pipeline, OfflineColdCacheFailsBuild) {
  testing::TempDir dir;
  fs::create_directories(dir / "empty_cache");
  auto config = LoadConfig(ToyConfig(dir));
  config.cache_dir = dir / "empty_cache";
  Pipeline p(config);
  p.Run(Stage::kPreprocess);
  try {
    p.Run(Stage::kBuild);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_TRUE(Contains(e.what(), "cold")) << e.what();
  }
  EXPECT_EQ(Manifest::Load(p.ManifestPath()).Find("build"), nullptr);
}

TEST(Pipeline, LockExcludesSecondRun) {
  testing::TempDir dir;
  Pipeline p(LoadConfig(ToyConfig(dir)));
  {
    DirectoryLock held(dir / "out");
    EXPECT_THROW(p.Run(Stage::kStats), StageError);
  }
  EXPECT_NO_THROW(p.Run(Stage::kStats));
  EXPECT_TRUE(fs::exists(p.StageDir(Stage::kStats)));
}

TEST(Cli, ExitCodes) {
  testing::TempDir dir;
  const std::string cli = KGAPP_CLI;
  const std::string config = ToyConfig(dir).string();
  const std::string quiet = " >/dev/null 2>&1";
  EXPECT_EQ(testing::RunCommand(cli + quiet), 1);
  EXPECT_EQ(testing::RunCommand(cli + " run bogus --config " + config + quiet), 1);
  EXPECT_EQ(testing::RunCommand(cli + " run stats --config " + (dir / "missing.conf").string() + quiet), 1);
  EXPECT_EQ(testing::RunCommand(cli + " run embed --config " + config + quiet), 2);
  EXPECT_EQ(testing::RunCommand(cli + " run stats --config " + config + quiet), 0);
  EXPECT_TRUE(Contains(io::ReadFile(dir / "out" / "stats" / "summary.txt"), "corpus.size=20"));
}

}  // namespace
}  // namespace kgapp
