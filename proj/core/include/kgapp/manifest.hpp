#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace kgapp {

// Output files of a stage (relative path -> SHA-256) and the fingerprint of
// the inputs that produced them.
struct StageRecord {
  std::string fingerprint;
  std::map<std::string, std::string> outputs;

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

class Manifest {
 public:
  // Missing file: empty manifest.
  static Manifest Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  std::string Serialize() const;
  static Manifest Parse(std::string_view json);

  const StageRecord* Find(const std::string& stage) const;
  void Set(const std::string& stage, StageRecord record) { stages_[stage] = std::move(record); }
  void Erase(const std::string& stage) { stages_.erase(stage); }
  const std::map<std::string, StageRecord>& stages() const noexcept { return stages_; }

 private:
  std::map<std::string, StageRecord> stages_;
};

// SHA-256 of every regular file under `dir`, keyed by relative path.
std::map<std::string, std::string> HashTree(const std::filesystem::path& dir);
// Empty when every file exists with the recorded hash, else the first
// offending relative path.
std::optional<std::string> FirstMismatch(const std::filesystem::path& dir,
                                         const std::map<std::string, std::string>& expected);

}  // namespace kgapp
