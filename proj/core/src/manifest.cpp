#include "kgapp/manifest.hpp"

#include <json.hpp>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp {

Manifest Manifest::Load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return Parse(io::ReadFile(path));
}

void Manifest::Save(const std::filesystem::path& path) const { io::WriteFileAtomic(path, Serialize()); }

std::string Manifest::Serialize() const {
  nlohmann::ordered_json j;
  j["format"] = "kgapp-manifest-1";
  nlohmann::ordered_json stages = nlohmann::ordered_json::object();
  for (const auto& [name, rec] : stages_) {
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const auto& [file, hash] : rec.outputs) outputs[file] = hash;
    stages[name] = {{"fingerprint", rec.fingerprint}, {"outputs", outputs}};
  }
  j["stages"] = stages;
  return j.dump(2) + "\n";
}

Manifest Manifest::Parse(std::string_view text) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "kgapp-manifest-1") throw IoError("unsupported manifest format");
    for (const auto& [name, rec] : j.at("stages").items()) {
      StageRecord r;
      r.fingerprint = rec.at("fingerprint").get<std::string>();
      for (const auto& [file, hash] : rec.at("outputs").items()) r.outputs[file] = hash.get<std::string>();
      m.stages_[name] = std::move(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("corrupt manifest: ") + e.what());
  }
  return m;
}

const StageRecord* Manifest::Find(const std::string& stage) const {
  auto it = stages_.find(stage);
  return it == stages_.end() ? nullptr : &it->second;
}

std::map<std::string, std::string> HashTree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    out[entry.path().lexically_relative(dir).generic_string()] = io::Sha256File(entry.path());
  }
  return out;
}

std::optional<std::string> FirstMismatch(const std::filesystem::path& dir,
                                         const std::map<std::string, std::string>& expected) {
  for (const auto& [file, hash] : expected) {
    const auto p = dir / file;
    if (!std::filesystem::is_regular_file(p) || io::Sha256File(p) != hash) return file;
  }
  return std::nullopt;
}

}  // namespace kgapp
