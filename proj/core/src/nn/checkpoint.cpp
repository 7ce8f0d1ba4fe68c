#include "kgapp/nn/checkpoint.hpp"

#include <bit>
#include <charconv>
#include <map>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp::nn {

namespace {

constexpr std::string_view kMagic = "KGCKPT01";

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t Unsigned(int width) {
    Need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string_view Bytes(std::size_t n) {
    Need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ParseError("truncated checkpoint", ParseError::Unit::kByte, pos_);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::size_t ParseSize(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw ConfigError("model config: bad integer for " + std::string(key));
  }
  return out;
}

}  // namespace

std::string FormatModelConfig(const ModelConfig& c) {
  std::string out;
  out += "architecture=" + std::string(ArchitectureName(c.architecture)) + "\n";
  out += "stack_depth=" + std::to_string(c.stack_depth) + "\n";
  out += "filters=" + std::to_string(c.filters) + "\n";
  out += "kernel=" + std::to_string(c.kernel) + "\n";
  out += "hidden_units=" + std::to_string(c.hidden_units) + "\n";
  out += "dropout_rate=" + io::FormatReal(c.dropout_rate) + "\n";
  out += "dense_hidden=" + std::to_string(c.dense_hidden) + "\n";
  out += "output_heads=" + std::to_string(c.output_heads) + "\n";
  out += "input_dim=" + std::to_string(c.input_dim) + "\n";
  return out;
}

ModelConfig ParseModelConfig(std::string_view text) {
  ModelConfig c;
  for (std::string_view line : io::Split(text, '\n')) {
    line = io::Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("model config: missing '=' in " + std::string(line));
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    if (key == "architecture") {
      c.architecture = ParseArchitecture(value);
    } else if (key == "stack_depth") {
      c.stack_depth = ParseSize(key, value);
    } else if (key == "filters") {
      c.filters = ParseSize(key, value);
    } else if (key == "kernel") {
      c.kernel = ParseSize(key, value);
    } else if (key == "hidden_units") {
      c.hidden_units = ParseSize(key, value);
    } else if (key == "dropout_rate") {
      c.dropout_rate = std::stod(std::string(value));
    } else if (key == "dense_hidden") {
      c.dense_hidden = ParseSize(key, value);
    } else if (key == "output_heads") {
      c.output_heads = ParseSize(key, value);
    } else if (key == "input_dim") {
      c.input_dim = ParseSize(key, value);
    } else {
      throw ConfigError("model config: unknown key " + std::string(key));
    }
  }
  c.Validate();
  return c;
}

std::string SerializeCheckpoint(Model& model) {
  std::string out(kMagic);
  const std::string config = FormatModelConfig(model.config());
  PutU32(out, static_cast<std::uint32_t>(config.size()));
  out += config;
  const auto tensors = model.Tensors();
  PutU32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const NamedTensor& t : tensors) {
    PutU32(out, static_cast<std::uint32_t>(t.name.size()));
    out += t.name;
    PutU32(out, static_cast<std::uint32_t>(t.tensor->rank()));
    for (std::size_t d : t.tensor->shape()) PutU64(out, d);
    for (double v : t.tensor->values()) PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

std::unique_ptr<Model> DeserializeCheckpoint(std::string_view bytes) {
  ByteReader in(bytes);
  if (in.Bytes(kMagic.size()) != kMagic) throw ParseError("not a model checkpoint", ParseError::Unit::kByte, 0);
  const auto config_len = static_cast<std::size_t>(in.Unsigned(4));
  auto model = std::make_unique<Model>(ParseModelConfig(in.Bytes(config_len)), 0);
  std::map<std::string, Tensor*, std::less<>> slots;
  for (const NamedTensor& t : model->Tensors()) slots.emplace(t.name, t.tensor);
  const auto count = static_cast<std::size_t>(in.Unsigned(4));
  if (count != slots.size()) {
    throw ParseError("checkpoint has " + std::to_string(count) + " tensors, model expects " +
                         std::to_string(slots.size()),
                     ParseError::Unit::kByte, in.pos());
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = in.pos();
    const std::string name(in.Bytes(static_cast<std::size_t>(in.Unsigned(4))));
    auto it = slots.find(name);
    if (it == slots.end()) throw ParseError("unexpected tensor " + name, ParseError::Unit::kByte, at);
    const auto rank = static_cast<std::size_t>(in.Unsigned(4));
    Shape shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(in.Unsigned(8));
    ExpectShape(shape, it->second->shape(), "checkpoint tensor " + name);
    for (auto& v : it->second->values()) {
      v = static_cast<double>(std::bit_cast<float>(static_cast<std::uint32_t>(in.Unsigned(4))));
    }
  }
  if (!in.done()) throw ParseError("trailing bytes after checkpoint", ParseError::Unit::kByte, in.pos());
  return model;
}

void SaveCheckpoint(Model& model, const std::filesystem::path& path) {
  io::WriteFileAtomic(path, SerializeCheckpoint(model));
}

std::unique_ptr<Model> LoadCheckpoint(const std::filesystem::path& path) {
  return DeserializeCheckpoint(io::ReadFile(path));
}

}  // namespace kgapp::nn
