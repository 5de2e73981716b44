// SPDX-License-Identifier: Apache-2.0
//
// Checkpoint byte layout (all integers little-endian):
//
//   magic       8 bytes  "SUMAUGCK"
//   version     u32      kCheckpointVersion
//   header_len  u64
//   header      header_len bytes of UTF-8 JSON:
//                 {"version", "config": {...}, "step", "val_rouge", "vocab": [...]}
//   count       u64      number of parameter arrays
//   repeated count times:
//     name_len  u32
//     name      name_len bytes
//     rows      u64
//     cols      u64
//     data      rows*cols IEEE-754 binary64, row-major
#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "sumaug/error.hpp"
#include "sumaug/model.hpp"

namespace sumaug {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'S', 'U', 'M', 'A', 'U', 'G', 'C', 'K'};

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof value)) throw DataError("truncated checkpoint");
  return value;
}

nlohmann::ordered_json config_to_json(const ModelConfig& c) {
  return {{"width", c.width},
          {"encoder_layers", c.encoder_layers},
          {"decoder_layers", c.decoder_layers},
          {"attention_heads", c.attention_heads},
          {"feedforward_width", c.feedforward_width},
          {"max_src_len", c.max_src_len},
          {"max_tgt_len", c.max_tgt_len},
          {"seed", c.seed}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.width = j.at("width").get<int>();
  c.encoder_layers = j.at("encoder_layers").get<int>();
  c.decoder_layers = j.at("decoder_layers").get<int>();
  c.attention_heads = j.at("attention_heads").get<int>();
  c.feedforward_width = j.at("feedforward_width").get<int>();
  c.max_src_len = j.at("max_src_len").get<int>();
  c.max_tgt_len = j.at("max_tgt_len").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  nlohmann::ordered_json header;
  header["version"] = kCheckpointVersion;
  header["config"] = config_to_json(ckpt.config);
  header["step"] = ckpt.step;
  header["val_rouge"] = ckpt.val_rouge;
  header["vocab"] = ckpt.vocab_tokens;
  const std::string text = header.dump();

  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  put<std::uint64_t>(out, ckpt.params.size());
  for (const auto& [name, value] : ckpt.params) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(value.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(value.cols()));
    out.write(reinterpret_cast<const char*>(value.data()),
              static_cast<std::streamsize>(value.size() * sizeof(double)));
  }
  if (!out) throw DataError("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw DataError(path.string() + " is not a checkpoint");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto header_len = get<std::uint64_t>(in);
  std::string text(header_len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(header_len))) throw DataError("truncated checkpoint");

  Checkpoint ckpt;
  try {
    const auto header = nlohmann::json::parse(text);
    ckpt.config = config_from_json(header.at("config"));
    ckpt.step = header.at("step").get<std::size_t>();
    ckpt.val_rouge = header.at("val_rouge").get<double>();
    ckpt.vocab_tokens = header.at("vocab").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad checkpoint header: ") + e.what());
  }
  const auto count = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto name_len = get<std::uint32_t>(in);
    std::string name(name_len, '\0');
    if (!in.read(name.data(), name_len)) throw DataError("truncated checkpoint");
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    Mat value(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (!in.read(reinterpret_cast<char*>(value.data()),
                 static_cast<std::streamsize>(rows * cols * sizeof(double)))) {
      throw DataError("truncated checkpoint");
    }
    ckpt.params.emplace_back(std::move(name), std::move(value));
  }
  return ckpt;
}

}  // namespace sumaug
