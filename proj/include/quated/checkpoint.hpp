/*
 * Copyright (c) 2026 The quated Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Checkpoint layout (all integers and floats little-endian):
//
//   offset 0   8 bytes   magic "QUATEDCK"
//   offset 8   u64       byte length L of the metadata document
//   offset 16  L bytes   metadata, UTF-8 JSON object with keys
//                        format_version, num_entities, num_relations, dim,
//                        seed, scorer, config_hash
//   then       f64[N*k]  entity a, then b, c, d   (index = id * k + coord)
//   then       f64[M*k]  relation a, then b, c, d
//
// Relations are stored exactly as trained (unnormalized).

#ifndef QUATED_CHECKPOINT_HPP
#define QUATED_CHECKPOINT_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quated/embedding.hpp"
#include "quated/scoring.hpp"

namespace quated {

inline constexpr std::array<char, 8> kCheckpointMagic{'Q', 'U', 'A', 'T', 'E', 'D', 'C', 'K'};
inline constexpr int kCheckpointVersion = 1;

struct CheckpointMeta {
  int format_version{kCheckpointVersion};
  std::size_t num_entities{};
  std::size_t num_relations{};
  std::size_t dim{};
  std::uint64_t seed{};
  Scorer scorer{Scorer::quate_d};
  std::string config_hash;

  friend bool operator==(const CheckpointMeta&, const CheckpointMeta&) = default;
};

struct Checkpoint {
  CheckpointMeta meta;
  EmbeddingTable table;
};

namespace detail {

inline void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

inline std::uint64_t get_u64(const unsigned char* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

inline nlohmann::json meta_to_json(const CheckpointMeta& m) {
  return {{"format_version", m.format_version}, {"num_entities", m.num_entities},
          {"num_relations", m.num_relations},   {"dim", m.dim},
          {"seed", m.seed},                     {"scorer", std::string(to_string(m.scorer))},
          {"config_hash", m.config_hash}};
}

}  // namespace detail

inline std::vector<unsigned char> encode_checkpoint(const EmbeddingTable& table, Scorer scorer,
                                                    const std::string& config_hash) {
  CheckpointMeta meta{kCheckpointVersion, table.num_entities(), table.num_relations(), table.dim(),
                      table.seed(),       scorer,               config_hash};
  const std::string header = detail::meta_to_json(meta).dump();

  std::vector<unsigned char> out;
  out.reserve(16 + header.size() + 8 * 4 * (table.num_entities() + table.num_relations()) * table.dim());
  out.insert(out.end(), kCheckpointMagic.begin(), kCheckpointMagic.end());
  detail::put_u64(out, header.size());
  out.insert(out.end(), header.begin(), header.end());
  for (const QuatMatrix* m : {&table.entities(), &table.relations()})
    for (int w = 0; w < 4; ++w)
      for (double x : m->component(w)) detail::put_u64(out, std::bit_cast<std::uint64_t>(x));
  return out;
}

inline Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kCheckpointMagic.data(), 8) != 0)
    throw IoError("not a quated checkpoint");
  const std::uint64_t header_len = detail::get_u64(bytes.data() + 8);
  if (header_len > bytes.size() - 16) throw IoError("truncated checkpoint header");

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(header_len));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad checkpoint metadata: ") + e.what());
  }

  Checkpoint ck;
  try {
    auto& m = ck.meta;
    m.format_version = j.at("format_version").get<int>();
    m.num_entities = j.at("num_entities").get<std::size_t>();
    m.num_relations = j.at("num_relations").get<std::size_t>();
    m.dim = j.at("dim").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.config_hash = j.at("config_hash").get<std::string>();
    const auto scorer = parse_scorer(j.at("scorer").get<std::string>());
    if (!scorer) throw IoError("unknown scorer in checkpoint");
    m.scorer = *scorer;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad checkpoint metadata: ") + e.what());
  }
  const auto& m = ck.meta;
  if (m.format_version != kCheckpointVersion)
    throw IoError("unsupported checkpoint version " + std::to_string(m.format_version));
  if (m.num_entities == 0 || m.num_relations == 0 || m.dim == 0) throw IoError("empty checkpoint dimensions");

  const std::size_t values = 4 * (m.num_entities + m.num_relations) * m.dim;
  if (bytes.size() - 16 - header_len != values * 8) throw IoError("checkpoint payload size does not match metadata");

  ck.table = EmbeddingTable(m.num_entities, m.num_relations, m.dim, m.seed);
  const unsigned char* p = bytes.data() + 16 + header_len;
  for (QuatMatrix* mat : {&ck.table.entities(), &ck.table.relations()})
    for (int w = 0; w < 4; ++w)
      for (double& x : mat->component(w)) {
        x = std::bit_cast<double>(detail::get_u64(p));
        p += 8;
      }
  return ck;
}

inline void save_checkpoint(const std::filesystem::path& path, const EmbeddingTable& table, Scorer scorer,
                            const std::string& config_hash) {
  const auto bytes = encode_checkpoint(table, scorer, config_hash);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace quated

#endif  // QUATED_CHECKPOINT_HPP
