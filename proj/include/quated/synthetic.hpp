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

#ifndef QUATED_SYNTHETIC_HPP
#define QUATED_SYNTHETIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "quated/triple_store.hpp"

namespace quated {

/// Planted graph: entities are split into groups of `cycle` members arranged
/// on a ring (member p of group g is entity g * cycle + p). Four relations act
/// on ring positions within each group:
///
///   symmetric       p -> p + cycle/2   (applying it twice is the identity)
///   antisymmetric   p -> p + 1
///   inverse         p -> p - 1         (inverse of antisymmetric)
///   composed        p -> p + 2         (antisymmetric followed by antisymmetric)
struct PlantedSpec {
  std::size_t entities{200};
  std::size_t cycle{8};
  double valid_fraction{0.05};
  double test_fraction{0.05};
  std::uint64_t seed{0};
};

inline constexpr const char* kPlantedSymmetric = "symmetric";
inline constexpr const char* kPlantedAntisymmetric = "antisymmetric";
inline constexpr const char* kPlantedInverse = "inverse";
inline constexpr const char* kPlantedComposed = "composed";

struct PlantedGraph {
  std::vector<RawTriple> train, valid, test;

  TripleStore store() const { return TripleStore::build(train, valid, test); }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto dump = [&dir](const char* name, const std::vector<RawTriple>& split) {
      std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + (dir / name).string());
      for (const auto& t : split) out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
    };
    dump("train.txt", train);
    dump("valid.txt", valid);
    dump("test.txt", test);
  }
};

inline PlantedGraph make_planted_graph(const PlantedSpec& spec) {
  if (spec.cycle < 6 || spec.cycle % 2 != 0) throw UsageError("planted cycle must be even and >= 6");
  if (spec.entities < spec.cycle || spec.entities % spec.cycle != 0)
    throw UsageError("planted entity count must be a positive multiple of the cycle length");

  const std::size_t c = spec.cycle;
  struct Shift {
    const char* name;
    std::size_t by;
  };
  const Shift shifts[] = {{kPlantedSymmetric, c / 2}, {kPlantedAntisymmetric, 1}, {kPlantedInverse, c - 1},
                          {kPlantedComposed, 2}};

  auto name = [](std::size_t e) { return "e" + std::to_string(e); };
  std::vector<RawTriple> all;
  for (std::size_t g = 0; g < spec.entities / c; ++g)
    for (const auto& s : shifts)
      for (std::size_t p = 0; p < c; ++p) all.push_back({name(g * c + p), s.name, name(g * c + (p + s.by) % c)});

  std::mt19937_64 rng(spec.seed);
  std::shuffle(all.begin(), all.end(), rng);
  const auto n = static_cast<double>(all.size());
  const auto n_valid = static_cast<std::size_t>(std::llround(spec.valid_fraction * n));
  const auto n_test = static_cast<std::size_t>(std::llround(spec.test_fraction * n));

  PlantedGraph g;
  const auto v0 = all.end() - static_cast<std::ptrdiff_t>(n_valid + n_test);
  const auto t0 = all.end() - static_cast<std::ptrdiff_t>(n_test);
  g.train.assign(all.begin(), v0);
  g.valid.assign(v0, t0);
  g.test.assign(t0, all.end());
  return g;
}

}  // namespace quated

#endif  // QUATED_SYNTHETIC_HPP
