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

#ifndef QUATED_EMBEDDING_HPP
#define QUATED_EMBEDDING_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "quated/quat_vec.hpp"
#include "quated/triple_store.hpp"

namespace quated {

/// rows x dim quaternions stored as four component arrays, row-major by
/// (row, coordinate). This is also the on-disk checkpoint layout.
class QuatMatrix {
public:
  QuatMatrix() = default;
  QuatMatrix(std::size_t rows, std::size_t dim)
      : rows_(rows), dim_(dim), a_(rows * dim), b_(rows * dim), c_(rows * dim), d_(rows * dim) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

  QuatView row(std::size_t r) const noexcept {
    const std::size_t o = r * dim_;
    return {std::span<const double>(a_).subspan(o, dim_), std::span<const double>(b_).subspan(o, dim_),
            std::span<const double>(c_).subspan(o, dim_), std::span<const double>(d_).subspan(o, dim_)};
  }
  QuatSpan row_mut(std::size_t r) noexcept {
    const std::size_t o = r * dim_;
    return {std::span<double>(a_).subspan(o, dim_), std::span<double>(b_).subspan(o, dim_),
            std::span<double>(c_).subspan(o, dim_), std::span<double>(d_).subspan(o, dim_)};
  }
  void set_row(std::size_t r, const QuatView& v) {
    if (v.size() != dim_) throw DimensionMismatch(dim_, v.size());
    auto dst = row_mut(r);
    for (std::size_t i = 0; i < dim_; ++i) dst.set(i, v[i]);
  }

  /// Component arrays in a, b, c, d order.
  std::span<const double> component(int which) const noexcept {
    switch (which) {
      case 0: return a_;
      case 1: return b_;
      case 2: return c_;
      default: return d_;
    }
  }
  std::span<double> component(int which) noexcept {
    switch (which) {
      case 0: return a_;
      case 1: return b_;
      case 2: return c_;
      default: return d_;
    }
  }

  bool all_finite() const noexcept {
    for (int w = 0; w < 4; ++w)
      for (double x : component(w))
        if (!std::isfinite(x)) return false;
    return true;
  }

  friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

private:
  std::size_t rows_{};
  std::size_t dim_{};
  std::vector<double> a_, b_, c_, d_;
};

/// Entity matrix Q (N x k) and relation matrix W (M x k). Relations are
/// stored unnormalized; scorers normalize them on every call.
class EmbeddingTable {
public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t num_entities, std::size_t num_relations, std::size_t dim, std::uint64_t seed = 0)
      : entities_(num_entities, dim), relations_(num_relations, dim), seed_(seed) {
    if (dim == 0) throw UsageError("embedding dimension must be >= 1");
  }

  std::size_t num_entities() const noexcept { return entities_.rows(); }
  std::size_t num_relations() const noexcept { return relations_.rows(); }
  std::size_t dim() const noexcept { return entities_.dim(); }
  std::uint64_t seed() const noexcept { return seed_; }

  QuatView entity(EntityId e) const noexcept { return entities_.row(e); }
  QuatView relation(RelationId r) const noexcept { return relations_.row(r); }
  QuatSpan entity_mut(EntityId e) noexcept { return entities_.row_mut(e); }
  QuatSpan relation_mut(RelationId r) noexcept { return relations_.row_mut(r); }

  const QuatMatrix& entities() const noexcept { return entities_; }
  const QuatMatrix& relations() const noexcept { return relations_; }
  QuatMatrix& entities() noexcept { return entities_; }
  QuatMatrix& relations() noexcept { return relations_; }

  bool all_finite() const noexcept { return entities_.all_finite() && relations_.all_finite(); }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

private:
  QuatMatrix entities_;
  QuatMatrix relations_;
  std::uint64_t seed_{};
};

/// Draws one coordinate with the quaternion-network initialization: a random
/// phase theta in [-pi, pi], a modulus rho in [-1/sqrt(2k), 1/sqrt(2k)] and a
/// uniformly random unit pure quaternion u, giving rho*cos(theta) + rho*sin(theta)*u.
template <class Rng>
Quat draw_quaternion_init(std::size_t dim, Rng& rng) {
  const double bound = 1.0 / std::sqrt(2.0 * static_cast<double>(dim));
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> modulus(-bound, bound);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double theta = phase(rng);
  const double rho = modulus(rng);
  Quat u;
  do {
    u = {0.0, gauss(rng), gauss(rng), gauss(rng)};
  } while (norm_sq(u) < 1e-24);
  u = normalize(u);
  const double s = rho * std::sin(theta);
  return {rho * std::cos(theta), s * u.b, s * u.c, s * u.d};
}

/// Deterministic in `seed`: entities are drawn first (row by row), then relations.
inline EmbeddingTable init_embeddings(std::size_t num_entities, std::size_t num_relations, std::size_t dim,
                                      std::uint64_t seed) {
  if (num_entities == 0 || num_relations == 0 || dim == 0)
    throw UsageError("init_embeddings requires N, M, k >= 1");
  EmbeddingTable table(num_entities, num_relations, dim, seed);
  std::mt19937_64 rng(seed);
  for (auto* m : {&table.entities(), &table.relations()}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      auto row = m->row_mut(r);
      for (std::size_t i = 0; i < dim; ++i) row.set(i, draw_quaternion_init(dim, rng));
    }
  }
  return table;
}

}  // namespace quated

#endif  // QUATED_EMBEDDING_HPP
