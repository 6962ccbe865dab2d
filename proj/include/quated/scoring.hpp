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

#ifndef QUATED_SCORING_HPP
#define QUATED_SCORING_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quated/embedding.hpp"

namespace quated {

enum class Scorer {
  quate_d,      // distance after Hamilton rotation; lower is better
  rotate,       // complex-plane rotation on the (a, b) parts; lower is better
  quate_inner,  // inner product after rotation; higher is better
};

inline std::string_view to_string(Scorer s) noexcept {
  switch (s) {
    case Scorer::quate_d: return "quate_d";
    case Scorer::rotate: return "rotate";
    case Scorer::quate_inner: return "quate_inner";
  }
  return "?";
}

inline std::optional<Scorer> parse_scorer(std::string_view name) noexcept {
  if (name == "quate_d") return Scorer::quate_d;
  if (name == "rotate") return Scorer::rotate;
  if (name == "quate_inner") return Scorer::quate_inner;
  return std::nullopt;
}

constexpr bool lower_is_better(Scorer s) noexcept { return s != Scorer::quate_inner; }

struct Score {
  double value{};
  Scorer scorer{Scorer::quate_d};

  /// Orientation-free view used by ranking: smaller always means more plausible.
  double badness() const noexcept { return lower_is_better(scorer) ? value : -value; }
};

/// Q_h (x) W_r/|W_r|, with the normalization applied per coordinate.
inline QuatVec rotate_head(const QuatView& head, const QuatView& relation) {
  if (head.size() != relation.size()) throw DimensionMismatch(head.size(), relation.size());
  QuatVec out(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) out.set(i, hamilton(head[i], normalize(relation[i])));
  return out;
}

namespace detail {

// Sum over coordinates of |x_i - y_i|^2. Shared by the single-triple and the
// all-candidates paths so both produce bit-identical values.
inline double sq_dist(const QuatView& x, const QuatView& y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double da = x.a[i] - y.a[i];
    const double db = x.b[i] - y.b[i];
    const double dc = x.c[i] - y.c[i];
    const double dd = x.d[i] - y.d[i];
    s += da * da + db * db + dc * dc + dd * dd;
  }
  return s;
}

inline double sq_dist_complex(const QuatView& x, const QuatView& y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double da = x.a[i] - y.a[i];
    const double db = x.b[i] - y.b[i];
    s += da * da + db * db;
  }
  return s;
}

inline double inner(const QuatView& x, const QuatView& y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x.a[i] * y.a[i] + x.b[i] * y.b[i] + x.c[i] * y.c[i] + x.d[i] * y.d[i];
  return s;
}

// Complex rotation of (a, b) by the unit-modulus version of (ra, rb).
// `conj` rotates by the conjugate instead. c and d of the result are zero.
inline QuatVec rotate_complex(const QuatView& x, const QuatView& rel, bool conj) {
  QuatVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = std::sqrt(rel.a[i] * rel.a[i] + rel.b[i] * rel.b[i]);
    if (!(m > kNormEpsilon)) throw ZeroQuaternion();
    const double p = rel.a[i] / m;
    const double q = conj ? -rel.b[i] / m : rel.b[i] / m;
    out.set(i, {x.a[i] * p - x.b[i] * q, x.a[i] * q + x.b[i] * p, 0.0, 0.0});
  }
  return out;
}

// t (x) conj(W/|W|): rotating the tail back so head candidates can be scored
// without re-rotating every candidate.
inline QuatVec rotate_tail_back(const QuatView& tail, const QuatView& relation) {
  QuatVec out(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) out.set(i, hamilton(tail[i], conjugate(normalize(relation[i]))));
  return out;
}

}  // namespace detail

inline Score score_quate_d(const EmbeddingTable& table, EntityId h, RelationId r, EntityId t) {
  const QuatVec rotated = rotate_head(table.entity(h), table.relation(r));
  return {std::sqrt(detail::sq_dist(rotated, table.entity(t))), Scorer::quate_d};
}

/// RotatE: only the (a, b) parts are used, as a complex vector.
inline Score score_rotate(const EmbeddingTable& table, EntityId h, RelationId r, EntityId t) {
  const QuatVec rotated = detail::rotate_complex(table.entity(h), table.relation(r), false);
  return {std::sqrt(detail::sq_dist_complex(rotated, table.entity(t))), Scorer::rotate};
}

/// Inner-product QuatE: sum of coordinate dot products; larger is better.
inline Score score_quate_inner(const EmbeddingTable& table, EntityId h, RelationId r, EntityId t) {
  const QuatVec rotated = rotate_head(table.entity(h), table.relation(r));
  return {detail::inner(rotated, table.entity(t)), Scorer::quate_inner};
}

inline Score score(const EmbeddingTable& table, Scorer scorer, const Triple& x) {
  switch (scorer) {
    case Scorer::rotate: return score_rotate(table, x.head, x.relation, x.tail);
    case Scorer::quate_inner: return score_quate_inner(table, x.head, x.relation, x.tail);
    case Scorer::quate_d: break;
  }
  return score_quate_d(table, x.head, x.relation, x.tail);
}

/// Raw scores of (h, r, e) for every entity e. The rotation is computed once.
inline std::vector<double> score_all_tails(const EmbeddingTable& table, Scorer scorer, EntityId h, RelationId r) {
  const std::size_t n = table.num_entities();
  std::vector<double> out(n);
  if (scorer == Scorer::rotate) {
    const QuatVec q = detail::rotate_complex(table.entity(h), table.relation(r), false);
    for (std::size_t e = 0; e < n; ++e) out[e] = std::sqrt(detail::sq_dist_complex(q, table.entity(e)));
    return out;
  }
  const QuatVec q = rotate_head(table.entity(h), table.relation(r));
  if (scorer == Scorer::quate_inner) {
    for (std::size_t e = 0; e < n; ++e) out[e] = detail::inner(q, table.entity(e));
  } else {
    for (std::size_t e = 0; e < n; ++e) out[e] = std::sqrt(detail::sq_dist(q, table.entity(e)));
  }
  return out;
}

/// Raw scores of (e, r, t) for every entity e. Right multiplication by a unit
/// quaternion is an isometry with adjoint "multiply by its conjugate", so
/// |e W - t| = |e - t conj(W)| and <e W, t> = <e, t conj(W)>.
inline std::vector<double> score_all_heads(const EmbeddingTable& table, Scorer scorer, RelationId r, EntityId t) {
  const std::size_t n = table.num_entities();
  std::vector<double> out(n);
  if (scorer == Scorer::rotate) {
    const QuatVec q = detail::rotate_complex(table.entity(t), table.relation(r), true);
    for (std::size_t e = 0; e < n; ++e) out[e] = std::sqrt(detail::sq_dist_complex(table.entity(e), q));
    return out;
  }
  const QuatVec q = detail::rotate_tail_back(table.entity(t), table.relation(r));
  if (scorer == Scorer::quate_inner) {
    for (std::size_t e = 0; e < n; ++e) out[e] = detail::inner(table.entity(e), q);
  } else {
    for (std::size_t e = 0; e < n; ++e) out[e] = std::sqrt(detail::sq_dist(table.entity(e), q));
  }
  return out;
}

inline std::vector<double> score_all(const EmbeddingTable& table, Scorer scorer, const Triple& x, Position pos) {
  return pos == Position::head ? score_all_heads(table, scorer, x.relation, x.tail)
                               : score_all_tails(table, scorer, x.head, x.relation);
}

}  // namespace quated

#endif  // QUATED_SCORING_HPP
