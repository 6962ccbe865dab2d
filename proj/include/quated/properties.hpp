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

// Randomized checks of the relational-pattern identities of the distance
// scorer. Each check has a negative control that swaps in a deliberately
// wrong formula (or input regime) so the check is shown to be falsifiable.

#ifndef QUATED_PROPERTIES_HPP
#define QUATED_PROPERTIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include <json.hpp>

#include "quated/scoring.hpp"

namespace quated {

enum class Property { symmetry, antisymmetry, inversion, composition, rotate_reduction, associativity, noncommutativity };

inline std::string_view to_string(Property p) noexcept {
  switch (p) {
    case Property::symmetry: return "symmetry";
    case Property::antisymmetry: return "antisymmetry";
    case Property::inversion: return "inversion";
    case Property::composition: return "composition";
    case Property::rotate_reduction: return "rotate_reduction";
    case Property::associativity: return "associativity";
    case Property::noncommutativity: return "noncommutativity";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view s) noexcept {
  for (auto p : {Property::symmetry, Property::antisymmetry, Property::inversion, Property::composition,
                 Property::rotate_reduction, Property::associativity, Property::noncommutativity})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

/// Equality properties pass when max_violation <= tolerance. Inequality and
/// existence properties (antisymmetry, noncommutativity) pass when the
/// fraction of trials showing the inequality reaches their bar.
struct PropertyVerdict {
  Property property{};
  std::size_t trials{};
  double tolerance{};
  double max_violation{};
  bool pass{};
  double rate{};               // inequality properties: fraction of counted trials with a violation
  std::size_t counted{};       // trials entering `rate` (degenerate ones excluded)
  std::optional<std::string> witness;  // inputs of the worst (or first) case, JSON
};

/// How relation quaternions are drawn.
enum class RelationDraw {
  general,      // every component uniform in [-1, 1]
  real,         // imaginary parts zero, scalar part +-[0.1, 1]
  imaginary,    // general, but imaginary magnitude >= 0.1 of the coordinate magnitude
  identity,     // (1, 0, 0, 0)
};

struct CheckOptions {
  std::size_t trials{10000};
  std::size_t dim{8};
  double tolerance{1e-9};
  std::uint64_t seed{0};
  bool negative_control{false};
  std::optional<RelationDraw> relation;  // overrides the check's default regime
  bool same_entity{false};               // force Q_t = Q_h (degenerate pairs)
};

inline constexpr double kAntisymmetryGap = 1e-6;
inline constexpr double kAntisymmetryRate = 0.99;

namespace detail {

template <class Rng>
QuatVec random_quat_vec(std::size_t k, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QuatVec v(k);
  for (std::size_t i = 0; i < k; ++i) v.set(i, {u(rng), u(rng), u(rng), u(rng)});
  return v;
}

template <class Rng>
QuatVec random_relation(std::size_t k, RelationDraw how, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  QuatVec v(k);
  for (std::size_t i = 0; i < k; ++i) {
    Quat q;
    switch (how) {
      case RelationDraw::identity: q = basis::one; break;
      case RelationDraw::real: q = {(rng() & 1U) ? mag(rng) : -mag(rng), 0.0, 0.0, 0.0}; break;
      case RelationDraw::imaginary:
        do {
          q = {u(rng), u(rng), u(rng), u(rng)};
        } while (norm_sq(q) < 1e-4 || (norm_sq(q) - q.a * q.a) < 0.01 * norm_sq(q));
        break;
      case RelationDraw::general:
        do {
          q = {u(rng), u(rng), u(rng), u(rng)};
        } while (norm_sq(q) < 1e-4);
        break;
    }
    v.set(i, q);
  }
  return v;
}

inline nlohmann::json quat_vec_json(const QuatView& v) {
  auto arr = [](std::span<const double> s) { return nlohmann::json(std::vector<double>(s.begin(), s.end())); };
  return {{"a", arr(v.a)}, {"b", arr(v.b)}, {"c", arr(v.c)}, {"d", arr(v.d)}};
}

inline std::string witness_json(std::initializer_list<std::pair<const char*, const QuatVec*>> parts) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, v] : parts) j[name] = quat_vec_json(v->view());
  return j.dump();
}

// Tracks the largest violation and remembers its inputs.
struct MaxTracker {
  double max{0.0};
  std::optional<std::string> witness;
  template <class F>
  void observe(double v, F&& make_witness) {
    if (!witness || v > max) {
      max = v;
      witness = make_witness();
    }
  }
};

}  // namespace detail

/// |Q_h (x) W - Q_t| == |Q_t (x) conj(W) - Q_h| with W normalized per coordinate.
/// Negative control: conj(W) replaced by W.
inline PropertyVerdict check_inversion(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  detail::MaxTracker worst;
  const RelationDraw draw = opt.relation.value_or(RelationDraw::general);
  for (std::size_t n = 0; n < opt.trials; ++n) {
    const QuatVec h = detail::random_quat_vec(opt.dim, rng);
    const QuatVec t = opt.same_entity ? h : detail::random_quat_vec(opt.dim, rng);
    const QuatVec w = detail::random_relation(opt.dim, draw, rng);
    const QuatVec unit = normalize(w);
    const double lhs = distance(hamilton(h, unit), t);
    const double rhs = distance(hamilton(t, opt.negative_control ? unit : conjugate(unit)), h);
    worst.observe(std::abs(lhs - rhs), [&] { return detail::witness_json({{"h", &h}, {"t", &t}, {"w", &w}}); });
  }
  return {Property::inversion, opt.trials, opt.tolerance, worst.max, worst.max <= opt.tolerance, 0.0, opt.trials,
          worst.witness};
}

/// With imaginary relation parts, |Q_h W - Q_t| != |Q_t W - Q_h| (same W on
/// both sides) in at least 99% of non-degenerate trials.
/// Negative control: a real relation, which makes both sides equal.
inline PropertyVerdict check_antisymmetry(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const RelationDraw draw =
      opt.relation.value_or(opt.negative_control ? RelationDraw::real : RelationDraw::imaginary);
  std::size_t counted = 0;
  std::size_t separated = 0;
  double max_gap = 0.0;
  double min_gap = 0.0;
  std::optional<std::string> witness;
  for (std::size_t n = 0; n < opt.trials; ++n) {
    const QuatVec h = detail::random_quat_vec(opt.dim, rng);
    const QuatVec t = opt.same_entity ? h : detail::random_quat_vec(opt.dim, rng);
    const QuatVec w = detail::random_relation(opt.dim, draw, rng);
    if (h == t) continue;
    ++counted;
    const QuatVec unit = normalize(w);
    const double gap = std::abs(distance(hamilton(h, unit), t) - distance(hamilton(t, unit), h));
    if (gap > kAntisymmetryGap) ++separated;
    // Witness: the least separated pair, the one closest to a counterexample.
    if (!witness || gap < min_gap) {
      min_gap = gap;
      witness = detail::witness_json({{"h", &h}, {"t", &t}, {"w", &w}});
    }
    max_gap = std::max(max_gap, gap);
  }
  PropertyVerdict v;
  v.property = Property::antisymmetry;
  v.trials = opt.trials;
  v.tolerance = kAntisymmetryGap;
  v.max_violation = max_gap;
  v.counted = counted;
  v.rate = counted ? static_cast<double>(separated) / static_cast<double>(counted) : 0.0;
  v.pass = counted > 0 && v.rate >= kAntisymmetryRate;
  v.witness = witness;
  return v;
}

/// With real relations (normalized to +-1 per coordinate) the score is
/// symmetric: |Q_h W - Q_t| == |Q_t W - Q_h|.
/// Negative control: relations with imaginary parts.
inline PropertyVerdict check_symmetry(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const RelationDraw draw =
      opt.relation.value_or(opt.negative_control ? RelationDraw::imaginary : RelationDraw::real);
  detail::MaxTracker worst;
  for (std::size_t n = 0; n < opt.trials; ++n) {
    const QuatVec h = detail::random_quat_vec(opt.dim, rng);
    const QuatVec t = opt.same_entity ? h : detail::random_quat_vec(opt.dim, rng);
    const QuatVec w = detail::random_relation(opt.dim, draw, rng);
    const double fwd = std::sqrt(detail::sq_dist(rotate_head(h, w), t));
    const double bwd = std::sqrt(detail::sq_dist(rotate_head(t, w), h));
    worst.observe(std::abs(fwd - bwd), [&] { return detail::witness_json({{"h", &h}, {"t", &t}, {"w", &w}}); });
  }
  return {Property::symmetry, opt.trials, opt.tolerance, worst.max, worst.max <= opt.tolerance, 0.0, opt.trials,
          worst.witness};
}

/// |(Q_h W2) W3 - Q_t| == |Q_h (W2 W3) - Q_t| == score with the single
/// relation W1 := W2 (x) W3. Negative control: W2 and W3 swapped on the
/// grouped side.
inline PropertyVerdict check_composition(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const RelationDraw draw = opt.relation.value_or(RelationDraw::general);
  detail::MaxTracker worst;
  for (std::size_t n = 0; n < opt.trials; ++n) {
    const QuatVec h = detail::random_quat_vec(opt.dim, rng);
    const QuatVec t = opt.same_entity ? h : detail::random_quat_vec(opt.dim, rng);
    const QuatVec w2 = detail::random_relation(opt.dim, draw, rng);
    const QuatVec w3 = detail::random_relation(opt.dim, RelationDraw::general, rng);
    const QuatVec u2 = normalize(w2);
    const QuatVec u3 = normalize(w3);
    const double chained = distance(hamilton(hamilton(h, u2), u3), t);
    const QuatVec grouped_rel = opt.negative_control ? hamilton(u3, u2) : hamilton(u2, u3);
    const double grouped = distance(hamilton(h, grouped_rel), t);
    const QuatVec w1 = hamilton(w2, w3);
    const double direct = distance(rotate_head(h, w1), t);
    const double v = std::max(std::abs(chained - grouped), std::abs(grouped - direct));
    worst.observe(v, [&] { return detail::witness_json({{"h", &h}, {"t", &t}, {"w2", &w2}, {"w3", &w3}}); });
  }
  return {Property::composition, opt.trials, opt.tolerance, worst.max, worst.max <= opt.tolerance, 0.0, opt.trials,
          worst.witness};
}

/// With c = d = 0 everywhere the distance scorer equals the RotatE scorer.
/// Negative control: non-zero c and d.
inline PropertyVerdict check_rotate_reduction(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  detail::MaxTracker worst;
  EmbeddingTable table(2, 1, opt.dim, opt.seed);
  for (std::size_t n = 0; n < opt.trials; ++n) {
    QuatVec h = detail::random_quat_vec(opt.dim, rng);
    QuatVec t = opt.same_entity ? h : detail::random_quat_vec(opt.dim, rng);
    QuatVec w = detail::random_relation(opt.dim, opt.relation.value_or(RelationDraw::general), rng);
    if (!opt.negative_control) {
      for (auto* v : {&h, &t, &w}) {
        std::fill(v->c().begin(), v->c().end(), 0.0);
        std::fill(v->d().begin(), v->d().end(), 0.0);
      }
      for (std::size_t i = 0; i < opt.dim; ++i)
        if (std::hypot(w.a()[i], w.b()[i]) < 1e-3) w.a()[i] = 0.5;
    }
    table.entities().set_row(0, h);
    table.entities().set_row(1, t);
    table.relations().set_row(0, w);
    const double v = std::abs(score_quate_d(table, 0, 0, 1).value - score_rotate(table, 0, 0, 1).value);
    worst.observe(v, [&] { return detail::witness_json({{"h", &h}, {"t", &t}, {"w", &w}}); });
  }
  return {Property::rotate_reduction, opt.trials, opt.tolerance, worst.max, worst.max <= opt.tolerance, 0.0,
          opt.trials, worst.witness};
}

/// (p q) r == p (q r), coordinate-wise, max absolute component error.
/// Negative control: (p q) r compared against (q p) r.
inline PropertyVerdict check_associativity(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  detail::MaxTracker worst;
  for (std::size_t n = 0; n < opt.trials; ++n) {
    const QuatVec p = detail::random_quat_vec(opt.dim, rng);
    const QuatVec q = detail::random_quat_vec(opt.dim, rng);
    const QuatVec r = detail::random_quat_vec(opt.dim, rng);
    const QuatVec lhs = hamilton(hamilton(p, q), r);
    const QuatVec rhs = opt.negative_control ? hamilton(hamilton(q, p), r) : hamilton(p, hamilton(q, r));
    double v = 0.0;
    for (std::size_t i = 0; i < opt.dim; ++i) {
      const Quat d = lhs[i] - rhs[i];
      v = std::max({v, std::abs(d.a), std::abs(d.b), std::abs(d.c), std::abs(d.d)});
    }
    worst.observe(v, [&] { return detail::witness_json({{"p", &p}, {"q", &q}, {"r", &r}}); });
  }
  return {Property::associativity, opt.trials, opt.tolerance, worst.max, worst.max <= opt.tolerance, 0.0, opt.trials,
          worst.witness};
}

/// Existence check: some trial has p q != q p (max component gap > 1e-6).
/// Negative control: real quaternions, which commute.
inline PropertyVerdict check_noncommutativity(const CheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t separated = 0;
  double max_gap = 0.0;
  std::optional<std::string> witness;
  for (std::size_t n = 0; n < opt.trials; ++n) {
    QuatVec p = detail::random_quat_vec(opt.dim, rng);
    QuatVec q = detail::random_quat_vec(opt.dim, rng);
    if (opt.negative_control) {
      p = detail::random_relation(opt.dim, RelationDraw::real, rng);
      q = detail::random_relation(opt.dim, RelationDraw::real, rng);
    }
    const QuatVec pq = hamilton(p, q);
    const QuatVec qp = hamilton(q, p);
    double gap = 0.0;
    for (std::size_t i = 0; i < opt.dim; ++i) {
      const Quat d = pq[i] - qp[i];
      gap = std::max({gap, std::abs(d.a), std::abs(d.b), std::abs(d.c), std::abs(d.d)});
    }
    if (gap > kAntisymmetryGap) {
      ++separated;
      if (!witness) witness = detail::witness_json({{"p", &p}, {"q", &q}});
    }
    max_gap = std::max(max_gap, gap);
  }
  PropertyVerdict v;
  v.property = Property::noncommutativity;
  v.trials = opt.trials;
  v.tolerance = kAntisymmetryGap;
  v.max_violation = max_gap;
  v.counted = opt.trials;
  v.rate = opt.trials ? static_cast<double>(separated) / static_cast<double>(opt.trials) : 0.0;
  v.pass = separated > 0;
  v.witness = witness;
  return v;
}

inline PropertyVerdict check_property(Property p, const CheckOptions& opt) {
  switch (p) {
    case Property::symmetry: return check_symmetry(opt);
    case Property::antisymmetry: return check_antisymmetry(opt);
    case Property::inversion: return check_inversion(opt);
    case Property::composition: return check_composition(opt);
    case Property::rotate_reduction: return check_rotate_reduction(opt);
    case Property::associativity: return check_associativity(opt);
    case Property::noncommutativity: return check_noncommutativity(opt);
  }
  return {};
}

inline nlohmann::json to_json(const PropertyVerdict& v) {
  nlohmann::json j{{"property", std::string(to_string(v.property))},
                   {"trials", v.trials},
                   {"tolerance", v.tolerance},
                   {"max_violation", v.max_violation},
                   {"pass", v.pass},
                   {"rate", v.rate},
                   {"counted", v.counted}};
  j["witness"] = v.witness ? nlohmann::json::parse(*v.witness) : nlohmann::json(nullptr);
  return j;
}

/// Diagnostic for one relation of a (trained) table; carries no verdict.
struct RelationDiagnostic {
  RelationId relation{};
  /// Mean over coordinates of the imaginary share b^2 + c^2 + d^2 of the
  /// normalized relation quaternion; 0 for a real relation, 1 for a pure one.
  double imaginary_energy{};
  /// Mean of |phi(h,r,t) - phi(t,r,h)| / (phi(h,r,t) + phi(t,r,h)) over sampled pairs.
  double asymmetry{};
  /// Same statistic for a freshly initialized relation on the same pairs.
  double baseline_asymmetry{};
  std::size_t pairs{};
};

inline double imaginary_energy(const QuatView& relation) {
  double s = 0.0;
  for (std::size_t i = 0; i < relation.size(); ++i) {
    const Quat u = normalize(relation[i]);
    s += u.b * u.b + u.c * u.c + u.d * u.d;
  }
  return s / static_cast<double>(relation.size());
}

namespace detail {
inline double pair_asymmetry(const QuatView& h, const QuatView& w, const QuatView& t) {
  const double f = std::sqrt(sq_dist(rotate_head(h, w), t));
  const double b = std::sqrt(sq_dist(rotate_head(t, w), h));
  return f + b > 0.0 ? std::abs(f - b) / (f + b) : 0.0;
}
}  // namespace detail

inline RelationDiagnostic check_trained(const EmbeddingTable& table, RelationId relation, std::size_t pairs = 1000,
                                        std::uint64_t seed = 0) {
  if (relation >= table.num_relations()) throw UsageError("relation id out of range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, table.num_entities() - 1);

  QuatVec baseline(table.dim());
  for (std::size_t i = 0; i < table.dim(); ++i) baseline.set(i, draw_quaternion_init(table.dim(), rng));

  RelationDiagnostic d;
  d.relation = relation;
  d.imaginary_energy = imaginary_energy(table.relation(relation));
  d.pairs = pairs;
  double asym = 0.0;
  double base = 0.0;
  for (std::size_t n = 0; n < pairs; ++n) {
    const auto h = static_cast<EntityId>(pick(rng));
    const auto t = static_cast<EntityId>(pick(rng));
    asym += detail::pair_asymmetry(table.entity(h), table.relation(relation), table.entity(t));
    base += detail::pair_asymmetry(table.entity(h), baseline, table.entity(t));
  }
  if (pairs > 0) {
    d.asymmetry = asym / static_cast<double>(pairs);
    d.baseline_asymmetry = base / static_cast<double>(pairs);
  }
  return d;
}

inline nlohmann::json to_json(const RelationDiagnostic& d) {
  return {{"relation", d.relation},
          {"imaginary_energy", d.imaginary_energy},
          {"asymmetry", d.asymmetry},
          {"baseline_asymmetry", d.baseline_asymmetry},
          {"pairs", d.pairs}};
}

}  // namespace quated

#endif  // QUATED_PROPERTIES_HPP
