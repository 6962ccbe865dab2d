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

#ifndef QUATED_TRAIN_HPP
#define QUATED_TRAIN_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "quated/ranking.hpp"

namespace quated {

enum class ConstraintMode { none, type_constrained };

/// pairwise: max(0, margin + phi(pos) - phi(neg)) per (positive, negative) pair.
/// pointwise: max(0, margin + phi(pos)) + max(0, margin - phi(neg)), kept for ablation.
enum class LossForm { pairwise, pointwise };

struct TrainConfig {
  std::size_t dim{100};
  double margin{1.0};
  double lr{0.02};
  double l1{0.0};  // entity regularization
  double l2{0.0};  // relation regularization
  std::size_t neg_rate{1};
  std::size_t batch_size{10};
  std::size_t epochs{100};
  std::uint64_t seed{0};
  ConstraintMode constraint_mode{ConstraintMode::none};
  /// With type constraints on: also restrict the validation ranking candidates.
  bool constrain_ranking{true};
  LossForm loss_form{LossForm::pairwise};
  std::size_t eval_every{10};
  std::size_t patience{5};  // evaluations without improvement; 0 disables early stopping
  unsigned eval_threads{1};

  void validate() const {
    if (dim < 1) throw UsageError("k must be >= 1");
    if (!(margin > 0)) throw UsageError("margin must be > 0");
    if (!(lr > 0)) throw UsageError("learning rate must be > 0");
    if (!(l1 >= 0) || !(l2 >= 0)) throw UsageError("regularization rates must be >= 0");
    if (neg_rate < 1) throw UsageError("negative sampling rate must be >= 1");
    if (batch_size < 1) throw UsageError("batch size must be >= 1");
  }

  bool ranking_constrained() const noexcept {
    return constraint_mode == ConstraintMode::type_constrained && constrain_ranking;
  }
};

inline nlohmann::json to_json(const TrainConfig& c) {
  return {{"k", c.dim},
          {"margin", c.margin},
          {"lr", c.lr},
          {"l1", c.l1},
          {"l2", c.l2},
          {"neg", c.neg_rate},
          {"batch", c.batch_size},
          {"epochs", c.epochs},
          {"seed", c.seed},
          {"type_constraints", c.constraint_mode == ConstraintMode::type_constrained},
          {"constrain_ranking", c.constrain_ranking},
          {"loss", c.loss_form == LossForm::pairwise ? "pairwise" : "pointwise"},
          {"eval_every", c.eval_every},
          {"patience", c.patience}};
}

/// 64-bit FNV-1a of the canonical config document, as 16 hex digits.
inline std::string config_hash(const TrainConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xF];
  return out;
}

struct LossParams {
  double margin{1.0};
  double l1{0.0};
  double l2{0.0};
  LossForm form{LossForm::pairwise};

  static LossParams from(const TrainConfig& c) { return {c.margin, c.l1, c.l2, c.loss_form}; }
};

/// negatives[i * neg_rate + j] is the j-th corruption of positives[i].
struct Batch {
  std::vector<Triple> positives;
  std::vector<Triple> negatives;
  std::size_t neg_rate{1};

  void validate() const {
    if (neg_rate < 1 || negatives.size() != positives.size() * neg_rate)
      throw UsageError("batch negatives must hold neg_rate corruptions per positive");
  }
};

/// Sparse gradient: only rows touched by the batch have entries.
struct GradientBuffer {
  std::map<EntityId, QuatVec> entities;
  std::map<RelationId, QuatVec> relations;
  double loss{};

  QuatVec& entity(EntityId e, std::size_t dim) { return entities.try_emplace(e, dim).first->second; }
  QuatVec& relation(RelationId r, std::size_t dim) { return relations.try_emplace(r, dim).first->second; }
};

struct NegativeStats {
  std::size_t drawn{};
  std::size_t fallbacks{};  // corruptions accepted although true, after the attempt bound
};

inline constexpr int kMaxNegativeAttempts = 100;

/// neg_rate corruptions of `positive`. Each replaces head or tail (fair coin)
/// by an entity drawn uniformly from the candidate set; a corruption that is
/// a known true triple is redrawn, up to kMaxNegativeAttempts times.
template <class Rng>
std::vector<Triple> sample_negatives(const TripleStore& store, const Triple& positive, std::size_t neg_rate,
                                     ConstraintMode mode, Rng& rng, NegativeStats* stats = nullptr) {
  std::vector<Triple> out;
  out.reserve(neg_rate);
  for (std::size_t n = 0; n < neg_rate; ++n) {
    Triple neg = positive;
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxNegativeAttempts && !accepted; ++attempt) {
      const Position pos = (rng() & 1U) ? Position::head : Position::tail;
      const auto candidates = mode == ConstraintMode::type_constrained ? store.type_candidates(positive.relation, pos)
                                                                       : store.all_entities();
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      neg = positive;
      (pos == Position::head ? neg.head : neg.tail) = candidates[pick(rng)];
      accepted = !store.is_true(neg);
    }
    if (stats) {
      ++stats->drawn;
      if (!accepted) ++stats->fallbacks;
    }
    out.push_back(neg);
  }
  return out;
}

namespace detail {

// Everything the backward pass needs from one quate_d evaluation.
struct DistanceForward {
  double phi{};
  std::vector<Quat> residual;  // h_i (x) w_i/|w_i| - t_i
  std::vector<Quat> unit_rel;  // w_i/|w_i|
  std::vector<double> rel_mag;
};

inline DistanceForward distance_forward(const EmbeddingTable& table, const Triple& x) {
  const std::size_t k = table.dim();
  const QuatView h = table.entity(x.head);
  const QuatView w = table.relation(x.relation);
  const QuatView t = table.entity(x.tail);
  DistanceForward f;
  f.residual.resize(k);
  f.unit_rel.resize(k);
  f.rel_mag.resize(k);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Quat wi = w[i];
    f.rel_mag[i] = magnitude(wi);
    f.unit_rel[i] = normalize(wi);
    f.residual[i] = hamilton(h[i], f.unit_rel[i]) - t[i];
    s += norm_sq(f.residual[i]);
  }
  f.phi = std::sqrt(s);
  return f;
}

// Adds coef * d(phi)/d(theta) for every parameter of triple x.
//
//   d phi / d t_i  = -g_i                      with g_i = residual_i / phi
//   d phi / d h_i  =  g_i (x) conj(u_i)        (adjoint of right multiplication)
//   d phi / d u_i  =  conj(h_i) (x) g_i        (adjoint of left multiplication)
//   d phi / d w_i  = (G - u_i <u_i, G>) / |w_i| with G = d phi / d u_i
//
// where u_i = w_i / |w_i|. At phi = 0 the zero subgradient is used.
inline void distance_backward(const EmbeddingTable& table, const Triple& x, const DistanceForward& f, double coef,
                              GradientBuffer& grad) {
  if (coef == 0.0 || f.phi == 0.0) return;
  const std::size_t k = table.dim();
  const QuatView h = table.entity(x.head);
  QuatVec& gh = grad.entity(x.head, k);
  QuatVec& gt = grad.entity(x.tail, k);
  QuatVec& gw = grad.relation(x.relation, k);
  const double scale = coef / f.phi;
  for (std::size_t i = 0; i < k; ++i) {
    const Quat g = scale * f.residual[i];
    const Quat& u = f.unit_rel[i];
    gh.set(i, gh[i] + hamilton(g, conjugate(u)));
    gt.set(i, gt[i] - g);
    const Quat gu = hamilton(conjugate(h[i]), g);
    const Quat gw_i = (1.0 / f.rel_mag[i]) * (gu - dot(u, gu) * u);
    gw.set(i, gw[i] + gw_i);
  }
}

struct TouchedRows {
  std::set<EntityId> entities;
  std::set<RelationId> relations;
};

inline TouchedRows touched_rows(const Batch& b) {
  TouchedRows out;
  for (const auto* v : {&b.positives, &b.negatives})
    for (const auto& x : *v) {
      out.entities.insert(x.head);
      out.entities.insert(x.tail);
      out.relations.insert(x.relation);
    }
  return out;
}

// Shared by batch_loss and grad_batch; `grad` may be null for loss only.
inline double batch_objective(const EmbeddingTable& table, const Batch& b, const LossParams& p, GradientBuffer* grad) {
  b.validate();
  const std::size_t k = table.dim();
  const TouchedRows touched = touched_rows(b);
  if (grad) {
    for (EntityId e : touched.entities) grad->entity(e, k);
    for (RelationId r : touched.relations) grad->relation(r, k);
  }

  double loss = 0.0;
  for (std::size_t i = 0; i < b.positives.size(); ++i) {
    const Triple& pos = b.positives[i];
    const DistanceForward fp = distance_forward(table, pos);
    double pos_coef = 0.0;
    if (p.form == LossForm::pointwise) {
      // phi >= 0, so margin + phi is always active.
      loss += p.margin + fp.phi;
      pos_coef = 1.0;
    }
    for (std::size_t j = 0; j < b.neg_rate; ++j) {
      const Triple& neg = b.negatives[i * b.neg_rate + j];
      const DistanceForward fn = distance_forward(table, neg);
      const double m = p.form == LossForm::pairwise ? p.margin + fp.phi - fn.phi : p.margin - fn.phi;
      if (m > 0.0) {
        loss += m;
        if (p.form == LossForm::pairwise) pos_coef += 1.0;
        if (grad) distance_backward(table, neg, fn, -1.0, *grad);
      }
    }
    if (grad) distance_backward(table, pos, fp, pos_coef, *grad);
  }

  if (p.l1 > 0.0) {
    for (EntityId e : touched.entities) {
      const QuatView row = table.entity(e);
      loss += p.l1 * total_norm_sq(row);
      if (grad) {
        QuatVec& g = grad->entity(e, k);
        for (std::size_t i = 0; i < k; ++i) g.set(i, g[i] + (2.0 * p.l1) * row[i]);
      }
    }
  }
  if (p.l2 > 0.0) {
    for (RelationId r : touched.relations) {
      const QuatView row = table.relation(r);
      loss += p.l2 * total_norm_sq(row);
      if (grad) {
        QuatVec& g = grad->relation(r, k);
        for (std::size_t i = 0; i < k; ++i) g.set(i, g[i] + (2.0 * p.l2) * row[i]);
      }
    }
  }
  if (grad) grad->loss = loss;
  return loss;
}

}  // namespace detail

/// Margin ranking loss of the batch plus l2 penalties on the distinct rows it touches.
inline double batch_loss(const EmbeddingTable& table, const Batch& batch, const LossParams& params) {
  return detail::batch_objective(table, batch, params, nullptr);
}

/// Exact gradient of batch_loss with respect to the touched entity rows and
/// the unnormalized relation rows. GradientBuffer::loss holds the loss value.
inline GradientBuffer grad_batch(const EmbeddingTable& table, const Batch& batch, const LossParams& params) {
  GradientBuffer g;
  detail::batch_objective(table, batch, params, &g);
  return g;
}

inline constexpr double kAdagradEpsilon = 1e-10;

/// Per-component squared-gradient accumulators shaped like the table.
struct AdagradState {
  QuatMatrix entities;
  QuatMatrix relations;

  AdagradState() = default;
  explicit AdagradState(const EmbeddingTable& t)
      : entities(t.num_entities(), t.dim()), relations(t.num_relations(), t.dim()) {}
};

/// G += g^2; theta -= lr * g / (sqrt(G) + eps), on the rows present in `grads` only.
inline void adagrad_step(EmbeddingTable& table, AdagradState& state, const GradientBuffer& grads, double lr) {
  auto apply = [lr](QuatSpan param, QuatSpan acc, const QuatVec& g) {
    const std::size_t k = param.size();
    if (g.size() != k) throw DimensionMismatch(k, g.size());
    const std::span<double> ps[4] = {param.a, param.b, param.c, param.d};
    const std::span<double> as[4] = {acc.a, acc.b, acc.c, acc.d};
    const std::span<const double> gs[4] = {g.a(), g.b(), g.c(), g.d()};
    for (int w = 0; w < 4; ++w)
      for (std::size_t i = 0; i < k; ++i) {
        const double gi = gs[w][i];
        if (gi == 0.0) continue;
        as[w][i] += gi * gi;
        ps[w][i] -= lr * gi / (std::sqrt(as[w][i]) + kAdagradEpsilon);
      }
  };
  for (const auto& [e, g] : grads.entities) apply(table.entity_mut(e), state.entities.row_mut(e), g);
  for (const auto& [r, g] : grads.relations) apply(table.relation_mut(r), state.relations.row_mut(r), g);
}

struct LogRecord {
  std::size_t epoch{};
  double mean_loss{};
  std::optional<double> valid_mrr;
  double wall_seconds{};
};

inline nlohmann::json to_json(const LogRecord& r) {
  nlohmann::json j{{"epoch", r.epoch}, {"loss", r.mean_loss}, {"wall_s", r.wall_seconds}};
  j["valid_mrr"] = r.valid_mrr ? nlohmann::json(*r.valid_mrr) : nlohmann::json(nullptr);
  return j;
}

struct FitResult {
  EmbeddingTable table;  // best by validation filtered MRR (final table if never evaluated)
  std::vector<LogRecord> log;
  std::size_t best_epoch{};
  std::optional<double> best_valid_mrr;
  std::size_t epochs_run{};
  NegativeStats negatives;
};

struct FitHooks {
  std::function<void(const EmbeddingTable&, std::size_t epoch, double valid_mrr)> on_best;
  std::function<void(const LogRecord&)> on_epoch;
};

/// Seed of the sampling/shuffling stream, derived from the root seed so the
/// initialization stream stays independent of it.
constexpr std::uint64_t training_stream_seed(std::uint64_t root) noexcept { return root ^ 0x9e3779b97f4a7c15ULL; }

/// Mini-batch Adagrad on the training split with early stopping on the
/// validation filtered MRR. Single-threaded updates; deterministic given the seed.
inline FitResult fit(const TripleStore& store, const TrainConfig& cfg, const FitHooks& hooks = {}) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  FitResult res;
  EmbeddingTable table = init_embeddings(store.num_entities(), store.num_relations(), cfg.dim, cfg.seed);
  res.table = table;
  AdagradState acc(table);
  std::mt19937_64 rng(training_stream_seed(cfg.seed));
  const LossParams params = LossParams::from(cfg);

  EvalOptions eval_opt;
  eval_opt.mode = RankMode::filtered;
  eval_opt.scorer = Scorer::quate_d;
  eval_opt.type_constrained = cfg.ranking_constrained();
  eval_opt.threads = cfg.eval_threads;

  const auto train = store.train();
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t b0 = 0; b0 < order.size(); b0 += cfg.batch_size) {
      Batch batch;
      batch.neg_rate = cfg.neg_rate;
      const std::size_t b1 = std::min(order.size(), b0 + cfg.batch_size);
      for (std::size_t i = b0; i < b1; ++i) {
        const Triple& pos = train[order[i]];
        batch.positives.push_back(pos);
        auto negs = sample_negatives(store, pos, cfg.neg_rate, cfg.constraint_mode, rng, &res.negatives);
        batch.negatives.insert(batch.negatives.end(), negs.begin(), negs.end());
      }
      const GradientBuffer g = grad_batch(table, batch, params);
      epoch_loss += g.loss;
      adagrad_step(table, acc, g, cfg.lr);
      for (const auto& [e, _] : g.entities)
        if (!is_finite(table.entity(e))) throw NumericError("non-finite entity embedding after update");
      for (const auto& [r, _] : g.relations)
        if (!is_finite(table.relation(r))) throw NumericError("non-finite relation embedding after update");
    }
    res.epochs_run = epoch;

    LogRecord rec;
    rec.epoch = epoch;
    rec.mean_loss = train.empty() ? 0.0 : epoch_loss / static_cast<double>(train.size());

    bool stop = false;
    const bool eval_now = !store.valid().empty() && cfg.eval_every > 0 &&
                          (epoch % cfg.eval_every == 0 || epoch == cfg.epochs);
    if (eval_now) {
      const double mrr = link_prediction(table, store, store.valid(), eval_opt).mrr;
      rec.valid_mrr = mrr;
      if (!res.best_valid_mrr || mrr > *res.best_valid_mrr) {
        res.best_valid_mrr = mrr;
        res.best_epoch = epoch;
        res.table = table;
        stale = 0;
        if (hooks.on_best) hooks.on_best(table, epoch, mrr);
      } else if (cfg.patience > 0 && ++stale >= cfg.patience) {
        stop = true;
      }
    }
    rec.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (hooks.on_epoch) hooks.on_epoch(rec);
    res.log.push_back(rec);
    if (stop) break;
  }

  if (!res.best_valid_mrr) {
    res.table = std::move(table);
    res.best_epoch = res.epochs_run;
  }
  return res;
}

}  // namespace quated

#endif  // QUATED_TRAIN_HPP
