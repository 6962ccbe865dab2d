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

#ifndef QUATED_RANKING_HPP
#define QUATED_RANKING_HPP

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <thread>
#include <vector>

#include "quated/scoring.hpp"

namespace quated {

enum class RankMode { raw, filtered };

inline std::string_view to_string(RankMode m) noexcept { return m == RankMode::raw ? "raw" : "filtered"; }

struct EvalOptions {
  RankMode mode{RankMode::filtered};
  Scorer scorer{Scorer::quate_d};
  /// Restrict candidates to the entities seen in the corrupted position for the relation.
  bool type_constrained{false};
  unsigned threads{1};
};

inline constexpr std::array<int, 3> kHitsAt{1, 3, 10};

struct RankingReport {
  RankMode mode{RankMode::filtered};
  bool type_constrained{false};
  std::size_t count{};  // ranked queries (two per triple)
  double mr{};
  double mrr{};
  std::map<int, double> hits;  // n -> fraction of queries with rank <= n
  std::map<RelationId, double> per_relation_mrr;
  std::map<RelationId, std::size_t> per_relation_count;
  std::size_t excluded_gold{};  // type-constrained queries whose gold entity was added back
};

struct RankResult {
  double rank{};
  bool gold_excluded{};
};

/// Rank of the true entity of `x` in position `pos` among the candidates.
///
/// Ties are resolved to the mean position of the tied block:
/// rank = 1 + #better + #tied_others / 2.
/// In filtered mode every other candidate forming a known true triple is dropped.
inline RankResult rank_entity(const EmbeddingTable& table, const TripleStore& store, const Triple& x, Position pos,
                              const EvalOptions& opt) {
  const std::vector<double> raw = score_all(table, opt.scorer, x, pos);
  const double sign = lower_is_better(opt.scorer) ? 1.0 : -1.0;
  const EntityId gold = pos == Position::head ? x.head : x.tail;
  const double gold_score = sign * raw[gold];

  std::span<const EntityId> candidates =
      opt.type_constrained ? store.type_candidates(x.relation, pos) : store.all_entities();
  const bool excluded = !std::binary_search(candidates.begin(), candidates.end(), gold);

  std::span<const EntityId> known;
  if (opt.mode == RankMode::filtered) known = store.true_entities(x, pos);

  std::size_t better = 0;
  std::size_t ties = 0;
  for (EntityId e : candidates) {
    if (e == gold) continue;
    if (!known.empty() && std::binary_search(known.begin(), known.end(), e)) continue;
    const double s = sign * raw[e];
    if (s < gold_score)
      ++better;
    else if (s == gold_score)
      ++ties;
  }
  return {1.0 + static_cast<double>(better) + 0.5 * static_cast<double>(ties), excluded};
}

/// Head and tail queries for every triple of `split`.
inline RankingReport link_prediction(const EmbeddingTable& table, const TripleStore& store, std::span<const Triple> split,
                                     const EvalOptions& opt) {
  const std::size_t nq = 2 * split.size();
  std::vector<RankResult> ranks(nq);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q)
      ranks[q] = rank_entity(table, store, split[q / 2], q % 2 == 0 ? Position::head : Position::tail, opt);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(nq)));
  if (threads <= 1) {
    work(0, nq);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (nq + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(nq, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  // Aggregated in query order so results do not depend on thread count.
  RankingReport rep;
  rep.mode = opt.mode;
  rep.type_constrained = opt.type_constrained;
  rep.count = nq;
  for (int n : kHitsAt) rep.hits[n] = 0.0;
  if (nq == 0) return rep;

  double sum_rank = 0.0;
  double sum_rr = 0.0;
  std::map<int, std::size_t> hit_counts;
  std::map<RelationId, double> rel_rr;
  for (std::size_t q = 0; q < nq; ++q) {
    const double r = ranks[q].rank;
    sum_rank += r;
    sum_rr += 1.0 / r;
    for (int n : kHitsAt)
      if (r <= n) ++hit_counts[n];
    const RelationId rel = split[q / 2].relation;
    rel_rr[rel] += 1.0 / r;
    ++rep.per_relation_count[rel];
    if (ranks[q].gold_excluded) ++rep.excluded_gold;
  }
  const double count = static_cast<double>(nq);
  rep.mr = sum_rank / count;
  rep.mrr = sum_rr / count;
  for (int n : kHitsAt) rep.hits[n] = static_cast<double>(hit_counts[n]) / count;
  for (const auto& [rel, s] : rel_rr) rep.per_relation_mrr[rel] = s / static_cast<double>(rep.per_relation_count[rel]);
  return rep;
}

inline RankingReport link_prediction(const EmbeddingTable& table, const TripleStore& store, const EvalOptions& opt) {
  return link_prediction(table, store, store.test(), opt);
}

inline std::map<RelationId, double> per_relation_mrr(const EmbeddingTable& table, const TripleStore& store,
                                                     const EvalOptions& opt) {
  return link_prediction(table, store, opt).per_relation_mrr;
}

}  // namespace quated

#endif  // QUATED_RANKING_HPP
