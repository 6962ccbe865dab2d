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


// Test-side fixtures and independent reference implementations. Nothing here
// calls the library routine it is used to check.

#ifndef QUATED_TESTS_SUPPORT_HPP
#define QUATED_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "quated/quated.hpp"

namespace quated::testing {

namespace fs = std::filesystem;

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("quated_" + tag + "_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const noexcept { return path_; }

private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << body;
}

/// Distinct random id triples split into train/valid/test.
inline TripleStore random_store(std::size_t n, std::size_t m, std::size_t n_train, std::size_t n_valid,
                                std::size_t n_test, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(n - 1));
  std::uniform_int_distribution<RelationId> rel(0, static_cast<RelationId>(m - 1));
  std::set<Triple> seen;
  std::vector<Triple> all;
  while (all.size() < n_train + n_valid + n_test) {
    const Triple t{ent(rng), rel(rng), ent(rng)};
    if (seen.insert(t).second) all.push_back(t);
  }
  const auto a = all.begin();
  return TripleStore::from_ids(n, m, {a, a + n_train}, {a + n_train, a + n_train + n_valid},
                               {a + n_train + n_valid, all.end()});
}

/// Plain loop score without any of the library's bulk paths.
inline double ref_distance(const EmbeddingTable& t, const Triple& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    const Quat h = t.entity(x.head)[i];
    const Quat w = t.relation(x.relation)[i];
    const Quat tl = t.entity(x.tail)[i];
    const double n = std::sqrt(w.a * w.a + w.b * w.b + w.c * w.c + w.d * w.d);
    const Quat u{w.a / n, w.b / n, w.c / n, w.d / n};
    const Quat r{h.a * u.a - h.b * u.b - h.c * u.c - h.d * u.d, h.a * u.b + h.b * u.a + h.c * u.d - h.d * u.c,
                 h.a * u.c + h.c * u.a + h.d * u.b - h.b * u.d, h.a * u.d + h.d * u.a + h.b * u.c - h.c * u.b};
    s += (r.a - tl.a) * (r.a - tl.a) + (r.b - tl.b) * (r.b - tl.b) + (r.c - tl.c) * (r.c - tl.c) +
         (r.d - tl.d) * (r.d - tl.d);
  }
  return std::sqrt(s);
}

struct RefReport {
  double mr{}, mrr{};
  std::map<int, double> hits;
  std::map<RelationId, double> per_relation_mrr;
};

/// Brute force link prediction: score every candidate with the scalar
/// scorer, count strictly better and tied ones, skip known true triples in
/// filtered mode.
inline RefReport brute_force_ranking(const EmbeddingTable& table, const TripleStore& store, std::span<const Triple> split,
                                     bool filtered, Scorer scorer = Scorer::quate_d) {
  const double sign = lower_is_better(scorer) ? 1.0 : -1.0;
  RefReport rep;
  std::map<RelationId, double> rr_sum;
  std::map<RelationId, std::size_t> rr_n;
  std::map<int, std::size_t> hits;
  double sum_rank = 0.0, sum_rr = 0.0;
  std::size_t nq = 0;
  for (const Triple& x : split) {
    for (int side = 0; side < 2; ++side) {
      const double gold = sign * score(table, scorer, x).value;
      std::size_t better = 0, tied = 0;
      for (EntityId e = 0; e < store.num_entities(); ++e) {
        Triple c = x;
        (side == 0 ? c.head : c.tail) = e;
        if (c == x) continue;
        if (filtered && store.is_true(c)) continue;
        const double s = sign * score(table, scorer, c).value;
        if (s < gold) ++better;
        if (s == gold) ++tied;
      }
      const double rank = 1.0 + static_cast<double>(better) + 0.5 * static_cast<double>(tied);
      sum_rank += rank;
      sum_rr += 1.0 / rank;
      for (int n : {1, 3, 10})
        if (rank <= n) ++hits[n];
      rr_sum[x.relation] += 1.0 / rank;
      ++rr_n[x.relation];
      ++nq;
    }
  }
  rep.mr = sum_rank / static_cast<double>(nq);
  rep.mrr = sum_rr / static_cast<double>(nq);
  for (int n : {1, 3, 10}) rep.hits[n] = static_cast<double>(hits[n]) / static_cast<double>(nq);
  for (const auto& [r, s] : rr_sum) rep.per_relation_mrr[r] = s / static_cast<double>(rr_n[r]);
  return rep;
}

/// Central finite difference of batch_loss for every component of the
/// touched rows. Returned in the same sparse shape as GradientBuffer.
inline GradientBuffer finite_difference(EmbeddingTable table, const Batch& b, const LossParams& p, double eps) {
  GradientBuffer out;
  const std::size_t k = table.dim();
  std::set<EntityId> ents;
  std::set<RelationId> rels;
  for (const auto* v : {&b.positives, &b.negatives})
    for (const auto& x : *v) {
      ents.insert(x.head);
      ents.insert(x.tail);
      rels.insert(x.relation);
    }
  auto probe = [&](QuatMatrix& m, std::size_t row, QuatVec& g) {
    for (int w = 0; w < 4; ++w) {
      auto comp = m.component(w);
      for (std::size_t i = 0; i < k; ++i) {
        double& v = comp[row * k + i];
        const double keep = v;
        v = keep + eps;
        const double up = batch_loss(table, b, p);
        v = keep - eps;
        const double down = batch_loss(table, b, p);
        v = keep;
        const double d = (up - down) / (2.0 * eps);
        Quat q = g[i];
        (w == 0 ? q.a : w == 1 ? q.b : w == 2 ? q.c : q.d) = d;
        g.set(i, q);
      }
    }
  };
  for (EntityId e : ents) probe(table.entities(), e, out.entity(e, k));
  for (RelationId r : rels) probe(table.relations(), r, out.relation(r, k));
  return out;
}

struct GradCheck {
  double max_rel_error{};
  std::size_t compared{};
};

/// Relative error |a - n| / max(|a|, |n|), treated as 0 when |a - n| <= abs_floor.
inline GradCheck compare_gradients(const GradientBuffer& analytic, const GradientBuffer& numeric, double abs_floor) {
  GradCheck r;
  auto cmp = [&](const auto& amap, const auto& nmap) {
    for (const auto& [id, nv] : nmap) {
      const auto it = amap.find(id);
      const QuatVec zero(nv.size());
      const QuatVec& av = it == amap.end() ? zero : it->second;
      for (std::size_t i = 0; i < nv.size(); ++i) {
        const double a[4] = {av[i].a, av[i].b, av[i].c, av[i].d};
        const double n[4] = {nv[i].a, nv[i].b, nv[i].c, nv[i].d};
        for (int w = 0; w < 4; ++w) {
          const double diff = std::abs(a[w] - n[w]);
          ++r.compared;
          if (diff <= abs_floor) continue;
          r.max_rel_error = std::max(r.max_rel_error, diff / std::max(std::abs(a[w]), std::abs(n[w])));
        }
      }
    }
  };
  cmp(analytic.entities, numeric.entities);
  cmp(analytic.relations, numeric.relations);
  return r;
}

/// Random batch on N entities / M relations with uniform corruptions. Hinge
/// terms within `kink` of zero are redrawn so the loss is smooth around the point,
/// as are relation coordinates with modulus below `min_modulus`: near w = 0 the
/// normalization curves so sharply that a central difference with step 1e-6 is
/// itself off by more than the tolerance being tested.
inline std::pair<EmbeddingTable, Batch> random_grad_instance(std::size_t n, std::size_t m, std::size_t k,
                                                             std::size_t neg, std::size_t positives,
                                                             const LossParams& p, std::mt19937_64& rng,
                                                             double kink = 1e-4, double min_modulus = 1e-2) {
  std::uniform_int_distribution<EntityId> ent(0, static_cast<EntityId>(n - 1));
  std::uniform_int_distribution<RelationId> rel(0, static_cast<RelationId>(m - 1));
  for (;;) {
    EmbeddingTable table = init_embeddings(n, m, k, rng());
    Batch b;
    b.neg_rate = neg;
    for (std::size_t i = 0; i < positives; ++i) {
      const Triple x{ent(rng), rel(rng), ent(rng)};
      b.positives.push_back(x);
      for (std::size_t j = 0; j < neg; ++j) {
        Triple c = x;
        ((rng() & 1U) ? c.head : c.tail) = ent(rng);
        b.negatives.push_back(c);
      }
    }
    bool smooth = true;
    for (const auto& x : b.positives)
      for (std::size_t i = 0; i < k; ++i)
        if (magnitude(table.relation(x.relation)[i]) < min_modulus) smooth = false;
    for (std::size_t i = 0; i < positives && smooth; ++i) {
      const double fp = ref_distance(table, b.positives[i]);
      if (fp < kink) smooth = false;
      for (std::size_t j = 0; j < neg; ++j) {
        const double fn = ref_distance(table, b.negatives[i * neg + j]);
        const double margin = p.form == LossForm::pairwise ? p.margin + fp - fn : p.margin - fn;
        if (std::abs(margin) < kink || fn < kink) smooth = false;
      }
    }
    if (smooth) return {std::move(table), std::move(b)};
  }
}

}  // namespace quated::testing

#endif  // QUATED_TESTS_SUPPORT_HPP
