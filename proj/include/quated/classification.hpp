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

#ifndef QUATED_CLASSIFICATION_HPP
#define QUATED_CLASSIFICATION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "quated/train.hpp"

namespace quated {

struct LabeledScore {
  double score{};  // smaller = more plausible
  bool positive{};
};

struct ThresholdChoice {
  double threshold{};
  double accuracy{};
};

/// Threshold maximizing accuracy of "positive iff score <= threshold".
/// Candidates are one value below the minimum, the midpoints between
/// consecutive distinct scores, and one value above the maximum; the
/// smallest threshold wins ties.
inline ThresholdChoice best_threshold(std::span<const LabeledScore> samples) {
  if (samples.empty()) return {0.0, 0.0};
  std::vector<LabeledScore> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.score < y.score; });

  const auto total = static_cast<double>(s.size());
  std::size_t negatives = 0;
  for (const auto& x : s) negatives += x.positive ? 0 : 1;

  // Sweep: `correct` for a threshold just below s[i].score is
  // (#positives in s[0, i)) + (#negatives in s[i, n)).
  std::size_t correct = negatives;
  ThresholdChoice best{s.front().score - 1.0, static_cast<double>(correct) / total};
  std::size_t i = 0;
  while (i < s.size()) {
    const double v = s[i].score;
    while (i < s.size() && s[i].score == v) {
      correct += s[i].positive ? 1 : 0;
      correct -= s[i].positive ? 0 : 1;
      ++i;
    }
    const double thr = i < s.size() ? v + (s[i].score - v) / 2.0 : v + 1.0;
    const double acc = static_cast<double>(correct) / total;
    if (acc > best.accuracy) best = {thr, acc};
  }
  return best;
}

struct ClassificationReport {
  double accuracy{};
  std::map<RelationId, double> thresholds;
  double fallback_threshold{};  // for relations without validation pairs
  std::size_t test_pairs{};
  std::size_t valid_pairs{};
};

struct ClassificationOptions {
  Scorer scorer{Scorer::quate_d};
  std::uint64_t seed{0};
};

/// One corrupted negative per positive (fair head/tail coin, uniform entity,
/// redrawn while it is a known true triple).
template <class Rng>
Triple corrupt_one(const TripleStore& store, const Triple& x, Rng& rng) {
  return sample_negatives(store, x, 1, ConstraintMode::none, rng).front();
}

/// Per-relation thresholds learned on validation (1:1 positive:negative),
/// accuracy measured on the test split.
inline ClassificationReport triple_classification(const EmbeddingTable& table, const TripleStore& store,
                                                  const ClassificationOptions& opt) {
  if (store.valid().empty() || store.test().empty())
    throw UsageError("triple classification needs non-empty validation and test splits");

  std::mt19937_64 rng(opt.seed);
  auto labeled = [&](std::span<const Triple> split) {
    std::vector<std::pair<RelationId, LabeledScore>> out;
    out.reserve(2 * split.size());
    for (const auto& x : split) {
      const Triple neg = corrupt_one(store, x, rng);
      out.push_back({x.relation, {score(table, opt.scorer, x).badness(), true}});
      out.push_back({neg.relation, {score(table, opt.scorer, neg).badness(), false}});
    }
    return out;
  };
  const auto valid = labeled(store.valid());
  const auto test = labeled(store.test());

  ClassificationReport rep;
  rep.valid_pairs = valid.size() / 2;
  rep.test_pairs = test.size() / 2;

  std::map<RelationId, std::vector<LabeledScore>> by_rel;
  std::vector<LabeledScore> all;
  for (const auto& [r, s] : valid) {
    by_rel[r].push_back(s);
    all.push_back(s);
  }
  rep.fallback_threshold = best_threshold(all).threshold;
  for (const auto& [r, samples] : by_rel) rep.thresholds[r] = best_threshold(samples).threshold;

  std::size_t correct = 0;
  for (const auto& [r, s] : test) {
    const auto it = rep.thresholds.find(r);
    const double thr = it != rep.thresholds.end() ? it->second : rep.fallback_threshold;
    if ((s.score <= thr) == s.positive) ++correct;
  }
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return rep;
}

}  // namespace quated

#endif  // QUATED_CLASSIFICATION_HPP
