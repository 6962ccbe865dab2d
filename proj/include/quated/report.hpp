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

// Human-readable and key-value (JSON) renderings of the reports.
// JSON objects keep keys sorted, so equal reports serialize to equal bytes.

#ifndef QUATED_REPORT_HPP
#define QUATED_REPORT_HPP

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "quated/classification.hpp"
#include "quated/properties.hpp"
#include "quated/ranking.hpp"
#include "quated/triple_store.hpp"

namespace quated {

inline nlohmann::json to_json(const DatasetStats& s) {
  return {{"entities", s.entities}, {"relations", s.relations}, {"triples", s.triples()}, {"train", s.train},
          {"valid", s.valid},       {"test", s.test},           {"unique_triples", s.unique_triples}};
}

inline std::string to_text(const DatasetStats& s) {
  std::ostringstream os;
  os << "entities        " << s.entities << '\n'
     << "relations       " << s.relations << '\n'
     << "triples         " << s.triples() << '\n'
     << "train           " << s.train << '\n'
     << "valid           " << s.valid << '\n'
     << "test            " << s.test << '\n'
     << "unique triples  " << s.unique_triples << '\n';
  return os.str();
}

/// Per-relation entries are keyed by relation name when a store is given.
inline nlohmann::json to_json(const RankingReport& r, const TripleStore* store = nullptr) {
  nlohmann::json hits = nlohmann::json::object();
  for (const auto& [n, v] : r.hits) hits[std::to_string(n)] = v;
  nlohmann::json per_rel = nlohmann::json::object();
  for (const auto& [rel, v] : r.per_relation_mrr) {
    const std::string key = store ? store->relations().name(rel) : std::to_string(rel);
    per_rel[key] = {{"mrr", v}, {"queries", r.per_relation_count.at(rel)}};
  }
  return {{"mode", std::string(to_string(r.mode))},
          {"type_constrained", r.type_constrained},
          {"queries", r.count},
          {"mr", r.mr},
          {"mrr", r.mrr},
          {"hits", hits},
          {"per_relation", per_rel},
          {"excluded_gold", r.excluded_gold}};
}

inline std::string to_text(const RankingReport& r, const TripleStore* store = nullptr) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-9s %-5s  queries=%zu  MR=%.3f  MRR=%.4f  H@1=%.4f  H@3=%.4f  H@10=%.4f\n",
                std::string(to_string(r.mode)).c_str(), r.type_constrained ? "typed" : "all", r.count, r.mr, r.mrr,
                r.hits.at(1), r.hits.at(3), r.hits.at(10));
  os << line;
  for (const auto& [rel, v] : r.per_relation_mrr) {
    const std::string name = store ? store->relations().name(rel) : std::to_string(rel);
    std::snprintf(line, sizeof line, "  %-40s MRR=%.4f  (%zu queries)\n", name.c_str(), v,
                  r.per_relation_count.at(rel));
    os << line;
  }
  if (r.excluded_gold) os << "  gold entity outside type candidates: " << r.excluded_gold << " queries\n";
  return os.str();
}

inline nlohmann::json to_json(const ClassificationReport& r, const TripleStore* store = nullptr) {
  nlohmann::json thr = nlohmann::json::object();
  for (const auto& [rel, v] : r.thresholds) thr[store ? store->relations().name(rel) : std::to_string(rel)] = v;
  return {{"accuracy", r.accuracy},
          {"thresholds", thr},
          {"fallback_threshold", r.fallback_threshold},
          {"test_pairs", r.test_pairs},
          {"valid_pairs", r.valid_pairs}};
}

inline std::string to_text(const ClassificationReport& r) {
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "accuracy=%.4f  (%zu test pairs, %zu relation thresholds)\n", r.accuracy,
                r.test_pairs, r.thresholds.size());
  os << line;
  return os.str();
}

inline std::string to_text(const PropertyVerdict& v) {
  char line[200];
  std::snprintf(line, sizeof line, "%-17s %s  trials=%zu  max_violation=%.3e  tolerance=%.1e  rate=%.4f\n",
                std::string(to_string(v.property)).c_str(), v.pass ? "PASS" : "FAIL", v.trials, v.max_violation,
                v.tolerance, v.rate);
  return line;
}

}  // namespace quated

#endif  // QUATED_REPORT_HPP
