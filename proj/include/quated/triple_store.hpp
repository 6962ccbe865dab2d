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

#ifndef QUATED_TRIPLE_STORE_HPP
#define QUATED_TRIPLE_STORE_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "quated/errors.hpp"

namespace quated {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

/// Which end of a triple is corrupted or ranked.
enum class Position { head, tail };

struct RawTriple {
  std::string head, relation, tail;
  friend bool operator==(const RawTriple&, const RawTriple&) = default;
};

struct Triple {
  EntityId head{};
  RelationId relation{};
  EntityId tail{};
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Reads one tab-separated split file: head<TAB>relation<TAB>tail per line.
/// Blank lines are skipped; order and duplicates are preserved.
inline std::vector<RawTriple> load_split(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::vector<RawTriple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    if (std::count(line.begin(), line.end(), '\t') != 2)
      throw ParseError(path.string(), line_no, "expected 3 tab-separated fields");
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    RawTriple raw{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)};
    if (raw.head.empty() || raw.relation.empty() || raw.tail.empty())
      throw ParseError(path.string(), line_no, "empty field");
    out.push_back(std::move(raw));
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
  return out;
}

/// Bidirectional name <-> dense id map; ids follow first-insertion order.
class Vocab {
public:
  std::uint32_t intern(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  std::optional<std::uint32_t> find(const std::string& name) const {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    return std::nullopt;
  }

  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  std::span<const std::string> names() const noexcept { return names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

struct DatasetStats {
  std::size_t entities{};
  std::size_t relations{};
  std::size_t train{};
  std::size_t valid{};
  std::size_t test{};
  std::size_t unique_triples{};

  std::size_t triples() const noexcept { return train + valid + test; }
};

/// Integer-encoded knowledge graph with the lookups needed for filtered
/// ranking and type-constrained sampling. Immutable once built.
class TripleStore {
public:
  /// Vocabularies are assigned in first-appearance order over train, then
  /// valid, then test. Entities seen only in valid/test still get ids.
  static TripleStore build(std::span<const RawTriple> train, std::span<const RawTriple> valid,
                           std::span<const RawTriple> test) {
    TripleStore s;
    auto encode = [&s](std::span<const RawTriple> raw, std::vector<Triple>& dst) {
      dst.reserve(raw.size());
      for (const auto& r : raw) {
        // Sequenced explicitly so ids follow head, relation, tail reading order.
        const EntityId h = s.entities_.intern(r.head);
        const RelationId rel = s.relations_.intern(r.relation);
        const EntityId t = s.entities_.intern(r.tail);
        dst.push_back({h, rel, t});
      }
    };
    encode(train, s.train_);
    encode(valid, s.valid_);
    encode(test, s.test_);
    s.index();
    return s;
  }

  /// Builds directly from id triples, for synthetic graphs; num_entities may
  /// exceed the ids used. Entity and relation names are their decimal ids.
  static TripleStore from_ids(std::size_t num_entities, std::size_t num_relations, std::vector<Triple> train,
                              std::vector<Triple> valid, std::vector<Triple> test) {
    TripleStore s;
    for (std::size_t e = 0; e < num_entities; ++e) s.entities_.intern("e" + std::to_string(e));
    for (std::size_t r = 0; r < num_relations; ++r) s.relations_.intern("r" + std::to_string(r));
    for (const auto* split : {&train, &valid, &test})
      for (const auto& t : *split)
        if (t.head >= num_entities || t.tail >= num_entities || t.relation >= num_relations)
          throw UsageError("triple id out of range");
    s.train_ = std::move(train);
    s.valid_ = std::move(valid);
    s.test_ = std::move(test);
    s.index();
    return s;
  }

  static TripleStore load(const std::filesystem::path& train, const std::filesystem::path& valid,
                          const std::filesystem::path& test) {
    const auto tr = load_split(train);
    const auto va = load_split(valid);
    const auto te = load_split(test);
    return build(tr, va, te);
  }

  /// Loads dir/train.txt, dir/valid.txt and dir/test.txt.
  static TripleStore load_dir(const std::filesystem::path& dir) {
    return load(dir / "train.txt", dir / "valid.txt", dir / "test.txt");
  }

  std::size_t num_entities() const noexcept { return entities_.size(); }
  std::size_t num_relations() const noexcept { return relations_.size(); }
  const Vocab& entities() const noexcept { return entities_; }
  const Vocab& relations() const noexcept { return relations_; }

  std::span<const Triple> train() const noexcept { return train_; }
  std::span<const Triple> valid() const noexcept { return valid_; }
  std::span<const Triple> test() const noexcept { return test_; }

  bool is_true(const Triple& t) const { return all_true_.contains(key(t)); }
  std::size_t num_true() const noexcept { return all_true_.size(); }

  /// Every entity e with (head, relation, e) in any split, sorted.
  std::span<const EntityId> true_tails(EntityId head, RelationId relation) const {
    return lookup(tails_of_, pair_key(head, relation));
  }

  /// Every entity e with (e, relation, tail) in any split, sorted.
  std::span<const EntityId> true_heads(RelationId relation, EntityId tail) const {
    return lookup(heads_of_, pair_key(tail, relation));
  }

  std::span<const EntityId> true_entities(const Triple& t, Position pos) const {
    return pos == Position::head ? true_heads(t.relation, t.tail) : true_tails(t.head, t.relation);
  }

  /// Entities observed in `pos` for `relation` in training, sorted; the full
  /// entity range when the relation never occurs in training.
  std::span<const EntityId> type_candidates(RelationId relation, Position pos) const {
    const auto& sets = pos == Position::head ? type_heads_ : type_tails_;
    if (relation < sets.size() && !sets[relation].empty()) return sets[relation];
    return all_entities_;
  }

  std::span<const EntityId> all_entities() const noexcept { return all_entities_; }

  DatasetStats stats() const noexcept {
    return {num_entities(), num_relations(), train_.size(), valid_.size(), test_.size(), all_true_.size()};
  }

private:
  using IdIndex = std::unordered_map<std::uint64_t, std::vector<EntityId>>;

  std::uint64_t key(const Triple& t) const noexcept {
    return (static_cast<std::uint64_t>(t.head) * num_relations() + t.relation) * num_entities() + t.tail;
  }
  std::uint64_t pair_key(EntityId e, RelationId r) const noexcept {
    return static_cast<std::uint64_t>(e) * num_relations() + r;
  }

  static std::span<const EntityId> lookup(const IdIndex& idx, std::uint64_t k) {
    if (auto it = idx.find(k); it != idx.end()) return it->second;
    return {};
  }

  void index() {
    const std::size_t n = num_entities();
    const std::size_t m = num_relations();
    all_entities_.resize(n);
    for (std::size_t e = 0; e < n; ++e) all_entities_[e] = static_cast<EntityId>(e);

    all_true_.clear();
    all_true_.reserve(train_.size() + valid_.size() + test_.size());
    for (const auto* split : {&train_, &valid_, &test_}) {
      for (const auto& t : *split) {
        if (!all_true_.insert(key(t)).second) continue;
        tails_of_[pair_key(t.head, t.relation)].push_back(t.tail);
        heads_of_[pair_key(t.tail, t.relation)].push_back(t.head);
      }
    }
    for (auto* idx : {&tails_of_, &heads_of_})
      for (auto& [_, ids] : *idx) std::sort(ids.begin(), ids.end());

    type_heads_.assign(m, {});
    type_tails_.assign(m, {});
    for (const auto& t : train_) {
      type_heads_[t.relation].push_back(t.head);
      type_tails_[t.relation].push_back(t.tail);
    }
    for (auto* sets : {&type_heads_, &type_tails_}) {
      for (auto& ids : *sets) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      }
    }
  }

  Vocab entities_;
  Vocab relations_;
  std::vector<Triple> train_, valid_, test_;
  std::unordered_set<std::uint64_t> all_true_;
  IdIndex tails_of_, heads_of_;
  std::vector<std::vector<EntityId>> type_heads_, type_tails_;
  std::vector<EntityId> all_entities_;
};

}  // namespace quated

#endif  // QUATED_TRIPLE_STORE_HPP
