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

// Command-line front end. Kept in a header so the test suite can drive
// run_cli() in-process.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.

#ifndef QUATED_TOOLS_CLI_HPP
#define QUATED_TOOLS_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quated/quated.hpp"

namespace quated::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return kUsage;
    case ErrorKind::data: return kData;
    case ErrorKind::numeric: return kNumeric;
  }
  return kData;
}

enum class Format { text, keyvalue };

struct DataOptions {
  std::string dir;
  std::string train, valid, test;

  void add_to(CLI::App* app) {
    app->add_option("--data", dir, "directory holding train.txt, valid.txt and test.txt");
    app->add_option("--train", train, "training split (tab-separated triples)");
    app->add_option("--valid", valid, "validation split");
    app->add_option("--test", test, "test split");
  }

  TripleStore load() const {
    if (!train.empty() || !valid.empty() || !test.empty()) {
      if (train.empty() || valid.empty() || test.empty())
        throw UsageError("--train, --valid and --test must be given together");
      return TripleStore::load(train, valid, test);
    }
    if (dir.empty()) throw UsageError("no dataset: pass --data DIR or --train/--valid/--test");
    return TripleStore::load_dir(dir);
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string out_dir;
  Format format{Format::text};

  /// Prints `text` or `doc` per --format and mirrors it into out_dir/stem.{txt,json}.
  void emit(const std::string& stem, const std::string& text, const nlohmann::json& doc) const {
    const std::string body = format == Format::keyvalue ? doc.dump(2) + "\n" : text;
    out << body;
    if (!out_dir.empty()) write_file(stem + (format == Format::keyvalue ? ".json" : ".txt"), body);
  }

  void write_file(const std::string& name, const std::string& body) const {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + (fs::path(out_dir) / name).string());
    f << body;
  }
};

inline void add_format(CLI::App* app, Format& f) {
  app->add_option("--format", f, "report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text},
                                                                        {"keyvalue", Format::keyvalue}}));
}

inline CLI::Option* add_on_off(CLI::App* app, const std::string& name, bool& flag, const std::string& help) {
  return app->add_option(name, flag, help)
      ->transform(CLI::CheckedTransformer(std::map<std::string, bool>{{"on", true}, {"off", false}}));
}

inline Scorer scorer_or_throw(const std::string& name) {
  const auto s = parse_scorer(name);
  if (!s) throw UsageError("unknown scorer " + name);
  return *s;
}

inline void check_shape(const CheckpointMeta& m, const TripleStore& store, std::optional<std::size_t> k) {
  if (m.num_entities != store.num_entities() || m.num_relations != store.num_relations())
    throw ShapeMismatch("checkpoint has N=" + std::to_string(m.num_entities) + ", M=" +
                        std::to_string(m.num_relations) + " but dataset has N=" +
                        std::to_string(store.num_entities()) + ", M=" + std::to_string(store.num_relations()));
  if (k && *k != m.dim)
    throw ShapeMismatch("checkpoint has k=" + std::to_string(m.dim) + " but k=" + std::to_string(*k) +
                        " was requested");
}

inline nlohmann::json meta_json(const CheckpointMeta& m) {
  return {{"num_entities", m.num_entities}, {"num_relations", m.num_relations}, {"dim", m.dim},
          {"seed", m.seed},                 {"scorer", std::string(to_string(m.scorer))},
          {"config_hash", m.config_hash},   {"format_version", m.format_version}};
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  DataOptions data;
  TrainConfig cfg;
  bool type_constraints{false};
  std::string constraint_scope{"both"};
  std::string loss{"pairwise"};
  std::string scorer{"quate_d"};
  bool log_timing{true};
  std::vector<std::size_t> grid_k, grid_neg;
  std::vector<double> grid_l1, grid_l2;
};

struct GridPoint {
  std::size_t k, neg;
  double l1, l2;
};

inline int cmd_train(const TrainArgs& a, const Context& ctx) {
  if (scorer_or_throw(a.scorer) != Scorer::quate_d)
    throw UsageError("training is implemented for the quate_d scorer only");
  if (a.constraint_scope != "both" && a.constraint_scope != "sampling")
    throw UsageError("--constraint-scope must be both or sampling");
  if (a.loss != "pairwise" && a.loss != "pointwise") throw UsageError("--loss must be pairwise or pointwise");

  TrainConfig base = a.cfg;
  base.constraint_mode = a.type_constraints ? ConstraintMode::type_constrained : ConstraintMode::none;
  base.constrain_ranking = a.constraint_scope == "both";
  base.loss_form = a.loss == "pairwise" ? LossForm::pairwise : LossForm::pointwise;
  base.validate();

  const TripleStore store = a.data.load();
  if (store.train().empty()) throw UsageError("training split is empty");

  auto axis = [](const auto& grid, auto fallback) {
    using T = decltype(fallback);
    return grid.empty() ? std::vector<T>{fallback} : std::vector<T>(grid.begin(), grid.end());
  };
  std::vector<GridPoint> points;
  for (auto k : axis(a.grid_k, base.dim))
    for (auto neg : axis(a.grid_neg, base.neg_rate))
      for (auto l1 : axis(a.grid_l1, base.l1))
        for (auto l2 : axis(a.grid_l2, base.l2)) points.push_back({k, neg, l1, l2});
  const bool grid = points.size() > 1;

  struct RunOutcome {
    TrainConfig cfg;
    FitResult fit;
  };
  std::optional<RunOutcome> best;
  nlohmann::json grid_doc = nlohmann::json::array();

  for (std::size_t i = 0; i < points.size(); ++i) {
    TrainConfig cfg = base;
    cfg.dim = points[i].k;
    cfg.neg_rate = points[i].neg;
    cfg.l1 = points[i].l1;
    cfg.l2 = points[i].l2;
    cfg.validate();
    const std::string hash = config_hash(cfg);
    const fs::path run_dir =
        ctx.out_dir.empty() ? fs::path() : (grid ? fs::path(ctx.out_dir) / ("run_" + std::to_string(i)) : fs::path(ctx.out_dir));

    std::ofstream log;
    if (!run_dir.empty()) {
      fs::create_directories(run_dir);
      log.open(run_dir / "train_log.jsonl", std::ios::binary | std::ios::trunc);
      if (!log) throw IoError("cannot write " + (run_dir / "train_log.jsonl").string());
    }
    FitHooks hooks;
    hooks.on_epoch = [&](const LogRecord& r) {
      if (!log.is_open()) return;
      LogRecord rec = r;
      if (!a.log_timing) rec.wall_seconds = 0.0;
      log << to_json(rec).dump() << '\n';
      log.flush();
    };
    hooks.on_best = [&](const EmbeddingTable& t, std::size_t, double) {
      if (!run_dir.empty()) save_checkpoint(run_dir / "checkpoint.bin", t, Scorer::quate_d, hash);
    };

    FitResult fit_res = fit(store, cfg, hooks);
    if (!run_dir.empty()) save_checkpoint(run_dir / "checkpoint.bin", fit_res.table, Scorer::quate_d, hash);

    nlohmann::json entry = to_json(cfg);
    entry["config_hash"] = hash;
    entry["best_epoch"] = fit_res.best_epoch;
    entry["epochs_run"] = fit_res.epochs_run;
    entry["best_valid_mrr"] = fit_res.best_valid_mrr ? nlohmann::json(*fit_res.best_valid_mrr) : nlohmann::json();
    grid_doc.push_back(entry);

    const double score = fit_res.best_valid_mrr.value_or(-1.0);
    if (!best || score > best->fit.best_valid_mrr.value_or(-1.0)) best = RunOutcome{cfg, std::move(fit_res)};
  }

  const TrainConfig& cfg = best->cfg;
  const FitResult& res = best->fit;
  if (grid && !ctx.out_dir.empty())
    save_checkpoint(fs::path(ctx.out_dir) / "checkpoint.bin", res.table, Scorer::quate_d, config_hash(cfg));

  nlohmann::json doc{{"seed", cfg.seed},
                     {"config", to_json(cfg)},
                     {"config_hash", config_hash(cfg)},
                     {"best_epoch", res.best_epoch},
                     {"epochs_run", res.epochs_run},
                     {"negative_fallbacks", res.negatives.fallbacks}};
  std::string text = "trained k=" + std::to_string(cfg.dim) + " for " + std::to_string(res.epochs_run) +
                     " epochs, best epoch " + std::to_string(res.best_epoch) + "\n";
  if (grid) {
    doc["grid"] = grid_doc;
    for (std::size_t i = 0; i < grid_doc.size(); ++i) {
      if (grid_doc[i]["config_hash"] == config_hash(cfg)) doc["selected"] = i;
    }
    text += "grid: " + std::to_string(grid_doc.size()) + " runs, selected run " + doc["selected"].dump() + "\n";
  }
  if (!store.valid().empty()) {
    nlohmann::json reps = nlohmann::json::array();
    for (RankMode mode : {RankMode::raw, RankMode::filtered}) {
      EvalOptions opt{mode, Scorer::quate_d, cfg.ranking_constrained(), cfg.eval_threads};
      const RankingReport rep = link_prediction(res.table, store, store.valid(), opt);
      reps.push_back(to_json(rep, &store));
      text += "valid " + to_text(rep, &store);
    }
    doc["valid"] = reps;
  }
  ctx.emit("train_report", text, doc);
  if (grid && !ctx.out_dir.empty()) ctx.write_file("grid.json", grid_doc.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  DataOptions data;
  std::string checkpoint;
  std::optional<std::size_t> k;
  std::string scorer;
  std::string mode{"both"};
  std::string type_constraints{"off"};
  std::string split{"test"};
  unsigned threads{1};
};

inline int cmd_eval(const EvalArgs& a, const Context& ctx) {
  const TripleStore store = a.data.load();
  const Checkpoint ck = load_checkpoint(a.checkpoint);
  check_shape(ck.meta, store, a.k);
  const Scorer scorer = a.scorer.empty() ? ck.meta.scorer : scorer_or_throw(a.scorer);

  std::vector<RankMode> modes;
  if (a.mode == "raw" || a.mode == "both") modes.push_back(RankMode::raw);
  if (a.mode == "filtered" || a.mode == "both") modes.push_back(RankMode::filtered);
  if (modes.empty()) throw UsageError("--mode must be raw, filtered or both");
  std::vector<bool> typed;
  if (a.type_constraints == "off" || a.type_constraints == "both") typed.push_back(false);
  if (a.type_constraints == "on" || a.type_constraints == "both") typed.push_back(true);
  if (typed.empty()) throw UsageError("--type-constraints must be on, off or both");
  if (a.split != "test" && a.split != "valid") throw UsageError("--split must be test or valid");
  const auto split = a.split == "test" ? store.test() : store.valid();
  if (split.empty()) throw UsageError("evaluation split is empty");

  nlohmann::json reps = nlohmann::json::array();
  std::string text;
  for (bool t : typed)
    for (RankMode m : modes) {
      const RankingReport rep = link_prediction(ck.table, store, split, {m, scorer, t, a.threads});
      reps.push_back(to_json(rep, &store));
      text += to_text(rep, &store);
    }
  nlohmann::json doc{{"seed", ck.meta.seed},
                     {"checkpoint", meta_json(ck.meta)},
                     {"scorer", std::string(to_string(scorer))},
                     {"split", a.split},
                     {"reports", reps}};
  ctx.emit("eval", text, doc);
  return kOk;
}

// ---------------------------------------------------------------- classify / export-curves

struct ClassifyArgs {
  DataOptions data;
  std::string checkpoint;
  std::vector<std::string> checkpoints;  // export-curves
  std::string scorer;
  std::optional<std::uint64_t> seed;
};

inline ClassificationReport classify_checkpoint(const Checkpoint& ck, const TripleStore& store, const ClassifyArgs& a) {
  check_shape(ck.meta, store, std::nullopt);
  ClassificationOptions opt;
  opt.scorer = a.scorer.empty() ? ck.meta.scorer : scorer_or_throw(a.scorer);
  opt.seed = a.seed.value_or(ck.meta.seed);
  return triple_classification(ck.table, store, opt);
}

inline int cmd_classify(const ClassifyArgs& a, const Context& ctx) {
  const TripleStore store = a.data.load();
  const Checkpoint ck = load_checkpoint(a.checkpoint);
  const ClassificationReport rep = classify_checkpoint(ck, store, a);
  nlohmann::json doc = to_json(rep, &store);
  doc["seed"] = a.seed.value_or(ck.meta.seed);
  doc["k"] = ck.meta.dim;
  ctx.emit("classify", to_text(rep), doc);
  return kOk;
}

/// (k, accuracy) rows sorted by k; missing checkpoints are reported and skipped.
inline int cmd_export_curves(const ClassifyArgs& a, const Context& ctx) {
  if (a.checkpoints.empty()) throw UsageError("export-curves needs --checkpoints");
  const TripleStore store = a.data.load();
  struct Row {
    std::size_t k;
    double accuracy;
  };
  std::vector<Row> rows;
  for (const auto& path : a.checkpoints) {
    if (!fs::exists(path)) {
      ctx.err << "warning: checkpoint " << path << " not found, skipped\n";
      continue;
    }
    const Checkpoint ck = load_checkpoint(path);
    rows.push_back({ck.meta.dim, classify_checkpoint(ck, store, a).accuracy});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.k < y.k; });

  std::string csv = "k,accuracy\n";
  nlohmann::json doc{{"rows", nlohmann::json::array()}};
  if (a.seed) doc["seed"] = *a.seed;
  for (const auto& r : rows) {
    char line[64];
    std::snprintf(line, sizeof line, "%zu,%.17g\n", r.k, r.accuracy);
    csv += line;
    doc["rows"].push_back({{"k", r.k}, {"accuracy", r.accuracy}});
  }
  ctx.out << (ctx.format == Format::keyvalue ? doc.dump(2) + "\n" : csv);
  if (!ctx.out_dir.empty()) ctx.write_file("curve.csv", csv);
  return kOk;
}

// ---------------------------------------------------------------- properties / inspect

struct PropertyArgs {
  std::vector<std::string> properties;
  std::size_t trials{10000};
  std::size_t k{8};
  std::optional<double> tolerance;
  std::uint64_t seed{0};
  bool negative_control{false};
};

/// Exit 3 when a check does not behave as expected: a faithful check that
/// fails, or a negative control that passes.
inline int cmd_properties(const PropertyArgs& a, const Context& ctx) {
  std::vector<Property> which;
  if (a.properties.empty() || (a.properties.size() == 1 && a.properties[0] == "all")) {
    which = {Property::associativity, Property::noncommutativity, Property::inversion, Property::composition,
             Property::symmetry,      Property::antisymmetry,     Property::rotate_reduction};
  } else {
    for (const auto& name : a.properties) {
      const auto p = parse_property(name);
      if (!p) throw UsageError("unknown property " + name);
      which.push_back(*p);
    }
  }
  if (a.trials < 1 || a.k < 1) throw UsageError("--trials and --k must be >= 1");

  nlohmann::json verdicts = nlohmann::json::array();
  std::string text;
  bool unexpected = false;
  for (Property p : which) {
    CheckOptions opt;
    opt.trials = a.trials;
    opt.dim = a.k;
    opt.seed = a.seed;
    opt.negative_control = a.negative_control;
    opt.tolerance = a.tolerance.value_or(p == Property::symmetry ? 1e-12 : 1e-9);
    const PropertyVerdict v = check_property(p, opt);
    verdicts.push_back(to_json(v));
    text += to_text(v);
    if (v.pass == a.negative_control) {
      unexpected = true;
      ctx.err << "error: " << to_string(p) << (a.negative_control ? " negative control passed\n" : " failed\n");
    }
  }
  nlohmann::json doc{{"seed", a.seed}, {"negative_control", a.negative_control}, {"verdicts", verdicts}};
  ctx.emit("properties", text, doc);
  return unexpected ? kNumeric : kOk;
}

struct InspectArgs {
  DataOptions data;
  std::string checkpoint;
  std::vector<std::string> relations;
  std::size_t pairs{1000};
  std::uint64_t seed{0};
};

inline int cmd_inspect(const InspectArgs& a, const Context& ctx) {
  const Checkpoint ck = load_checkpoint(a.checkpoint);
  std::optional<TripleStore> store;
  if (!a.data.dir.empty() || !a.data.train.empty()) {
    store = a.data.load();
    check_shape(ck.meta, *store, std::nullopt);
  }
  auto name_of = [&](RelationId r) { return store ? store->relations().name(r) : std::to_string(r); };

  std::vector<RelationId> ids;
  if (a.relations.empty()) {
    for (std::size_t r = 0; r < ck.table.num_relations(); ++r) ids.push_back(static_cast<RelationId>(r));
  }
  for (const auto& name : a.relations) {
    if (store) {
      if (auto id = store->relations().find(name)) {
        ids.push_back(*id);
        continue;
      }
    }
    std::size_t pos = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(name, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != name.size() || id >= ck.table.num_relations()) throw UsageError("unknown relation " + name);
    ids.push_back(static_cast<RelationId>(id));
  }

  nlohmann::json rels = nlohmann::json::array();
  std::string text;
  for (RelationId r : ids) {
    const RelationDiagnostic d = check_trained(ck.table, r, a.pairs, a.seed);
    nlohmann::json j = to_json(d);
    j["name"] = name_of(r);
    rels.push_back(j);
    char line[200];
    std::snprintf(line, sizeof line, "%-40s imaginary_energy=%.4f  asymmetry=%.4f  (baseline %.4f)\n",
                  name_of(r).c_str(), d.imaginary_energy, d.asymmetry, d.baseline_asymmetry);
    text += line;
  }
  nlohmann::json doc{{"seed", a.seed}, {"checkpoint", meta_json(ck.meta)}, {"relations", rels}};
  ctx.emit("inspect", text, doc);
  return kOk;
}

// ---------------------------------------------------------------- stats / synth

inline int cmd_stats(const DataOptions& d, const Context& ctx) {
  const TripleStore store = d.load();
  const DatasetStats s = store.stats();
  ctx.emit("stats", to_text(s), to_json(s));
  return kOk;
}

inline int cmd_synth(const PlantedSpec& spec, const Context& ctx) {
  if (ctx.out_dir.empty()) throw UsageError("synth needs --out DIR");
  const PlantedGraph g = make_planted_graph(spec);
  g.write(ctx.out_dir);
  const DatasetStats s = g.store().stats();
  nlohmann::json doc = to_json(s);
  doc["seed"] = spec.seed;
  ctx.out << (ctx.format == Format::keyvalue ? doc.dump(2) + "\n" : to_text(s));
  return kOk;
}

// ---------------------------------------------------------------- entry point

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"quated: quaternion knowledge graph embeddings with a distance score"};
  app.set_config("--config", "", "key-value configuration file; command-line flags take precedence");
  app.require_subcommand(1);

  std::string out_dir;
  Format format = Format::text;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory");
    add_format(sub, format);
  };

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "train a model with early stopping on validation MRR");
  ta.data.add_to(train);
  common(train);
  train->add_option("--k", ta.cfg.dim, "embedding dimension");
  train->add_option("--margin", ta.cfg.margin, "margin gamma");
  train->add_option("--lr", ta.cfg.lr, "Adagrad learning rate");
  train->add_option("--l1", ta.cfg.l1, "entity regularization rate");
  train->add_option("--l2", ta.cfg.l2, "relation regularization rate");
  train->add_option("--neg", ta.cfg.neg_rate, "negatives per positive");
  train->add_option("--batch", ta.cfg.batch_size, "positives per mini-batch");
  train->add_option("--epochs", ta.cfg.epochs, "maximum number of epochs");
  train->add_option("--seed", ta.cfg.seed, "root seed");
  train->add_option("--eval-every", ta.cfg.eval_every, "epochs between validation evaluations");
  train->add_option("--patience", ta.cfg.patience, "evaluations without improvement before stopping (0 = never)");
  train->add_option("--threads", ta.cfg.eval_threads, "threads for validation ranking");
  add_on_off(train, "--type-constraints", ta.type_constraints, "type-constrained negatives {on,off}");
  train->add_option("--constraint-scope", ta.constraint_scope,
                    "with type constraints: restrict validation ranking too (both) or only sampling");
  train->add_option("--loss", ta.loss, "pairwise or pointwise margin loss");
  train->add_option("--scorer", ta.scorer, "scorer (training supports quate_d)");
  add_on_off(train, "--log-timing", ta.log_timing, "record wall time in the training log {on,off}");
  train->add_option("--grid-k", ta.grid_k, "grid over embedding dimensions")->delimiter(',');
  train->add_option("--grid-neg", ta.grid_neg, "grid over negative rates")->delimiter(',');
  train->add_option("--grid-l1", ta.grid_l1, "grid over entity regularization")->delimiter(',');
  train->add_option("--grid-l2", ta.grid_l2, "grid over relation regularization")->delimiter(',');

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "link prediction ranking report");
  ea.data.add_to(eval);
  common(eval);
  eval->add_option("--checkpoint", ea.checkpoint, "checkpoint file")->required();
  eval->add_option("--k", ea.k, "expected embedding dimension");
  eval->add_option("--scorer", ea.scorer, "quate_d, rotate or quate_inner (default: from checkpoint)");
  eval->add_option("--mode", ea.mode, "raw, filtered or both");
  eval->add_option("--type-constraints", ea.type_constraints, "on, off or both");
  eval->add_option("--split", ea.split, "test or valid");
  eval->add_option("--threads", ea.threads, "worker threads");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "triple classification accuracy");
  ca.data.add_to(classify);
  common(classify);
  classify->add_option("--checkpoint", ca.checkpoint, "checkpoint file")->required();
  classify->add_option("--scorer", ca.scorer, "scorer (default: from checkpoint)");
  classify->add_option("--seed", ca.seed, "negative sampling seed (default: checkpoint seed)");

  ClassifyArgs xa;
  auto* curves = app.add_subcommand("export-curves", "embedding dimension vs classification accuracy as CSV");
  xa.data.add_to(curves);
  common(curves);
  curves->add_option("--checkpoints", xa.checkpoints, "checkpoint files")->required()->delimiter(',');
  curves->add_option("--scorer", xa.scorer, "scorer (default: from checkpoint)");
  curves->add_option("--seed", xa.seed, "negative sampling seed (default: checkpoint seed)");

  PropertyArgs pa;
  auto* props = app.add_subcommand("properties", "randomized checks of the relational-pattern identities");
  common(props);
  props->add_option("--property", pa.properties, "property names or all")->delimiter(',');
  props->add_option("--trials", pa.trials, "random trials per check");
  props->add_option("--k", pa.k, "quaternion vector dimension");
  props->add_option("--tolerance", pa.tolerance, "equality tolerance (default 1e-9, symmetry 1e-12)");
  props->add_option("--seed", pa.seed, "seed");
  props->add_flag("--negative-control", pa.negative_control, "run the falsifying variants instead");

  InspectArgs ia;
  auto* inspect = app.add_subcommand("inspect", "relation structure diagnostics of a checkpoint");
  ia.data.add_to(inspect);
  common(inspect);
  inspect->add_option("--checkpoint", ia.checkpoint, "checkpoint file")->required();
  inspect->add_option("--relation", ia.relations, "relation names or ids (default: all)")->delimiter(',');
  inspect->add_option("--pairs", ia.pairs, "sampled entity pairs");
  inspect->add_option("--seed", ia.seed, "seed");

  DataOptions sd;
  auto* stats = app.add_subcommand("stats", "dataset statistics");
  sd.add_to(stats);
  common(stats);

  PlantedSpec ps;
  auto* synth = app.add_subcommand("synth", "write the planted-pattern synthetic dataset");
  common(synth);
  synth->add_option("--entities", ps.entities, "number of entities");
  synth->add_option("--cycle", ps.cycle, "ring length per entity group");
  synth->add_option("--seed", ps.seed, "split seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  const Context ctx{out, err, out_dir, format};
  try {
    if (train->parsed()) return cmd_train(ta, ctx);
    if (eval->parsed()) return cmd_eval(ea, ctx);
    if (classify->parsed()) return cmd_classify(ca, ctx);
    if (curves->parsed()) return cmd_export_curves(xa, ctx);
    if (props->parsed()) return cmd_properties(pa, ctx);
    if (inspect->parsed()) return cmd_inspect(ia, ctx);
    if (stats->parsed()) return cmd_stats(sd, ctx);
    if (synth->parsed()) return cmd_synth(ps, ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace quated::cli

#endif  // QUATED_TOOLS_CLI_HPP
