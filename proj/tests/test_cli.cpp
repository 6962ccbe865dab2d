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


#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "support.hpp"

namespace quated {
namespace {

using testing::read_file;
using testing::TempDir;
using testing::write_file;
namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "quated");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    PlantedSpec spec;
    spec.entities = 48;
    make_planted_graph(spec).write(data());
  }
  fs::path data() const { return tmp_.path() / "data"; }
  fs::path path(const std::string& name) const { return tmp_.path() / name; }
  std::string d() const { return data().string(); }

  TempDir tmp_{"cli"};
};

TEST_F(CliTest, TrainWritesReloadableCheckpoint) {
  const CliRun r = run({"train", "--data", d(), "--k", "6", "--epochs", "4", "--eval-every", "2", "--seed", "3",
                     "--out", path("run").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(path("run/checkpoint.bin")));
  ASSERT_TRUE(fs::exists(path("run/train_log.jsonl")));
  ASSERT_TRUE(fs::exists(path("run/train_report.txt")));

  const Checkpoint ck = load_checkpoint(path("run/checkpoint.bin"));
  const TripleStore s = TripleStore::load_dir(data());
  TrainConfig c;
  c.dim = 6;
  c.epochs = 4;
  c.eval_every = 2;
  c.seed = 3;
  const FitResult direct = fit(s, c);
  EXPECT_EQ(ck.table, direct.table);
  EXPECT_EQ(ck.meta.config_hash, config_hash(c));
  for (const Triple& x : s.test()) EXPECT_EQ(score(ck.table, Scorer::quate_d, x).value, score(direct.table, Scorer::quate_d, x).value);

  std::istringstream log(read_file(path("run/train_log.jsonl")));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(log, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("epoch"), ++lines);
  }
  EXPECT_EQ(lines, 4u);
}

TEST_F(CliTest, ZeroEpochsCheckpointIsInitialization) {
  const CliRun r = run({"train", "--data", d(), "--k", "5", "--epochs", "0", "--seed", "9", "--out", path("z").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const TripleStore s = TripleStore::load_dir(data());
  EXPECT_EQ(load_checkpoint(path("z/checkpoint.bin")).table,
            init_embeddings(s.num_entities(), s.num_relations(), 5, 9));
}

TEST_F(CliTest, GridRecordsSelection) {
  const CliRun r = run({"train", "--data", d(), "--grid-k", "4,8", "--epochs", "4", "--eval-every", "2", "--format",
                     "keyvalue", "--out", path("g").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("g/run_0/checkpoint.bin")));
  EXPECT_TRUE(fs::exists(path("g/run_1/checkpoint.bin")));
  const auto grid = nlohmann::json::parse(read_file(path("g/grid.json")));
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(grid[0].at("k"), 4);
  EXPECT_EQ(grid[1].at("k"), 8);
  const auto report = nlohmann::json::parse(r.out);
  const std::size_t sel = report.at("selected");
  const double m0 = grid[0].at("best_valid_mrr"), m1 = grid[1].at("best_valid_mrr");
  EXPECT_EQ(sel, m1 > m0 ? 1u : 0u);
  EXPECT_EQ(load_checkpoint(path("g/checkpoint.bin")).meta.dim, sel == 1 ? 8u : 4u);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (const char* out : {"a", "b"}) {
    const CliRun r = run({"train", "--data", d(), "--k", "6", "--epochs", "3", "--eval-every", "1", "--log-timing",
                       "off", "--format", "keyvalue", "--out", path(out).string()});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(run({"eval", "--data", d(), "--checkpoint", path(std::string(out) + "/checkpoint.bin").string(),
                   "--format", "keyvalue", "--out", path(out).string()})
                  .code,
              0);
  }
  for (const char* f : {"checkpoint.bin", "train_log.jsonl", "train_report.json", "eval.json"})
    EXPECT_EQ(read_file(path(std::string("a/") + f)), read_file(path(std::string("b/") + f))) << f;
}

TEST_F(CliTest, EvalMatchesBruteForce) {
  const TripleStore s = TripleStore::load_dir(data());
  const EmbeddingTable t = init_embeddings(s.num_entities(), s.num_relations(), 3, 21);
  save_checkpoint(path("init.bin"), t, Scorer::quate_d, "none");
  const CliRun r = run({"eval", "--data", d(), "--checkpoint", path("init.bin").string(), "--format", "keyvalue"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.at("reports").size(), 2u);
  for (const auto& rep : doc.at("reports")) {
    const bool filtered = rep.at("mode") == "filtered";
    const auto want = testing::brute_force_ranking(t, s, s.test(), filtered);
    EXPECT_EQ(rep.at("mrr").get<double>(), want.mrr);
    EXPECT_EQ(rep.at("mr").get<double>(), want.mr);
    EXPECT_EQ(rep.at("hits").at("10").get<double>(), want.hits.at(10));
    for (const auto& [rel, v] : want.per_relation_mrr)
      EXPECT_EQ(rep.at("per_relation").at(s.relations().name(rel)).at("mrr").get<double>(), v);
  }
  EXPECT_EQ(doc.at("seed"), 21);
}

TEST_F(CliTest, EvalPlantedCheckpointIsPerfect) {
  ASSERT_EQ(run({"train", "--data", d(), "--k", "50", "--neg", "5", "--epochs", "30", "--out", path("p").string()}).code, 0);
  const CliRun r = run({"eval", "--data", d(), "--checkpoint", path("p/checkpoint.bin").string(), "--mode", "filtered",
                     "--format", "keyvalue"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("reports")[0].at("mrr").get<double>(), 1.0);
}

TEST_F(CliTest, EvalTypeConstraintsBoth) {
  ASSERT_EQ(run({"train", "--data", d(), "--k", "4", "--epochs", "1", "--out", path("t").string()}).code, 0);
  const CliRun r = run({"eval", "--data", d(), "--checkpoint", path("t/checkpoint.bin").string(), "--type-constraints",
                     "both", "--format", "keyvalue"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reps = nlohmann::json::parse(r.out).at("reports");
  ASSERT_EQ(reps.size(), 4u);
  EXPECT_EQ(reps[0].at("type_constrained"), false);
  EXPECT_EQ(reps[3].at("type_constrained"), true);
}

TEST_F(CliTest, ShapeMismatch) {
  ASSERT_EQ(run({"train", "--data", d(), "--k", "4", "--epochs", "1", "--out", path("m").string()}).code, 0);
  const CliRun wrong_k = run({"eval", "--data", d(), "--checkpoint", path("m/checkpoint.bin").string(), "--k", "8"});
  EXPECT_EQ(wrong_k.code, 2);
  EXPECT_NE(wrong_k.err.find("k=4"), std::string::npos);

  PlantedSpec other;
  other.entities = 16;
  make_planted_graph(other).write(path("other"));
  const CliRun wrong_n = run({"eval", "--data", path("other").string(), "--checkpoint", path("m/checkpoint.bin").string()});
  EXPECT_EQ(wrong_n.code, 2);
  EXPECT_NE(wrong_n.err.find("N="), std::string::npos);
}

TEST_F(CliTest, ExportCurvesMatchesClassify) {
  std::vector<std::string> cks;
  for (const char* k : {"8", "2", "4"}) {
    const std::string out = path(std::string("k") + k).string();
    ASSERT_EQ(run({"train", "--data", d(), "--k", k, "--epochs", "2", "--out", out}).code, 0);
    cks.push_back(out + "/checkpoint.bin");
  }
  const std::string list = cks[0] + "," + cks[1] + "," + path("missing.bin").string() + "," + cks[2];
  const CliRun r = run({"export-curves", "--data", d(), "--checkpoints", list, "--out", path("curves").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("missing.bin"), std::string::npos);
  EXPECT_EQ(read_file(path("curves/curve.csv")), r.out);

  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "k,accuracy");
  std::vector<std::pair<int, double>> parsed;
  while (std::getline(rows, line)) parsed.push_back({std::stoi(line), std::stod(line.substr(line.find(',') + 1))});
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_EQ(parsed[0].first, 2);
  EXPECT_EQ(parsed[1].first, 4);
  EXPECT_EQ(parsed[2].first, 8);
  for (const auto& [k, acc] : parsed) {
    const CliRun c = run({"classify", "--data", d(), "--checkpoint", path("k" + std::to_string(k) + "/checkpoint.bin").string(),
                       "--format", "keyvalue"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(nlohmann::json::parse(c.out).at("accuracy").get<double>(), acc);
  }
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  write_file(path("c.toml"), "[train]\nk = 5\nepochs = 9\nneg = 3\nseed = 4\n");
  const CliRun r = run({"--config", path("c.toml").string(), "train", "--data", d(), "--epochs", "2", "--format", "keyvalue"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cfg = nlohmann::json::parse(r.out).at("config");
  EXPECT_EQ(cfg.at("k"), 5);
  EXPECT_EQ(cfg.at("neg"), 3);
  EXPECT_EQ(cfg.at("epochs"), 2);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("seed"), 4);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"train", "--data", d(), "--bogus"}).code, 1);
  EXPECT_EQ(run({"train", "--data", d(), "--margin", "0"}).code, 1);
  EXPECT_EQ(run({"train", "--data", d(), "--scorer", "rotate"}).code, 1);
  EXPECT_EQ(run({"train", "--data", d(), "--type-constraints", "maybe"}).code, 1);
  EXPECT_EQ(run({"train", "--data", path("nowhere").string()}).code, 2);
  EXPECT_EQ(run({"eval", "--data", d(), "--checkpoint", path("nowhere.bin").string()}).code, 2);

  fs::create_directories(path("bad"));
  write_file(path("bad/train.txt"), "a\tr\n");
  write_file(path("bad/valid.txt"), "");
  write_file(path("bad/test.txt"), "");
  const CliRun parse = run({"stats", "--data", path("bad").string()});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find(":1:"), std::string::npos);

  EXPECT_EQ(run({"properties", "--trials", "200", "--k", "4"}).code, 0);
  EXPECT_EQ(run({"properties", "--trials", "200", "--k", "4", "--negative-control"}).code, 0);
  EXPECT_EQ(run({"properties", "--property", "inversion", "--trials", "200", "--tolerance", "-1"}).code, 3);
  EXPECT_EQ(run({"properties", "--property", "nonsense"}).code, 1);
}

TEST_F(CliTest, StatsAndInspect) {
  const CliRun s = run({"stats", "--data", d(), "--format", "keyvalue"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j.at("entities"), 48);
  EXPECT_EQ(j.at("relations"), 4);
  EXPECT_EQ(j.at("triples"), 192);

  ASSERT_EQ(run({"train", "--data", d(), "--k", "4", "--epochs", "1", "--out", path("i").string()}).code, 0);
  const CliRun in = run({"inspect", "--data", d(), "--checkpoint", path("i/checkpoint.bin").string(), "--relation",
                      "symmetric,2", "--pairs", "50", "--format", "keyvalue"});
  ASSERT_EQ(in.code, 0) << in.err;
  const auto rels = nlohmann::json::parse(in.out).at("relations");
  ASSERT_EQ(rels.size(), 2u);
  EXPECT_EQ(rels[0].at("name"), "symmetric");
  EXPECT_EQ(run({"inspect", "--checkpoint", path("i/checkpoint.bin").string(), "--relation", "99"}).code, 1);
}

TEST_F(CliTest, PropertiesReport) {
  const CliRun r = run({"properties", "--property", "inversion,composition", "--trials", "100", "--format", "keyvalue",
                     "--out", path("props").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(read_file(path("props/properties.json")));
  ASSERT_EQ(j.at("verdicts").size(), 2u);
  EXPECT_EQ(j.at("verdicts")[0].at("pass"), true);
  EXPECT_EQ(j.at("seed"), 0);
}

TEST_F(CliTest, SynthWritesDataset) {
  const CliRun r = run({"synth", "--entities", "16", "--out", path("syn").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(TripleStore::load_dir(path("syn")).stats().triples(), 64u);
}

}  // namespace
}  // namespace quated
