// Copyright 2026 The legisrgcn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <functional>
#include <set>
#include <tuple>

#include <doctest.h>

#include "legis/evalsuite.h"
#include "legis/synth.h"
#include "support.h"

namespace legis {
namespace {

struct Fixture {
  Corpus corpus;
  SplitAssignment split;
  EmbeddingTable bills, speeches;
  HeteroGraph graph;
};

Fixture Make(SynthPattern pattern, uint64_t seed, int legislators = 24, int bills = 60) {
  SynthOptions o;
  o.pattern = pattern;
  o.seed = seed;
  o.legislators = legislators;
  o.bills = bills;
  o.speeches = 80;
  Fixture f;
  f.corpus = GenerateCorpus(o).corpus;
  f.split = TimeSplit(f.corpus);
  std::tie(f.bills, f.speeches) = testing::RandomTables(f.corpus, 8, seed);
  f.graph = BuildGraph(f.corpus, f.split, f.bills, f.speeches);
  return f;
}

BaselineInputs Inputs(const Fixture& f) {
  BaselineInputs in;
  in.corpus = &f.corpus;
  in.split = &f.split;
  in.bill_embeddings = &f.bills;
  in.speech_embeddings = &f.speeches;
  in.forest.trees = 30;
  in.mlp.epochs = 30;
  in.mlp.learning_rate = 1e-2;
  in.train.projection = 8;
  in.train.hidden1 = 8;
  in.train.hidden2 = 4;
  in.train.max_epochs = 3;
  in.train.learning_rate = 1e-3;
  in.train.batch_size = 32;
  return in;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("baseline registry") {
  CHECK(BaselineSpecs().size() == 7);
  CHECK(FindBaseline("B2").name == "metadata");
  CHECK(FindBaseline("ideology").id == "B1");
  CHECK(FindBaseline("rgcn-no-text").classifier == "graph");
  CHECK(CodeOf([] { FindBaseline("B9"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("majority vote metrics at 80 percent yea") {
  std::vector<int> truth(10, 1);
  truth[3] = truth[7] = 0;
  BinaryMetrics m = ComputeMetrics(truth, std::vector<int>(10, 1));
  CHECK(m.precision == doctest::Approx(0.8));
  CHECK(m.f1 == doctest::Approx(16.0 / 18.0));
}

TEST_CASE("metadata baseline on a party-determined fixture") {
  Fixture f = Make(SynthPattern::kParty, 3);
  BaselineReport r = RunBaseline("B2", Inputs(f));
  CHECK(r.id == "B2");
  CHECK(r.test.f1 >= 0.95);
  CHECK(r.test_predictions.size() == r.test.count());
}

TEST_CASE("graph baselines omit speech nodes") {
  Fixture f = Make(SynthPattern::kPlanted, 4);
  for (const char* id : {"B6", "B7"}) {
    BaselineReport r = RunBaseline(id, Inputs(f));
    CHECK(r.node_counts.at("S") == 0);
    CHECK(r.node_counts.at("L") == int(f.corpus.legislators.size()));
    CHECK(r.node_counts.at("B") == int(f.corpus.bills.size()));
    CHECK(r.test.count() > 0);
  }
}

TEST_CASE("resource-backed and embedding baselines run on the same splits") {
  Fixture f = Make(SynthPattern::kPlanted, 5);
  testing::TempDir dir;
  SynthOptions o;
  o.seed = 5;
  o.legislators = 24;
  o.bills = 60;
  o.speeches = 80;
  WriteSynthCorpus(GenerateCorpus(o), dir.path(), 5);
  BaselineInputs in = Inputs(f);
  in.ideology_path = dir / "resources/ideology.txt";
  in.word_vectors_path = dir / "resources/word_vectors.txt";
  size_t test_count = 0;
  for (Split s : f.split.cosponsorships) test_count += size_t(s == Split::kTest);
  for (const char* id : {"B1", "B3", "B4", "B5"}) {
    CAPTURE(id);
    BaselineReport r = RunBaseline(id, in);
    CHECK(r.test.count() == test_count);
    CHECK(r.test.f1 >= 0.0);
  }
  in.ideology_path = dir / "missing.txt";
  CHECK(CodeOf([&] { RunBaseline("B1", in); }) == ErrorCode::kMissingResource);
}

TEST_CASE("vector files") {
  testing::TempDir dir;
  WriteFile(dir / "v.txt", "tax 1 2\nfarm 3 4\n");
  auto v = LoadVectorFile(dir / "v.txt");
  REQUIRE(v.size() == 2);
  CHECK(v.at("farm")[1] == 4.0);
  CHECK(CodeOf([&] { LoadVectorFile(dir / "none.txt"); }) == ErrorCode::kMissingResource);
}

TEST_CASE("top unigrams") {
  std::unordered_map<std::string, size_t> counts{{"tax", 10}, {"farm", 5}, {"bill", 5}, {"the", 100}};
  auto top = TopUnigrams("The tax bill for the farm and the farm tax", counts, 3);
  CHECK(top == std::vector<std::string>{"tax", "bill", "farm"});
  CHECK(Tokenize("H.R. 1, the Tax-Act!") == std::vector<std::string>{"h", "r", "1", "the", "tax", "act"});
  CHECK(IsStopWord("the"));
  CHECK_FALSE(IsStopWord("tax"));
  CHECK(TopUnigrams("tax farm", counts, 1) == std::vector<std::string>{"tax"});
}

TEST_CASE("property: roll-call examples never repeat a cosponsorship") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    Fixture f = Make(SynthPattern::kPlanted, seed);
    size_t excluded = 0;
    auto data = BuildRollCallDataset(f.corpus, f.graph, f.split, &excluded);
    std::set<std::pair<std::string, std::string>> cosponsored;
    for (const auto& c : f.corpus.cosponsorships) cosponsored.insert({c.legislator_id, c.bill_id});
    size_t expected_excluded = 0;
    for (const auto& v : f.corpus.votes) expected_excluded += cosponsored.count({v.legislator_id, v.bill_id});
    CHECK(excluded == expected_excluded);
    CHECK(data.size() + excluded == f.corpus.votes.size());
    for (const auto& e : data) {
      CHECK(cosponsored.count({f.graph.Ref(e.legislator).key, f.graph.Ref(e.bill).key}) == 0);
      CHECK(e.split == f.split.bills.at(f.graph.Ref(e.bill).key));
    }
    CHECK_NOTHROW(AssertNoLeakage(data, f.corpus, f.graph));
  }
}

TEST_CASE("a leaked roll-call pair is detected") {
  Fixture f = Make(SynthPattern::kPlanted, 2);
  auto data = BuildRollCallDataset(f.corpus, f.graph, f.split);
  const auto& c = f.corpus.cosponsorships.front();
  data.push_back({f.graph.Get(NodeType::kLegislator, c.legislator_id), f.graph.Get(NodeType::kBill, c.bill_id), 1,
                  Split::kTest});
  CHECK(CodeOf([&] { AssertNoLeakage(data, f.corpus, f.graph); }) == ErrorCode::kLeakageDetected);
}

TEST_CASE("roll-call head and majority baseline") {
  Fixture f = Make(SynthPattern::kPlanted, 6);
  auto data = BuildRollCallDataset(f.corpus, f.graph, f.split);
  // Keep ten test votes, eight of them yea.
  std::vector<RollCallExample> kept;
  int tests = 0;
  for (auto e : data) {
    if (e.split == Split::kTest) {
      if (tests >= 10) continue;
      e.label = tests == 2 || tests == 5 ? 0 : 1;
      ++tests;
    }
    kept.push_back(e);
  }
  REQUIRE(tests == 10);
  Rng rng(1);
  Matrix reps(f.graph.num_nodes(), 4);
  for (Eigen::Index i = 0; i < reps.size(); ++i) reps.data()[i] = rng.Normal();
  MlpConfig mc;
  mc.hidden = {4, 4};
  mc.dropout = 0.2;
  mc.epochs = 5;
  RollCallReport r = TrainRollCall(reps, f.graph, kept, f.corpus, mc);
  CHECK(r.majority_test.f1 == doctest::Approx(16.0 / 18.0));
  CHECK(r.test.count() == 10);
  CHECK(r.test_predictions.size() == 10);
  CHECK(r.examples == kept.size());
}

TEST_CASE("ablation table") {
  auto configs = AblationConfigs();
  REQUIRE(configs.size() == 4);
  CHECK(configs[0].name == "cosp_only");
  CHECK(configs[0].weights.auth == 0.0);
  CHECK(configs[0].weights.cit == 0.0);
  CHECK(configs[1].weights.auth == 0.0);
  CHECK(configs[1].weights.cit == 0.1);
  CHECK(configs[2].weights.cit == 0.0);
  CHECK(configs[3].weights.auth == 0.1);

  Fixture f = Make(SynthPattern::kPlanted, 7);
  TrainConfig base = Inputs(f).train;
  base.max_epochs = 1;
  AblationTable t = RunAblation({{112, &f.graph, &f.corpus, &f.split}}, base);
  REQUIRE(t.f1.size() == 1);
  REQUIRE(t.f1[0].size() == 4);
  auto avg = t.Average();
  for (size_t k = 0; k < 4; ++k) CHECK(avg[k] == t.f1[0][k]);
  std::string csv = t.Csv();
  CHECK(csv.rfind("congress,cosp_only,without_auth,without_cit,full\n112,", 0) == 0);
  CHECK(csv.find("\nAvg,") != std::string::npos);

  AblationTable two;
  two.configs = {"a"};
  two.congresses = {111, 112};
  two.f1 = {{0.5}, {1.0}};
  CHECK(two.Average()[0] == 0.75);
}

TEST_CASE("random forest separates a threshold rule and is seeded") {
  Rng rng(3);
  Matrix x(200, 3);
  std::vector<int> y;
  for (int i = 0; i < 200; ++i) {
    for (int k = 0; k < 3; ++k) x(i, k) = rng.Uniform(-1, 1);
    y.push_back(int(x(i, 1) > 0.2));
  }
  ForestConfig fc;
  fc.trees = 20;
  fc.seed = 4;
  RandomForest a(fc), b(fc);
  a.Fit(x, y);
  b.Fit(x, y);
  CHECK(a.PredictProbabilities(x) == b.PredictProbabilities(x));
  int correct = 0;
  Vector p = a.PredictProbabilities(x);
  for (int i = 0; i < 200; ++i) correct += int((p[i] > 0.5) == (y[size_t(i)] == 1));
  CHECK(correct >= 190);
  CHECK(CodeOf([] { RandomForest().Fit(Matrix(0, 2), {}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("feed-forward gradients match finite differences") {
  MlpConfig mc;
  mc.hidden = {3, 3};
  mc.seed = 2;
  Mlp mlp(mc);
  mlp.Init(4);
  Rng rng(5);
  Matrix x(6, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.Uniform(-1, 1);
  std::vector<int> y = {0, 1, 1, 0, 1, 0};
  TensorMap params = mlp.params();
  for (auto& [name, value] : params) {
    if (value.cols() == 1) value.setConstant(0.1);
  }
  TensorMap grads;
  mlp.Loss(params, x, y, nullptr, &grads);
  const double eps = 1e-6;
  double worst = 0.0;
  for (auto& [name, value] : params) {
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      double keep = value.data()[i];
      value.data()[i] = keep + eps;
      double up = mlp.Loss(params, x, y, nullptr, nullptr);
      value.data()[i] = keep - eps;
      double down = mlp.Loss(params, x, y, nullptr, nullptr);
      value.data()[i] = keep;
      double fd = (up - down) / (2 * eps), g = grads.at(name).data()[i];
      if (std::abs(fd) + std::abs(g) > 1e-7) worst = std::max(worst, std::abs(fd - g) / (std::abs(fd) + std::abs(g)));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("feed-forward classifier learns a linear rule") {
  Rng rng(8);
  Matrix x(300, 2);
  std::vector<int> y;
  for (int i = 0; i < 300; ++i) {
    x(i, 0) = rng.Uniform(-1, 1);
    x(i, 1) = rng.Uniform(-1, 1);
    y.push_back(int(x(i, 0) + x(i, 1) > 0));
  }
  MlpConfig mc;
  mc.hidden = {8};
  mc.learning_rate = 1e-2;
  mc.epochs = 60;
  Mlp mlp(mc);
  mlp.Fit(x, y, &x, &y);
  Vector p = mlp.PredictProbabilities(x);
  std::vector<int> pred;
  for (Eigen::Index i = 0; i < p.size(); ++i) pred.push_back(int(p[i] > 0.5));
  CHECK(ComputeMetrics(y, pred).f1 > 0.9);
}

}  // namespace
}  // namespace legis
