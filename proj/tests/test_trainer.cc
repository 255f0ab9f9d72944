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

#include <doctest.h>

#include "legis/synth.h"
#include "legis/trainer.h"
#include "support.h"

namespace legis {
namespace {

struct Fixture {
  Corpus corpus;
  SplitAssignment split;
  HeteroGraph graph;
};

Fixture Planted(uint64_t seed = 7) {
  SynthOptions o;
  o.seed = seed;
  o.legislators = 20;
  o.bills = 40;
  o.speeches = 60;
  Fixture f;
  f.corpus = GenerateCorpus(o).corpus;
  f.split = TimeSplit(f.corpus);
  auto [bills, speeches] = testing::RandomTables(f.corpus, 4, seed);
  f.graph = BuildGraph(f.corpus, f.split, bills, speeches);
  return f;
}

TrainConfig Small() {
  TrainConfig c;
  c.projection = 6;
  c.hidden1 = 6;
  c.hidden2 = 4;
  c.batch_size = 32;
  c.max_epochs = 3;
  c.learning_rate = 1e-3;
  return c;
}

// Independent F1 from the confusion counts.
double OracleF1(const std::vector<int>& truth, const std::vector<int>& pred) {
  double tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    tp += truth[i] == 1 && pred[i] == 1;
    fp += truth[i] == 0 && pred[i] == 1;
    fn += truth[i] == 1 && pred[i] == 0;
  }
  return tp == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
}

TEST_CASE("defaults") {
  TrainConfig c;
  CHECK(c.learning_rate == 1e-4);
  CHECK(c.batch_size == 64);
  CHECK(c.max_epochs == 8);
  CHECK(c.dropout == 0.2);
  CHECK(c.patience == 2);
  CHECK(c.eval_every == 0.5);
  TrainConfig from = TrainConfig::FromConfig(Config());
  CHECK(from.learning_rate == c.learning_rate);
  CHECK(from.weights.cosp == 0.8);
  CHECK(from.hidden2 == 64);
}

TEST_CASE("invalid training settings are rejected") {
  Config cfg;
  cfg.Set("learning_rate", "0");
  CHECK_THROWS_AS(TrainConfig::FromConfig(cfg), Error);
  TrainConfig c;
  c.dropout = 1.0;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = TrainConfig();
  c.weights.auth = -0.1;
  CHECK_THROWS_AS(c.Validate(), Error);
}

TEST_CASE("metrics of all-active predictions on 6 active and 4 passive") {
  std::vector<int> truth = {1, 1, 1, 1, 1, 1, 0, 0, 0, 0};
  BinaryMetrics m = ComputeMetrics(truth, std::vector<int>(10, 1));
  CHECK(m.precision == doctest::Approx(0.6));
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == doctest::Approx(0.75));
  CHECK(m.negative_f1 == 0.0);
  CHECK(m.macro_f1 == doctest::Approx(0.375));
  BinaryMetrics perfect = ComputeMetrics(truth, truth);
  CHECK(perfect.f1 == 1.0);
  CHECK(perfect.macro_f1 == 1.0);
  try {
    ComputeMetrics({}, {});
    FAIL("expected EmptySplit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySplit);
  }
}

TEST_CASE("property: metrics agree with confusion counts") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = 1 + rng.Below(50);
    std::vector<int> truth, pred;
    for (size_t i = 0; i < n; ++i) {
      truth.push_back(int(rng.Below(2)));
      pred.push_back(int(rng.Below(2)));
    }
    BinaryMetrics m = ComputeMetrics(truth, pred);
    CHECK(m.count() == n);
    CHECK(m.f1 == doctest::Approx(OracleF1(truth, pred)));
    std::vector<int> flip_t, flip_p;
    for (size_t i = 0; i < n; ++i) {
      flip_t.push_back(1 - truth[i]);
      flip_p.push_back(1 - pred[i]);
    }
    CHECK(m.negative_f1 == doctest::Approx(OracleF1(flip_t, flip_p)));
    CHECK(m.f1 >= 0.0);
    CHECK(m.f1 <= 1.0);
  }
}

TEST_CASE("AdamW first step") {
  TensorMap params{{"p", (Matrix(1, 2) << 1.0, -2.0).finished()}};
  TensorMap grads{{"p", (Matrix(1, 2) << 0.5, -4.0).finished()}};
  TensorMap untouched{{"p", params["p"]}, {"q", Matrix::Ones(1, 1)}};
  AdamW opt(0.1, 0.9, 0.999, 1e-8, 0.01);
  opt.Step(untouched, grads);
  // Bias-corrected moments equal g and g^2 after one step.
  CHECK(untouched["p"](0, 0) == doctest::Approx(1.0 - 0.1 * 0.01 * 1.0 - 0.1 * 0.5 / (0.5 + 1e-8)));
  CHECK(untouched["p"](0, 1) == doctest::Approx(-2.0 + 0.1 * 0.01 * 2.0 + 0.1 * 4.0 / (4.0 + 1e-8)));
  CHECK(untouched["q"](0, 0) == 1.0);
  CHECK(opt.steps() == 1);
}

TEST_CASE("batch gradients match finite differences") {
  Fixture f = Planted(11);
  TrainConfig c = Small();
  c.projection = 3;
  c.hidden1 = 3;
  c.hidden2 = 2;
  c.dropout = 0.0;
  Trainer trainer(f.graph, f.corpus, f.split, c);
  TensorMap params = trainer.InitialParams();
  for (auto& [name, value] : params) {
    if (name.size() > 2 && name.substr(name.size() - 2) == ".b") value.setConstant(0.05);
  }
  const auto& train = trainer.examples(Split::kTrain);
  std::vector<TrainingExample> cosp(train.begin(), train.begin() + 8), auth, cit;
  Rng rng(1);
  for (const auto& e : cosp) {
    try {
      auth.push_back(trainer.auth_sampler().Sample(e.a, rng));
    } catch (const Error&) {
    }
    try {
      cit.push_back(trainer.cit_sampler().Sample(e.a, rng));
    } catch (const Error&) {
    }
  }
  REQUIRE(!auth.empty());
  REQUIRE(!cit.empty());
  TensorMap grads;
  trainer.BatchLoss(params, cosp, auth, cit, &grads);
  const double eps = 1e-6;
  double worst = 0.0;
  size_t checked = 0;
  for (auto& [name, value] : params) {
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      double keep = value.data()[i];
      value.data()[i] = keep + eps;
      double up = trainer.BatchLoss(params, cosp, auth, cit, nullptr);
      value.data()[i] = keep - eps;
      double down = trainer.BatchLoss(params, cosp, auth, cit, nullptr);
      value.data()[i] = keep;
      double fd = (up - down) / (2 * eps);
      auto g = grads.find(name);
      double analytic = g == grads.end() ? 0.0 : g->second.data()[i];
      double scale = std::abs(fd) + std::abs(analytic);
      if (scale > 1e-7) worst = std::max(worst, std::abs(fd - analytic) / scale);
      ++checked;
    }
  }
  CHECK(checked > 200);
  CHECK(worst < 1e-4);
}

TEST_CASE("encoder gradients match finite differences when trained jointly") {
  Fixture f = Planted(13);
  EncoderConfig ec{16, 3, 2, 4};
  EncoderInputs enc{Encoder::Create(DocKind::kBill, ec, 1), Encoder::Create(DocKind::kSpeech, ec, 1), {}, {}};
  Rng rng(4);
  auto chunks = [&] {
    std::vector<Vector> out;
    for (int k = 0; k < 2; ++k) out.push_back(Vector::Random(3));
    return out;
  };
  for (int i = 0; i < f.graph.CountOf(NodeType::kBill); ++i) enc.bill_chunks.push_back(chunks());
  for (int i = 0; i < f.graph.CountOf(NodeType::kSpeech); ++i) enc.speech_chunks.push_back(chunks());

  TrainConfig c = Small();
  c.projection = 3;
  c.hidden1 = 3;
  c.hidden2 = 2;
  c.dropout = 0.0;
  c.train_encoder = true;
  Trainer trainer(f.graph, f.corpus, f.split, c, &enc);
  TensorMap params = trainer.InitialParams();
  REQUIRE(params.count("enc.bill.fwd.W") == 1);
  const auto& train = trainer.examples(Split::kTrain);
  std::vector<TrainingExample> cosp(train.begin(), train.begin() + 8), auth;
  for (const auto& e : cosp) {
    try {
      auth.push_back(trainer.auth_sampler().Sample(e.a, rng));
    } catch (const Error&) {
    }
  }
  TensorMap grads;
  trainer.BatchLoss(params, cosp, auth, {}, &grads);
  const double eps = 1e-6;
  double worst = 0.0;
  size_t checked = 0;
  for (auto& [name, value] : params) {
    if (name.rfind("enc.", 0) != 0) continue;
    REQUIRE(grads.count(name) == 1);
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      double keep = value.data()[i];
      value.data()[i] = keep + eps;
      double up = trainer.BatchLoss(params, cosp, auth, {}, nullptr);
      value.data()[i] = keep - eps;
      double down = trainer.BatchLoss(params, cosp, auth, {}, nullptr);
      value.data()[i] = keep;
      double fd = (up - down) / (2 * eps);
      double analytic = grads.at(name).data()[i];
      double scale = std::abs(fd) + std::abs(analytic);
      if (scale > 1e-7) worst = std::max(worst, std::abs(fd - analytic) / scale);
      ++checked;
    }
  }
  CHECK(checked > 100);
  CHECK(worst < 1e-4);
}

TEST_CASE("one small step lowers the batch loss") {
  Fixture f = Planted(5);
  int failures = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    TrainConfig c = Small();
    c.seed = seed;
    c.learning_rate = 1e-6;
    c.dropout = 0.0;
    Trainer trainer(f.graph, f.corpus, f.split, c);
    TensorMap params = trainer.InitialParams();
    const auto& train = trainer.examples(Split::kTrain);
    std::vector<TrainingExample> cosp(train.begin(), train.begin() + std::min<size_t>(32, train.size()));
    TensorMap grads;
    double before = trainer.BatchLoss(params, cosp, {}, {}, &grads);
    AdamW opt(c.learning_rate, c.beta1, c.beta2, c.epsilon, c.weight_decay);
    opt.Step(params, grads);
    double after = trainer.BatchLoss(params, cosp, {}, {}, nullptr);
    failures += int(!(after < before));
  }
  CHECK(failures <= 1);
}

TEST_CASE("training is deterministic for a fixed seed") {
  Fixture f = Planted(7);
  TrainConfig c = Small();
  Trainer a(f.graph, f.corpus, f.split, c), b(f.graph, f.corpus, f.split, c);
  TrainResult ra = a.Train(), rb = b.Train();
  REQUIRE(ra.history.size() == rb.history.size());
  for (size_t i = 0; i < ra.history.size(); ++i) {
    CHECK(ra.history[i].loss == rb.history[i].loss);
    CHECK(ra.history[i].f1 == rb.history[i].f1);
  }
  CHECK(ra.best_params == rb.best_params);
  CHECK(HistoryCsv(ra.history) == HistoryCsv(rb.history));
}

TEST_CASE("a checkpoint round-trip reproduces validation F1") {
  Fixture f = Planted(7);
  TrainConfig c = Small();
  Trainer trainer(f.graph, f.corpus, f.split, c);
  TrainResult r = trainer.Train();
  REQUIRE(r.best_validation_f1 >= 0.0);
  testing::TempDir dir;
  SaveTensors(dir / "best.bin", r.best_params);
  TensorMap back = LoadTensors(dir / "best.bin");
  CHECK(back == r.best_params);
  CHECK(trainer.Evaluate(back, Split::kValidation).metrics.f1 == r.best_validation_f1);
}

TEST_CASE("cosponsorship-only weights draw no auxiliary examples") {
  Fixture f = Planted(7);
  TrainConfig c = Small();
  c.max_epochs = 1;
  c.weights = {1.0, 0.0, 0.0};
  TrainResult r = Trainer(f.graph, f.corpus, f.split, c).Train();
  CHECK(r.aux_examples.empty());
  for (const auto& row : r.history) CHECK(row.task == "cosp");

  c.weights = LossWeights{};
  TrainResult full = Trainer(f.graph, f.corpus, f.split, c).Train();
  CHECK(!full.aux_examples.empty());
}

TEST_CASE("history is recorded twice per epoch and early stopping respects patience") {
  Fixture f = Planted(7);
  TrainConfig c = Small();
  c.max_epochs = 2;
  c.weights = {1.0, 0.0, 0.0};
  TrainResult r = Trainer(f.graph, f.corpus, f.split, c).Train();
  size_t evals = 0;
  for (const auto& row : r.history) evals += size_t(row.split == "validation");
  if (r.stop_reason == "max epochs") {
    CHECK(evals == 4);
  } else {
    CHECK(r.stop_reason == "early stopping");
  }
  // Evaluation points round up to whole steps.
  const double steps = std::ceil(double(Trainer(f.graph, f.corpus, f.split, c).examples(Split::kTrain).size()) /
                                 c.batch_size);
  CHECK(r.history.front().epoch >= 0.5);
  CHECK(r.history.front().epoch <= 0.5 + 1.0 / steps);

  c.learning_rate = 1e-9;
  c.max_epochs = 20;
  c.patience = 1;
  TrainResult stalled = Trainer(f.graph, f.corpus, f.split, c).Train();
  CHECK(stalled.stop_reason == "early stopping");
  CHECK(stalled.epochs_run == doctest::Approx(1.0));
}

TEST_CASE("non-finite inputs stop training as divergence") {
  Fixture f = Planted(7);
  f.graph.features(NodeType::kBill)(0, 0) = std::nan("");
  TrainConfig c = Small();
  TrainResult r = Trainer(f.graph, f.corpus, f.split, c).Train();
  CHECK(r.diverged);
  CHECK(r.stop_reason == "divergence");
  for (const auto& [name, p] : r.last_params) CHECK(p.allFinite());
}

TEST_CASE("csv renderings") {
  std::string h = HistoryCsv({{0.5, "train", "cosp", 0.25, 0.5}});
  CHECK(h.rfind("epoch,split,task,loss,f1\n", 0) == 0);
  std::string p = PredictionsCsv({{"L1", "B1", 0.75, 1, "cosp"}});
  CHECK(p.find("L1") != std::string::npos);
  CHECK(p.find("0.75") != std::string::npos);
}

}  // namespace
}  // namespace legis
