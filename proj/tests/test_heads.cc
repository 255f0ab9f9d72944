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
#include <set>

#include <doctest.h>
#include <json.hpp>

#include "legis/heads.h"
#include "legis/synth.h"
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
  o.speeches = 80;
  Fixture f;
  f.corpus = GenerateCorpus(o).corpus;
  f.split = TimeSplit(f.corpus);
  auto [bills, speeches] = testing::RandomTables(f.corpus, 4, seed);
  f.graph = BuildGraph(f.corpus, f.split, bills, speeches);
  return f;
}

double OracleProbability(const Matrix& w, const Vector& b, const Vector& x) {
  double z0 = b[0], z1 = b[1];
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    z0 += w(0, k) * x[k];
    z1 += w(1, k) * x[k];
  }
  return std::exp(z1) / (std::exp(z0) + std::exp(z1));
}

TEST_CASE("combined loss arithmetic") {
  CHECK(LossTotal(1.0, 0.5, 0.5, LossWeights{}) == 0.9);
  CHECK(LossTotal(2.0, 3.0, 4.0, LossWeights{1.0, 0.0, 0.0}) == 2.0);
  LossWeights w;
  CHECK(w.cosp == 0.8);
  CHECK(w.auth == 0.1);
  CHECK(w.cit == 0.1);
}

TEST_CASE("binary cross-entropy values and clamping") {
  CHECK(BinaryCrossEntropy(0.5, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(BinaryCrossEntropy(0.5, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(BinaryCrossEntropy(0.25, 1) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(BinaryCrossEntropy(0.0, 1) == doctest::Approx(-std::log(kProbabilityFloor)));
  CHECK(BinaryCrossEntropy(1.0, 0) == doctest::Approx(-std::log(kProbabilityFloor)));
  CHECK(std::isfinite(BinaryCrossEntropy(1.0, 0)));
  CHECK(ClampProbability(-1.0) == kProbabilityFloor);
  CHECK(ClampProbability(2.0) == 1.0 - kProbabilityFloor);
}

TEST_CASE("property: head probability matches a scalar softmax and loss is positive") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + int(rng.Below(8));
    Matrix w(2, d);
    Vector b(2), x(d);
    for (int k = 0; k < d; ++k) {
      w(0, k) = rng.Uniform(-2, 2);
      w(1, k) = rng.Uniform(-2, 2);
      x[k] = rng.Uniform(-2, 2);
    }
    b << rng.Uniform(-1, 1), rng.Uniform(-1, 1);
    double p = HeadProbability(w, b, x);
    CHECK(std::abs(p - OracleProbability(w, b, x)) < 1e-12);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    for (int y : {0, 1}) {
      double l = BinaryCrossEntropy(p, y);
      CHECK(l > 0.0);
      CHECK(std::isfinite(l));
    }
  }
}

TEST_CASE("head gradients match finite differences") {
  Rng rng(2);
  for (Task task : {Task::kCosponsorship, Task::kAuthorship, Task::kCitation}) {
    const int d = 5, n = 7;
    TensorMap params;
    InitHead(params, task, d, 3);
    std::string b_name = std::string("head.") + TaskName(task) + ".b";
    params[b_name] << 0.3, -0.2;
    Matrix x(n, d);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) x(i, k) = rng.Uniform(-1, 1);
      labels.push_back(int(rng.Below(2)));
    }
    const double scale = 0.8;
    TensorMap grads;
    Matrix d_x;
    HeadLoss(params, task, x, labels, scale, &grads, &d_x);
    auto loss = [&] { return scale * HeadLoss(params, task, x, labels).loss; };
    const double eps = 1e-6;
    double worst = 0.0;
    for (auto& [name, value] : params) {
      for (Eigen::Index i = 0; i < value.size(); ++i) {
        double keep = value.data()[i];
        value.data()[i] = keep + eps;
        double up = loss();
        value.data()[i] = keep - eps;
        double down = loss();
        value.data()[i] = keep;
        worst = std::max(worst, testing::RelativeError((up - down) / (2 * eps), grads.at(name).data()[i], 1e-9));
      }
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double keep = x.data()[i];
      x.data()[i] = keep + eps;
      double up = loss();
      x.data()[i] = keep - eps;
      double down = loss();
      x.data()[i] = keep;
      worst = std::max(worst, testing::RelativeError((up - down) / (2 * eps), d_x.data()[i], 1e-9));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("clamped probabilities have zero gradient") {
  TensorMap params;
  InitHead(params, Task::kCosponsorship, 1, 1);
  params["head.cosp.W"] << -100.0, 100.0;
  Matrix x(1, 1);
  x << 1.0;
  TensorMap grads;
  HeadOutput out = HeadLoss(params, Task::kCosponsorship, x, {0}, 1.0, &grads);
  CHECK(out.loss == doctest::Approx(-std::log(kProbabilityFloor)));
  CHECK(grads.at("head.cosp.W").cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("head width mismatch") {
  TensorMap params;
  InitHead(params, Task::kAuthorship, 4, 1);
  try {
    HeadLoss(params, Task::kAuthorship, Matrix::Zero(2, 3), {0, 1});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("cosponsorship examples follow the split and kinds") {
  Fixture f = Planted();
  for (Split which : {Split::kTrain, Split::kValidation, Split::kTest}) {
    auto examples = CosponsorshipExamples(f.graph, f.corpus, f.split, which);
    size_t expected = 0;
    for (Split s : f.split.cosponsorships) expected += size_t(s == which);
    REQUIRE(examples.size() == expected);
    size_t k = 0;
    for (size_t i = 0; i < f.corpus.cosponsorships.size(); ++i) {
      if (f.split.cosponsorships[i] != which) continue;
      const auto& rec = f.corpus.cosponsorships[i];
      const auto& ex = examples[k++];
      CHECK(ex.task == Task::kCosponsorship);
      CHECK(f.graph.Ref(ex.a).key == rec.legislator_id);
      CHECK(f.graph.Ref(ex.b).key == rec.bill_id);
      CHECK(f.graph.Ref(ex.c).key == f.corpus.GetBill(rec.bill_id).sponsor_id);
      CHECK(ex.label == int(rec.kind == CosponsorKind::kActive));
    }
  }
}

TEST_CASE("authorship sampler rate and labels over 10000 draws") {
  Fixture f = Planted();
  std::map<int, int> author;
  for (const auto& e : f.graph.edges()) {
    if (e.relation == Relation::kAuthorship) author[e.target] = e.source;
  }
  auto legislators = f.graph.NodesOf(NodeType::kLegislator);
  std::vector<int> speakers;
  for (int l : legislators) {
    for (auto [s, a] : author) {
      if (a == l) {
        speakers.push_back(l);
        break;
      }
    }
  }
  REQUIRE(speakers.size() > 3);
  for (double rate : {0.5, 0.3}) {
    AuthorshipSampler sampler(f.graph, rate);
    Rng rng(uint64_t(rate * 100));
    int positives = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      int l = speakers[rng.Below(speakers.size())];
      TrainingExample ex = sampler.Sample(l, rng);
      CHECK(ex.task == Task::kAuthorship);
      CHECK(ex.a == l);
      CHECK(f.graph.TypeOf(ex.b) == NodeType::kSpeech);
      CHECK(ex.label == int(author.at(ex.b) == l));
      positives += ex.label;
    }
    // Four standard deviations of a binomial proportion.
    double sd = std::sqrt(rate * (1 - rate) / draws);
    CHECK(std::abs(double(positives) / draws - rate) < 4 * sd);
  }
}

TEST_CASE("citation sampler rate and labels over 10000 draws") {
  Fixture f = Planted();
  std::set<std::pair<int, int>> cited;
  std::set<int> citing;
  for (const auto& e : f.graph.edges()) {
    if (e.relation == Relation::kCitation) {
      cited.insert({e.source, e.target});
      citing.insert(e.source);
    }
  }
  REQUIRE(citing.size() > 3);
  std::vector<int> citers(citing.begin(), citing.end());
  for (double rate : {0.5, 0.3}) {
    CitationSampler sampler(f.graph, rate);
    Rng rng(uint64_t(rate * 1000));
    int positives = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      int l = citers[rng.Below(citers.size())];
      TrainingExample ex = sampler.Sample(l, rng);
      CHECK(ex.a == l);
      CHECK(ex.b != l);
      CHECK(f.graph.TypeOf(ex.b) == NodeType::kLegislator);
      CHECK(ex.label == int(cited.count({l, ex.b})));
      positives += ex.label;
    }
    double sd = std::sqrt(rate * (1 - rate) / draws);
    CHECK(std::abs(double(positives) / draws - rate) < 4 * sd);
  }
}

TEST_CASE("samplers report when a side has no candidates") {
  HeteroGraph g;
  int s = g.AddNode(NodeType::kSpeech, "s");
  int a = g.AddNode(NodeType::kLegislator, "a");
  int b = g.AddNode(NodeType::kLegislator, "b");
  g.AddEdge(Relation::kAuthorship, a, s);
  Rng rng(1);
  try {
    AuthorshipSampler(g, 1.0).Sample(b, rng);
    FAIL("expected NoSpeechAvailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoSpeechAvailable);
  }
  try {
    CitationSampler(g, 1.0).Sample(a, rng);
    FAIL("expected NoCitationAvailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoCitationAvailable);
  }
  // a's only possible negative is b.
  TrainingExample ex = CitationSampler(g, 0.0).Sample(a, rng);
  CHECK(ex.b == b);
  CHECK(ex.label == 0);
}

TEST_CASE("authorship pool can be restricted") {
  Fixture f = Planted();
  std::vector<std::string> allowed;
  for (const auto& s : f.corpus.speeches) {
    if (f.split.speeches.at(s.speech_id) == Split::kTrain) allowed.push_back(s.speech_id);
  }
  AuthorshipSampler sampler(f.graph, 0.5, &allowed);
  CHECK(sampler.pool_size() == allowed.size());
}

TEST_CASE("auxiliary examples are written as JSONL") {
  Fixture f = Planted();
  CitationSampler sampler(f.graph, 0.5);
  Rng rng(3);
  int citer = -1;
  for (const auto& e : f.graph.edges()) {
    if (e.relation == Relation::kCitation) citer = e.source;
  }
  std::vector<TrainingExample> examples;
  for (int i = 0; i < 5; ++i) examples.push_back(sampler.Sample(citer, rng));
  testing::TempDir dir;
  WriteAuxExamples(dir / "aux.jsonl", f.graph, examples, 42);
  auto lines = ReadLines(dir / "aux.jsonl");
  REQUIRE(lines.size() == 5);
  for (size_t i = 0; i < lines.size(); ++i) {
    auto j = nlohmann::json::parse(lines[i]);
    CHECK(j["a"] == f.graph.Ref(citer).key);
    CHECK(j["b"] == f.graph.Ref(examples[i].b).key);
    CHECK(j["label"] == examples[i].label);
    CHECK(j["task"] == "cit");
    CHECK(j["seed"] == 42);
  }
}

TEST_CASE("cosponsorship prediction uses the concatenated input") {
  TensorMap params;
  InitHead(params, Task::kCosponsorship, 6, 5);
  Vector l(2), b(2), s(2);
  l << 1, 2;
  b << 3, 4;
  s << 5, 6;
  Vector x(6);
  x << 1, 2, 3, 4, 5, 6;
  CHECK(PredictCosponsorship(params, l, b, s) ==
        doctest::Approx(OracleProbability(params["head.cosp.W"], params["head.cosp.b"].col(0), x)));
}

}  // namespace
}  // namespace legis
