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

#include "legis/heads.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "json.hpp"

namespace legis {

const char* TaskName(Task task) {
  switch (task) {
    case Task::kCosponsorship: return "cosp";
    case Task::kAuthorship: return "auth";
    case Task::kCitation: return "cit";
  }
  return "?";
}

double LossTotal(double l_cosp, double l_auth, double l_cit, const LossWeights& w) {
  // Accumulate wide and round once.
  long double total = (long double)w.cosp * l_cosp + (long double)w.auth * l_auth + (long double)w.cit * l_cit;
  return double(total);
}

double ClampProbability(double p) {
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

double BinaryCrossEntropy(double p, int label) {
  p = ClampProbability(p);
  return label ? -std::log(p) : -std::log(1.0 - p);
}

namespace {

std::string HeadName(Task task, const char* part) {
  return std::string("head.") + TaskName(task) + "." + part;
}

const Matrix& Param(const TensorMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) Fail(ErrorCode::kSchema, "missing parameter " + name);
  return it->second;
}

// softmax over two logits, class 1.
double PositiveProbability(double z0, double z1) {
  return 1.0 / (1.0 + std::exp(z0 - z1));
}

}  // namespace

double HeadProbability(const Matrix& w, const Vector& b, const Vector& x) {
  if (w.rows() != 2 || w.cols() != x.size() || b.size() != 2) {
    Fail(ErrorCode::kDimensionMismatch, "head expects input width " + std::to_string(w.cols()) +
                                            ", got " + std::to_string(x.size()));
  }
  Vector z = w * x + b;
  return PositiveProbability(z[0], z[1]);
}

double PredictCosponsorship(const TensorMap& params, const Vector& e_l, const Vector& e_b,
                            const Vector& e_sponsor) {
  Vector x(e_l.size() + e_b.size() + e_sponsor.size());
  x << e_l, e_b, e_sponsor;
  const Matrix& b = Param(params, HeadName(Task::kCosponsorship, "b"));
  return HeadProbability(Param(params, HeadName(Task::kCosponsorship, "W")),
                         Eigen::Map<const Vector>(b.data(), b.size()), x);
}

void InitHead(TensorMap& params, Task task, int input_width, uint64_t seed) {
  Rng rng = Rng::Substream(seed, HeadName(task, "init"));
  double bound = std::sqrt(6.0 / double(input_width + 2));
  Matrix w(2, input_width);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < input_width; ++c) w(r, c) = rng.Uniform(-bound, bound);
  }
  params[HeadName(task, "W")] = w;
  params[HeadName(task, "b")] = Matrix::Zero(2, 1);
}

HeadOutput HeadLoss(const TensorMap& params, Task task, const Matrix& x,
                    const std::vector<int>& labels, double scale, TensorMap* grads, Matrix* d_x) {
  const Matrix& w = Param(params, HeadName(task, "W"));
  const Matrix& bm = Param(params, HeadName(task, "b"));
  if (x.cols() != w.cols()) {
    Fail(ErrorCode::kDimensionMismatch, std::string(TaskName(task)) + " head expects width " +
                                            std::to_string(w.cols()) + ", got " +
                                            std::to_string(x.cols()));
  }
  if (size_t(x.rows()) != labels.size()) Fail(ErrorCode::kInvalidArgument, "label count mismatch");
  const Eigen::Index n = x.rows();
  HeadOutput out;
  out.probabilities.resize(n);
  if (n == 0) {
    if (d_x) *d_x = Matrix::Zero(0, x.cols());
    return out;
  }
  Matrix z = x * w.transpose();
  z.rowwise() += bm.col(0).transpose();
  // dL/dz1 = p - y and dL/dz0 = y - p for unclamped p.
  Matrix dz = Matrix::Zero(n, 2);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = PositiveProbability(z(i, 0), z(i, 1));
    out.probabilities[i] = p;
    int y = labels[size_t(i)];
    total += BinaryCrossEntropy(p, y);
    if (p > kProbabilityFloor && p < 1.0 - kProbabilityFloor) {
      double g = (p - double(y)) * scale / double(n);
      dz(i, 1) = g;
      dz(i, 0) = -g;
    }
  }
  out.loss = total / double(n);
  if (grads) {
    Matrix gw = dz.transpose() * x;
    Matrix gb = dz.colwise().sum().transpose();
    for (auto [name, g] : {std::pair{HeadName(task, "W"), &gw}, {HeadName(task, "b"), &gb}}) {
      auto it = grads->find(name);
      if (it == grads->end()) {
        grads->emplace(name, *g);
      } else {
        it->second += *g;
      }
    }
  }
  if (d_x) *d_x = dz * w;
  return out;
}

std::vector<TrainingExample> CosponsorshipExamples(const HeteroGraph& graph, const Corpus& corpus,
                                                   const SplitAssignment& split, Split which) {
  std::vector<TrainingExample> out;
  for (size_t i = 0; i < corpus.cosponsorships.size(); ++i) {
    if (split.cosponsorships[i] != which) continue;
    const auto& c = corpus.cosponsorships[i];
    const Bill& bill = corpus.GetBill(c.bill_id);
    TrainingExample e;
    e.task = Task::kCosponsorship;
    e.a = graph.Get(NodeType::kLegislator, c.legislator_id);
    e.b = graph.Get(NodeType::kBill, c.bill_id);
    e.c = graph.Get(NodeType::kLegislator, bill.sponsor_id);
    e.label = c.kind == CosponsorKind::kActive ? 1 : 0;
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Samplers

AuthorshipSampler::AuthorshipSampler(const HeteroGraph& graph, double positive_rate,
                                     const std::vector<std::string>* allowed_speeches)
    : positive_rate_(positive_rate) {
  if (positive_rate < 0.0 || positive_rate > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "positive rate must lie in [0, 1]");
  }
  std::unordered_set<std::string> allowed;
  if (allowed_speeches) allowed.insert(allowed_speeches->begin(), allowed_speeches->end());
  for (const auto& e : graph.edges()) {
    if (e.relation != Relation::kAuthorship) continue;
    if (allowed_speeches && !allowed.count(graph.Ref(e.target).key)) continue;
    pool_.push_back(e.target);
    authors_.push_back(e.source);
    by_author_[e.source].push_back(e.target);
  }
}

TrainingExample AuthorshipSampler::Sample(int legislator, Rng& rng) const {
  TrainingExample e;
  e.task = Task::kAuthorship;
  e.a = legislator;
  if (rng.Bernoulli(positive_rate_)) {
    auto it = by_author_.find(legislator);
    if (it == by_author_.end() || it->second.empty()) {
      Fail(ErrorCode::kNoSpeechAvailable, "legislator has no speeches to draw from");
    }
    e.b = it->second[rng.Below(it->second.size())];
    e.label = 1;
    return e;
  }
  auto it = by_author_.find(legislator);
  size_t own = it == by_author_.end() ? 0 : it->second.size();
  if (own == pool_.size()) Fail(ErrorCode::kNoSpeechAvailable, "no speeches by other legislators");
  for (;;) {
    size_t k = rng.Below(pool_.size());
    if (authors_[k] != legislator) {
      e.b = pool_[k];
      e.label = 0;
      return e;
    }
  }
}

CitationSampler::CitationSampler(const HeteroGraph& graph, double positive_rate)
    : positive_rate_(positive_rate) {
  if (positive_rate < 0.0 || positive_rate > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "positive rate must lie in [0, 1]");
  }
  roster_ = graph.NodesOf(NodeType::kLegislator);
  for (const auto& e : graph.edges()) {
    if (e.relation == Relation::kCitation && e.source != e.target) cited_[e.source].push_back(e.target);
  }
}

TrainingExample CitationSampler::Sample(int legislator, Rng& rng) const {
  TrainingExample e;
  e.task = Task::kCitation;
  e.a = legislator;
  auto it = cited_.find(legislator);
  if (rng.Bernoulli(positive_rate_)) {
    if (it == cited_.end() || it->second.empty()) {
      Fail(ErrorCode::kNoCitationAvailable, "legislator cites nobody");
    }
    e.b = it->second[rng.Below(it->second.size())];
    e.label = 1;
    return e;
  }
  auto un = uncited_.find(legislator);
  if (un == uncited_.end()) {
    std::unordered_set<int> skip = {legislator};
    if (it != cited_.end()) skip.insert(it->second.begin(), it->second.end());
    std::vector<int> candidates;
    for (int l : roster_) {
      if (!skip.count(l)) candidates.push_back(l);
    }
    un = uncited_.emplace(legislator, std::move(candidates)).first;
  }
  if (un->second.empty()) Fail(ErrorCode::kNoCitationAvailable, "legislator cites everybody");
  e.b = un->second[rng.Below(un->second.size())];
  e.label = 0;
  return e;
}

void WriteAuxExamples(const std::string& path, const HeteroGraph& graph,
                      const std::vector<TrainingExample>& examples, uint64_t seed) {
  std::string out;
  for (const auto& e : examples) {
    nlohmann::ordered_json j;
    j["task"] = TaskName(e.task);
    j["a"] = graph.Ref(e.a).key;
    j["b"] = graph.Ref(e.b).key;
    j["label"] = e.label;
    j["seed"] = seed;
    out += j.dump() + "\n";
  }
  WriteFile(path, out);
}

}  // namespace legis
