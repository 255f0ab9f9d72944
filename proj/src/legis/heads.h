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

// Task heads, losses and example samplers.
//
// Each head is one affine layer followed by a two-class softmax; class 1 is
// the positive class (active cosponsorship, authored, cited). Inputs are
// concatenations of final node representations:
//
//   cosp  [e_l; e_b; e_sponsor(b)]
//   auth  [e_l; e_s]
//   cit   [e_citing; e_other]
//
// Parameters live in a TensorMap as head.{cosp,auth,cit}.{W,b}.

#ifndef LEGIS_HEADS_H_
#define LEGIS_HEADS_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "legis/common.h"
#include "legis/corpus.h"
#include "legis/graph.h"
#include "legis/tensor_io.h"

namespace legis {

enum class Task { kCosponsorship = 0, kAuthorship = 1, kCitation = 2 };
const char* TaskName(Task task);  // "cosp", "auth", "cit"

struct LossWeights {
  double cosp = 0.8;
  double auth = 0.1;
  double cit = 0.1;
};

double LossTotal(double l_cosp, double l_auth, double l_cit, const LossWeights& weights);

inline constexpr double kProbabilityFloor = 1e-12;
double ClampProbability(double p);

// -(y log p + (1 - y) log(1 - p)) with p clamped.
double BinaryCrossEntropy(double p, int label);

// Positive-class probability softmax(W x + b)[1].
double HeadProbability(const Matrix& w, const Vector& b, const Vector& x);

// p_A for a cosponsorship given the three final representations.
double PredictCosponsorship(const TensorMap& params, const Vector& e_l, const Vector& e_b,
                            const Vector& e_sponsor);

void InitHead(TensorMap& params, Task task, int input_width, uint64_t seed);

struct HeadOutput {
  double loss = 0.0;  // mean over the batch
  Vector probabilities;
};

// Mean cross-entropy of head `task` over the rows of x. When grads is given,
// adds scale * dLoss/dparams; when d_x is given it receives
// scale * dLoss/dx. Inside the clamped region the gradient is zero.
HeadOutput HeadLoss(const TensorMap& params, Task task, const Matrix& x,
                    const std::vector<int>& labels, double scale = 1.0, TensorMap* grads = nullptr,
                    Matrix* d_x = nullptr);

// A labeled example over graph node indices. Cosponsorship uses
// (legislator, bill, sponsor); authorship (legislator, speech); citation
// (citing, other).
struct TrainingExample {
  Task task = Task::kCosponsorship;
  int a = -1;
  int b = -1;
  int c = -1;
  int label = 0;
};

// Cosponsorship examples of one split, in corpus order. Label 1 = active.
std::vector<TrainingExample> CosponsorshipExamples(const HeteroGraph& graph, const Corpus& corpus,
                                                   const SplitAssignment& split, Split which);

// Draws one speech for a legislator: with probability positive_rate one of
// their own speeches, else one by somebody else.
class AuthorshipSampler {
 public:
  // Candidate speeches are the S nodes of the graph, optionally restricted
  // to the given speech keys.
  AuthorshipSampler(const HeteroGraph& graph, double positive_rate,
                    const std::vector<std::string>* allowed_speeches = nullptr);

  // Throws NoSpeechAvailable when the drawn side has no candidate.
  TrainingExample Sample(int legislator, Rng& rng) const;
  double positive_rate() const { return positive_rate_; }
  size_t pool_size() const { return pool_.size(); }

 private:
  double positive_rate_;
  std::vector<int> pool_;     // speech nodes
  std::vector<int> authors_;  // parallel to pool_
  std::unordered_map<int, std::vector<int>> by_author_;
};

// Draws a second legislator for a citing legislator: with probability
// positive_rate one they cited (R2), else one from the same roster that
// they did not cite, excluding themselves.
class CitationSampler {
 public:
  CitationSampler(const HeteroGraph& graph, double positive_rate);

  // Throws NoCitationAvailable when the drawn side has no candidate.
  TrainingExample Sample(int legislator, Rng& rng) const;
  double positive_rate() const { return positive_rate_; }

 private:
  double positive_rate_;
  std::vector<int> roster_;
  std::unordered_map<int, std::vector<int>> cited_;
  mutable std::unordered_map<int, std::vector<int>> uncited_;
};

// Writes sampled auxiliary examples as JSONL: {"a","b","label","task","seed"}
// with node keys.
void WriteAuxExamples(const std::string& path, const HeteroGraph& graph,
                      const std::vector<TrainingExample>& examples, uint64_t seed);

}  // namespace legis

#endif  // LEGIS_HEADS_H_
