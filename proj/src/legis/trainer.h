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

// Joint training of the input projections, the two convolution layers and
// the task heads with AdamW, periodic validation, early stopping and best
// snapshot selection, plus the shared classification metrics.

#ifndef LEGIS_TRAINER_H_
#define LEGIS_TRAINER_H_

#include <optional>
#include <string>
#include <vector>

#include "legis/config.h"
#include "legis/corpus.h"
#include "legis/encoder.h"
#include "legis/graph.h"
#include "legis/heads.h"
#include "legis/rgcn.h"

namespace legis {

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 64;
  int max_epochs = 8;
  double dropout = 0.2;
  LossWeights weights;
  uint64_t seed = 42;
  int patience = 2;          // evaluations without validation improvement
  double eval_every = 0.5;   // epochs between evaluations
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double auth_positive_rate = 0.5;
  double cit_positive_rate = 0.5;
  int projection = 128;
  int hidden1 = 128;
  int hidden2 = 64;
  bool symmetrize = true;            // reverse relations for message passing
  bool collapse_relations = false;   // single relation (plain GCN)
  bool train_encoder = false;

  static TrainConfig FromConfig(const Config& config);
  void Validate() const;
};

// AdamW with decoupled weight decay applied to every parameter.
class AdamW {
 public:
  AdamW(double learning_rate, double beta1, double beta2, double epsilon, double weight_decay)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), wd_(weight_decay) {}

  // Parameters without a gradient entry are left untouched.
  void Step(TensorMap& params, const TensorMap& grads);
  long steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_, wd_;
  long t_ = 0;
  TensorMap m_, v_;
};

struct BinaryMetrics {
  size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0;  // positive class
  double recall = 0.0;
  double f1 = 0.0;
  double negative_precision = 0.0;
  double negative_recall = 0.0;
  double negative_f1 = 0.0;
  double macro_f1 = 0.0;

  size_t count() const { return tp + fp + fn + tn; }
};

// Binary metrics with class 1 as the positive class. An undefined ratio
// counts as 0. Throws EmptySplit on empty input.
BinaryMetrics ComputeMetrics(const std::vector<int>& truth, const std::vector<int>& predicted);

struct HistoryRow {
  double epoch = 0.0;
  std::string split;
  std::string task;
  double loss = 0.0;
  double f1 = 0.0;
};

std::string HistoryCsv(const std::vector<HistoryRow>& rows);

struct Prediction {
  std::string legislator_id;
  std::string bill_id;
  double probability = 0.0;
  int label = 0;
  std::string task;
};

std::string PredictionsCsv(const std::vector<Prediction>& rows);

struct EvalReport {
  Split split = Split::kValidation;
  double loss = 0.0;
  BinaryMetrics metrics;
  std::vector<Prediction> predictions;
};

struct TrainResult {
  TensorMap best_params;
  TensorMap last_params;   // last parameters with a finite loss
  std::vector<HistoryRow> history;
  double best_validation_f1 = -1.0;
  double best_epoch = 0.0;
  double epochs_run = 0.0;
  bool diverged = false;
  std::string stop_reason;
  size_t skipped_auth = 0;  // auxiliary draws without a candidate
  size_t skipped_cit = 0;
  std::vector<TrainingExample> aux_examples;  // every auxiliary example drawn
};

// Chunk embeddings of every S and B node, for training the aggregators
// jointly with the graph model.
struct EncoderInputs {
  Encoder bill;
  Encoder speech;
  std::vector<std::vector<Vector>> bill_chunks;    // per B row
  std::vector<std::vector<Vector>> speech_chunks;  // per S row
};

class Trainer {
 public:
  Trainer(const HeteroGraph& graph, const Corpus& corpus, const SplitAssignment& split,
          const TrainConfig& config, const EncoderInputs* encoder_inputs = nullptr);

  TensorMap InitialParams() const;
  TrainResult Train() const;
  TrainResult Train(TensorMap params) const;

  // Eval-mode representations (num_nodes x hidden2).
  Matrix Representations(const TensorMap& params) const;
  EvalReport Evaluate(const TensorMap& params, Split split) const;
  EvalReport EvaluateWith(const Matrix& reps, const TensorMap& params, Split split) const;

  // One training step's loss on a fixed batch without dropout, optionally
  // with gradients. Used by the descent smoke check and gradient tests.
  double BatchLoss(const TensorMap& params, const std::vector<TrainingExample>& cosp,
                   const std::vector<TrainingExample>& auth, const std::vector<TrainingExample>& cit,
                   TensorMap* grads) const;

  const std::vector<TrainingExample>& examples(Split split) const {
    return examples_[size_t(split)];
  }
  const AuthorshipSampler& auth_sampler() const { return auth_sampler_; }
  const CitationSampler& cit_sampler() const { return cit_sampler_; }
  const RgcnConfig& rgcn_config() const { return rgcn_; }
  const TrainConfig& config() const { return config_; }
  const HeteroGraph& graph() const { return graph_; }

 private:
  NodeInputs InputsFor(const TensorMap& params) const;
  void EncoderBackward(const TensorMap& params, const std::array<Matrix, kNumNodeTypes>& d_raw,
                       TensorMap& grads) const;

  const HeteroGraph& graph_;
  const Corpus& corpus_;
  TrainConfig config_;
  const EncoderInputs* encoder_inputs_;
  NodeInputs inputs_;
  RgcnOperators ops_;
  RgcnConfig rgcn_;
  std::array<std::vector<TrainingExample>, 3> examples_;
  AuthorshipSampler auth_sampler_;
  CitationSampler cit_sampler_;
};

}  // namespace legis

#endif  // LEGIS_TRAINER_H_
