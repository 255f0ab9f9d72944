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

#include "legis/trainer.h"

#include <cmath>
#include <cstdio>
#include <set>

namespace legis {

// ---------------------------------------------------------------------------
// Configuration

TrainConfig TrainConfig::FromConfig(const Config& c) {
  TrainConfig t;
  t.learning_rate = c.GetDouble("learning_rate");
  t.batch_size = int(c.GetInt("batch_size"));
  t.max_epochs = int(c.GetInt("max_epochs"));
  t.dropout = c.GetDouble("dropout");
  t.weights = {c.GetDouble("lambda_cosp"), c.GetDouble("lambda_auth"), c.GetDouble("lambda_cit")};
  t.seed = uint64_t(c.GetInt("seed"));
  t.patience = int(c.GetInt("patience"));
  t.eval_every = c.GetDouble("eval_every");
  t.weight_decay = c.GetDouble("weight_decay");
  t.beta1 = c.GetDouble("beta1");
  t.beta2 = c.GetDouble("beta2");
  t.epsilon = c.GetDouble("epsilon");
  t.auth_positive_rate = c.GetDouble("auth_positive_rate");
  t.cit_positive_rate = c.GetDouble("cit_positive_rate");
  t.projection = int(c.GetInt("d_doc"));
  t.hidden1 = int(c.GetInt("hidden1"));
  t.hidden2 = int(c.GetInt("hidden2"));
  t.symmetrize = c.GetBool("symmetrize");
  t.train_encoder = c.GetBool("train_encoder");
  t.Validate();
  return t;
}

void TrainConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, what);
  };
  require(learning_rate > 0, "learning_rate must be > 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(max_epochs >= 1, "max_epochs must be >= 1");
  require(dropout >= 0 && dropout < 1, "dropout must lie in [0, 1)");
  require(weights.cosp >= 0 && weights.auth >= 0 && weights.cit >= 0, "loss weights must be >= 0");
  require(patience >= 1, "patience must be >= 1");
  require(eval_every > 0, "eval_every must be > 0");
  require(projection >= 1 && hidden1 >= 1 && hidden2 >= 1, "layer widths must be >= 1");
}

// ---------------------------------------------------------------------------
// Optimizer

void AdamW::Step(TensorMap& params, const TensorMap& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, double(t_));
  const double c2 = 1.0 - std::pow(beta2_, double(t_));
  for (auto& [name, p] : params) {
    auto g = grads.find(name);
    if (g == grads.end()) continue;
    auto m = m_.try_emplace(name, Matrix::Zero(p.rows(), p.cols())).first;
    auto v = v_.try_emplace(name, Matrix::Zero(p.rows(), p.cols())).first;
    m->second = beta1_ * m->second + (1.0 - beta1_) * g->second;
    v->second = beta2_ * v->second + (1.0 - beta2_) * g->second.cwiseAbs2();
    p *= 1.0 - lr_ * wd_;
    p.array() -= lr_ * (m->second.array() / c1) / ((v->second.array() / c2).sqrt() + eps_);
  }
}

// ---------------------------------------------------------------------------
// Metrics and tables

BinaryMetrics ComputeMetrics(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) Fail(ErrorCode::kInvalidArgument, "metric input size mismatch");
  if (truth.empty()) Fail(ErrorCode::kEmptySplit, "no examples to evaluate");
  BinaryMetrics m;
  for (size_t i = 0; i < truth.size(); ++i) {
    bool t = truth[i] != 0, p = predicted[i] != 0;
    if (t && p) ++m.tp;
    else if (!t && p) ++m.fp;
    else if (t && !p) ++m.fn;
    else ++m.tn;
  }
  auto ratio = [](size_t a, size_t b) { return b == 0 ? 0.0 : double(a) / double(b); };
  auto f1 = [](double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); };
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.f1 = f1(m.precision, m.recall);
  m.negative_precision = ratio(m.tn, m.tn + m.fn);
  m.negative_recall = ratio(m.tn, m.tn + m.fp);
  m.negative_f1 = f1(m.negative_precision, m.negative_recall);
  m.macro_f1 = 0.5 * (m.f1 + m.negative_f1);
  return m;
}

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string HistoryCsv(const std::vector<HistoryRow>& rows) {
  std::string out = "epoch,split,task,loss,f1\n";
  for (const auto& r : rows) {
    out += FormatDouble(r.epoch) + "," + r.split + "," + r.task + "," + FormatDouble(r.loss) + "," +
           FormatDouble(r.f1) + "\n";
  }
  return out;
}

std::string PredictionsCsv(const std::vector<Prediction>& rows) {
  std::string out = "legislator_id,bill_id,probability,label,task\n";
  for (const auto& r : rows) {
    out += r.legislator_id + "," + r.bill_id + "," + FormatDouble(r.probability) + "," +
           std::to_string(r.label) + "," + r.task + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trainer

namespace {

std::vector<std::string> TrainingSpeeches(const HeteroGraph& graph, const SplitAssignment& split) {
  std::vector<std::string> keys;
  for (int v : graph.NodesOf(NodeType::kSpeech)) {
    const std::string& key = graph.Ref(v).key;
    auto it = split.speeches.find(key);
    if (it == split.speeches.end() || it->second == Split::kTrain) keys.push_back(key);
  }
  return keys;
}

Matrix Gather(const Matrix& reps, const std::vector<TrainingExample>& ex, bool three) {
  const Eigen::Index d = reps.cols();
  Matrix x(Eigen::Index(ex.size()), (three ? 3 : 2) * d);
  for (size_t i = 0; i < ex.size(); ++i) {
    x.row(Eigen::Index(i)).segment(0, d) = reps.row(ex[i].a);
    x.row(Eigen::Index(i)).segment(d, d) = reps.row(ex[i].b);
    if (three) x.row(Eigen::Index(i)).segment(2 * d, d) = reps.row(ex[i].c);
  }
  return x;
}

void Scatter(Matrix& d_reps, const Matrix& d_x, const std::vector<TrainingExample>& ex, bool three) {
  const Eigen::Index d = d_reps.cols();
  for (size_t i = 0; i < ex.size(); ++i) {
    d_reps.row(ex[i].a) += d_x.row(Eigen::Index(i)).segment(0, d);
    d_reps.row(ex[i].b) += d_x.row(Eigen::Index(i)).segment(d, d);
    if (three) d_reps.row(ex[i].c) += d_x.row(Eigen::Index(i)).segment(2 * d, d);
  }
}

std::vector<int> Labels(const std::vector<TrainingExample>& ex) {
  std::vector<int> y;
  for (const auto& e : ex) y.push_back(e.label);
  return y;
}

std::vector<int> Decide(const Vector& p) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p[i] > 0.5 ? 1 : 0);
  return out;
}

struct StepResult {
  double total = 0.0;
  HeadOutput cosp, auth, cit;
};

// Pieces shared by training steps and fixed-batch loss evaluation.
struct Forward {
  const NodeInputs* inputs;
  const RgcnOperators* ops;
  const RgcnConfig* rgcn;
  const LossWeights* weights;

  StepResult Run(const TensorMap& params, const std::vector<TrainingExample>& cosp,
                 const std::vector<TrainingExample>& auth, const std::vector<TrainingExample>& cit,
                 bool training, Rng* rng, TensorMap* grads,
                 std::array<Matrix, kNumNodeTypes>* d_raw) const {
    RgcnCache cache;
    Matrix reps = RgcnForward(*inputs, *ops, params, *rgcn, training, rng, &cache);
    Matrix d_reps = Matrix::Zero(reps.rows(), reps.cols());
    StepResult r;
    Matrix dx;
    Matrix* dxp = grads ? &dx : nullptr;
    r.cosp = HeadLoss(params, Task::kCosponsorship, Gather(reps, cosp, true), Labels(cosp),
                      weights->cosp, grads, dxp);
    if (grads) Scatter(d_reps, dx, cosp, true);
    if (!auth.empty()) {
      r.auth = HeadLoss(params, Task::kAuthorship, Gather(reps, auth, false), Labels(auth),
                        weights->auth, grads, dxp);
      if (grads) Scatter(d_reps, dx, auth, false);
    }
    if (!cit.empty()) {
      r.cit = HeadLoss(params, Task::kCitation, Gather(reps, cit, false), Labels(cit),
                       weights->cit, grads, dxp);
      if (grads) Scatter(d_reps, dx, cit, false);
    }
    r.total = LossTotal(r.cosp.loss, r.auth.loss, r.cit.loss, *weights);
    if (grads) {
      auto d = RgcnBackward(*inputs, *ops, params, *rgcn, cache, d_reps, *grads);
      if (d_raw) *d_raw = std::move(d);
    }
    return r;
  }
};

struct AuxTally {
  double loss_sum = 0.0;
  size_t batches = 0;
  std::vector<int> truth, predicted;

  void Add(const HeadOutput& out, const std::vector<TrainingExample>& ex) {
    if (ex.empty()) return;
    loss_sum += out.loss;
    ++batches;
    for (size_t i = 0; i < ex.size(); ++i) {
      truth.push_back(ex[i].label);
      predicted.push_back(out.probabilities[Eigen::Index(i)] > 0.5 ? 1 : 0);
    }
  }
  void Clear() { *this = AuxTally(); }
};

}  // namespace

Trainer::Trainer(const HeteroGraph& graph, const Corpus& corpus, const SplitAssignment& split,
                 const TrainConfig& config, const EncoderInputs* encoder_inputs)
    : graph_(graph),
      corpus_(corpus),
      config_(config),
      encoder_inputs_(encoder_inputs),
      inputs_(NodeInputs::FromGraph(graph)),
      ops_(BuildOperators(config.collapse_relations ? graph.CollapsedAdjacency()
                                                    : graph.Adjacency(config.symmetrize))),
      auth_sampler_(graph, config.auth_positive_rate, nullptr),
      cit_sampler_(graph, config.cit_positive_rate) {
  config_.Validate();
  std::vector<std::string> train_speeches = TrainingSpeeches(graph, split);
  auth_sampler_ = AuthorshipSampler(graph, config.auth_positive_rate, &train_speeches);
  rgcn_.num_relations = ops_.num_relations();
  for (int t = 0; t < kNumNodeTypes; ++t) rgcn_.input_widths[size_t(t)] = graph.FeatureWidth(NodeType(t));
  rgcn_.projection = config.projection;
  rgcn_.hidden1 = config.hidden1;
  rgcn_.hidden2 = config.hidden2;
  rgcn_.dropout = config.dropout;
  if (config.train_encoder) {
    if (!encoder_inputs_) Fail(ErrorCode::kInvalidArgument, "train_encoder needs chunk inputs");
    if (encoder_inputs_->bill_chunks.size() != size_t(graph.CountOf(NodeType::kBill)) ||
        encoder_inputs_->speech_chunks.size() != size_t(graph.CountOf(NodeType::kSpeech))) {
      Fail(ErrorCode::kInvalidArgument, "chunk inputs do not match the graph nodes");
    }
    rgcn_.input_widths[size_t(NodeType::kBill)] = encoder_inputs_->bill.config.d_doc;
    rgcn_.input_widths[size_t(NodeType::kSpeech)] = encoder_inputs_->speech.config.d_doc;
  }
  for (int s = 0; s < 3; ++s) {
    examples_[size_t(s)] = CosponsorshipExamples(graph, corpus, split, Split(s));
  }
}

TensorMap Trainer::InitialParams() const {
  TensorMap p = InitRgcnParams(rgcn_, config_.seed);
  InitHead(p, Task::kCosponsorship, 3 * rgcn_.hidden2, config_.seed);
  InitHead(p, Task::kAuthorship, 2 * rgcn_.hidden2, config_.seed);
  InitHead(p, Task::kCitation, 2 * rgcn_.hidden2, config_.seed);
  if (config_.train_encoder) {
    for (const auto& [name, m] : encoder_inputs_->bill.ToTensors("enc.bill")) p[name] = m;
    for (const auto& [name, m] : encoder_inputs_->speech.ToTensors("enc.speech")) p[name] = m;
  }
  return p;
}

NodeInputs Trainer::InputsFor(const TensorMap& params) const {
  if (!config_.train_encoder) return inputs_;
  NodeInputs in = inputs_;
  auto encode = [&](const Encoder& base, const char* prefix,
                    const std::vector<std::vector<Vector>>& chunks) {
    Encoder enc = base;
    enc.FromTensors(params, prefix);
    Matrix f(Eigen::Index(chunks.size()), enc.config.d_doc);
    for (size_t i = 0; i < chunks.size(); ++i) {
      f.row(Eigen::Index(i)) = Pool(Aggregate(chunks[i], enc.aggregator), enc.config.d_doc).transpose();
    }
    return f;
  };
  in.features[size_t(NodeType::kBill)] =
      encode(encoder_inputs_->bill, "enc.bill", encoder_inputs_->bill_chunks);
  in.features[size_t(NodeType::kSpeech)] =
      encode(encoder_inputs_->speech, "enc.speech", encoder_inputs_->speech_chunks);
  return in;
}

Matrix Trainer::Representations(const TensorMap& params) const {
  NodeInputs in = InputsFor(params);
  return RgcnForward(in, ops_, params, rgcn_, false, nullptr);
}

EvalReport Trainer::EvaluateWith(const Matrix& reps, const TensorMap& params, Split split) const {
  const auto& ex = examples_[size_t(split)];
  if (ex.empty()) Fail(ErrorCode::kEmptySplit, std::string("no ") + SplitName(split) + " examples");
  HeadOutput out = HeadLoss(params, Task::kCosponsorship, Gather(reps, ex, true), Labels(ex));
  EvalReport r;
  r.split = split;
  r.loss = out.loss;
  r.metrics = ComputeMetrics(Labels(ex), Decide(out.probabilities));
  for (size_t i = 0; i < ex.size(); ++i) {
    r.predictions.push_back({graph_.Ref(ex[i].a).key, graph_.Ref(ex[i].b).key,
                             out.probabilities[Eigen::Index(i)], ex[i].label, "cosp"});
  }
  return r;
}

EvalReport Trainer::Evaluate(const TensorMap& params, Split split) const {
  return EvaluateWith(Representations(params), params, split);
}

void Trainer::EncoderBackward(const TensorMap& params,
                              const std::array<Matrix, kNumNodeTypes>& d_raw,
                              TensorMap& grads) const {
  for (auto [type, prefix] : {std::pair{NodeType::kBill, "enc.bill"}, {NodeType::kSpeech, "enc.speech"}}) {
    const bool bill = type == NodeType::kBill;
    Encoder enc = bill ? encoder_inputs_->bill : encoder_inputs_->speech;
    const auto& chunks = bill ? encoder_inputs_->bill_chunks : encoder_inputs_->speech_chunks;
    enc.FromTensors(params, prefix);
    AggregatorParams g = AggregatorParams::Zeros(enc.config.d_chunk, enc.config.d_hidden);
    const Matrix& d = d_raw[size_t(type)];
    for (size_t i = 0; i < chunks.size(); ++i) {
      Vector row = d.row(Eigen::Index(i)).transpose();
      if (row.isZero(0.0)) continue;
      AggregateBackward(chunks[i], enc.aggregator, row, enc.config.d_doc, g);
    }
    enc.aggregator = g;
    for (const auto& [name, m] : enc.ToTensors(prefix)) {
      auto [it, inserted] = grads.try_emplace(name, m);
      if (!inserted) it->second += m;
    }
  }
}

double Trainer::BatchLoss(const TensorMap& params, const std::vector<TrainingExample>& cosp,
                          const std::vector<TrainingExample>& auth,
                          const std::vector<TrainingExample>& cit, TensorMap* grads) const {
  NodeInputs in = InputsFor(params);
  Forward fwd{&in, &ops_, &rgcn_, &config_.weights};
  std::array<Matrix, kNumNodeTypes> d_raw;
  StepResult r = fwd.Run(params, cosp, auth, cit, false, nullptr, grads, &d_raw);
  if (grads && config_.train_encoder) EncoderBackward(params, d_raw, *grads);
  return r.total;
}

TrainResult Trainer::Train() const { return Train(InitialParams()); }

TrainResult Trainer::Train(TensorMap params) const {
  const auto& train = examples_[size_t(Split::kTrain)];
  if (train.empty()) Fail(ErrorCode::kEmptySplit, "no training examples");
  if (examples_[size_t(Split::kValidation)].empty()) {
    Fail(ErrorCode::kEmptySplit, "no validation examples");
  }
  const auto& w = config_.weights;
  const bool use_auth = w.auth > 0.0;
  const bool use_cit = w.cit > 0.0;

  Rng shuffle_rng = Rng::Substream(config_.seed, "trainer.shuffle");
  Rng dropout_rng = Rng::Substream(config_.seed, "trainer.dropout");
  Rng aux_rng = Rng::Substream(config_.seed, "trainer.aux");
  AdamW opt(config_.learning_rate, config_.beta1, config_.beta2, config_.epsilon,
            config_.weight_decay);

  const size_t n = train.size();
  const size_t batch = size_t(config_.batch_size);
  const size_t steps_per_epoch = (n + batch - 1) / batch;
  // Evaluation points inside an epoch, as step counts.
  std::set<size_t> eval_steps;
  const int points = std::max(1, int(std::lround(1.0 / config_.eval_every)));
  for (int j = 1; j <= points; ++j) {
    eval_steps.insert(std::max<size_t>(1, (size_t(j) * steps_per_epoch + size_t(points) - 1) / size_t(points)));
  }

  TrainResult result;
  result.last_params = params;
  result.best_params = params;
  AuxTally auth_tally, cit_tally;
  int since_best = 0;
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < config_.max_epochs; ++epoch) {
    shuffle_rng.Shuffle(order);
    for (size_t step = 1; step <= steps_per_epoch; ++step) {
      std::vector<TrainingExample> cosp, auth, cit;
      for (size_t k = (step - 1) * batch; k < std::min(n, step * batch); ++k) {
        const TrainingExample& e = train[order[k]];
        cosp.push_back(e);
        if (use_auth) {
          try {
            auth.push_back(auth_sampler_.Sample(e.a, aux_rng));
          } catch (const Error& err) {
            if (err.code() != ErrorCode::kNoSpeechAvailable) throw;
            ++result.skipped_auth;
          }
        }
        if (use_cit) {
          try {
            cit.push_back(cit_sampler_.Sample(e.a, aux_rng));
          } catch (const Error& err) {
            if (err.code() != ErrorCode::kNoCitationAvailable) throw;
            ++result.skipped_cit;
          }
        }
      }
      result.aux_examples.insert(result.aux_examples.end(), auth.begin(), auth.end());
      result.aux_examples.insert(result.aux_examples.end(), cit.begin(), cit.end());

      NodeInputs in = InputsFor(params);
      Forward fwd{&in, &ops_, &rgcn_, &w};
      TensorMap grads;
      std::array<Matrix, kNumNodeTypes> d_raw;
      StepResult r = fwd.Run(params, cosp, auth, cit, true, &dropout_rng, &grads, &d_raw);
      bool finite = std::isfinite(r.total);
      for (const auto& [name, g] : grads) finite = finite && g.allFinite();
      if (!finite) {
        result.diverged = true;
        result.stop_reason = "divergence";
        result.epochs_run = epoch + double(step) / double(steps_per_epoch);
        return result;
      }
      if (config_.train_encoder) EncoderBackward(params, d_raw, grads);
      if (use_auth) auth_tally.Add(r.auth, auth);
      if (use_cit) cit_tally.Add(r.cit, cit);
      opt.Step(params, grads);
      bool params_finite = true;
      for (const auto& [name, p] : params) params_finite = params_finite && p.allFinite();
      if (!params_finite) {
        result.diverged = true;
        result.stop_reason = "divergence";
        result.epochs_run = epoch + double(step) / double(steps_per_epoch);
        return result;
      }
      result.last_params = params;

      if (!eval_steps.count(step)) continue;
      const double at = epoch + double(step) / double(steps_per_epoch);
      Matrix reps = Representations(params);
      EvalReport tr = EvaluateWith(reps, params, Split::kTrain);
      EvalReport va = EvaluateWith(reps, params, Split::kValidation);
      result.history.push_back({at, "train", "cosp", tr.loss, tr.metrics.f1});
      result.history.push_back({at, "validation", "cosp", va.loss, va.metrics.f1});
      for (auto [task, tally, on] : {std::tuple{"auth", &auth_tally, use_auth},
                                     {"cit", &cit_tally, use_cit}}) {
        if (!on) continue;
        double loss = tally->batches ? tally->loss_sum / double(tally->batches) : 0.0;
        double f1 = tally->truth.empty() ? 0.0 : ComputeMetrics(tally->truth, tally->predicted).f1;
        result.history.push_back({at, "train", task, loss, f1});
        tally->Clear();
      }
      result.epochs_run = at;
      if (va.metrics.f1 > result.best_validation_f1) {
        result.best_validation_f1 = va.metrics.f1;
        result.best_epoch = at;
        result.best_params = params;
        since_best = 0;
      } else if (++since_best >= config_.patience) {
        result.stop_reason = "early stopping";
        return result;
      }
    }
  }
  result.stop_reason = "max epochs";
  return result;
}

}  // namespace legis
