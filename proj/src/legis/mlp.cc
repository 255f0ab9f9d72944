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

#include "legis/mlp.h"

#include <cmath>

#include "legis/heads.h"
#include "legis/trainer.h"

namespace legis {
namespace {

std::string W(int k) { return "mlp.layer" + std::to_string(k) + ".W"; }
std::string B(int k) { return "mlp.layer" + std::to_string(k) + ".b"; }

}  // namespace

void Mlp::Init(int input_width) {
  Rng rng = Rng::Substream(config_.seed, "mlp.init");
  params_.clear();
  std::vector<int> widths = {input_width};
  widths.insert(widths.end(), config_.hidden.begin(), config_.hidden.end());
  widths.push_back(2);
  for (int k = 0; k + 1 < int(widths.size()); ++k) {
    int in = widths[size_t(k)], out = widths[size_t(k) + 1];
    double bound = std::sqrt(6.0 / double(in + out));
    Matrix w(out, in);
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) w(r, c) = rng.Uniform(-bound, bound);
    }
    params_[W(k)] = w;
    params_[B(k)] = Matrix::Zero(out, 1);
  }
}

Matrix Mlp::Logits(const TensorMap& params, const Matrix& x, Rng* rng, std::vector<Matrix>* acts,
                   std::vector<Matrix>* masks) const {
  Matrix h = x;
  const int layers = num_layers();
  for (int k = 0; k < layers; ++k) {
    if (acts) acts->push_back(h);
    Matrix z = h * params.at(W(k)).transpose();
    z.rowwise() += params.at(B(k)).col(0).transpose();
    if (k + 1 == layers) return z;
    h = z.cwiseMax(0.0);
    if (rng && config_.dropout > 0.0) {
      const double keep = 1.0 - config_.dropout;
      Matrix mask(h.rows(), h.cols());
      for (Eigen::Index c = 0; c < mask.cols(); ++c) {
        for (Eigen::Index r = 0; r < mask.rows(); ++r) mask(r, c) = rng->Uniform() < keep ? 1.0 / keep : 0.0;
      }
      h = h.cwiseProduct(mask);
      if (masks) masks->push_back(mask);
    } else if (masks) {
      masks->push_back(Matrix());
    }
  }
  return h;
}

double Mlp::Loss(const TensorMap& params, const Matrix& x, const std::vector<int>& y, Rng* rng,
                 TensorMap* grads) const {
  std::vector<Matrix> acts, masks;
  Matrix z = Logits(params, x, rng, &acts, &masks);
  const Eigen::Index n = x.rows();
  Matrix dz = Matrix::Zero(n, 2);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0 / (1.0 + std::exp(z(i, 0) - z(i, 1)));
    total += BinaryCrossEntropy(p, y[size_t(i)]);
    if (p > kProbabilityFloor && p < 1.0 - kProbabilityFloor) {
      double g = (p - double(y[size_t(i)])) / double(n);
      dz(i, 1) = g;
      dz(i, 0) = -g;
    }
  }
  if (grads) {
    Matrix d = dz;
    for (int k = num_layers() - 1; k >= 0; --k) {
      (*grads)[W(k)] = d.transpose() * acts[size_t(k)];
      (*grads)[B(k)] = d.colwise().sum().transpose();
      if (k == 0) break;
      d = d * params.at(W(k));
      if (masks[size_t(k) - 1].size()) d = d.cwiseProduct(masks[size_t(k) - 1]);
      // acts[k] is the post-rectifier output of layer k - 1.
      d = d.cwiseProduct((acts[size_t(k)].array() > 0.0).cast<double>().matrix());
    }
  }
  return n ? total / double(n) : 0.0;
}

void Mlp::Fit(const Matrix& x, const std::vector<int>& y, const Matrix* x_val,
              const std::vector<int>* y_val) {
  if (x.rows() == 0 || size_t(x.rows()) != y.size()) {
    Fail(ErrorCode::kInvalidArgument, "classifier needs matching non-empty inputs");
  }
  Init(int(x.cols()));
  AdamW opt(config_.learning_rate, 0.9, 0.999, 1e-8, config_.weight_decay);
  Rng order_rng = Rng::Substream(config_.seed, "mlp.shuffle");
  Rng drop_rng = Rng::Substream(config_.seed, "mlp.dropout");
  std::vector<size_t> order(size_t(x.rows()));
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  const size_t batch = size_t(std::max(1, config_.batch_size));
  const bool select = x_val && y_val && !y_val->empty();
  double best = -1.0;
  TensorMap best_params = params_;
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    order_rng.Shuffle(order);
    for (size_t start = 0; start < order.size(); start += batch) {
      size_t end = std::min(order.size(), start + batch);
      Matrix xb(Eigen::Index(end - start), x.cols());
      std::vector<int> yb;
      for (size_t i = start; i < end; ++i) {
        xb.row(Eigen::Index(i - start)) = x.row(Eigen::Index(order[i]));
        yb.push_back(y[order[i]]);
      }
      TensorMap grads;
      Loss(params_, xb, yb, &drop_rng, &grads);
      opt.Step(params_, grads);
    }
    if (select) {
      Vector p = PredictProbabilities(*x_val);
      std::vector<int> pred;
      for (Eigen::Index i = 0; i < p.size(); ++i) pred.push_back(p[i] > 0.5 ? 1 : 0);
      double f1 = ComputeMetrics(*y_val, pred).f1;
      if (f1 > best) {
        best = f1;
        best_params = params_;
      }
    }
  }
  if (select) params_ = best_params;
}

Vector Mlp::PredictProbabilities(const Matrix& x) const {
  Matrix z = Logits(params_, x, nullptr, nullptr, nullptr);
  Vector p(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) p[i] = 1.0 / (1.0 + std::exp(z(i, 0) - z(i, 1)));
  return p;
}

}  // namespace legis
