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

// Feed-forward binary classifier: affine layers with rectifiers and
// dropout between them, two-class softmax output, cross-entropy loss and
// AdamW. With no hidden layers it is the same affine + softmax head the
// graph model uses.

#ifndef LEGIS_MLP_H_
#define LEGIS_MLP_H_

#include <vector>

#include "legis/common.h"
#include "legis/tensor_io.h"

namespace legis {

struct MlpConfig {
  std::vector<int> hidden;  // widths of hidden layers
  double dropout = 0.0;
  double learning_rate = 1e-3;
  int epochs = 40;
  int batch_size = 64;
  double weight_decay = 0.01;
  uint64_t seed = 0;
};

class Mlp {
 public:
  explicit Mlp(MlpConfig config = {}) : config_(config) {}

  // Trains on (x, y). When validation data is given, keeps the parameters
  // of the epoch with the best validation F1 (positive class 1).
  void Fit(const Matrix& x, const std::vector<int>& y, const Matrix* x_val = nullptr,
           const std::vector<int>* y_val = nullptr);

  Vector PredictProbabilities(const Matrix& x) const;

  // Mean cross-entropy and, when grads is given, its gradient. Dropout
  // masks are drawn from rng when it is non-null.
  double Loss(const TensorMap& params, const Matrix& x, const std::vector<int>& y, Rng* rng,
              TensorMap* grads) const;

  void Init(int input_width);
  TensorMap& params() { return params_; }
  const TensorMap& params() const { return params_; }
  int num_layers() const { return int(config_.hidden.size()) + 1; }

 private:
  Matrix Logits(const TensorMap& params, const Matrix& x, Rng* rng, std::vector<Matrix>* acts,
                std::vector<Matrix>* masks) const;

  MlpConfig config_;
  TensorMap params_;
};

}  // namespace legis

#endif  // LEGIS_MLP_H_
