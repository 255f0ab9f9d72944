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

// Random forest of Gini-split classification trees for binary labels:
// bootstrap samples, sqrt(d) candidate features per split, trees grown until
// leaves are pure. Predicted probability is the mean leaf frequency.

#ifndef LEGIS_FOREST_H_
#define LEGIS_FOREST_H_

#include <vector>

#include "legis/common.h"
#include "legis/tensor_io.h"

namespace legis {

struct ForestConfig {
  int trees = 100;
  int max_depth = 0;         // 0 = unlimited
  int min_samples_split = 2;
  uint64_t seed = 0;
};

class RandomForest {
 public:
  explicit RandomForest(ForestConfig config = {}) : config_(config) {}

  void Fit(const Matrix& x, const std::vector<int>& y);
  double PredictProbability(const Vector& x) const;
  Vector PredictProbabilities(const Matrix& x) const;
  size_t num_trees() const { return trees_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double positive = 0.0;  // share of class 1 in the leaf
  };
  using Tree = std::vector<Node>;

  int Grow(Tree& tree, const Matrix& x, const std::vector<int>& y, std::vector<int>& rows,
           size_t begin, size_t end, int depth, Rng& rng) const;

  ForestConfig config_;
  std::vector<Tree> trees_;
};

}  // namespace legis

#endif  // LEGIS_FOREST_H_
