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

#include "legis/forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace legis {

void RandomForest::Fit(const Matrix& x, const std::vector<int>& y) {
  if (x.rows() == 0 || size_t(x.rows()) != y.size()) {
    Fail(ErrorCode::kInvalidArgument, "random forest needs matching non-empty inputs");
  }
  if (config_.trees < 1) Fail(ErrorCode::kInvalidArgument, "random forest needs >= 1 tree");
  trees_.clear();
  const size_t n = y.size();
  for (int t = 0; t < config_.trees; ++t) {
    Rng rng = Rng::Substream(config_.seed, "forest.tree." + std::to_string(t));
    std::vector<int> rows(n);
    for (auto& r : rows) r = int(rng.Below(n));
    Tree tree;
    Grow(tree, x, y, rows, 0, n, 0, rng);
    trees_.push_back(std::move(tree));
  }
}

int RandomForest::Grow(Tree& tree, const Matrix& x, const std::vector<int>& y,
                       std::vector<int>& rows, size_t begin, size_t end, int depth,
                       Rng& rng) const {
  const int id = int(tree.size());
  tree.push_back(Node());
  const size_t count = end - begin;
  size_t positives = 0;
  for (size_t i = begin; i < end; ++i) positives += size_t(y[size_t(rows[i])] != 0);
  tree[size_t(id)].positive = double(positives) / double(count);
  if (positives == 0 || positives == count || count < size_t(config_.min_samples_split) ||
      (config_.max_depth > 0 && depth >= config_.max_depth)) {
    return id;
  }

  const int d = int(x.cols());
  const int tries = std::max(1, int(std::sqrt(double(d))));
  std::vector<int> features(static_cast<size_t>(d));
  std::iota(features.begin(), features.end(), 0);

  double best_score = std::numeric_limits<double>::infinity();
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<std::pair<double, int>> column(count);
  // Candidate features drawn without replacement; keep drawing past the
  // sqrt budget while no informative split has been found.
  for (int k = 0; k < d; ++k) {
    std::swap(features[size_t(k)], features[size_t(k) + rng.Below(size_t(d - k))]);
    if (k >= tries && best_feature >= 0) break;
    const int f = features[size_t(k)];
    for (size_t i = 0; i < count; ++i) {
      int r = rows[begin + i];
      column[i] = {x(r, f), y[size_t(r)]};
    }
    std::sort(column.begin(), column.end());
    size_t left_n = 0, left_pos = 0;
    for (size_t i = 0; i + 1 < count; ++i) {
      ++left_n;
      left_pos += size_t(column[i].second != 0);
      if (column[i].first == column[i + 1].first) continue;
      size_t right_n = count - left_n, right_pos = positives - left_pos;
      double pl = double(left_pos) / double(left_n), pr = double(right_pos) / double(right_n);
      double gini = double(left_n) * 2 * pl * (1 - pl) + double(right_n) * 2 * pr * (1 - pr);
      if (gini < best_score) {
        best_score = gini;
        best_feature = f;
        best_threshold = 0.5 * (column[i].first + column[i + 1].first);
      }
    }
  }
  if (best_feature < 0) return id;  // all candidate columns constant

  auto mid = std::partition(rows.begin() + long(begin), rows.begin() + long(end),
                            [&](int r) { return x(r, best_feature) <= best_threshold; });
  size_t split = size_t(mid - rows.begin());
  int left = Grow(tree, x, y, rows, begin, split, depth + 1, rng);
  int right = Grow(tree, x, y, rows, split, end, depth + 1, rng);
  tree[size_t(id)].feature = best_feature;
  tree[size_t(id)].threshold = best_threshold;
  tree[size_t(id)].left = left;
  tree[size_t(id)].right = right;
  return id;
}

double RandomForest::PredictProbability(const Vector& x) const {
  if (trees_.empty()) Fail(ErrorCode::kInvalidArgument, "random forest is not fitted");
  double sum = 0.0;
  for (const Tree& tree : trees_) {
    int node = 0;
    while (tree[size_t(node)].feature >= 0) {
      const Node& n = tree[size_t(node)];
      node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    sum += tree[size_t(node)].positive;
  }
  return sum / double(trees_.size());
}

Vector RandomForest::PredictProbabilities(const Matrix& x) const {
  Vector p(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) p[i] = PredictProbability(x.row(i).transpose());
  return p;
}

}  // namespace legis
