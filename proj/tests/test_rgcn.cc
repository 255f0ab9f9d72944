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

#include <chrono>
#include <numeric>
#include <queue>
#include <set>

#include <doctest.h>

#include "legis/rgcn.h"
#include "support.h"

namespace legis {
namespace {

RelationalAdjacency RandomAdjacency(int n, int relations, double density, Rng& rng) {
  RelationalAdjacency adj;
  adj.num_nodes = n;
  adj.edges.resize(size_t(relations));
  for (int r = 0; r < relations; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        if (rng.Uniform() < density) {
          adj.edges[size_t(r)].push_back({s, t});
          if (rng.Uniform() < 0.2) adj.edges[size_t(r)].push_back({s, t});  // repeated pair
        }
      }
    }
  }
  return adj;
}

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.Uniform(-1.0, 1.0);
  }
  return m;
}

RgcnLayer RandomLayer(int relations, int d_in, int d_out, bool relu, Rng& rng) {
  RgcnLayer layer;
  for (int r = 0; r < relations; ++r) layer.w.push_back(RandomMatrix(d_out, d_in, rng));
  layer.w0 = RandomMatrix(d_out, d_in, rng);
  layer.b = RandomMatrix(d_out, 1, rng).col(0);
  layer.relu = relu;
  return layer;
}

// Dense per-node evaluation of the layer formula from the raw edge list.
Matrix OracleLayer(const RelationalAdjacency& adj, const Matrix& h, const RgcnLayer& layer) {
  const int n = adj.num_nodes;
  Matrix out(n, layer.d_out());
  for (int v = 0; v < n; ++v) {
    Vector z = layer.w0 * h.row(v).transpose() + layer.b;
    for (int r = 0; r < adj.num_relations(); ++r) {
      std::set<int> neighbors;
      for (auto [s, t] : adj.edges[size_t(r)]) {
        if (t == v) neighbors.insert(s);
      }
      if (neighbors.empty()) continue;
      Vector sum = Vector::Zero(layer.d_in());
      for (int j : neighbors) sum += h.row(j).transpose();
      z += layer.w[size_t(r)] * sum / double(neighbors.size());
    }
    if (layer.relu) z = z.cwiseMax(0.0);
    out.row(v) = z.transpose();
  }
  return out;
}

struct Model {
  NodeInputs inputs;
  RgcnConfig config;
  TensorMap params;
  RgcnOperators ops;
};

Model RandomModel(int n, Rng& rng, uint64_t seed, double density = 0.15) {
  Model m;
  m.config.num_relations = kNumMessageRelations;
  m.config.input_widths = {3, 4, 2};
  m.config.projection = 3;
  m.config.hidden1 = 4;
  m.config.hidden2 = 2;
  m.config.dropout = 0.0;
  std::array<int, kNumNodeTypes> counts{};
  for (int v = 0; v < n; ++v) {
    NodeType t = NodeType(rng.Below(kNumNodeTypes));
    m.inputs.types.push_back(t);
    m.inputs.local.push_back(counts[size_t(t)]++);
  }
  for (int t = 0; t < kNumNodeTypes; ++t) {
    m.inputs.features[size_t(t)] = RandomMatrix(counts[size_t(t)], m.config.input_widths[size_t(t)], rng);
  }
  m.params = InitRgcnParams(m.config, seed);
  // Non-zero biases so their gradients are exercised.
  for (auto& [name, value] : m.params) {
    if (name.size() > 2 && name.substr(name.size() - 2) == ".b") value = RandomMatrix(value.rows(), value.cols(), rng);
  }
  m.ops = BuildOperators(RandomAdjacency(n, kNumMessageRelations, density, rng));
  return m;
}

TEST_CASE("layer matches a dense oracle on 100 random graphs") {
  Rng rng(1);
  auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + int(rng.Below(20));
    int d_in = 1 + int(rng.Below(5)), d_out = 1 + int(rng.Below(5));
    RelationalAdjacency adj = RandomAdjacency(n, 5, rng.Uniform(0.0, 0.4), rng);
    RgcnLayer layer = RandomLayer(5, d_in, d_out, rng.Below(2) == 0, rng);
    Matrix h = RandomMatrix(n, d_in, rng);
    Matrix got = LayerForward(BuildOperators(adj), h, layer);
    worst = std::max(worst, testing::MaxRelativeError(got, OracleLayer(adj, h, layer)));
  }
  CHECK(worst <= 1e-5);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(30));
}

TEST_CASE("an isolated node sees only its self-connection") {
  Rng rng(2);
  RelationalAdjacency adj;
  adj.num_nodes = 3;
  adj.edges = {{{0, 1}}, {{1, 0}}};
  RgcnLayer layer = RandomLayer(2, 2, 3, true, rng);
  Matrix h = RandomMatrix(3, 2, rng);
  Matrix out = LayerForward(BuildOperators(adj), h, layer);
  Vector want = (layer.w0 * h.row(2).transpose() + layer.b).cwiseMax(0.0);
  CHECK((out.row(2).transpose() - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("identity weights average neighbors per relation") {
  // Node 0 receives nodes 1 and 2 on relation 0 and node 3 on relation 1.
  RelationalAdjacency adj;
  adj.num_nodes = 4;
  adj.edges = {{{1, 0}, {2, 0}}, {{3, 0}}};
  RgcnLayer layer;
  layer.w = {Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  layer.w0 = Matrix::Zero(2, 2);
  layer.b = Vector::Zero(2);
  layer.relu = false;
  Matrix h(4, 2);
  h << 0, 0, 2, 4, 4, 8, 10, 20;
  Matrix out = LayerForward(BuildOperators(adj), h, layer);
  CHECK(out(0, 0) == doctest::Approx(3.0 + 10.0));
  CHECK(out(0, 1) == doctest::Approx(6.0 + 20.0));
  CHECK(out.bottomRows(3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("repeated neighbors are counted once") {
  Rng rng(3);
  RelationalAdjacency once, twice;
  once.num_nodes = twice.num_nodes = 3;
  once.edges = {{{1, 0}, {2, 0}}};
  twice.edges = {{{1, 0}, {1, 0}, {1, 0}, {2, 0}}};
  RgcnLayer layer = RandomLayer(1, 2, 2, false, rng);
  Matrix h = RandomMatrix(3, 2, rng);
  CHECK(LayerForward(BuildOperators(once), h, layer) == LayerForward(BuildOperators(twice), h, layer));
  RgcnOperators ops = BuildOperators(twice);
  CHECK(ops.mean[0].coeff(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("property: permutation equivariance") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + int(rng.Below(15));
    RelationalAdjacency adj = RandomAdjacency(n, 3, 0.2, rng);
    RgcnLayer layer = RandomLayer(3, 3, 2, true, rng);
    Matrix h = RandomMatrix(n, 3, rng);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(perm);
    RelationalAdjacency padj = adj;
    for (auto& rel : padj.edges) {
      for (auto& [s, t] : rel) {
        s = perm[size_t(s)];
        t = perm[size_t(t)];
      }
    }
    Matrix ph(n, 3);
    for (int v = 0; v < n; ++v) ph.row(perm[size_t(v)]) = h.row(v);
    Matrix out = LayerForward(BuildOperators(adj), h, layer);
    Matrix pout = LayerForward(BuildOperators(padj), ph, layer);
    for (int v = 0; v < n; ++v) {
      CHECK((out.row(v) - pout.row(perm[size_t(v)])).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("property: two layers only see two hops") {
  Rng rng(5);
  int exercised = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Model m = RandomModel(14, rng, 100 + uint64_t(trial), 0.01);
    // Undirected hop distance from node 0.
    const int n = m.inputs.num_nodes();
    std::vector<std::vector<int>> nbr(static_cast<size_t>(n));
    for (const auto& rel : m.ops.mean) {
      for (int t = 0; t < n; ++t) {
        for (SparseMatrix::InnerIterator it(rel, t); it; ++it) {
          nbr[size_t(t)].push_back(int(it.col()));
          nbr[size_t(it.col())].push_back(t);
        }
      }
    }
    std::vector<int> dist(static_cast<size_t>(n), -1);
    std::queue<int> q;
    dist[0] = 0;
    q.push(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : nbr[size_t(v)]) {
        if (dist[size_t(u)] < 0) {
          dist[size_t(u)] = dist[size_t(v)] + 1;
          q.push(u);
        }
      }
    }
    Matrix base = RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr);
    NodeInputs changed = m.inputs;
    bool any_far = false;
    for (int v = 0; v < n; ++v) {
      if (dist[size_t(v)] >= 3 || dist[size_t(v)] < 0) {
        changed.features[size_t(changed.types[size_t(v)])].row(changed.local[size_t(v)]).array() += 5.0;
        any_far = true;
      }
    }
    if (!any_far) continue;
    ++exercised;
    Matrix after = RgcnForward(changed, m.ops, m.params, m.config, false, nullptr);
    CHECK((after.row(0) - base.row(0)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(exercised >= 10);
}

TEST_CASE("model gradients match finite differences on a six-node graph") {
  Rng rng(6);
  Model m = RandomModel(6, rng, 6, 0.3);
  // Keep pre-activations away from the rectifier kink.
  Matrix coeff = RandomMatrix(6, m.config.hidden2, rng);
  auto loss = [&](const TensorMap& params, const NodeInputs& inputs) {
    Matrix out = RgcnForward(inputs, m.ops, params, m.config, false, nullptr);
    return (out.array() * coeff.array()).sum();
  };
  RgcnCache cache;
  RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr, &cache);
  TensorMap grads;
  auto d_inputs = RgcnBackward(m.inputs, m.ops, m.params, m.config, cache, coeff, grads);

  const double eps = 1e-6;
  double worst = 0.0;
  size_t checked = 0;
  auto compare = [&](double fd, double analytic) {
    ++checked;
    double scale = std::abs(fd) + std::abs(analytic);
    if (scale < 1e-7) return;
    worst = std::max(worst, std::abs(fd - analytic) / scale);
  };
  for (auto& [name, value] : m.params) {
    CAPTURE(name);
    REQUIRE(grads.count(name) == 1);
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      double keep = value.data()[i];
      value.data()[i] = keep + eps;
      double up = loss(m.params, m.inputs);
      value.data()[i] = keep - eps;
      double down = loss(m.params, m.inputs);
      value.data()[i] = keep;
      compare((up - down) / (2 * eps), grads.at(name).data()[i]);
    }
  }
  for (int t = 0; t < kNumNodeTypes; ++t) {
    Matrix& f = m.inputs.features[size_t(t)];
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      double keep = f.data()[i];
      f.data()[i] = keep + eps;
      double up = loss(m.params, m.inputs);
      f.data()[i] = keep - eps;
      double down = loss(m.params, m.inputs);
      f.data()[i] = keep;
      compare((up - down) / (2 * eps), d_inputs[size_t(t)].data()[i]);
    }
  }
  CHECK(checked > 100);
  CHECK(worst < 1e-4);
}

TEST_CASE("zero parameters give zero outputs") {
  Rng rng(7);
  Model m = RandomModel(8, rng, 7);
  for (auto& [name, value] : m.params) value.setZero();
  Matrix out = RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr);
  CHECK(out.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the model is projection then two layers") {
  Rng rng(8);
  Model m = RandomModel(10, rng, 8);
  const int n = m.inputs.num_nodes();
  Matrix h0(n, m.config.projection);
  const char* names[] = {"proj.S", "proj.L", "proj.B"};
  for (int v = 0; v < n; ++v) {
    int t = int(m.inputs.types[size_t(v)]);
    h0.row(v) = (m.params.at(names[t]) * m.inputs.features[size_t(t)].row(m.inputs.local[size_t(v)]).transpose())
                    .transpose();
  }
  RgcnLayer l1 = LayerFromParams(m.params, 1, m.config.num_relations, true);
  RgcnLayer l2 = LayerFromParams(m.params, 2, m.config.num_relations, false);
  Matrix want = LayerForward(m.ops, LayerForward(m.ops, h0, l1), l2);
  Matrix got = RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr);
  CHECK(testing::MaxRelativeError(got, want) < 1e-12);
}

TEST_CASE("dropout is active only while training and is seeded") {
  Rng rng(9);
  Model m = RandomModel(12, rng, 9);
  m.config.dropout = 0.5;
  Matrix eval1 = RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr);
  Matrix eval2 = RgcnForward(m.inputs, m.ops, m.params, m.config, false, nullptr);
  CHECK(eval1 == eval2);
  Rng a(1), b(1);
  Matrix t1 = RgcnForward(m.inputs, m.ops, m.params, m.config, true, &a);
  Matrix t2 = RgcnForward(m.inputs, m.ops, m.params, m.config, true, &b);
  CHECK(t1 == t2);
  CHECK(t1 != eval1);
}

TEST_CASE("mismatched widths are rejected") {
  Rng rng(10);
  RelationalAdjacency adj;
  adj.num_nodes = 3;
  adj.edges = {{{0, 1}}};
  RgcnLayer layer = RandomLayer(1, 2, 2, true, rng);
  try {
    LayerForward(BuildOperators(adj), RandomMatrix(3, 5, rng), layer);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace legis
