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

#include "legis/rgcn.h"

#include <cmath>

namespace legis {
namespace {

const char* kTypeSuffix[kNumNodeTypes] = {"S", "L", "B"};

std::string RelName(int k, int r) {
  return "layer" + std::to_string(k) + ".rel" + std::to_string(r) + ".W";
}

Matrix Glorot(int rows, int cols, Rng& rng) {
  double bound = std::sqrt(6.0 / double(std::max(1, rows + cols)));
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.Uniform(-bound, bound);
  }
  return m;
}

const Matrix& Param(const TensorMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) Fail(ErrorCode::kSchema, "missing parameter " + name);
  return it->second;
}

void Accumulate(TensorMap& grads, const std::string& name, const Matrix& g) {
  auto it = grads.find(name);
  if (it == grads.end()) {
    grads.emplace(name, g);
  } else {
    it->second += g;
  }
}

Matrix DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  Matrix mask(rows, cols);
  const double keep = 1.0 - rate;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) mask(r, c) = rng.Uniform() < keep ? 1.0 / keep : 0.0;
  }
  return mask;
}

}  // namespace

RgcnOperators BuildOperators(const RelationalAdjacency& adjacency) {
  RelationalAdjacency adj = adjacency;
  adj.Normalize();
  RgcnOperators ops;
  ops.num_nodes = adj.num_nodes;
  for (const auto& list : adj.edges) {
    std::vector<int> degree(size_t(adj.num_nodes), 0);
    for (auto [s, t] : list) ++degree[size_t(t)];
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(list.size());
    for (auto [s, t] : list) triplets.emplace_back(t, s, 1.0 / double(degree[size_t(t)]));
    SparseMatrix a(adj.num_nodes, adj.num_nodes);
    a.setFromTriplets(triplets.begin(), triplets.end());
    ops.mean_transposed.push_back(SparseMatrix(a.transpose()));
    ops.mean.push_back(std::move(a));
  }
  return ops;
}

Matrix LayerForward(const RgcnOperators& ops, const Matrix& h, const RgcnLayer& layer, Matrix* pre) {
  if (int(layer.w.size()) != ops.num_relations()) {
    Fail(ErrorCode::kDimensionMismatch, "layer has " + std::to_string(layer.w.size()) +
                                            " relation weights, graph has " +
                                            std::to_string(ops.num_relations()) + " relations");
  }
  if (h.rows() != ops.num_nodes || h.cols() != layer.d_in()) {
    Fail(ErrorCode::kDimensionMismatch, "features are " + std::to_string(h.rows()) + "x" +
                                            std::to_string(h.cols()) + ", layer expects " +
                                            std::to_string(ops.num_nodes) + "x" +
                                            std::to_string(layer.d_in()));
  }
  Matrix z = h * layer.w0.transpose();
  z.rowwise() += layer.b.transpose();
  for (int r = 0; r < ops.num_relations(); ++r) {
    if (layer.w[size_t(r)].rows() != layer.d_out() || layer.w[size_t(r)].cols() != layer.d_in()) {
      Fail(ErrorCode::kDimensionMismatch, "relation weight shape differs from self-loop weight");
    }
    if (ops.mean[size_t(r)].nonZeros() == 0) continue;
    Matrix agg = ops.mean[size_t(r)] * h;
    z.noalias() += agg * layer.w[size_t(r)].transpose();
  }
  Matrix out = layer.relu ? Matrix(z.cwiseMax(0.0)) : z;
  if (pre) *pre = std::move(z);
  return out;
}

RgcnLayerGrads ZeroGrads(const RgcnLayer& layer) {
  RgcnLayerGrads g;
  for (const auto& w : layer.w) g.w.push_back(Matrix::Zero(w.rows(), w.cols()));
  g.w0 = Matrix::Zero(layer.w0.rows(), layer.w0.cols());
  g.b = Vector::Zero(layer.b.size());
  return g;
}

Matrix LayerBackward(const RgcnOperators& ops, const Matrix& h, const RgcnLayer& layer,
                     const Matrix& pre, const Matrix& d_out, RgcnLayerGrads& grads) {
  Matrix dz = d_out;
  if (layer.relu) dz = dz.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
  grads.w0.noalias() += dz.transpose() * h;
  grads.b += dz.colwise().sum().transpose();
  Matrix dh = dz * layer.w0;
  for (int r = 0; r < ops.num_relations(); ++r) {
    if (ops.mean[size_t(r)].nonZeros() == 0) continue;
    Matrix agg = ops.mean[size_t(r)] * h;
    grads.w[size_t(r)].noalias() += dz.transpose() * agg;
    Matrix d_agg = dz * layer.w[size_t(r)];
    dh.noalias() += ops.mean_transposed[size_t(r)] * d_agg;
  }
  return dh;
}

TensorMap InitRgcnParams(const RgcnConfig& config, uint64_t seed) {
  Rng rng = Rng::Substream(seed, "rgcn.init");
  TensorMap p;
  for (int t = 0; t < kNumNodeTypes; ++t) {
    p[std::string("proj.") + kTypeSuffix[t]] =
        Glorot(config.projection, config.input_widths[size_t(t)], rng);
  }
  const int widths[3] = {config.projection, config.hidden1, config.hidden2};
  for (int k = 1; k <= 2; ++k) {
    for (int r = 0; r < config.num_relations; ++r) {
      p[RelName(k, r)] = Glorot(widths[k], widths[k - 1], rng);
    }
    p["layer" + std::to_string(k) + ".W0"] = Glorot(widths[k], widths[k - 1], rng);
    p["layer" + std::to_string(k) + ".b"] = Matrix::Zero(widths[k], 1);
  }
  return p;
}

RgcnLayer LayerFromParams(const TensorMap& params, int k, int num_relations, bool relu) {
  RgcnLayer layer;
  for (int r = 0; r < num_relations; ++r) layer.w.push_back(Param(params, RelName(k, r)));
  layer.w0 = Param(params, "layer" + std::to_string(k) + ".W0");
  const Matrix& b = Param(params, "layer" + std::to_string(k) + ".b");
  layer.b = Eigen::Map<const Vector>(b.data(), b.size());
  layer.relu = relu;
  return layer;
}

NodeInputs NodeInputs::FromGraph(const HeteroGraph& graph) {
  NodeInputs in;
  for (int v = 0; v < graph.num_nodes(); ++v) {
    in.types.push_back(graph.TypeOf(v));
    in.local.push_back(graph.LocalIndex(v));
  }
  for (int t = 0; t < kNumNodeTypes; ++t) in.features[size_t(t)] = graph.features(NodeType(t));
  return in;
}

Matrix RgcnForward(const NodeInputs& inputs, const RgcnOperators& ops, const TensorMap& params,
                   const RgcnConfig& config, bool training, Rng* rng, RgcnCache* cache) {
  const int n = inputs.num_nodes();
  RgcnCache local;
  RgcnCache& c = cache ? *cache : local;

  // Per-type projection into a shared width.
  c.h0 = Matrix::Zero(n, config.projection);
  for (int t = 0; t < kNumNodeTypes; ++t) {
    const Matrix& x = inputs.features[size_t(t)];
    if (x.rows() == 0) continue;
    const Matrix& proj = Param(params, std::string("proj.") + kTypeSuffix[t]);
    if (proj.cols() != x.cols()) {
      Fail(ErrorCode::kDimensionMismatch, std::string("feature width of ") + kTypeSuffix[t] +
                                              " nodes is " + std::to_string(x.cols()) +
                                              ", projection expects " + std::to_string(proj.cols()));
    }
    Matrix projected = x * proj.transpose();
    for (int v = 0; v < n; ++v) {
      if (int(inputs.types[size_t(v)]) == t) c.h0.row(v) = projected.row(inputs.local[size_t(v)]);
    }
  }

  const bool drop = training && config.dropout > 0.0;
  if (drop && !rng) Fail(ErrorCode::kInternal, "dropout needs a generator");

  RgcnLayer l1 = LayerFromParams(params, 1, ops.num_relations(), true);
  c.h1 = LayerForward(ops, c.h0, l1, &c.pre1);
  c.mask1.resize(0, 0);
  if (drop) {
    c.mask1 = DropoutMask(c.h1.rows(), c.h1.cols(), config.dropout, *rng);
    c.h1 = c.h1.cwiseProduct(c.mask1);
  }
  RgcnLayer l2 = LayerFromParams(params, 2, ops.num_relations(), false);
  c.h2 = LayerForward(ops, c.h1, l2, &c.pre2);
  c.mask2.resize(0, 0);
  if (drop) {
    c.mask2 = DropoutMask(c.h2.rows(), c.h2.cols(), config.dropout, *rng);
    c.h2 = c.h2.cwiseProduct(c.mask2);
  }
  return c.h2;
}

std::array<Matrix, kNumNodeTypes> RgcnBackward(const NodeInputs& inputs, const RgcnOperators& ops,
                                               const TensorMap& params, const RgcnConfig& config,
                                               const RgcnCache& cache, const Matrix& d_final,
                                               TensorMap& grads) {
  const int nr = ops.num_relations();
  Matrix d2 = cache.mask2.size() ? Matrix(d_final.cwiseProduct(cache.mask2)) : d_final;
  RgcnLayer l2 = LayerFromParams(params, 2, nr, false);
  RgcnLayerGrads g2 = ZeroGrads(l2);
  Matrix d1 = LayerBackward(ops, cache.h1, l2, cache.pre2, d2, g2);
  if (cache.mask1.size()) d1 = d1.cwiseProduct(cache.mask1);
  RgcnLayer l1 = LayerFromParams(params, 1, nr, true);
  RgcnLayerGrads g1 = ZeroGrads(l1);
  Matrix d0 = LayerBackward(ops, cache.h0, l1, cache.pre1, d1, g1);

  for (auto [k, g] : {std::pair{1, &g1}, {2, &g2}}) {
    for (int r = 0; r < nr; ++r) Accumulate(grads, RelName(k, r), g->w[size_t(r)]);
    Accumulate(grads, "layer" + std::to_string(k) + ".W0", g->w0);
    Accumulate(grads, "layer" + std::to_string(k) + ".b", g->b);
  }

  std::array<Matrix, kNumNodeTypes> d_raw;
  for (int t = 0; t < kNumNodeTypes; ++t) {
    const Matrix& x = inputs.features[size_t(t)];
    const std::string name = std::string("proj.") + kTypeSuffix[t];
    const Matrix& proj = Param(params, name);
    Matrix d_proj_in = Matrix::Zero(x.rows(), config.projection);
    for (int v = 0; v < inputs.num_nodes(); ++v) {
      if (int(inputs.types[size_t(v)]) == t) d_proj_in.row(inputs.local[size_t(v)]) = d0.row(v);
    }
    Accumulate(grads, name, d_proj_in.transpose() * x);
    d_raw[size_t(t)] = d_proj_in * proj;
  }
  return d_raw;
}

}  // namespace legis
