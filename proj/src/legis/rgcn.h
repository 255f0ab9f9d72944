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

// Relational graph convolution. Node features are rows of a matrix; one
// layer computes
//
//   e_v' = act( sum_r sum_{j in N_r(v)} W_r e_j / |N_r(v)|  +  W_0 e_v  +  b )
//
// where relations with an empty neighborhood contribute nothing. The model
// projects each node type to a common width, then applies two layers
// (rectifier, then linear) with dropout on both outputs while training.
//
// Parameter names (also the checkpoint tensor names):
//   proj.S proj.L proj.B             d_in x raw width, no bias
//   layer{k}.rel{r}.W  layer{k}.W0   d_out x d_in
//   layer{k}.b                       d_out x 1

#ifndef LEGIS_RGCN_H_
#define LEGIS_RGCN_H_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "legis/common.h"
#include "legis/graph.h"
#include "legis/tensor_io.h"

namespace legis {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Row-normalized adjacency per relation: (A_r H)_v is the mean of the
// features of v's relation-r neighbors, or zero when there are none.
struct RgcnOperators {
  int num_nodes = 0;
  std::vector<SparseMatrix> mean;
  std::vector<SparseMatrix> mean_transposed;

  int num_relations() const { return int(mean.size()); }
};

RgcnOperators BuildOperators(const RelationalAdjacency& adjacency);

struct RgcnLayer {
  std::vector<Matrix> w;  // one per relation, d_out x d_in
  Matrix w0;              // d_out x d_in
  Vector b;               // d_out
  bool relu = true;

  int d_in() const { return int(w0.cols()); }
  int d_out() const { return int(w0.rows()); }
};

struct RgcnLayerGrads {
  std::vector<Matrix> w;
  Matrix w0;
  Vector b;
};

// h is num_nodes x d_in. Returns num_nodes x d_out. When pre is given it
// receives the pre-activation values. Throws DimensionMismatch.
Matrix LayerForward(const RgcnOperators& ops, const Matrix& h, const RgcnLayer& layer,
                    Matrix* pre = nullptr);

// Accumulates parameter gradients into grads (which must be shaped like the
// layer) and returns dLoss/dh, given dLoss/d(output) and the forward
// pre-activations.
Matrix LayerBackward(const RgcnOperators& ops, const Matrix& h, const RgcnLayer& layer,
                     const Matrix& pre, const Matrix& d_out, RgcnLayerGrads& grads);

RgcnLayerGrads ZeroGrads(const RgcnLayer& layer);

struct RgcnConfig {
  int num_relations = kNumMessageRelations;
  std::array<int, kNumNodeTypes> input_widths{128, 0, 128};  // S, L, B raw widths
  int projection = 128;  // layer-1 input width
  int hidden1 = 128;
  int hidden2 = 64;
  double dropout = 0.2;
};

// Glorot-uniform weights, zero biases.
TensorMap InitRgcnParams(const RgcnConfig& config, uint64_t seed);

RgcnLayer LayerFromParams(const TensorMap& params, int k, int num_relations, bool relu);

// Node features grouped by type, as stored in HeteroGraph.
struct NodeInputs {
  std::vector<NodeType> types;  // per global node
  std::vector<int> local;       // row inside the type's matrix
  std::array<Matrix, kNumNodeTypes> features;

  static NodeInputs FromGraph(const HeteroGraph& graph);
  int num_nodes() const { return int(types.size()); }
};

struct RgcnCache {
  Matrix h0;         // projected inputs
  Matrix pre1, h1;   // layer-1 pre-activation and (dropped-out) output
  Matrix mask1;      // dropout scale per entry; empty when not training
  Matrix pre2, h2;   // layer-2 pre-activation and output
  Matrix mask2;
};

// Final representations (num_nodes x hidden2). rng is used for dropout when
// training and may be null otherwise.
Matrix RgcnForward(const NodeInputs& inputs, const RgcnOperators& ops, const TensorMap& params,
                   const RgcnConfig& config, bool training, Rng* rng, RgcnCache* cache = nullptr);

// Accumulates parameter gradients into grads (missing entries are created)
// and returns dLoss/d(raw input features) per node type, for callers that
// also train the inputs.
std::array<Matrix, kNumNodeTypes> RgcnBackward(const NodeInputs& inputs, const RgcnOperators& ops,
                                               const TensorMap& params, const RgcnConfig& config,
                                               const RgcnCache& cache, const Matrix& d_final,
                                               TensorMap& grads);

}  // namespace legis

#endif  // LEGIS_RGCN_H_
