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

// Long-document encoder. A document is cut into fixed-size word chunks, each
// chunk is embedded by a pluggable backend, a bidirectional LSTM reads the
// chunk sequence in both directions, and the two final hidden states are
// concatenated and mean-pooled down to the document width.
//
// Defaults: chunk_size 512 words, chunk width 768, hidden width 384 per
// direction, document width 128 (windows of 6 in the pooling step).

#ifndef LEGIS_ENCODER_H_
#define LEGIS_ENCODER_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "legis/common.h"
#include "legis/tensor_io.h"

namespace legis {

struct Chunk {
  std::vector<std::string> words;
  std::string doc_key;  // for backends that look up precomputed vectors
  size_t index = 0;
};

// Whitespace tokenization into consecutive chunks. Throws EmptyDocument.
std::vector<Chunk> ChunkDocument(std::string_view text, size_t chunk_size = 512,
                                 const std::string& doc_key = "");

class ChunkEmbedder {
 public:
  virtual ~ChunkEmbedder() = default;
  virtual int dim() const = 0;
  virtual Vector Embed(const Chunk& chunk) const = 0;
};

// Each word maps to a seeded standard-normal vector derived from its hash;
// a chunk is the mean of its word vectors. Needs no model weights.
class HashingEmbedder : public ChunkEmbedder {
 public:
  HashingEmbedder(int dim, uint64_t seed) : dim_(dim), seed_(seed) {}
  int dim() const override { return dim_; }
  Vector Embed(const Chunk& chunk) const override;
  Vector WordVector(std::string_view word) const;

 private:
  int dim_;
  uint64_t seed_;
};

// Precomputed chunk vectors from an embedding-cache file keyed
// "<doc_key>#<chunk index>", e.g. produced by an external language model.
class TableEmbedder : public ChunkEmbedder {
 public:
  explicit TableEmbedder(EmbeddingTable table) : table_(std::move(table)) {}
  int dim() const override { return table_.width(); }
  Vector Embed(const Chunk& chunk) const override;

 private:
  EmbeddingTable table_;
};

// Validates the backend's width and output. Throws BackendFailure.
Vector EmbedChunk(const Chunk& chunk, const ChunkEmbedder& backend, int expected_dim);

// One LSTM direction. Gate rows are stacked [input; forget; cell; output].
struct LstmParams {
  Matrix w;  // 4H x D
  Matrix u;  // 4H x H
  Vector b;  // 4H

  int hidden() const { return int(u.cols()); }
  int input() const { return int(w.cols()); }
  static LstmParams Zeros(int d_in, int d_hidden);
  // Uniform in +-1/sqrt(fan_in) per matrix.
  static LstmParams Random(int d_in, int d_hidden, Rng& rng);
};

struct AggregatorParams {
  LstmParams forward;
  LstmParams backward;

  static AggregatorParams Zeros(int d_in, int d_hidden);
  static AggregatorParams Random(int d_in, int d_hidden, Rng& rng);
  void AddScaled(const AggregatorParams& other, double scale);
};

struct AggregatorState {
  Vector forward_hidden;   // after reading chunks 1..T
  Vector backward_hidden;  // after reading chunks T..1
};

// Step-by-step activations of one direction, kept for backpropagation.
struct LstmTrace {
  std::vector<Vector> x, i, f, g, o, c, h;  // c[0], h[0] are the zero states
};

LstmTrace RunLstm(const std::vector<Vector>& inputs, const LstmParams& p);

// Adds dLoss/dparams into grads given dLoss/dh_T for the final hidden state.
void LstmBackward(const LstmTrace& trace, const LstmParams& p, const Vector& d_final_hidden,
                  LstmParams& grads);

AggregatorState Aggregate(const std::vector<Vector>& chunks, const AggregatorParams& params);

// Gradient of a loss on the pooled document vector with respect to the
// aggregator parameters (accumulated into grads).
void AggregateBackward(const std::vector<Vector>& chunks, const AggregatorParams& params,
                       const Vector& d_pooled, int d_doc, AggregatorParams& grads);

// Concatenates [forward; backward] and averages non-overlapping windows of
// width 2H / d_doc. Throws DimensionMismatch when 2H is not a multiple.
Vector Pool(const AggregatorState& state, int d_doc);
Vector PoolConcat(const Vector& concat, int d_doc);
// dLoss/dconcat from dLoss/dpooled.
Vector PoolBackward(const Vector& d_pooled, int concat_width);

enum class DocKind { kBill, kSpeech };
const char* DocKindName(DocKind kind);

struct EncoderConfig {
  size_t chunk_size = 512;
  int d_chunk = 768;
  int d_hidden = 384;
  int d_doc = 128;
};

// One trained instance per document kind.
struct Encoder {
  DocKind kind = DocKind::kBill;
  EncoderConfig config;
  AggregatorParams aggregator;

  static Encoder Create(DocKind kind, const EncoderConfig& config, uint64_t root_seed);

  // Chunk embeddings of a document through the backend.
  std::vector<Vector> EmbedChunks(std::string_view text, const std::string& doc_key,
                                  const ChunkEmbedder& backend) const;
  Vector Encode(std::string_view text, const std::string& doc_key,
                const ChunkEmbedder& backend) const;

  TensorMap ToTensors(const std::string& prefix) const;
  void FromTensors(const TensorMap& tensors, const std::string& prefix);
};

Vector EncodeDocument(std::string_view text, DocKind kind, const Encoder& encoder,
                      const ChunkEmbedder& backend);

}  // namespace legis

#endif  // LEGIS_ENCODER_H_
