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

#include "legis/encoder.h"

#include <cmath>
#include <unordered_map>

namespace legis {
namespace {

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

Matrix UniformMatrix(int rows, int cols, double bound, Rng& rng) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.Uniform(-bound, bound);
  }
  return m;
}

}  // namespace

std::vector<Chunk> ChunkDocument(std::string_view text, size_t chunk_size,
                                 const std::string& doc_key) {
  if (chunk_size < 1) Fail(ErrorCode::kInvalidArgument, "chunk_size must be >= 1");
  std::vector<std::string> words = SplitWhitespace(text);
  if (words.empty()) Fail(ErrorCode::kEmptyDocument, "document '" + doc_key + "' has no words");
  std::vector<Chunk> chunks;
  for (size_t start = 0; start < words.size(); start += chunk_size) {
    Chunk c;
    size_t end = std::min(words.size(), start + chunk_size);
    c.words.assign(std::make_move_iterator(words.begin() + long(start)),
                   std::make_move_iterator(words.begin() + long(end)));
    c.doc_key = doc_key;
    c.index = chunks.size();
    chunks.push_back(std::move(c));
  }
  return chunks;
}

// ---------------------------------------------------------------------------
// Backends

Vector HashingEmbedder::WordVector(std::string_view word) const {
  uint64_t state = Fnv1a64(word) ^ seed_;
  Vector v(dim_);
  for (int i = 0; i < dim_; i += 2) {
    // Box-Muller over two 53-bit uniforms from the word's own stream.
    double u1 = double((SplitMix64(state) >> 11) + 1) * 0x1.0p-53;
    double u2 = double(SplitMix64(state) >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    v[i] = r * std::cos(2.0 * M_PI * u2);
    if (i + 1 < dim_) v[i + 1] = r * std::sin(2.0 * M_PI * u2);
  }
  return v;
}

Vector HashingEmbedder::Embed(const Chunk& chunk) const {
  Vector sum = Vector::Zero(dim_);
  if (chunk.words.empty()) return sum;
  std::unordered_map<std::string_view, Vector> cache;
  for (const auto& w : chunk.words) {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, WordVector(w)).first;
    sum += it->second;
  }
  return sum / double(chunk.words.size());
}

Vector TableEmbedder::Embed(const Chunk& chunk) const {
  std::string key = chunk.doc_key + "#" + std::to_string(chunk.index);
  if (!table_.Contains(key)) Fail(ErrorCode::kBackendFailure, "no external embedding for " + key);
  return table_.Get(key);
}

Vector EmbedChunk(const Chunk& chunk, const ChunkEmbedder& backend, int expected_dim) {
  if (backend.dim() != expected_dim) {
    Fail(ErrorCode::kBackendFailure, "backend produces width " + std::to_string(backend.dim()) +
                                         ", encoder expects " + std::to_string(expected_dim));
  }
  Vector v;
  try {
    v = backend.Embed(chunk);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBackendFailure) throw;
    Fail(ErrorCode::kBackendFailure, e.what());
  }
  if (v.size() != expected_dim) {
    Fail(ErrorCode::kBackendFailure, "backend returned width " + std::to_string(v.size()));
  }
  if (!v.allFinite()) Fail(ErrorCode::kBackendFailure, "backend returned non-finite values");
  return v;
}

// ---------------------------------------------------------------------------
// LSTM

LstmParams LstmParams::Zeros(int d_in, int d_hidden) {
  return {Matrix::Zero(4 * d_hidden, d_in), Matrix::Zero(4 * d_hidden, d_hidden),
          Vector::Zero(4 * d_hidden)};
}

LstmParams LstmParams::Random(int d_in, int d_hidden, Rng& rng) {
  LstmParams p;
  p.w = UniformMatrix(4 * d_hidden, d_in, 1.0 / std::sqrt(double(d_in)), rng);
  p.u = UniformMatrix(4 * d_hidden, d_hidden, 1.0 / std::sqrt(double(d_hidden)), rng);
  p.b = UniformMatrix(4 * d_hidden, 1, 1.0 / std::sqrt(double(d_hidden)), rng);
  return p;
}

AggregatorParams AggregatorParams::Zeros(int d_in, int d_hidden) {
  return {LstmParams::Zeros(d_in, d_hidden), LstmParams::Zeros(d_in, d_hidden)};
}

AggregatorParams AggregatorParams::Random(int d_in, int d_hidden, Rng& rng) {
  AggregatorParams p;
  p.forward = LstmParams::Random(d_in, d_hidden, rng);
  p.backward = LstmParams::Random(d_in, d_hidden, rng);
  return p;
}

void AggregatorParams::AddScaled(const AggregatorParams& other, double scale) {
  for (auto [mine, theirs] : {std::pair{&forward, &other.forward}, {&backward, &other.backward}}) {
    mine->w += scale * theirs->w;
    mine->u += scale * theirs->u;
    mine->b += scale * theirs->b;
  }
}

LstmTrace RunLstm(const std::vector<Vector>& inputs, const LstmParams& p) {
  const int h = p.hidden();
  LstmTrace t;
  t.c.push_back(Vector::Zero(h));
  t.h.push_back(Vector::Zero(h));
  for (const Vector& x : inputs) {
    if (x.size() != p.input()) {
      Fail(ErrorCode::kDimensionMismatch, "chunk width " + std::to_string(x.size()) +
                                              " != LSTM input " + std::to_string(p.input()));
    }
    Vector z = p.w * x + p.u * t.h.back() + p.b;
    Vector i = z.segment(0, h).unaryExpr(&Sigmoid);
    Vector f = z.segment(h, h).unaryExpr(&Sigmoid);
    Vector g = z.segment(2 * h, h).array().tanh();
    Vector o = z.segment(3 * h, h).unaryExpr(&Sigmoid);
    Vector c = f.cwiseProduct(t.c.back()) + i.cwiseProduct(g);
    Vector hh = o.cwiseProduct(c.array().tanh().matrix());
    t.x.push_back(x);
    t.i.push_back(std::move(i));
    t.f.push_back(std::move(f));
    t.g.push_back(std::move(g));
    t.o.push_back(std::move(o));
    t.c.push_back(std::move(c));
    t.h.push_back(std::move(hh));
  }
  return t;
}

void LstmBackward(const LstmTrace& trace, const LstmParams& p, const Vector& d_final_hidden,
                  LstmParams& grads) {
  const int h = p.hidden();
  Vector dh = d_final_hidden;
  Vector dc = Vector::Zero(h);
  Vector dz(4 * h);
  for (size_t s = trace.x.size(); s-- > 0;) {
    const Vector& i = trace.i[s];
    const Vector& f = trace.f[s];
    const Vector& g = trace.g[s];
    const Vector& o = trace.o[s];
    const Vector& c_prev = trace.c[s];
    const Vector& h_prev = trace.h[s];
    Vector tc = trace.c[s + 1].array().tanh();
    Vector d_o = dh.cwiseProduct(tc);
    dc += dh.cwiseProduct(o).cwiseProduct((1.0 - tc.array().square()).matrix());
    Vector d_i = dc.cwiseProduct(g);
    Vector d_g = dc.cwiseProduct(i);
    Vector d_f = dc.cwiseProduct(c_prev);
    dz.segment(0, h) = d_i.array() * i.array() * (1.0 - i.array());
    dz.segment(h, h) = d_f.array() * f.array() * (1.0 - f.array());
    dz.segment(2 * h, h) = d_g.array() * (1.0 - g.array().square());
    dz.segment(3 * h, h) = d_o.array() * o.array() * (1.0 - o.array());
    grads.w.noalias() += dz * trace.x[s].transpose();
    grads.u.noalias() += dz * h_prev.transpose();
    grads.b += dz;
    dh = p.u.transpose() * dz;
    dc = dc.cwiseProduct(f);
  }
}

AggregatorState Aggregate(const std::vector<Vector>& chunks, const AggregatorParams& params) {
  if (chunks.empty()) Fail(ErrorCode::kEmptyDocument, "aggregate needs at least one chunk");
  std::vector<Vector> reversed(chunks.rbegin(), chunks.rend());
  AggregatorState s;
  s.forward_hidden = RunLstm(chunks, params.forward).h.back();
  s.backward_hidden = RunLstm(reversed, params.backward).h.back();
  return s;
}

void AggregateBackward(const std::vector<Vector>& chunks, const AggregatorParams& params,
                       const Vector& d_pooled, int d_doc, AggregatorParams& grads) {
  if (d_pooled.size() != d_doc) Fail(ErrorCode::kDimensionMismatch, "pooled gradient width");
  const int h = params.forward.hidden();
  Vector d_concat = PoolBackward(d_pooled, 2 * h);
  std::vector<Vector> reversed(chunks.rbegin(), chunks.rend());
  LstmBackward(RunLstm(chunks, params.forward), params.forward, d_concat.head(h), grads.forward);
  LstmBackward(RunLstm(reversed, params.backward), params.backward, d_concat.tail(h),
               grads.backward);
}

// ---------------------------------------------------------------------------
// Pooling

Vector PoolConcat(const Vector& concat, int d_doc) {
  if (d_doc <= 0 || concat.size() % d_doc != 0) {
    Fail(ErrorCode::kDimensionMismatch, "cannot pool width " + std::to_string(concat.size()) +
                                            " to " + std::to_string(d_doc));
  }
  const int w = int(concat.size()) / d_doc;
  Vector out(d_doc);
  for (int k = 0; k < d_doc; ++k) out[k] = concat.segment(k * w, w).mean();
  return out;
}

Vector Pool(const AggregatorState& state, int d_doc) {
  Vector concat(state.forward_hidden.size() + state.backward_hidden.size());
  concat << state.forward_hidden, state.backward_hidden;
  return PoolConcat(concat, d_doc);
}

Vector PoolBackward(const Vector& d_pooled, int concat_width) {
  const int d_doc = int(d_pooled.size());
  if (d_doc == 0 || concat_width % d_doc != 0) {
    Fail(ErrorCode::kDimensionMismatch, "pool backward width mismatch");
  }
  const int w = concat_width / d_doc;
  Vector d(concat_width);
  for (int k = 0; k < d_doc; ++k) d.segment(k * w, w).setConstant(d_pooled[k] / double(w));
  return d;
}

// ---------------------------------------------------------------------------
// Encoder

const char* DocKindName(DocKind kind) { return kind == DocKind::kBill ? "bill" : "speech"; }

Encoder Encoder::Create(DocKind kind, const EncoderConfig& config, uint64_t root_seed) {
  if ((2 * config.d_hidden) % config.d_doc != 0) {
    Fail(ErrorCode::kDimensionMismatch, "2 * d_hidden must be a multiple of d_doc");
  }
  Rng rng = Rng::Substream(root_seed, std::string("encoder.") + DocKindName(kind));
  Encoder e;
  e.kind = kind;
  e.config = config;
  e.aggregator = AggregatorParams::Random(config.d_chunk, config.d_hidden, rng);
  return e;
}

std::vector<Vector> Encoder::EmbedChunks(std::string_view text, const std::string& doc_key,
                                         const ChunkEmbedder& backend) const {
  std::vector<Vector> out;
  for (const Chunk& c : ChunkDocument(text, config.chunk_size, doc_key)) {
    out.push_back(EmbedChunk(c, backend, config.d_chunk));
  }
  return out;
}

Vector Encoder::Encode(std::string_view text, const std::string& doc_key,
                       const ChunkEmbedder& backend) const {
  return Pool(Aggregate(EmbedChunks(text, doc_key, backend), aggregator), config.d_doc);
}

TensorMap Encoder::ToTensors(const std::string& prefix) const {
  TensorMap t;
  for (auto [name, p] : {std::pair{"fwd", &aggregator.forward}, {"bwd", &aggregator.backward}}) {
    std::string base = prefix + "." + name + ".";
    t[base + "W"] = p->w;
    t[base + "U"] = p->u;
    t[base + "b"] = p->b;
  }
  return t;
}

void Encoder::FromTensors(const TensorMap& tensors, const std::string& prefix) {
  for (auto [name, p] : {std::pair{"fwd", &aggregator.forward}, {"bwd", &aggregator.backward}}) {
    std::string base = prefix + "." + name + ".";
    for (auto [suffix, target] : {std::pair<const char*, Matrix*>{"W", &p->w}, {"U", &p->u}}) {
      auto it = tensors.find(base + suffix);
      if (it == tensors.end()) Fail(ErrorCode::kSchema, "checkpoint lacks " + base + suffix);
      if (it->second.rows() != target->rows() || it->second.cols() != target->cols()) {
        Fail(ErrorCode::kDimensionMismatch, "checkpoint tensor " + base + suffix + " has wrong shape");
      }
      *target = it->second;
    }
    auto it = tensors.find(base + "b");
    if (it == tensors.end()) Fail(ErrorCode::kSchema, "checkpoint lacks " + base + "b");
    if (it->second.size() != p->b.size()) {
      Fail(ErrorCode::kDimensionMismatch, "checkpoint tensor " + base + "b has wrong shape");
    }
    p->b = Eigen::Map<const Vector>(it->second.data(), it->second.size());
  }
}

Vector EncodeDocument(std::string_view text, DocKind kind, const Encoder& encoder,
                      const ChunkEmbedder& backend) {
  if (kind != encoder.kind) {
    Fail(ErrorCode::kInvalidArgument, std::string("a ") + DocKindName(encoder.kind) +
                                          " encoder cannot encode a " + DocKindName(kind));
  }
  return encoder.Encode(text, "", backend);
}

}  // namespace legis
