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

// Little-endian binary files shared by the embedding cache, graph node
// matrices and model checkpoints.
//
// Keyed-row file (embedding cache, nodes-*.bin):
//   char[4] magic "LGEC" | u32 version (1) | u32 width
//   repeated until EOF: u32 key_len | key bytes | width x f32
//
// Named-tensor file (checkpoints): same framing, one record per tensor:
//   char[4] magic "LGTN" | u32 version (1) | u32 tensor_count
//   repeated: u32 name_len | name bytes | u32 rows | u32 cols | rows*cols x f64
//   (row-major). Parameters are stored at full precision so a reloaded model
//   evaluates bit-identically.

#ifndef LEGIS_TENSOR_IO_H_
#define LEGIS_TENSOR_IO_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace legis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int width) : width_(width) {}

  int width() const { return width_; }
  size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

  // Values are stored as f32, mirroring the on-disk layout.
  void Put(const std::string& key, const Vector& values);
  bool Contains(const std::string& key) const { return index_.count(key) > 0; }
  Vector Get(const std::string& key) const;

  void Save(const std::string& path) const;
  static EmbeddingTable Load(const std::string& path);

 private:
  int width_ = 0;
  std::vector<std::string> keys_;
  std::vector<float> data_;
  std::unordered_map<std::string, size_t> index_;
};

using TensorMap = std::map<std::string, Matrix>;

void SaveTensors(const std::string& path, const TensorMap& tensors);
TensorMap LoadTensors(const std::string& path);

}  // namespace legis

#endif  // LEGIS_TENSOR_IO_H_
