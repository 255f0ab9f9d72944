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

#include "legis/tensor_io.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "legis/common.h"

namespace legis {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

constexpr char kCacheMagic[4] = {'L', 'G', 'E', 'C'};
constexpr char kTensorMagic[4] = {'L', 'G', 'T', 'N'};
constexpr uint32_t kVersion = 1;

template <typename T>
void Append(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  Reader(std::string bytes, std::string path) : bytes_(std::move(bytes)), path_(std::move(path)) {}

  bool AtEnd() const { return pos_ == bytes_.size(); }

  template <typename T>
  T Take() {
    Need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string TakeString(size_t n) {
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void Magic(const char (&expected)[4]) {
    if (TakeString(4) != std::string(expected, 4)) {
      Fail(ErrorCode::kSchema, path_ + ": bad magic");
    }
    uint32_t version = Take<uint32_t>();
    if (version != kVersion) {
      Fail(ErrorCode::kSchema, path_ + ": unsupported version " + std::to_string(version));
    }
  }

 private:
  void Need(size_t n) {
    if (pos_ + n > bytes_.size()) Fail(ErrorCode::kSchema, path_ + ": truncated file");
  }

  std::string bytes_;
  std::string path_;
  size_t pos_ = 0;
};

}  // namespace

void EmbeddingTable::Put(const std::string& key, const Vector& values) {
  if (values.size() != width_) {
    Fail(ErrorCode::kDimensionMismatch, "embedding for '" + key + "' has width " +
                                            std::to_string(values.size()) + ", table expects " +
                                            std::to_string(width_));
  }
  auto it = index_.find(key);
  size_t row;
  if (it == index_.end()) {
    row = keys_.size();
    index_.emplace(key, row);
    keys_.push_back(key);
    data_.resize(data_.size() + size_t(width_));
  } else {
    row = it->second;
  }
  for (int i = 0; i < width_; ++i) data_[row * size_t(width_) + size_t(i)] = float(values[i]);
}

Vector EmbeddingTable::Get(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) Fail(ErrorCode::kMissingEmbedding, "no embedding for '" + key + "'");
  Vector v(width_);
  for (int i = 0; i < width_; ++i) v[i] = data_[it->second * size_t(width_) + size_t(i)];
  return v;
}

void EmbeddingTable::Save(const std::string& path) const {
  std::string out;
  out.append(kCacheMagic, 4);
  Append<uint32_t>(out, kVersion);
  Append<uint32_t>(out, uint32_t(width_));
  for (size_t r = 0; r < keys_.size(); ++r) {
    Append<uint32_t>(out, uint32_t(keys_[r].size()));
    out += keys_[r];
    out.append(reinterpret_cast<const char*>(data_.data() + r * size_t(width_)),
               size_t(width_) * sizeof(float));
  }
  WriteFile(path, out);
}

EmbeddingTable EmbeddingTable::Load(const std::string& path) {
  Reader in(ReadFile(path), path);
  in.Magic(kCacheMagic);
  EmbeddingTable table(int(in.Take<uint32_t>()));
  while (!in.AtEnd()) {
    uint32_t len = in.Take<uint32_t>();
    std::string key = in.TakeString(len);
    Vector v(table.width_);
    for (int i = 0; i < table.width_; ++i) v[i] = in.Take<float>();
    table.Put(key, v);
  }
  return table;
}

void SaveTensors(const std::string& path, const TensorMap& tensors) {
  std::string out;
  out.append(kTensorMagic, 4);
  Append<uint32_t>(out, kVersion);
  Append<uint32_t>(out, uint32_t(tensors.size()));
  for (const auto& [name, m] : tensors) {
    Append<uint32_t>(out, uint32_t(name.size()));
    out += name;
    Append<uint32_t>(out, uint32_t(m.rows()));
    Append<uint32_t>(out, uint32_t(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) Append<double>(out, m(r, c));
    }
  }
  WriteFile(path, out);
}

TensorMap LoadTensors(const std::string& path) {
  Reader in(ReadFile(path), path);
  in.Magic(kTensorMagic);
  uint32_t count = in.Take<uint32_t>();
  TensorMap tensors;
  for (uint32_t t = 0; t < count; ++t) {
    std::string name = in.TakeString(in.Take<uint32_t>());
    uint32_t rows = in.Take<uint32_t>();
    uint32_t cols = in.Take<uint32_t>();
    Matrix m(rows, cols);
    for (uint32_t r = 0; r < rows; ++r) {
      for (uint32_t c = 0; c < cols; ++c) m(r, c) = in.Take<double>();
    }
    tensors.emplace(std::move(name), std::move(m));
  }
  if (!in.AtEnd()) Fail(ErrorCode::kSchema, path + ": trailing bytes");
  return tensors;
}

}  // namespace legis
