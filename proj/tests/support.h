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

// Shared helpers for the test binaries: temporary directories, tiny
// hand-built corpora and numeric comparison.

#ifndef LEGIS_TESTS_SUPPORT_H_
#define LEGIS_TESTS_SUPPORT_H_

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <utility>

#include "legis/common.h"
#include "legis/corpus.h"
#include "legis/tensor_io.h"

namespace legis::testing {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "legis-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string operator/(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  std::string path_;
};

// |a - b| / max(|a|, |b|), with differences below `floor` treated as equal.
inline double RelativeError(double a, double b, double floor = 1e-9) {
  double diff = std::abs(a - b);
  if (diff <= floor) return 0.0;
  return diff / std::max(std::abs(a), std::abs(b));
}

inline double MaxRelativeError(const Matrix& a, const Matrix& b, double floor = 1e-9) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    worst = std::max(worst, RelativeError(a.data()[i], b.data()[i], floor));
  }
  return worst;
}

inline Legislator MakeLegislator(const std::string& id, const std::string& last, Party party,
                                 const std::string& state, int congress = 112) {
  Legislator l;
  l.bioguide_id = id;
  l.first_name = "Pat";
  l.last_name = last;
  l.gender = Gender::kFemale;
  l.age = 50;
  l.party = party;
  l.state = state;
  l.district = "1";
  l.congress = congress;
  return l;
}

inline Bill MakeBill(const std::string& id, const std::string& sponsor, Date intro,
                     const std::string& text = "a bill to do something useful", int congress = 112) {
  Bill b;
  b.bill_id = id;
  b.title = "Title of " + id;
  b.introduction_date = intro;
  b.text = text;
  b.topic = "general";
  b.sponsor_id = sponsor;
  b.congress = congress;
  return b;
}

// Twelve sentences, so the speech survives the length filter.
inline std::string SpeechText(const std::string& theme) {
  std::string out;
  for (int i = 0; i < 12; ++i) out += "We discuss the " + theme + " matter number " + std::to_string(i) + ". ";
  return out;
}

// Gaussian document embeddings for every bill and speech of a corpus.
inline std::pair<EmbeddingTable, EmbeddingTable> RandomTables(const Corpus& corpus, int width,
                                                              uint64_t seed) {
  Rng rng(seed);
  auto draw = [&] {
    Vector v(width);
    for (int k = 0; k < width; ++k) v[k] = rng.Normal();
    return v;
  };
  EmbeddingTable bills(width), speeches(width);
  for (const auto& b : corpus.bills) bills.Put(b.bill_id, draw());
  for (const auto& s : corpus.speeches) speeches.Put(s.speech_id, draw());
  return {std::move(bills), std::move(speeches)};
}

}  // namespace legis::testing

#endif  // LEGIS_TESTS_SUPPORT_H_
