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

#ifndef LEGIS_COMMON_H_
#define LEGIS_COMMON_H_

#include <chrono>
#include <random>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace legis {

// Every failure raised inside the library carries one of these codes. The C
// API maps them one-to-one onto lg_status values.
enum class ErrorCode {
  kInvalidArgument,
  kSchema,
  kDanglingReference,
  kInvalidTimeline,
  kEmptyCongress,
  kEmptyDocument,
  kEmptySplit,
  kNotFound,
  kAmbiguous,
  kTargetNotCited,
  kBackendFailure,
  kDimensionMismatch,
  kMissingEmbedding,
  kNoSpeechAvailable,
  kNoCitationAvailable,
  kMissingResource,
  kLeakageDetected,
  kDivergence,
  kIo,
  kDigestMismatch,
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

// Calendar date; ordering is chronological.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Accepts "YYYY-MM-DD", optionally followed by a time part.
  static Date Parse(std::string_view text);

  std::string ToString() const;
  int year() const;
  unsigned month() const;
  unsigned day() const;
  int64_t ordinal() const { return days_.time_since_epoch().count(); }
  Date AddDays(int n) const { return Date(days_ + std::chrono::days(n)); }

  // The Congress in session on this date (the 112th began 2011-01-03).
  int CongressNumber() const;

  auto operator<=>(const Date&) const = default;

 private:
  std::chrono::sys_days days_{};
};

// Deterministic generator. Every consumer derives its own named substream
// from the root seed so that adding a consumer never perturbs the others.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  static Rng Substream(uint64_t root_seed, std::string_view name);

  uint64_t NextU64();
  double Uniform();                      // [0, 1)
  double Uniform(double lo, double hi);  // [lo, hi)
  double Normal();
  size_t Below(size_t n);  // uniform in [0, n)
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[Below(i)]);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

uint64_t Fnv1a64(std::string_view bytes, uint64_t basis = 1469598103934665603ULL);
uint64_t SplitMix64(uint64_t& state);

std::vector<std::string> SplitWhitespace(std::string_view text);
std::string ToUpper(std::string_view text);
std::string ToLower(std::string_view text);
std::string Trim(std::string_view text);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);
std::vector<std::string> ReadLines(const std::string& path);

// Hex SHA-256 of a file's bytes.
std::string FileDigest(const std::string& path);

}  // namespace legis

#endif  // LEGIS_COMMON_H_
