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

#include "legis/common.h"

#include <openssl/evp.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace legis {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kInvalidTimeline: return "InvalidTimeline";
    case ErrorCode::kEmptyCongress: return "EmptyCongress";
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kAmbiguous: return "Ambiguous";
    case ErrorCode::kTargetNotCited: return "TargetNotCited";
    case ErrorCode::kBackendFailure: return "BackendFailure";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kNoSpeechAvailable: return "NoSpeechAvailable";
    case ErrorCode::kNoCitationAvailable: return "NoCitationAvailable";
    case ErrorCode::kMissingResource: return "MissingResource";
    case ErrorCode::kLeakageDetected: return "LeakageDetected";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDigestMismatch: return "DigestMismatch";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// ---------------------------------------------------------------------------
// Date

Date::Date(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year(year), std::chrono::month(month),
                                  std::chrono::day(day)};
  if (!ymd.ok()) {
    Fail(ErrorCode::kInvalidArgument, "invalid calendar date " + std::to_string(year) +
                                          "-" + std::to_string(month) + "-" +
                                          std::to_string(day));
  }
  days_ = std::chrono::sys_days(ymd);
}

Date Date::Parse(std::string_view text) {
  auto bad = [&] {
    Fail(ErrorCode::kInvalidArgument, "malformed ISO-8601 date '" + std::string(text) + "'");
  };
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') bad();
  for (size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) bad();
  }
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') bad();
  int year = std::stoi(std::string(text.substr(0, 4)));
  unsigned month = std::stoul(std::string(text.substr(5, 2)));
  unsigned day = std::stoul(std::string(text.substr(8, 2)));
  return Date(year, month, day);
}

std::string Date::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

int Date::year() const { return int(std::chrono::year_month_day(days_).year()); }
unsigned Date::month() const { return unsigned(std::chrono::year_month_day(days_).month()); }
unsigned Date::day() const { return unsigned(std::chrono::year_month_day(days_).day()); }

int Date::CongressNumber() const {
  // Terms start on January 3rd of odd years.
  int y = year();
  if (month() == 1 && day() < 3) --y;
  if (y % 2 == 0) --y;
  return (y - 1789) / 2 + 1;
}

// ---------------------------------------------------------------------------
// Rng

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t basis) {
  uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rng::Rng(uint64_t seed) : engine_(seed) {}

Rng Rng::Substream(uint64_t root_seed, std::string_view name) {
  uint64_t state = root_seed ^ Fnv1a64(name);
  return Rng(SplitMix64(state));
}

uint64_t Rng::NextU64() { return engine_(); }

double Rng::Uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double Rng::Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = Uniform();
  double u2 = Uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

size_t Rng::Below(size_t n) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "Rng::Below(0)");
  // Rejection sampling keeps the draw unbiased.
  uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return size_t(x % n);
}

// ---------------------------------------------------------------------------
// Strings and files

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string ToUpper(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = char(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out.write(contents.data(), std::streamsize(contents.size()));
  if (!out) Fail(ErrorCode::kIo, "short write to " + path);
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string FileDigest(const std::string& path) {
  std::string bytes = ReadFile(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    Fail(ErrorCode::kInternal, "sha256 failed for " + path);
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

}  // namespace legis
