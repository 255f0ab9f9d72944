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

#include "legis/config.h"

#include <cstdlib>
#include <sstream>

#include "legis/common.h"

namespace legis {
namespace {

struct Default {
  const char* key;
  const char* value;
};

// Registered keys and their defaults.
constexpr Default kDefaults[] = {
    // data
    {"corpus", ""},
    {"congress", "0"},
    {"min_cosponsors", "1"},
    {"split", "0.6,0.2,0.2"},
    {"aliases", ""},
    {"seed", "42"},
    {"jobs", "1"},
    // encoder
    {"backend", "hash"},
    {"external_embeddings", ""},
    {"bill_cache", ""},
    {"speech_cache", ""},
    {"encoder_params", ""},
    {"chunk_size", "512"},
    {"d_chunk", "768"},
    {"d_hidden", "384"},
    {"d_doc", "128"},
    {"mask_citations", "true"},
    {"train_encoder", "false"},
    // graph
    {"include_eval_speeches", "true"},
    {"symmetrize", "true"},
    // model
    {"hidden1", "128"},
    {"hidden2", "64"},
    {"dropout", "0.2"},
    // trainer
    {"learning_rate", "1e-4"},
    {"batch_size", "64"},
    {"max_epochs", "8"},
    {"weight_decay", "0.01"},
    {"beta1", "0.9"},
    {"beta2", "0.999"},
    {"epsilon", "1e-8"},
    {"patience", "2"},
    {"eval_every", "0.5"},
    {"lambda_cosp", "0.8"},
    {"lambda_auth", "0.1"},
    {"lambda_cit", "0.1"},
    {"auth_positive_rate", "0.5"},
    {"cit_positive_rate", "0.5"},
    // evaluation suite
    {"ideology_scores", ""},
    {"word_vectors", ""},
    {"rf_trees", "100"},
    {"baseline_epochs", "40"},
    {"baseline_learning_rate", "1e-2"},
    {"rollcall_epochs", "40"},
    {"rollcall_learning_rate", "1e-3"},
    {"rollcall_hidden", "64"},
    {"projection", "tsne"},
    {"tsne_perplexity", "30"},
    {"tsne_iterations", "750"},
};

std::string Unquote(const std::string& raw, const std::string& where) {
  std::string v = Trim(raw);
  if (!v.empty() && (v.front() == '"' || v.front() == '\'')) {
    size_t close = v.find(v.front(), 1);
    if (close == std::string::npos) Fail(ErrorCode::kInvalidArgument, where + ": unterminated string");
    std::string rest = Trim(v.substr(close + 1));
    if (!rest.empty() && rest[0] != '#') {
      Fail(ErrorCode::kInvalidArgument, where + ": unexpected text after string");
    }
    return v.substr(1, close - 1);
  }
  // Strip a trailing comment from bare values.
  size_t hash = v.find('#');
  if (hash != std::string::npos) v = Trim(v.substr(0, hash));
  return v;
}

}  // namespace

Config::Config() {
  for (const auto& d : kDefaults) values_.emplace(d.key, d.value);
}

Config Config::FromFile(const std::string& path) {
  Config c;
  c.MergeFile(path);
  return c;
}

void Config::MergeFile(const std::string& path) { MergeText(ReadFile(path), path); }

void Config::MergeText(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') Fail(ErrorCode::kInvalidArgument, where + ": malformed section");
      section = Trim(t.substr(1, t.size() - 2));
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) Fail(ErrorCode::kInvalidArgument, where + ": expected key = value");
    std::string key = Trim(t.substr(0, eq));
    // Sections are accepted for readability; keys are global.
    Set(key, Unquote(t.substr(eq + 1), where));
  }
}

void Config::ApplyEnvironment(const std::string& prefix) {
  for (auto& [key, value] : values_) {
    if (const char* env = std::getenv((prefix + ToUpper(key)).c_str())) value = env;
  }
}

void Config::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) Fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  it->second = value;
}

std::string Config::GetString(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) Fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  return it->second;
}

double Config::GetDouble(const std::string& key) const {
  std::string v = GetString(key);
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kInvalidArgument, "config key '" + key + "' is not a number: '" + v + "'");
}

static long GetIntImpl(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    long n = std::stol(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kInvalidArgument, "config key '" + key + "' is not an integer: '" + v + "'");
}

long Config::GetInt(const std::string& key) const { return GetIntImpl(key, GetString(key)); }

bool Config::GetBool(const std::string& key) const {
  std::string v = ToLower(GetString(key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  Fail(ErrorCode::kInvalidArgument, "config key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> Config::GetDoubleList(const std::string& key) const {
  std::vector<double> out;
  std::string v = GetString(key);
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(Trim(item)));
    } catch (const std::exception&) {
      Fail(ErrorCode::kInvalidArgument, "config key '" + key + "' has a non-numeric entry");
    }
  }
  return out;
}

std::string Config::Dump() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) out << key << " = \"" << value << "\"\n";
  return out.str();
}

}  // namespace legis
