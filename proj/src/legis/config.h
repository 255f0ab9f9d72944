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

#ifndef LEGIS_CONFIG_H_
#define LEGIS_CONFIG_H_

#include <map>
#include <string>
#include <vector>

namespace legis {

// Flat key/value run configuration. Files use a TOML-like subset:
//
//   # comment
//   learning_rate = 1e-4
//   corpus = "data/112"
//   [trainer]            # optional; keys below become "trainer.<key>"
//
// Every key has a registered default; setting an unknown key is a usage
// error so that typos never silently fall back to defaults.
class Config {
 public:
  Config();

  static Config FromFile(const std::string& path);
  void MergeFile(const std::string& path);
  void MergeText(const std::string& text, const std::string& origin);

  // Applies PREFIX<KEY> environment variables, e.g. LEGISRGCN_LEARNING_RATE.
  void ApplyEnvironment(const std::string& prefix = "LEGISRGCN_");

  void Set(const std::string& key, const std::string& value);
  bool IsKnown(const std::string& key) const { return values_.count(key) > 0; }

  std::string GetString(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  long GetInt(const std::string& key) const;
  bool GetBool(const std::string& key) const;
  std::vector<double> GetDoubleList(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  // Renders every resolved key, sorted, in the same syntax FromFile reads.
  std::string Dump() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace legis

#endif  // LEGIS_CONFIG_H_
