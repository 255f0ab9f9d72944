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

// Exercises the shared library through its C interface only.

#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "legisrgcn/legisrgcn.h"

namespace {

namespace fs = std::filesystem;

class Scratch {
 public:
  Scratch() {
    std::string tmpl = (fs::temp_directory_path() / "legis-capi-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string operator/(const std::string& name) const { return (fs::path(path_) / name).string(); }

 private:
  std::string path_;
};

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out = s ? s : "";
  lg_string_free(s);
  return out;
}

struct ConfigHandle {
  lg_config* ptr = nullptr;
  ConfigHandle() { REQUIRE(lg_config_new(&ptr) == LG_OK); }
  ~ConfigHandle() { lg_config_free(ptr); }
  void Set(const char* key, const std::string& value) { REQUIRE(lg_config_set(ptr, key, value.c_str()) == LG_OK); }
};

void SmallModel(ConfigHandle& cfg) {
  cfg.Set("d_chunk", "32");
  cfg.Set("d_hidden", "16");
  cfg.Set("d_doc", "8");
  cfg.Set("hidden1", "16");
  cfg.Set("hidden2", "8");
  cfg.Set("learning_rate", "1e-3");
  cfg.Set("max_epochs", "2");
}

TEST_CASE("version and status tables") {
  CHECK(std::string(lg_version()) == "0.1.0");
  CHECK(std::string(lg_status_name(LG_OK)) == "ok");
  CHECK(std::string(lg_status_name(LG_ERR_DIGEST_MISMATCH)) == "DigestMismatch");
  CHECK(lg_status_exit_code(LG_OK) == 0);
  CHECK(lg_status_exit_code(LG_ERR_INVALID_ARGUMENT) == 2);
  CHECK(lg_status_exit_code(LG_ERR_SCHEMA) == 3);
  CHECK(lg_status_exit_code(LG_ERR_DIGEST_MISMATCH) == 3);
  CHECK(lg_status_exit_code(LG_ERR_DIVERGENCE) == 4);
  CHECK(lg_status_exit_code(LG_ERR_INTERNAL) == 4);
  lg_string_free(nullptr);
}

TEST_CASE("configuration handles") {
  ConfigHandle cfg;
  char* value = nullptr;
  REQUIRE(lg_config_get(cfg.ptr, "learning_rate", &value) == LG_OK);
  CHECK(Take(value) == "1e-4");
  CHECK(lg_config_set(cfg.ptr, "no_such_key", "1") == LG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(lg_last_error()).find("no_such_key") != std::string::npos);
  CHECK(lg_config_set(nullptr, "seed", "1") == LG_ERR_INVALID_ARGUMENT);
  CHECK(lg_config_get(cfg.ptr, "seed", nullptr) == LG_ERR_INVALID_ARGUMENT);

  Scratch dir;
  {
    FILE* f = std::fopen((dir / "c.toml").c_str(), "w");
    std::fputs("seed = 9\n", f);
    std::fclose(f);
  }
  REQUIRE(lg_config_load(cfg.ptr, (dir / "c.toml").c_str()) == LG_OK);
  REQUIRE(lg_config_get(cfg.ptr, "seed", &value) == LG_OK);
  CHECK(Take(value) == "9");
  CHECK(lg_config_load(cfg.ptr, (dir / "missing.toml").c_str()) != LG_OK);

  setenv("LGTEST_SEED", "11", 1);
  REQUIRE(lg_config_apply_env(cfg.ptr, "LGTEST_") == LG_OK);
  REQUIRE(lg_config_get(cfg.ptr, "seed", &value) == LG_OK);
  CHECK(Take(value) == "11");
  unsetenv("LGTEST_SEED");

  char* dump = nullptr;
  REQUIRE(lg_config_dump(cfg.ptr, &dump) == LG_OK);
  CHECK(Take(dump).find("seed = \"11\"") != std::string::npos);
}

TEST_CASE("corpus handles") {
  lg_corpus* corpus = nullptr;
  REQUIRE(lg_corpus_load(LEGIS_FIXTURES "/tiny", &corpus) == LG_OK);
  size_t n = 0;
  REQUIRE(lg_corpus_count(corpus, "legislators", &n) == LG_OK);
  CHECK(n == 2);
  REQUIRE(lg_corpus_count(corpus, "cosponsorships", &n) == LG_OK);
  CHECK(n == 1);
  REQUIRE(lg_corpus_count(corpus, "congresses", &n) == LG_OK);
  CHECK(n == 1);
  CHECK(lg_corpus_count(corpus, "planets", &n) == LG_ERR_INVALID_ARGUMENT);
  lg_corpus_free(corpus);
  lg_corpus_free(nullptr);

  corpus = nullptr;
  lg_status s = lg_corpus_load(LEGIS_FIXTURES "/does-not-exist", &corpus);
  CHECK(s != LG_OK);
  CHECK(corpus == nullptr);
  CHECK(std::string(lg_last_error()).size() > 0);
}

TEST_CASE("synthesize, validate, train, resume and analyze through the C interface") {
  Scratch dir;
  char* summary = nullptr;
  REQUIRE(lg_corpus_synth((dir / "data").c_str(), "planted", 7, 16, 40, 60, &summary) == LG_OK);
  Take(summary);
  REQUIRE(lg_corpus_validate((dir / "data").c_str(), &summary) == LG_OK);
  auto v = nlohmann::json::parse(Take(summary));
  CHECK(v.dump().find("40") != std::string::npos);

  ConfigHandle cfg;
  cfg.Set("corpus", dir / "data");
  SmallModel(cfg);
  REQUIRE(lg_train(cfg.ptr, (dir / "run").c_str(), 0, &summary) == LG_OK);
  Take(summary);
  CHECK(fs::exists(dir / "run/manifest.json"));
  CHECK(fs::exists(dir / "run/history.csv"));
  CHECK(fs::exists(dir / "run/c112/checkpoint-best.bin"));

  REQUIRE(lg_train(cfg.ptr, (dir / "run").c_str(), 1, &summary) == LG_OK);
  Take(summary);

  REQUIRE(lg_analyze_similarity(cfg.ptr, (dir / "run").c_str(), (dir / "an").c_str(), &summary) == LG_OK);
  Take(summary);
  CHECK(fs::exists(dir / "an/c112/similarity.csv"));
  CHECK(fs::exists(dir / "an/similarity.json"));

  // A changed input is refused on resume.
  {
    FILE* f = std::fopen((dir / "data/bills.jsonl").c_str(), "a");
    std::fputs("\n", f);
    std::fclose(f);
  }
  summary = nullptr;
  CHECK(lg_train(cfg.ptr, (dir / "run").c_str(), 1, &summary) == LG_ERR_DIGEST_MISMATCH);
  CHECK(summary == nullptr);
}

TEST_CASE("invalid command arguments") {
  char* summary = nullptr;
  CHECK(lg_corpus_synth(nullptr, "planted", 1, 10, 10, 10, &summary) == LG_ERR_INVALID_ARGUMENT);
  Scratch dir;
  CHECK(lg_corpus_synth((dir / "x").c_str(), "chaos", 1, 10, 10, 10, &summary) == LG_ERR_INVALID_ARGUMENT);
  ConfigHandle cfg;
  CHECK(lg_eval_baseline(cfg.ptr, "B9", (dir / "e").c_str(), &summary) == LG_ERR_INVALID_ARGUMENT);
  CHECK(lg_graph_build(cfg.ptr, "test", (dir / "g").c_str(), &summary) == LG_ERR_INVALID_ARGUMENT);
}

}  // namespace
