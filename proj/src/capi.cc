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

#include "legisrgcn/legisrgcn.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <new>
#include <string>

#include "legis/common.h"
#include "legis/config.h"
#include "legis/corpus.h"
#include "legis/pipeline.h"

struct lg_config {
  legis::Config config;
};

struct lg_corpus {
  std::map<int, legis::Corpus> set;
};

namespace {

thread_local std::string last_error;

lg_status ToStatus(legis::ErrorCode code) {
  if (code == legis::ErrorCode::kInternal) return LG_ERR_INTERNAL;
  return static_cast<lg_status>(static_cast<int>(code) + 1);
}

template <typename Fn>
lg_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return LG_OK;
  } catch (const legis::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return LG_ERR_INTERNAL;
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string Str(const char* s) { return s ? s : ""; }

void Require(bool ok, const char* what) {
  if (!ok) legis::Fail(legis::ErrorCode::kInvalidArgument, what);
}

// Shared wrapper for the commands that take a config and return a summary.
template <typename Fn>
lg_status RunCommand(const lg_config* config, const char* command, const char* out_dir,
                     char** summary, Fn&& fn) {
  return Guard([&] {
    Require(config != nullptr && summary != nullptr, "config and summary must not be null");
    legis::RunContext ctx;
    ctx.config = config->config;
    ctx.command = command;
    ctx.out_dir = Str(out_dir);
    *summary = Dup(fn(ctx));
  });
}

}  // namespace

extern "C" {

const char* lg_version(void) { return legis::Version(); }
const char* lg_last_error(void) { return last_error.c_str(); }

const char* lg_status_name(lg_status status) {
  if (status == LG_OK) return "ok";
  if (status == LG_ERR_INTERNAL) return legis::ErrorCodeName(legis::ErrorCode::kInternal);
  int code = static_cast<int>(status) - 1;
  if (code < 0 || code >= static_cast<int>(legis::ErrorCode::kInternal)) return "unknown";
  return legis::ErrorCodeName(static_cast<legis::ErrorCode>(code));
}

int lg_status_exit_code(lg_status status) {
  switch (status) {
    case LG_OK:
      return 0;
    case LG_ERR_INVALID_ARGUMENT:
      return 2;
    case LG_ERR_DIVERGENCE:
    case LG_ERR_INTERNAL:
      return 4;
    default:
      return static_cast<int>(status) > 0 && static_cast<int>(status) <= LG_ERR_DIGEST_MISMATCH ? 3 : 4;
  }
}

void lg_string_free(char* s) { std::free(s); }

lg_status lg_config_new(lg_config** out) {
  return Guard([&] {
    Require(out != nullptr, "out must not be null");
    *out = new lg_config();
  });
}

void lg_config_free(lg_config* config) { delete config; }

lg_status lg_config_load(lg_config* config, const char* path) {
  return Guard([&] {
    Require(config && path, "config and path must not be null");
    config->config.MergeFile(path);
  });
}

lg_status lg_config_apply_env(lg_config* config, const char* prefix) {
  return Guard([&] {
    Require(config != nullptr, "config must not be null");
    config->config.ApplyEnvironment(prefix ? prefix : "LEGISRGCN_");
  });
}

lg_status lg_config_set(lg_config* config, const char* key, const char* value) {
  return Guard([&] {
    Require(config && key && value, "config, key and value must not be null");
    config->config.Set(key, value);
  });
}

lg_status lg_config_get(const lg_config* config, const char* key, char** value) {
  return Guard([&] {
    Require(config && key && value, "config, key and value must not be null");
    *value = Dup(config->config.GetString(key));
  });
}

lg_status lg_config_dump(const lg_config* config, char** text) {
  return Guard([&] {
    Require(config && text, "config and text must not be null");
    *text = Dup(config->config.Dump());
  });
}

lg_status lg_corpus_load(const char* path, lg_corpus** out) {
  return Guard([&] {
    Require(path && out, "path and out must not be null");
    auto c = std::make_unique<lg_corpus>();
    c->set = legis::LoadCorpusSet(path);
    *out = c.release();
  });
}

void lg_corpus_free(lg_corpus* corpus) { delete corpus; }

lg_status lg_corpus_count(const lg_corpus* corpus, const char* what, size_t* count) {
  return Guard([&] {
    Require(corpus && what && count, "corpus, what and count must not be null");
    std::string w = what;
    size_t n = 0;
    if (w == "congresses") {
      n = corpus->set.size();
    } else {
      for (const auto& [congress, c] : corpus->set) {
        if (w == "legislators") n += c.legislators.size();
        else if (w == "bills") n += c.bills.size();
        else if (w == "speeches") n += c.speeches.size();
        else if (w == "cosponsorships") n += c.cosponsorships.size();
        else if (w == "votes") n += c.votes.size();
        else legis::Fail(legis::ErrorCode::kInvalidArgument, "unknown record kind '" + w + "'");
      }
    }
    *count = n;
  });
}

lg_status lg_corpus_validate(const char* path, char** summary) {
  return Guard([&] {
    Require(path && summary, "path and summary must not be null");
    *summary = Dup(legis::CorpusValidate(path));
  });
}

lg_status lg_corpus_stats(const char* path, char** summary) {
  return Guard([&] {
    Require(path && summary, "path and summary must not be null");
    *summary = Dup(legis::CorpusStats(path));
  });
}

lg_status lg_corpus_split(const lg_config* config, const char* out_dir, char** summary) {
  return RunCommand(config, "corpus split", out_dir, summary,
                    [](const legis::RunContext& ctx) { return legis::CorpusSplit(ctx); });
}

lg_status lg_corpus_synth(const char* out_dir, const char* pattern, uint64_t seed, int legislators,
                          int bills, int speeches, char** summary) {
  return Guard([&] {
    Require(out_dir && pattern && summary, "out_dir, pattern and summary must not be null");
    *summary = Dup(legis::CorpusSynth(out_dir, pattern, seed, legislators, bills, speeches));
  });
}

lg_status lg_parse_editions(const char* in_dir, const char* roster_path, const char* out_dir,
                            const char* aliases_path, char** summary) {
  return Guard([&] {
    Require(in_dir && roster_path && out_dir && summary, "paths and summary must not be null");
    *summary = Dup(legis::ParseEditions(in_dir, roster_path, out_dir, Str(aliases_path)));
  });
}

lg_status lg_encode(const lg_config* config, const char* kind, const char* cache_path, char** summary) {
  return RunCommand(config, "encode", nullptr, summary, [&](const legis::RunContext& ctx) {
    return legis::EncodeDocuments(ctx, Str(kind), Str(cache_path));
  });
}

lg_status lg_graph_build(const lg_config* config, const char* split, const char* out_dir,
                         char** summary) {
  return RunCommand(config, "graph build", out_dir, summary, [&](const legis::RunContext& ctx) {
    return legis::GraphBuild(ctx, split ? split : "train");
  });
}

lg_status lg_train(const lg_config* config, const char* out_dir, int resume, char** summary) {
  return RunCommand(config, "train", out_dir, summary, [&](legis::RunContext ctx) {
    ctx.resume = resume != 0;
    return legis::TrainRun(ctx);
  });
}

lg_status lg_eval_baseline(const lg_config* config, const char* name, const char* out_dir,
                           char** summary) {
  return RunCommand(config, "eval baseline", out_dir, summary, [&](const legis::RunContext& ctx) {
    return legis::EvalBaseline(ctx, Str(name));
  });
}

lg_status lg_eval_ablate(const lg_config* config, const char* out_dir, char** summary) {
  return RunCommand(config, "eval ablate", out_dir, summary,
                    [](const legis::RunContext& ctx) { return legis::EvalAblate(ctx); });
}

lg_status lg_eval_rollcall(const lg_config* config, const char* run_dir, const char* out_dir,
                           char** summary) {
  return RunCommand(config, "eval rollcall", out_dir, summary, [&](const legis::RunContext& ctx) {
    return legis::EvalRollcall(ctx, Str(run_dir));
  });
}

lg_status lg_analyze_similarity(const lg_config* config, const char* run_dir, const char* out_dir,
                                char** summary) {
  return RunCommand(config, "analyze similarity", out_dir, summary, [&](const legis::RunContext& ctx) {
    return legis::AnalyzeSimilarity(ctx, Str(run_dir));
  });
}

lg_status lg_analyze_project(const lg_config* config, const char* run_dir, const char* out_dir,
                             char** summary) {
  return RunCommand(config, "analyze project", out_dir, summary, [&](const legis::RunContext& ctx) {
    return legis::AnalyzeProject(ctx, Str(run_dir));
  });
}

}  // extern "C"
