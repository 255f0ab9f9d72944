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

// Command-line front end. Links only the C API.
//
// Config precedence, lowest first: registered defaults, --config file,
// LEGISRGCN_* environment variables, --set KEY=VALUE, dedicated flags.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "legisrgcn/legisrgcn.h"

namespace {

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::string in;
  std::string out;
  std::string seed;
  std::string jobs;
  // subcommand specifics
  std::string fractions;
  std::string min_cosponsors;
  std::string pattern = "planted";
  int legislators = 30, bills = 100, speeches = 200;
  std::string roster, aliases;
  std::string kind, backend, cache;
  std::string split = "train";
  std::string name;
  std::string run;
  std::string method;
  bool resume = false;
};

class Failure {
 public:
  explicit Failure(lg_status s) : status(s) {}
  lg_status status;
};

void Check(lg_status s) {
  if (s != LG_OK) throw Failure(s);
}

struct ConfigHandle {
  lg_config* c = nullptr;
  ~ConfigHandle() { lg_config_free(c); }
};

void SetIf(lg_config* c, const char* key, const std::string& value) {
  if (!value.empty()) Check(lg_config_set(c, key, value.c_str()));
}

void BuildConfig(const Options& o, ConfigHandle& h) {
  Check(lg_config_new(&h.c));
  if (!o.config_file.empty()) Check(lg_config_load(h.c, o.config_file.c_str()));
  Check(lg_config_apply_env(h.c, "LEGISRGCN_"));
  for (const auto& kv : o.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected KEY=VALUE, got '" + kv + "'");
    Check(lg_config_set(h.c, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  SetIf(h.c, "corpus", o.in);
  SetIf(h.c, "seed", o.seed);
  SetIf(h.c, "jobs", o.jobs);
  SetIf(h.c, "split", o.fractions);
  SetIf(h.c, "min_cosponsors", o.min_cosponsors);
  SetIf(h.c, "backend", o.backend);
  SetIf(h.c, "projection", o.method);
}

void Emit(char* summary) {
  if (summary) std::printf("%s\n", summary);
  lg_string_free(summary);
}

void AddCommon(CLI::App* app, Options& o, bool with_in = true, bool with_out = true) {
  app->add_option("--config,-c", o.config_file, "Config file (key = value)")->check(CLI::ExistingFile);
  app->add_option("--set", o.sets, "Override a config key, KEY=VALUE (repeatable)");
  app->add_option("--seed", o.seed, "Root seed");
  app->add_option("--jobs", o.jobs, "Worker cap (runs are single-threaded)");
  if (with_in) app->add_option("--in", o.in, "Corpus directory or manifest.json");
  if (with_out) app->add_option("--out,-o", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational graph models of legislators, bills and floor speeches"};
  app.set_version_flag("--version", std::string(lg_version()));
  app.require_subcommand(1);
  Options o;
  std::string action;

  auto* corpus = app.add_subcommand("corpus", "Validate, summarize, split or synthesize corpora");
  corpus->require_subcommand(1);
  auto* validate = corpus->add_subcommand("validate", "Check schema and cross references");
  validate->add_option("path", o.in, "Corpus directory or manifest.json");
  validate->add_option("--in", o.in, "Corpus directory or manifest.json");
  auto* stats = corpus->add_subcommand("stats", "Per-Congress record counts");
  stats->add_option("path", o.in, "Corpus directory or manifest.json");
  stats->add_option("--in", o.in, "Corpus directory or manifest.json");
  auto* split = corpus->add_subcommand("split", "Chronological train/validation/test split");
  AddCommon(split, o);
  split->add_option("--fractions", o.fractions, "Train,validation,test fractions");
  split->add_option("--min-cosponsors", o.min_cosponsors, "Keep bills with at least N signatures");
  auto* synth = corpus->add_subcommand("synth", "Write a synthetic corpus with a planted pattern");
  synth->add_option("--out,-o", o.out, "Output directory")->required();
  synth->add_option("--pattern", o.pattern, "planted or party")->check(CLI::IsMember({"planted", "party"}));
  synth->add_option("--seed", o.seed, "Seed");
  synth->add_option("--legislators", o.legislators, "Legislator count");
  synth->add_option("--bills", o.bills, "Bill count");
  synth->add_option("--speeches", o.speeches, "Speech count");

  auto* parse = app.add_subcommand("parse", "Transcript parsing");
  parse->require_subcommand(1);
  auto* editions = parse->add_subcommand("editions", "Segment daily editions into speeches and citations");
  editions->add_option("--in", o.in, "Directory of CREC-YYYY-MM-DD.txt files")->required();
  editions->add_option("--roster", o.roster, "legislators.jsonl")->required()->check(CLI::ExistingFile);
  editions->add_option("--out,-o", o.out, "Output directory")->required();
  editions->add_option("--aliases", o.aliases, "Alias table (JSON object)")->check(CLI::ExistingFile);

  auto* encode = app.add_subcommand("encode", "Document embeddings into a cache file");
  AddCommon(encode, o, true, false);
  encode->add_option("--kind", o.kind, "bill or speech")->required()->check(CLI::IsMember({"bill", "speech"}));
  encode->add_option("--backend", o.backend, "hash or external")->check(CLI::IsMember({"hash", "external"}));
  encode->add_option("--cache", o.cache, "Output cache file")->required();

  auto* graph = app.add_subcommand("graph", "Heterogeneous graph construction");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "Build and save the graph of each Congress");
  AddCommon(build, o);
  build->add_option("--split", o.split, "Split whose labels become edges")->check(CLI::IsMember({"train"}));

  auto* train = app.add_subcommand("train", "Train the graph model");
  AddCommon(train, o);
  train->add_flag("--resume", o.resume, "Verify input digests and continue an interrupted run");

  auto* eval = app.add_subcommand("eval", "Baselines, ablation and roll-call transfer");
  eval->require_subcommand(1);
  auto* baseline = eval->add_subcommand("baseline", "Run one comparison baseline");
  AddCommon(baseline, o);
  baseline->add_option("--name", o.name, "B1..B7 or its name")->required();
  auto* ablate = eval->add_subcommand("ablate", "Auxiliary-loss ablation table");
  AddCommon(ablate, o);
  auto* rollcall = eval->add_subcommand("rollcall", "Roll-call vote prediction on frozen representations");
  AddCommon(rollcall, o);
  rollcall->add_option("--run", o.run, "Finished train run to reuse")->check(CLI::ExistingDirectory);

  auto* analyze = app.add_subcommand("analyze", "Representation analyses");
  analyze->require_subcommand(1);
  auto* similarity = analyze->add_subcommand("similarity", "Cosine similarity to sponsors and bills");
  AddCommon(similarity, o);
  similarity->add_option("--run", o.run, "Finished train run to reuse")->check(CLI::ExistingDirectory);
  auto* project = analyze->add_subcommand("project", "2D projection of legislators");
  AddCommon(project, o);
  project->add_option("--run", o.run, "Finished train run to reuse")->check(CLI::ExistingDirectory);
  project->add_option("--method", o.method, "tsne or pca")->check(CLI::IsMember({"tsne", "pca"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  char* summary = nullptr;
  try {
    const char* out = o.out.c_str();
    const char* run = o.run.empty() ? nullptr : o.run.c_str();
    if (*validate || *stats) {
      if (o.in.empty()) throw CLI::ValidationError("path", "a corpus path is required");
      Check(*validate ? lg_corpus_validate(o.in.c_str(), &summary) : lg_corpus_stats(o.in.c_str(), &summary));
    } else if (*synth) {
      uint64_t seed = o.seed.empty() ? 7 : std::strtoull(o.seed.c_str(), nullptr, 10);
      Check(lg_corpus_synth(out, o.pattern.c_str(), seed, o.legislators, o.bills, o.speeches, &summary));
    } else if (*editions) {
      Check(lg_parse_editions(o.in.c_str(), o.roster.c_str(), out,
                              o.aliases.empty() ? nullptr : o.aliases.c_str(), &summary));
    } else {
      ConfigHandle h;
      BuildConfig(o, h);
      if (*split) Check(lg_corpus_split(h.c, out, &summary));
      else if (*encode) Check(lg_encode(h.c, o.kind.c_str(), o.cache.c_str(), &summary));
      else if (*build) Check(lg_graph_build(h.c, o.split.c_str(), out, &summary));
      else if (*train) Check(lg_train(h.c, o.out.empty() ? "run" : out, o.resume ? 1 : 0, &summary));
      else if (*baseline) Check(lg_eval_baseline(h.c, o.name.c_str(), o.out.empty() ? "eval" : out, &summary));
      else if (*ablate) Check(lg_eval_ablate(h.c, o.out.empty() ? "eval" : out, &summary));
      else if (*rollcall) Check(lg_eval_rollcall(h.c, run, o.out.empty() ? "eval" : out, &summary));
      else if (*similarity) Check(lg_analyze_similarity(h.c, run, o.out.empty() ? "analysis" : out, &summary));
      else if (*project) Check(lg_analyze_project(h.c, run, o.out.empty() ? "analysis" : out, &summary));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error [%s]: %s\n", lg_status_name(f.status), lg_last_error());
    return lg_status_exit_code(f.status);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error [usage]: %s\n", e.what());
    return 2;
  }
  Emit(summary);
  return 0;
}
