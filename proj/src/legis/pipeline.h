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

// Command implementations behind the CLI: data preparation per Congress,
// run manifests and the run directory layout.
//
//   <out>/manifest.json   command, resolved config, input digests, seed,
//                         version, timestamps (written first, then updated)
//   <out>/config.toml     resolved config echo
//   <out>/summary.json    command summary
//   <out>/c<congress>/... per-Congress artifacts
//
// Every command returns its summary as a JSON string.

#ifndef LEGIS_PIPELINE_H_
#define LEGIS_PIPELINE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "legis/config.h"
#include "legis/corpus.h"
#include "legis/encoder.h"
#include "legis/graph.h"
#include "legis/recordparse.h"
#include "legis/trainer.h"

namespace legis {

const char* Version();

struct RunContext {
  Config config;
  std::string command;  // e.g. "train"
  std::string out_dir;
  bool resume = false;
};

// SHA-256 digests of every input file the config refers to (corpus files,
// resources, caches), keyed by path.
std::map<std::string, std::string> InputDigests(const Config& config);

// Throws DigestMismatch when <out>/manifest.json lists an input whose
// current digest differs, or Io when there is no manifest to resume from.
void VerifyManifest(const std::string& out_dir, const Config& config);

EncoderConfig EncoderConfigFrom(const Config& config);
std::unique_ptr<ChunkEmbedder> MakeBackend(const Config& config);

// Document embeddings for every bill or speech of the corpus, keyed by id.
// Speeches are citation-masked when a roster is given.
EmbeddingTable EncodeCorpus(const Corpus& corpus, DocKind kind, const Encoder& encoder,
                            const ChunkEmbedder& backend, const Roster* mask_roster);

// Everything one Congress needs for training and evaluation.
struct Prepared {
  int congress = 0;
  Corpus corpus;
  SplitAssignment split;
  EmbeddingTable bills;
  EmbeddingTable speeches;
  HeteroGraph graph;
  Encoder bill_encoder;
  Encoder speech_encoder;
  std::unique_ptr<EncoderInputs> encoder_inputs;  // when train_encoder is set
};

// Loads config "corpus", keeps config "congress" (0 = all), applies the
// cosponsor filter and the split, encodes (or reads the caches) and builds
// the graph.
std::vector<Prepared> PrepareAll(const Config& config, const GraphOptions& options = {});
Prepared PrepareCongress(const Corpus& corpus, int congress, const Config& config,
                         const GraphOptions& options = {});

// Commands.
std::string CorpusValidate(const std::string& path);
std::string CorpusStats(const std::string& path);
std::string CorpusSplit(const RunContext& ctx);
std::string CorpusSynth(const std::string& out_dir, const std::string& pattern, uint64_t seed,
                        int legislators, int bills, int speeches);
std::string ParseEditions(const std::string& in_dir, const std::string& roster_path,
                          const std::string& out_dir, const std::string& aliases_path);
std::string EncodeDocuments(const RunContext& ctx, const std::string& kind,
                            const std::string& cache_path);
std::string GraphBuild(const RunContext& ctx, const std::string& split);
std::string TrainRun(const RunContext& ctx);
std::string EvalBaseline(const RunContext& ctx, const std::string& name);
std::string EvalAblate(const RunContext& ctx);
// run_dir: a finished train run whose best checkpoints are reused; empty
// trains from scratch into ctx.out_dir.
std::string EvalRollcall(const RunContext& ctx, const std::string& run_dir);
std::string AnalyzeSimilarity(const RunContext& ctx, const std::string& run_dir);
std::string AnalyzeProject(const RunContext& ctx, const std::string& run_dir);

}  // namespace legis

#endif  // LEGIS_PIPELINE_H_
