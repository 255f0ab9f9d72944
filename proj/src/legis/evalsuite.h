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

// Comparison baselines for cosponsorship classification, the loss ablation
// harness and the roll-call transfer task.
//
//   B1 ideology     random forest on [score(l); score(sponsor)]
//   B2 metadata     random forest on [onehot(l); onehot(sponsor)]
//   B3 word-vectors affine head on averaged word vectors of the top-200
//                   unigrams, [l; b; sponsor]
//   B4 encoder      affine head on document embeddings, legislators as the
//                   mean of their speech embeddings, [l; b; sponsor]
//   B5 encoder+meta B4 plus the metadata one-hots of l and sponsor
//   B6 gcn          graph model with all relations folded into one, random
//                   node features, no speech nodes
//   B7 rgcn         graph model with random node features, no speech nodes
//
// All F1 values come from ComputeMetrics on the same split definitions.

#ifndef LEGIS_EVALSUITE_H_
#define LEGIS_EVALSUITE_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "legis/corpus.h"
#include "legis/forest.h"
#include "legis/graph.h"
#include "legis/mlp.h"
#include "legis/trainer.h"

namespace legis {

struct BaselineSpec {
  std::string id;          // "B1".."B7"
  std::string name;        // "ideology", ...
  std::string classifier;  // "random-forest", "feed-forward" or "graph"
};

const std::vector<BaselineSpec>& BaselineSpecs();
// Accepts the id or the name. Throws InvalidArgument.
const BaselineSpec& FindBaseline(const std::string& id_or_name);

// Whitespace-separated "key v1 v2 ..." rows. Throws MissingResource when the
// file does not exist.
std::unordered_map<std::string, Vector> LoadVectorFile(const std::string& path);

// Lower-cased alphanumeric tokens.
std::vector<std::string> Tokenize(std::string_view text);
bool IsStopWord(std::string_view token);

// The (up to) k distinct non-stop-word tokens of a document with the highest
// corpus frequency; ties broken alphabetically.
std::vector<std::string> TopUnigrams(std::string_view text,
                                     const std::unordered_map<std::string, size_t>& corpus_counts,
                                     size_t k = 200);

struct BaselineInputs {
  const Corpus* corpus = nullptr;
  const SplitAssignment* split = nullptr;
  const EmbeddingTable* bill_embeddings = nullptr;    // B4, B5
  const EmbeddingTable* speech_embeddings = nullptr;  // B4, B5
  std::string ideology_path;                          // B1
  std::string word_vectors_path;                      // B3
  ForestConfig forest;
  MlpConfig mlp;
  TrainConfig train;  // B6, B7
};

struct BaselineReport {
  std::string id;
  std::string name;
  BinaryMetrics validation;
  BinaryMetrics test;
  std::map<std::string, int> node_counts;  // graph baselines only
  std::vector<Prediction> test_predictions;
};

BaselineReport RunBaseline(const std::string& id_or_name, const BaselineInputs& inputs);

// Ablation over the auxiliary losses.
struct AblationConfig {
  std::string name;
  LossWeights weights;
};

// L_cosp only; without L_auth; without L_cit; full L_tot.
std::vector<AblationConfig> AblationConfigs(const LossWeights& full = {});

struct AblationTable {
  std::vector<std::string> configs;
  std::vector<int> congresses;
  std::vector<std::vector<double>> f1;  // [congress][config], test split

  std::vector<double> Average() const;
  // Header "congress,<config>...", one row per Congress, then "Avg".
  std::string Csv() const;
};

struct AblationInput {
  int congress = 0;
  const HeteroGraph* graph = nullptr;
  const Corpus* corpus = nullptr;
  const SplitAssignment* split = nullptr;
};

AblationTable RunAblation(const std::vector<AblationInput>& inputs, const TrainConfig& base);

// Roll-call transfer.
struct RollCallExample {
  int legislator = -1;  // graph node
  int bill = -1;
  int label = 1;        // 1 = yea
  Split split = Split::kTrain;
};

// One example per vote whose voter did not cosponsor the bill, split by the
// bill's introduction-date split. excluded receives the number of dropped
// cosponsored pairs.
std::vector<RollCallExample> BuildRollCallDataset(const Corpus& corpus, const HeteroGraph& graph,
                                                  const SplitAssignment& split,
                                                  size_t* excluded = nullptr);

// Exhaustive check that no (legislator, bill) pair is a cosponsorship.
// Throws LeakageDetected.
void AssertNoLeakage(const std::vector<RollCallExample>& dataset, const Corpus& corpus,
                     const HeteroGraph& graph);

struct RollCallReport {
  BinaryMetrics validation;
  BinaryMetrics test;
  BinaryMetrics majority_test;  // all yea
  size_t examples = 0;
  size_t excluded = 0;
  std::vector<Prediction> test_predictions;
};

// Trains the three-layer head on frozen representations.
RollCallReport TrainRollCall(const Matrix& representations, const HeteroGraph& graph,
                             const std::vector<RollCallExample>& dataset, const Corpus& corpus,
                             const MlpConfig& config);

}  // namespace legis

#endif  // LEGIS_EVALSUITE_H_
