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

// Heterogeneous graph over speeches (S), legislators (L) and bills (B).
//
//   R1 authorship             L -> S
//   R2 citation               L -> L   (directed)
//   R3 sponsorship            L -> B
//   R4 active cosponsorship   L -> B   (training split only)
//   R5 passive cosponsorship  L -> B   (training split only)
//
// For message passing R1, R3, R4 and R5 also get reverse copies with their
// own weights, so a relation index r in [0, 9) means: 0..4 the relations
// above, 5..8 the reverses of R1, R3, R4, R5.

#ifndef LEGIS_GRAPH_H_
#define LEGIS_GRAPH_H_

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "legis/corpus.h"
#include "legis/tensor_io.h"

namespace legis {

enum class NodeType { kSpeech = 0, kLegislator = 1, kBill = 2 };
inline constexpr int kNumNodeTypes = 3;
const char* NodeTypeName(NodeType t);  // "S", "L", "B"
NodeType ParseNodeType(std::string_view name);

enum class Relation { kAuthorship = 0, kCitation, kSponsorship, kActive, kPassive };
inline constexpr int kNumRelations = 5;
const char* RelationName(Relation r);  // "R1".."R5"
Relation ParseRelation(std::string_view name);

struct NodeRef {
  NodeType type = NodeType::kLegislator;
  std::string key;

  bool operator==(const NodeRef&) const = default;
};

struct TypedEdge {
  Relation relation = Relation::kAuthorship;
  int source = 0;  // global node index
  int target = 0;

  bool operator==(const TypedEdge&) const = default;
};

// Edges of a multi-relational graph as seen by one convolution: for each
// relation, (source, target) pairs where target aggregates from source.
struct RelationalAdjacency {
  int num_nodes = 0;
  std::vector<std::vector<std::pair<int, int>>> edges;  // per relation

  int num_relations() const { return int(edges.size()); }
  // Removes repeated pairs within each relation and checks node bounds.
  void Normalize();
};

// One-hot metadata encoding of legislators: party, state, gender, district
// bucket (state + district) and age decile. Vocabularies come from the
// roster; each vocabulary block has one extra slot for unseen values.
class LegislatorFeaturizer {
 public:
  explicit LegislatorFeaturizer(const std::vector<Legislator>& roster);

  int width() const { return width_; }
  Vector Encode(const Legislator& legislator) const;
  int AgeDecile(int age) const;

  // Block offsets in Encode's output, in the order listed above.
  const std::array<int, 6>& offsets() const { return offsets_; }

 private:
  std::map<std::string, int> states_;
  std::map<std::string, int> districts_;
  std::vector<int> sorted_ages_;
  std::array<int, 6> offsets_{};
  int width_ = 0;
};

struct GraphOptions {
  bool include_eval_speeches = true;  // speeches dated after the training period
  bool speech_nodes = true;           // false drops S and R1 entirely
  bool random_features = false;       // fixed Gaussian features instead of text/metadata
  int random_width = 128;
  uint64_t seed = 0;                  // for random features
};

class HeteroGraph {
 public:
  // Global node indices follow insertion order.
  int AddNode(NodeType type, const std::string& key);
  int Find(NodeType type, const std::string& key) const;  // -1 when absent
  int Get(NodeType type, const std::string& key) const;   // throws NotFound
  NodeRef Ref(int node) const;
  NodeType TypeOf(int node) const { return types_[size_t(node)]; }
  int num_nodes() const { return int(types_.size()); }
  int CountOf(NodeType type) const;
  std::vector<int> NodesOf(NodeType type) const;

  // Throws InvalidArgument when the endpoint types violate the relation
  // table. Duplicate triples are ignored. Returns true when added.
  bool AddEdge(Relation relation, int source, int target);
  const std::vector<TypedEdge>& edges() const { return edges_; }
  size_t CountEdges(Relation relation) const;

  // Per-type feature matrices, one row per node of that type in NodesOf
  // order.
  Matrix& features(NodeType type) { return features_[size_t(type)]; }
  const Matrix& features(NodeType type) const { return features_[size_t(type)]; }
  int FeatureWidth(NodeType type) const { return int(features_[size_t(type)].cols()); }
  // Row of a node inside its type's feature matrix.
  int LocalIndex(int node) const { return local_[size_t(node)]; }

  // Message-passing view: 9 relations with reverses, or 5 without.
  RelationalAdjacency Adjacency(bool symmetrize = true) const;
  // All edges folded into one symmetric relation (plain GCN).
  RelationalAdjacency CollapsedAdjacency() const;

  // Writes nodes-{S,L,B}.bin and edges.jsonl into dir.
  void Save(const std::string& dir) const;
  static HeteroGraph Load(const std::string& dir);

 private:
  std::vector<NodeType> types_;
  std::vector<std::string> keys_;
  std::vector<int> local_;
  std::array<std::unordered_map<std::string, int>, kNumNodeTypes> index_;
  std::array<std::vector<int>, kNumNodeTypes> by_type_;
  std::vector<TypedEdge> edges_;
  std::unordered_set<uint64_t> edge_set_;
  std::array<Matrix, kNumNodeTypes> features_;
};

inline constexpr int kNumMessageRelations = 9;
// Relation index used for the reverse copy of r, or -1 for citations.
int ReverseRelationIndex(Relation r);

// Builds the graph of one corpus. Bill and speech features come from the
// embedding tables keyed by bill_id and speech_id. Only training-split
// cosponsorships become R4/R5 edges. Throws MissingEmbedding.
HeteroGraph BuildGraph(const Corpus& corpus, const SplitAssignment& split,
                       const EmbeddingTable& bill_embeddings,
                       const EmbeddingTable& speech_embeddings, const GraphOptions& options = {});

// Empty when no validation/test pair appears as an R4/R5 edge; otherwise
// the offending "bill_id/legislator_id" pairs.
std::vector<std::string> FindLeakedPairs(const HeteroGraph& graph, const Corpus& corpus,
                                         const SplitAssignment& split);

}  // namespace legis

#endif  // LEGIS_GRAPH_H_
