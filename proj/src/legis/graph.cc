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

#include "legis/graph.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"

namespace legis {

using nlohmann::json;

const char* NodeTypeName(NodeType t) {
  switch (t) {
    case NodeType::kSpeech: return "S";
    case NodeType::kLegislator: return "L";
    case NodeType::kBill: return "B";
  }
  return "?";
}

NodeType ParseNodeType(std::string_view name) {
  if (name == "S") return NodeType::kSpeech;
  if (name == "L") return NodeType::kLegislator;
  if (name == "B") return NodeType::kBill;
  Fail(ErrorCode::kSchema, "unknown node type '" + std::string(name) + "'");
}

const char* RelationName(Relation r) {
  static const char* kNames[] = {"R1", "R2", "R3", "R4", "R5"};
  return kNames[int(r)];
}

Relation ParseRelation(std::string_view name) {
  for (int r = 0; r < kNumRelations; ++r) {
    if (name == RelationName(Relation(r))) return Relation(r);
  }
  Fail(ErrorCode::kSchema, "unknown relation '" + std::string(name) + "'");
}

int ReverseRelationIndex(Relation r) {
  switch (r) {
    case Relation::kAuthorship: return 5;
    case Relation::kCitation: return -1;
    case Relation::kSponsorship: return 6;
    case Relation::kActive: return 7;
    case Relation::kPassive: return 8;
  }
  return -1;
}

namespace {

// Endpoint types per relation: (source, target).
std::pair<NodeType, NodeType> Endpoints(Relation r) {
  switch (r) {
    case Relation::kAuthorship: return {NodeType::kLegislator, NodeType::kSpeech};
    case Relation::kCitation: return {NodeType::kLegislator, NodeType::kLegislator};
    default: return {NodeType::kLegislator, NodeType::kBill};
  }
}

uint64_t EdgeKey(int relation, int source, int target) {
  return (uint64_t(relation) << 58) | (uint64_t(uint32_t(source)) << 29) | uint64_t(uint32_t(target));
}

Vector RoundToFloat(const Vector& v) {
  return v.cast<float>().cast<double>();
}

}  // namespace

void RelationalAdjacency::Normalize() {
  for (auto& list : edges) {
    for (auto [s, t] : list) {
      if (s < 0 || t < 0 || s >= num_nodes || t >= num_nodes) {
        Fail(ErrorCode::kInvalidArgument, "edge endpoint outside the graph");
      }
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

// ---------------------------------------------------------------------------
// Legislator features

LegislatorFeaturizer::LegislatorFeaturizer(const std::vector<Legislator>& roster) {
  for (const auto& l : roster) {
    states_.emplace(l.state, 0);
    districts_.emplace(l.state + "-" + l.district, 0);
    sorted_ages_.push_back(l.age);
  }
  int i = 0;
  for (auto& [k, v] : states_) v = i++;
  i = 0;
  for (auto& [k, v] : districts_) v = i++;
  std::sort(sorted_ages_.begin(), sorted_ages_.end());
  // party(3) | state(+1) | gender(3) | district(+1) | age decile(10)
  offsets_[0] = 0;
  offsets_[1] = offsets_[0] + 3;
  offsets_[2] = offsets_[1] + int(states_.size()) + 1;
  offsets_[3] = offsets_[2] + 3;
  offsets_[4] = offsets_[3] + int(districts_.size()) + 1;
  offsets_[5] = offsets_[4] + 10;
  width_ = offsets_[5];
}

int LegislatorFeaturizer::AgeDecile(int age) const {
  if (sorted_ages_.empty()) return 0;
  // Share of the roster strictly younger, in tenths.
  size_t below = size_t(std::lower_bound(sorted_ages_.begin(), sorted_ages_.end(), age) -
                        sorted_ages_.begin());
  return std::min(9, int(10 * below / sorted_ages_.size()));
}

Vector LegislatorFeaturizer::Encode(const Legislator& l) const {
  Vector v = Vector::Zero(width_);
  v[offsets_[0] + int(l.party)] = 1.0;
  auto s = states_.find(l.state);
  v[offsets_[1] + (s == states_.end() ? int(states_.size()) : s->second)] = 1.0;
  v[offsets_[2] + int(l.gender)] = 1.0;
  auto d = districts_.find(l.state + "-" + l.district);
  v[offsets_[3] + (d == districts_.end() ? int(districts_.size()) : d->second)] = 1.0;
  v[offsets_[4] + AgeDecile(l.age)] = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// HeteroGraph

int HeteroGraph::AddNode(NodeType type, const std::string& key) {
  auto& idx = index_[size_t(type)];
  auto it = idx.find(key);
  if (it != idx.end()) return it->second;
  int node = int(types_.size());
  types_.push_back(type);
  keys_.push_back(key);
  local_.push_back(int(by_type_[size_t(type)].size()));
  by_type_[size_t(type)].push_back(node);
  idx.emplace(key, node);
  return node;
}

int HeteroGraph::Find(NodeType type, const std::string& key) const {
  const auto& idx = index_[size_t(type)];
  auto it = idx.find(key);
  return it == idx.end() ? -1 : it->second;
}

int HeteroGraph::Get(NodeType type, const std::string& key) const {
  int n = Find(type, key);
  if (n < 0) Fail(ErrorCode::kNotFound, std::string("no ") + NodeTypeName(type) + " node '" + key + "'");
  return n;
}

NodeRef HeteroGraph::Ref(int node) const { return {types_[size_t(node)], keys_[size_t(node)]}; }

int HeteroGraph::CountOf(NodeType type) const { return int(by_type_[size_t(type)].size()); }

std::vector<int> HeteroGraph::NodesOf(NodeType type) const { return by_type_[size_t(type)]; }

bool HeteroGraph::AddEdge(Relation relation, int source, int target) {
  if (source < 0 || target < 0 || source >= num_nodes() || target >= num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "edge endpoint is not a node");
  }
  auto [st, tt] = Endpoints(relation);
  if (TypeOf(source) != st || TypeOf(target) != tt) {
    Fail(ErrorCode::kInvalidArgument, std::string(RelationName(relation)) + " edge " +
                                          NodeTypeName(TypeOf(source)) + "->" +
                                          NodeTypeName(TypeOf(target)) + " violates typing");
  }
  if (!edge_set_.insert(EdgeKey(int(relation), source, target)).second) return false;
  edges_.push_back({relation, source, target});
  return true;
}

size_t HeteroGraph::CountEdges(Relation relation) const {
  return size_t(std::count_if(edges_.begin(), edges_.end(),
                              [&](const TypedEdge& e) { return e.relation == relation; }));
}

RelationalAdjacency HeteroGraph::Adjacency(bool symmetrize) const {
  RelationalAdjacency adj;
  adj.num_nodes = num_nodes();
  adj.edges.resize(symmetrize ? kNumMessageRelations : kNumRelations);
  for (const auto& e : edges_) {
    adj.edges[size_t(e.relation)].push_back({e.source, e.target});
    int rev = ReverseRelationIndex(e.relation);
    if (symmetrize && rev >= 0) adj.edges[size_t(rev)].push_back({e.target, e.source});
  }
  adj.Normalize();
  return adj;
}

RelationalAdjacency HeteroGraph::CollapsedAdjacency() const {
  RelationalAdjacency adj;
  adj.num_nodes = num_nodes();
  adj.edges.resize(1);
  for (const auto& e : edges_) {
    adj.edges[0].push_back({e.source, e.target});
    adj.edges[0].push_back({e.target, e.source});
  }
  adj.Normalize();
  return adj;
}

void HeteroGraph::Save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  for (int t = 0; t < kNumNodeTypes; ++t) {
    const Matrix& f = features_[size_t(t)];
    EmbeddingTable table(int(f.cols()));
    const auto& nodes = by_type_[size_t(t)];
    if (f.rows() != Eigen::Index(nodes.size())) {
      Fail(ErrorCode::kInternal, "feature rows do not match node count");
    }
    for (size_t i = 0; i < nodes.size(); ++i) table.Put(keys_[size_t(nodes[i])], f.row(Eigen::Index(i)).transpose());
    table.Save(dir + "/nodes-" + NodeTypeName(NodeType(t)) + ".bin");
  }
  std::string out;
  for (const auto& e : edges_) {
    json j;
    j["source"] = std::string(NodeTypeName(TypeOf(e.source))) + ":" + keys_[size_t(e.source)];
    j["target"] = std::string(NodeTypeName(TypeOf(e.target))) + ":" + keys_[size_t(e.target)];
    j["relation"] = RelationName(e.relation);
    out += j.dump() + "\n";
  }
  WriteFile(dir + "/edges.jsonl", out);
}

HeteroGraph HeteroGraph::Load(const std::string& dir) {
  HeteroGraph g;
  for (int t = 0; t < kNumNodeTypes; ++t) {
    EmbeddingTable table =
        EmbeddingTable::Load(dir + "/nodes-" + NodeTypeName(NodeType(t)) + ".bin");
    Matrix f(Eigen::Index(table.size()), table.width());
    for (size_t i = 0; i < table.keys().size(); ++i) {
      g.AddNode(NodeType(t), table.keys()[i]);
      f.row(Eigen::Index(i)) = table.Get(table.keys()[i]).transpose();
    }
    g.features_[size_t(t)] = std::move(f);
  }
  auto parse_ref = [&](const std::string& ref) {
    size_t colon = ref.find(':');
    if (colon == std::string::npos) Fail(ErrorCode::kSchema, "bad node reference '" + ref + "'");
    return g.Get(ParseNodeType(ref.substr(0, colon)), ref.substr(colon + 1));
  };
  size_t line_no = 0;
  for (const auto& line : ReadLines(dir + "/edges.jsonl")) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      g.AddEdge(ParseRelation(j.at("relation").get<std::string>()),
                parse_ref(j.at("source").get<std::string>()),
                parse_ref(j.at("target").get<std::string>()));
    } catch (const json::exception& e) {
      Fail(ErrorCode::kSchema, dir + "/edges.jsonl:" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Construction

HeteroGraph BuildGraph(const Corpus& corpus, const SplitAssignment& split,
                       const EmbeddingTable& bill_embeddings,
                       const EmbeddingTable& speech_embeddings, const GraphOptions& options) {
  HeteroGraph g;
  std::vector<const Speech*> speeches;
  for (const auto& s : corpus.speeches) {
    if (!corpus.FindLegislator(s.author_id)) continue;
    if (!options.include_eval_speeches) {
      auto it = split.speeches.find(s.speech_id);
      if (it != split.speeches.end() && it->second != Split::kTrain) continue;
    }
    speeches.push_back(&s);
  }
  if (options.speech_nodes) {
    for (const Speech* s : speeches) g.AddNode(NodeType::kSpeech, s->speech_id);
  }
  for (const auto& l : corpus.legislators) g.AddNode(NodeType::kLegislator, l.bioguide_id);
  for (const auto& b : corpus.bills) g.AddNode(NodeType::kBill, b.bill_id);

  // Features.
  if (options.random_features) {
    Rng rng = Rng::Substream(options.seed, "graph.random_features");
    for (int t = 0; t < kNumNodeTypes; ++t) {
      Matrix f(g.CountOf(NodeType(t)), options.random_width);
      for (Eigen::Index r = 0; r < f.rows(); ++r) {
        for (Eigen::Index c = 0; c < f.cols(); ++c) f(r, c) = double(float(rng.Normal()));
      }
      g.features(NodeType(t)) = std::move(f);
    }
  } else {
    LegislatorFeaturizer featurizer(corpus.legislators);
    Matrix lf(Eigen::Index(corpus.legislators.size()), featurizer.width());
    for (size_t i = 0; i < corpus.legislators.size(); ++i) {
      lf.row(Eigen::Index(i)) = featurizer.Encode(corpus.legislators[i]).transpose();
    }
    g.features(NodeType::kLegislator) = std::move(lf);

    Matrix bf(Eigen::Index(corpus.bills.size()), bill_embeddings.width());
    for (size_t i = 0; i < corpus.bills.size(); ++i) {
      bf.row(Eigen::Index(i)) = RoundToFloat(bill_embeddings.Get(corpus.bills[i].bill_id)).transpose();
    }
    g.features(NodeType::kBill) = std::move(bf);

    Matrix sf(options.speech_nodes ? Eigen::Index(speeches.size()) : 0, speech_embeddings.width());
    if (options.speech_nodes) {
      for (size_t i = 0; i < speeches.size(); ++i) {
        sf.row(Eigen::Index(i)) = RoundToFloat(speech_embeddings.Get(speeches[i]->speech_id)).transpose();
      }
    }
    g.features(NodeType::kSpeech) = std::move(sf);
  }

  // Edges.
  auto leg = [&](const std::string& id) { return g.Get(NodeType::kLegislator, id); };
  for (const Speech* s : speeches) {
    if (options.speech_nodes) {
      g.AddEdge(Relation::kAuthorship, leg(s->author_id), g.Get(NodeType::kSpeech, s->speech_id));
    }
    for (const auto& cited : s->cited_ids) {
      int target = g.Find(NodeType::kLegislator, cited);
      if (target >= 0 && cited != s->author_id) g.AddEdge(Relation::kCitation, leg(s->author_id), target);
    }
  }
  for (const auto& b : corpus.bills) {
    g.AddEdge(Relation::kSponsorship, leg(b.sponsor_id), g.Get(NodeType::kBill, b.bill_id));
  }
  if (split.cosponsorships.size() != corpus.cosponsorships.size()) {
    Fail(ErrorCode::kInvalidArgument, "split does not belong to this corpus");
  }
  for (size_t i = 0; i < corpus.cosponsorships.size(); ++i) {
    if (split.cosponsorships[i] != Split::kTrain) continue;
    const auto& c = corpus.cosponsorships[i];
    Relation r = c.kind == CosponsorKind::kActive ? Relation::kActive : Relation::kPassive;
    g.AddEdge(r, leg(c.legislator_id), g.Get(NodeType::kBill, c.bill_id));
  }
  return g;
}

std::vector<std::string> FindLeakedPairs(const HeteroGraph& graph, const Corpus& corpus,
                                         const SplitAssignment& split) {
  std::set<std::pair<int, int>> held_out;
  for (size_t i = 0; i < corpus.cosponsorships.size(); ++i) {
    if (split.cosponsorships[i] == Split::kTrain) continue;
    const auto& c = corpus.cosponsorships[i];
    int l = graph.Find(NodeType::kLegislator, c.legislator_id);
    int b = graph.Find(NodeType::kBill, c.bill_id);
    if (l >= 0 && b >= 0) held_out.insert({l, b});
  }
  std::vector<std::string> leaked;
  for (const auto& e : graph.edges()) {
    if (e.relation != Relation::kActive && e.relation != Relation::kPassive) continue;
    if (held_out.count({e.source, e.target})) {
      leaked.push_back(graph.Ref(e.target).key + "/" + graph.Ref(e.source).key);
    }
  }
  return leaked;
}

}  // namespace legis
