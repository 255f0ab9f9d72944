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

#include <set>

#include <doctest.h>

#include "legis/graph.h"
#include "legis/synth.h"
#include "support.h"

namespace legis {
namespace {

using PairSet = std::set<std::pair<int, int>>;

PairSet AsSet(const std::vector<std::pair<int, int>>& pairs) { return PairSet(pairs.begin(), pairs.end()); }

Corpus Tiny() { return LoadCorpus(std::string(LEGIS_FIXTURES) + "/tiny"); }

Corpus Planted(uint64_t seed, int legislators = 16, int bills = 30, int speeches = 40) {
  SynthOptions o;
  o.seed = seed;
  o.legislators = legislators;
  o.bills = bills;
  o.speeches = speeches;
  return GenerateCorpus(o).corpus;
}

bool TypesAllowed(Relation r, NodeType s, NodeType t) {
  switch (r) {
    case Relation::kAuthorship:
      return s == NodeType::kLegislator && t == NodeType::kSpeech;
    case Relation::kCitation:
      return s == NodeType::kLegislator && t == NodeType::kLegislator;
    default:
      return s == NodeType::kLegislator && t == NodeType::kBill;
  }
}

TEST_CASE("tiny fixture produces one edge of each populated relation") {
  Corpus c = Tiny();
  SplitAssignment split = TimeSplit(c);
  auto [bills, speeches] = testing::RandomTables(c, 4, 1);
  HeteroGraph g = BuildGraph(c, split, bills, speeches);
  CHECK(g.CountOf(NodeType::kLegislator) == 2);
  CHECK(g.CountOf(NodeType::kBill) == 1);
  CHECK(g.CountOf(NodeType::kSpeech) == 1);
  CHECK(g.CountEdges(Relation::kAuthorship) == 1);
  CHECK(g.CountEdges(Relation::kCitation) == 1);
  CHECK(g.CountEdges(Relation::kSponsorship) == 1);
  CHECK(g.CountEdges(Relation::kActive) == 1);
  CHECK(g.CountEdges(Relation::kPassive) == 0);
  int smith = g.Get(NodeType::kLegislator, "S000522"), poe = g.Get(NodeType::kLegislator, "P000592");
  CHECK(g.edges().end() != std::find(g.edges().begin(), g.edges().end(),
                                     TypedEdge{Relation::kCitation, smith, poe}));
  CHECK(g.FeatureWidth(NodeType::kBill) == 4);
}

TEST_CASE("legislators differing only by party differ only in the party block") {
  Legislator a = testing::MakeLegislator("A000001", "Adams", Party::kDemocrat, "TX");
  Legislator b = testing::MakeLegislator("B000001", "Baker", Party::kRepublican, "TX");
  a.age = b.age = 55;
  a.gender = b.gender = Gender::kFemale;
  LegislatorFeaturizer f({a, b});
  Vector va = f.Encode(a), vb = f.Encode(b);
  const auto& off = f.offsets();
  CHECK(va.sum() == 5.0);
  CHECK(vb.sum() == 5.0);
  for (int k = 0; k < f.width(); ++k) {
    if (k >= off[0] && k < off[1]) continue;
    CHECK(va[k] == vb[k]);
  }
  CHECK((va.segment(off[0], off[1] - off[0]) - vb.segment(off[0], off[1] - off[0])).cwiseAbs().sum() == 2.0);
}

TEST_CASE("unseen metadata values use the spare slot") {
  Legislator a = testing::MakeLegislator("A000001", "Adams", Party::kDemocrat, "TX");
  LegislatorFeaturizer f({a});
  Legislator stranger = testing::MakeLegislator("Z000001", "Zed", Party::kDemocrat, "WY");
  stranger.district = "9";
  CHECK(f.Encode(stranger).sum() == 5.0);
}

TEST_CASE("property: edge endpoint types follow the relation table") {
  HeteroGraph g;
  std::vector<int> nodes;
  for (int i = 0; i < 4; ++i) {
    nodes.push_back(g.AddNode(NodeType::kSpeech, "s" + std::to_string(i)));
    nodes.push_back(g.AddNode(NodeType::kLegislator, "l" + std::to_string(i)));
    nodes.push_back(g.AddNode(NodeType::kBill, "b" + std::to_string(i)));
  }
  Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    Relation r = Relation(rng.Below(kNumRelations));
    int s = nodes[rng.Below(nodes.size())], t = nodes[rng.Below(nodes.size())];
    bool ok = TypesAllowed(r, g.TypeOf(s), g.TypeOf(t));
    if (ok) {
      CHECK_NOTHROW(g.AddEdge(r, s, t));
    } else {
      try {
        g.AddEdge(r, s, t);
        FAIL("accepted an ill-typed edge");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInvalidArgument);
      }
    }
  }
  for (const auto& e : g.edges()) CHECK(TypesAllowed(e.relation, g.TypeOf(e.source), g.TypeOf(e.target)));
}

TEST_CASE("duplicate edges are stored once") {
  HeteroGraph g;
  int l = g.AddNode(NodeType::kLegislator, "l"), b = g.AddNode(NodeType::kBill, "b");
  CHECK(g.AddEdge(Relation::kSponsorship, l, b));
  CHECK_FALSE(g.AddEdge(Relation::kSponsorship, l, b));
  CHECK(g.CountEdges(Relation::kSponsorship) == 1);
}

TEST_CASE("property: degree accounting on generated corpora") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    CAPTURE(seed);
    Corpus c = Planted(seed);
    SplitAssignment split = TimeSplit(c);
    auto [bills, speeches] = testing::RandomTables(c, 6, seed);
    HeteroGraph g = BuildGraph(c, split, bills, speeches);

    CHECK(g.CountEdges(Relation::kAuthorship) == c.speeches.size());
    CHECK(g.CountEdges(Relation::kSponsorship) == c.bills.size());
    std::set<std::pair<std::string, std::string>> cites, active, passive;
    for (const auto& s : c.speeches) {
      for (const auto& id : s.cited_ids) {
        if (id != s.author_id) cites.insert({s.author_id, id});
      }
    }
    for (size_t i = 0; i < c.cosponsorships.size(); ++i) {
      if (split.cosponsorships[i] != Split::kTrain) continue;
      auto& set = c.cosponsorships[i].kind == CosponsorKind::kActive ? active : passive;
      set.insert({c.cosponsorships[i].legislator_id, c.cosponsorships[i].bill_id});
    }
    CHECK(g.CountEdges(Relation::kCitation) == cites.size());
    CHECK(g.CountEdges(Relation::kActive) == active.size());
    CHECK(g.CountEdges(Relation::kPassive) == passive.size());

    // Each bill has exactly one sponsor; each speech exactly one author.
    std::map<int, int> in_sponsor, in_author;
    for (const auto& e : g.edges()) {
      if (e.relation == Relation::kSponsorship) ++in_sponsor[e.target];
      if (e.relation == Relation::kAuthorship) ++in_author[e.target];
    }
    for (auto [node, n] : in_sponsor) CHECK(n == 1);
    for (auto [node, n] : in_author) CHECK(n == 1);

    RelationalAdjacency adj = g.Adjacency(true);
    REQUIRE(adj.num_relations() == kNumMessageRelations);
    CHECK(adj.num_nodes == g.num_nodes());
    for (Relation r : {Relation::kAuthorship, Relation::kSponsorship, Relation::kActive, Relation::kPassive}) {
      PairSet forward = AsSet(adj.edges[size_t(r)]), swapped;
      for (auto [s, t] : forward) swapped.insert({t, s});
      CHECK(AsSet(adj.edges[size_t(ReverseRelationIndex(r))]) == swapped);
      CHECK(forward.size() == g.CountEdges(r));
    }
    CHECK(ReverseRelationIndex(Relation::kCitation) == -1);
    CHECK(g.Adjacency(false).num_relations() == kNumRelations);

    RelationalAdjacency folded = g.CollapsedAdjacency();
    REQUIRE(folded.num_relations() == 1);
    PairSet all = AsSet(folded.edges[0]);
    for (auto [s, t] : all) CHECK(all.count({t, s}) == 1);
  }
}

TEST_CASE("property: no validation or test cosponsorship becomes an edge") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    Corpus c = Planted(seed);
    SplitAssignment split = TimeSplit(c);
    auto [bills, speeches] = testing::RandomTables(c, 3, seed);
    HeteroGraph g = BuildGraph(c, split, bills, speeches);
    CHECK(FindLeakedPairs(g, c, split).empty());
  }
}

TEST_CASE("a planted held-out edge is reported as leakage") {
  Corpus c = Planted(3);
  SplitAssignment split = TimeSplit(c);
  auto [bills, speeches] = testing::RandomTables(c, 3, 3);
  HeteroGraph g = BuildGraph(c, split, bills, speeches);
  size_t i = 0;
  while (split.cosponsorships[i] != Split::kTest) ++i;
  const auto& rec = c.cosponsorships[i];
  g.AddEdge(Relation::kPassive, g.Get(NodeType::kLegislator, rec.legislator_id),
            g.Get(NodeType::kBill, rec.bill_id));
  auto leaked = FindLeakedPairs(g, c, split);
  REQUIRE(leaked.size() == 1);
  CHECK(leaked[0] == rec.bill_id + "/" + rec.legislator_id);
}

TEST_CASE("graph options") {
  Corpus c = Planted(4);
  SplitAssignment split = TimeSplit(c);
  auto [bills, speeches] = testing::RandomTables(c, 3, 4);

  GraphOptions no_speech;
  no_speech.speech_nodes = false;
  HeteroGraph g = BuildGraph(c, split, bills, speeches, no_speech);
  CHECK(g.CountOf(NodeType::kSpeech) == 0);
  CHECK(g.CountEdges(Relation::kAuthorship) == 0);

  GraphOptions train_only;
  train_only.include_eval_speeches = false;
  HeteroGraph h = BuildGraph(c, split, bills, speeches, train_only);
  size_t train_speeches = 0;
  for (const auto& s : c.speeches) train_speeches += size_t(split.speeches.at(s.speech_id) == Split::kTrain);
  CHECK(size_t(h.CountOf(NodeType::kSpeech)) == train_speeches);

  GraphOptions random;
  random.random_features = true;
  random.random_width = 7;
  random.seed = 9;
  HeteroGraph r1 = BuildGraph(c, split, bills, speeches, random);
  HeteroGraph r2 = BuildGraph(c, split, bills, speeches, random);
  CHECK(r1.FeatureWidth(NodeType::kLegislator) == 7);
  CHECK(r1.features(NodeType::kBill) == r2.features(NodeType::kBill));
}

TEST_CASE("missing document embeddings are reported") {
  Corpus c = Tiny();
  SplitAssignment split = TimeSplit(c);
  EmbeddingTable bills(4), speeches(4);
  try {
    BuildGraph(c, split, bills, speeches);
    FAIL("expected MissingEmbedding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingEmbedding);
  }
}

TEST_CASE("graphs round-trip through disk") {
  Corpus c = Planted(5);
  SplitAssignment split = TimeSplit(c);
  auto [bills, speeches] = testing::RandomTables(c, 5, 5);
  HeteroGraph g = BuildGraph(c, split, bills, speeches);
  testing::TempDir dir;
  g.Save(dir.path());
  HeteroGraph back = HeteroGraph::Load(dir.path());
  CHECK(back.num_nodes() == g.num_nodes());
  CHECK(back.edges() == g.edges());
  for (int t = 0; t < kNumNodeTypes; ++t) CHECK(back.features(NodeType(t)) == g.features(NodeType(t)));
  for (int n = 0; n < g.num_nodes(); ++n) CHECK(back.Ref(n) == g.Ref(n));
}

TEST_CASE("name tables") {
  CHECK(std::string(RelationName(Relation::kPassive)) == "R5");
  CHECK(ParseRelation("R2") == Relation::kCitation);
  CHECK(std::string(NodeTypeName(NodeType::kBill)) == "B");
  CHECK(ParseNodeType("S") == NodeType::kSpeech);
  CHECK_THROWS_AS(ParseRelation("R9"), Error);
}

}  // namespace
}  // namespace legis
