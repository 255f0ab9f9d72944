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

#include "legis/evalsuite.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <unordered_set>

namespace legis {

const std::vector<BaselineSpec>& BaselineSpecs() {
  static const std::vector<BaselineSpec> kSpecs = {
      {"B1", "ideology", "random-forest"},     {"B2", "metadata", "random-forest"},
      {"B3", "word-vectors", "feed-forward"},  {"B4", "encoder", "feed-forward"},
      {"B5", "encoder+metadata", "feed-forward"}, {"B6", "gcn", "graph"},
      {"B7", "rgcn-no-text", "graph"},
  };
  return kSpecs;
}

const BaselineSpec& FindBaseline(const std::string& id_or_name) {
  std::string key = ToLower(id_or_name);
  for (const auto& s : BaselineSpecs()) {
    if (ToLower(s.id) == key || s.name == key) return s;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown baseline '" + id_or_name + "' (expected B1..B7)");
}

std::unordered_map<std::string, Vector> LoadVectorFile(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) {
    Fail(ErrorCode::kMissingResource, "resource file not found: '" + path + "'");
  }
  std::unordered_map<std::string, Vector> out;
  long width = -1;
  size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    auto parts = SplitWhitespace(line);
    if (parts.empty()) continue;
    Vector v(long(parts.size()) - 1);
    for (size_t i = 1; i < parts.size(); ++i) {
      try {
        v[long(i) - 1] = std::stod(parts[i]);
      } catch (const std::exception&) {
        Fail(ErrorCode::kSchema, path + ":" + std::to_string(line_no) + ": bad number '" + parts[i] + "'");
      }
    }
    if (width < 0) width = v.size();
    if (v.size() != width || width == 0) {
      Fail(ErrorCode::kSchema, path + ":" + std::to_string(line_no) + ": inconsistent vector width");
    }
    out[parts[0]] = std::move(v);
  }
  if (out.empty()) Fail(ErrorCode::kSchema, path + ": no vectors");
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(char(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool IsStopWord(std::string_view token) {
  static const std::unordered_set<std::string_view> kStop = {
      "a", "about", "after", "all", "also", "am", "an", "and", "any", "are", "as", "at", "be",
      "because", "been", "before", "being", "between", "both", "but", "by", "can", "could", "did",
      "do", "does", "for", "from", "had", "has", "have", "he", "her", "here", "him", "his", "how",
      "i", "if", "in", "into", "is", "it", "its", "just", "me", "more", "most", "mr", "mrs", "ms",
      "my", "no", "not", "now", "of", "on", "one", "only", "or", "other", "our", "out", "over",
      "s", "said", "she", "should", "so", "some", "such", "than", "that", "the", "their", "them",
      "then", "there", "these", "they", "this", "those", "through", "to", "too", "under", "up",
      "us", "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "why",
      "will", "with", "would", "you", "your"};
  return kStop.count(token) > 0;
}

std::vector<std::string> TopUnigrams(std::string_view text,
                                     const std::unordered_map<std::string, size_t>& corpus_counts,
                                     size_t k) {
  std::set<std::string> distinct;
  for (auto& t : Tokenize(text)) {
    if (!IsStopWord(t)) distinct.insert(std::move(t));
  }
  std::vector<std::pair<size_t, std::string>> ranked;
  for (const auto& t : distinct) {
    auto it = corpus_counts.find(t);
    ranked.push_back({it == corpus_counts.end() ? 0 : it->second, t});
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::string> out;
  for (size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].second);
  return out;
}

namespace {

struct PairRow {
  const Legislator* legislator;
  const Bill* bill;
  const Legislator* sponsor;
  int label;
  Split split;
};

std::vector<PairRow> CosponsorRows(const Corpus& corpus, const SplitAssignment& split) {
  std::vector<PairRow> rows;
  for (size_t i = 0; i < corpus.cosponsorships.size(); ++i) {
    const auto& c = corpus.cosponsorships[i];
    const Bill& b = corpus.GetBill(c.bill_id);
    rows.push_back({&corpus.GetLegislator(c.legislator_id), &b, &corpus.GetLegislator(b.sponsor_id),
                    c.kind == CosponsorKind::kActive ? 1 : 0, split.cosponsorships[i]});
  }
  return rows;
}

std::vector<int> Decide(const Vector& p) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p[i] > 0.5 ? 1 : 0);
  return out;
}

// Fits a tabular classifier on the training rows and scores validation and
// test rows.
template <typename Featurize>
BaselineReport RunTabular(const BaselineSpec& spec, const BaselineInputs& in, Featurize featurize) {
  std::vector<PairRow> rows = CosponsorRows(*in.corpus, *in.split);
  std::array<std::vector<Vector>, 3> xs;
  std::array<std::vector<int>, 3> ys;
  std::array<std::vector<const PairRow*>, 3> refs;
  for (const auto& r : rows) {
    xs[size_t(r.split)].push_back(featurize(r));
    ys[size_t(r.split)].push_back(r.label);
    refs[size_t(r.split)].push_back(&r);
  }
  for (int s = 0; s < 3; ++s) {
    if (xs[size_t(s)].empty()) {
      Fail(ErrorCode::kEmptySplit, std::string("no ") + SplitName(Split(s)) + " cosponsorships");
    }
  }
  auto stack = [](const std::vector<Vector>& v) {
    Matrix m(Eigen::Index(v.size()), v.front().size());
    for (size_t i = 0; i < v.size(); ++i) m.row(Eigen::Index(i)) = v[i].transpose();
    return m;
  };
  Matrix train = stack(xs[0]), val = stack(xs[1]), test = stack(xs[2]);
  Vector p_val, p_test;
  if (spec.classifier == "random-forest") {
    RandomForest forest(in.forest);
    forest.Fit(train, ys[0]);
    p_val = forest.PredictProbabilities(val);
    p_test = forest.PredictProbabilities(test);
  } else {
    Mlp mlp(in.mlp);
    mlp.Fit(train, ys[0], &val, &ys[1]);
    p_val = mlp.PredictProbabilities(val);
    p_test = mlp.PredictProbabilities(test);
  }
  BaselineReport report;
  report.id = spec.id;
  report.name = spec.name;
  report.validation = ComputeMetrics(ys[1], Decide(p_val));
  report.test = ComputeMetrics(ys[2], Decide(p_test));
  for (size_t i = 0; i < refs[2].size(); ++i) {
    report.test_predictions.push_back({refs[2][i]->legislator->bioguide_id,
                                       refs[2][i]->bill->bill_id, p_test[Eigen::Index(i)],
                                       ys[2][i], "cosp"});
  }
  return report;
}

Vector Concat(std::initializer_list<Vector> parts) {
  long n = 0;
  for (const auto& p : parts) n += p.size();
  Vector out(n);
  long at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

// Mean speech embedding per legislator; zero for legislators without one.
std::unordered_map<std::string, Vector> LegislatorMeans(
    const Corpus& corpus, int width, const std::function<std::optional<Vector>(const Speech&)>& embed) {
  std::unordered_map<std::string, Vector> sums;
  std::unordered_map<std::string, int> counts;
  for (const auto& s : corpus.speeches) {
    std::optional<Vector> v = embed(s);
    if (!v) continue;
    auto it = sums.try_emplace(s.author_id, Vector::Zero(width)).first;
    it->second += *v;
    ++counts[s.author_id];
  }
  for (auto& [id, v] : sums) v /= double(counts[id]);
  return sums;
}

Vector Lookup(const std::unordered_map<std::string, Vector>& m, const std::string& key, int width) {
  auto it = m.find(key);
  return it == m.end() ? Vector::Zero(width) : it->second;
}

BaselineReport RunGraphBaseline(const BaselineSpec& spec, const BaselineInputs& in) {
  GraphOptions opts;
  opts.speech_nodes = false;
  opts.random_features = true;
  opts.random_width = in.train.projection;
  opts.seed = in.train.seed;
  EmbeddingTable none(in.train.projection);
  HeteroGraph graph = BuildGraph(*in.corpus, *in.split, none, none, opts);
  TrainConfig cfg = in.train;
  cfg.weights = {1.0, 0.0, 0.0};
  cfg.collapse_relations = spec.id == "B6";
  Trainer trainer(graph, *in.corpus, *in.split, cfg);
  TrainResult result = trainer.Train();
  Matrix reps = trainer.Representations(result.best_params);
  BaselineReport report;
  report.id = spec.id;
  report.name = spec.name;
  report.validation = trainer.EvaluateWith(reps, result.best_params, Split::kValidation).metrics;
  EvalReport test = trainer.EvaluateWith(reps, result.best_params, Split::kTest);
  report.test = test.metrics;
  report.test_predictions = test.predictions;
  for (int t = 0; t < kNumNodeTypes; ++t) {
    report.node_counts[NodeTypeName(NodeType(t))] = graph.CountOf(NodeType(t));
  }
  return report;
}

}  // namespace

BaselineReport RunBaseline(const std::string& id_or_name, const BaselineInputs& in) {
  const BaselineSpec& spec = FindBaseline(id_or_name);
  if (!in.corpus || !in.split) Fail(ErrorCode::kInvalidArgument, "baseline needs a corpus and split");
  const Corpus& corpus = *in.corpus;

  if (spec.id == "B1") {
    auto scores = LoadVectorFile(in.ideology_path);
    int width = int(scores.begin()->second.size());
    return RunTabular(spec, in, [&](const PairRow& r) {
      return Concat({Lookup(scores, r.legislator->bioguide_id, width),
                     Lookup(scores, r.sponsor->bioguide_id, width)});
    });
  }
  if (spec.id == "B2") {
    LegislatorFeaturizer meta(corpus.legislators);
    return RunTabular(spec, in, [&](const PairRow& r) {
      return Concat({meta.Encode(*r.legislator), meta.Encode(*r.sponsor)});
    });
  }
  if (spec.id == "B3") {
    auto vectors = LoadVectorFile(in.word_vectors_path);
    int width = int(vectors.begin()->second.size());
    std::unordered_map<std::string, size_t> counts;
    for (const auto& b : corpus.bills) {
      for (const auto& t : Tokenize(b.text)) if (!IsStopWord(t)) ++counts[t];
    }
    for (const auto& s : corpus.speeches) {
      for (const auto& t : Tokenize(s.text)) if (!IsStopWord(t)) ++counts[t];
    }
    auto doc_vector = [&](std::string_view text) -> std::optional<Vector> {
      Vector sum = Vector::Zero(width);
      int n = 0;
      for (const auto& w : TopUnigrams(text, counts)) {
        auto it = vectors.find(w);
        if (it == vectors.end()) continue;
        sum += it->second;
        ++n;
      }
      if (n == 0) return std::nullopt;
      return Vector(sum / double(n));
    };
    auto legislators = LegislatorMeans(corpus, width, [&](const Speech& s) { return doc_vector(s.text); });
    std::unordered_map<std::string, Vector> bills;
    for (const auto& b : corpus.bills) bills[b.bill_id] = doc_vector(b.text).value_or(Vector::Zero(width));
    return RunTabular(spec, in, [&](const PairRow& r) {
      return Concat({Lookup(legislators, r.legislator->bioguide_id, width), bills.at(r.bill->bill_id),
                     Lookup(legislators, r.sponsor->bioguide_id, width)});
    });
  }
  if (spec.id == "B4" || spec.id == "B5") {
    if (!in.bill_embeddings || !in.speech_embeddings) {
      Fail(ErrorCode::kMissingResource, spec.id + " needs bill and speech embeddings");
    }
    const EmbeddingTable& bills = *in.bill_embeddings;
    const EmbeddingTable& speeches = *in.speech_embeddings;
    const int width = speeches.width();
    auto legislators = LegislatorMeans(corpus, width, [&](const Speech& s) -> std::optional<Vector> {
      if (!speeches.Contains(s.speech_id)) return std::nullopt;
      return speeches.Get(s.speech_id);
    });
    LegislatorFeaturizer meta(corpus.legislators);
    const bool with_meta = spec.id == "B5";
    return RunTabular(spec, in, [&](const PairRow& r) {
      Vector text = Concat({Lookup(legislators, r.legislator->bioguide_id, width),
                            bills.Get(r.bill->bill_id),
                            Lookup(legislators, r.sponsor->bioguide_id, width)});
      if (!with_meta) return text;
      return Concat({text, meta.Encode(*r.legislator), meta.Encode(*r.sponsor)});
    });
  }
  return RunGraphBaseline(spec, in);
}

// ---------------------------------------------------------------------------
// Ablation

std::vector<AblationConfig> AblationConfigs(const LossWeights& full) {
  return {
      {"cosp_only", {full.cosp, 0.0, 0.0}},
      {"without_auth", {full.cosp, 0.0, full.cit}},
      {"without_cit", {full.cosp, full.auth, 0.0}},
      {"full", full},
  };
}

std::vector<double> AblationTable::Average() const {
  std::vector<double> avg(configs.size(), 0.0);
  if (f1.empty()) return avg;
  for (const auto& row : f1) {
    for (size_t c = 0; c < configs.size(); ++c) avg[c] += row[c];
  }
  for (auto& v : avg) v /= double(f1.size());
  return avg;
}

std::string AblationTable::Csv() const {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  std::string out = "congress";
  for (const auto& c : configs) out += "," + c;
  out += "\n";
  for (size_t i = 0; i < congresses.size(); ++i) {
    out += std::to_string(congresses[i]);
    for (double v : f1[i]) out += "," + fmt(v);
    out += "\n";
  }
  out += "Avg";
  for (double v : Average()) out += "," + fmt(v);
  out += "\n";
  return out;
}

AblationTable RunAblation(const std::vector<AblationInput>& inputs, const TrainConfig& base) {
  AblationTable table;
  auto configs = AblationConfigs(base.weights);
  for (const auto& c : configs) table.configs.push_back(c.name);
  for (const auto& in : inputs) {
    table.congresses.push_back(in.congress);
    std::vector<double> row;
    for (const auto& c : configs) {
      TrainConfig cfg = base;
      cfg.weights = c.weights;
      Trainer trainer(*in.graph, *in.corpus, *in.split, cfg);
      TrainResult result = trainer.Train();
      row.push_back(trainer.Evaluate(result.best_params, Split::kTest).metrics.f1);
    }
    table.f1.push_back(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Roll-call

std::vector<RollCallExample> BuildRollCallDataset(const Corpus& corpus, const HeteroGraph& graph,
                                                  const SplitAssignment& split, size_t* excluded) {
  std::set<std::pair<std::string, std::string>> cosponsored;
  for (const auto& c : corpus.cosponsorships) cosponsored.insert({c.legislator_id, c.bill_id});
  std::vector<RollCallExample> out;
  size_t dropped = 0;
  for (const auto& v : corpus.votes) {
    if (cosponsored.count({v.legislator_id, v.bill_id})) {
      ++dropped;
      continue;
    }
    RollCallExample e;
    e.legislator = graph.Get(NodeType::kLegislator, v.legislator_id);
    e.bill = graph.Get(NodeType::kBill, v.bill_id);
    e.label = v.vote == VoteChoice::kYea ? 1 : 0;
    auto it = split.bills.find(v.bill_id);
    if (it == split.bills.end()) Fail(ErrorCode::kInternal, "bill without split: " + v.bill_id);
    e.split = it->second;
    out.push_back(e);
  }
  if (excluded) *excluded = dropped;
  return out;
}

void AssertNoLeakage(const std::vector<RollCallExample>& dataset, const Corpus& corpus,
                     const HeteroGraph& graph) {
  std::set<std::pair<int, int>> cosponsored;
  for (const auto& c : corpus.cosponsorships) {
    int l = graph.Find(NodeType::kLegislator, c.legislator_id);
    int b = graph.Find(NodeType::kBill, c.bill_id);
    cosponsored.insert({l, b});
  }
  for (const auto& e : dataset) {
    if (cosponsored.count({e.legislator, e.bill})) {
      Fail(ErrorCode::kLeakageDetected, "roll-call dataset contains cosponsored pair " +
                                            graph.Ref(e.legislator).key + "/" + graph.Ref(e.bill).key);
    }
  }
}

RollCallReport TrainRollCall(const Matrix& reps, const HeteroGraph& graph,
                             const std::vector<RollCallExample>& dataset, const Corpus& corpus,
                             const MlpConfig& config) {
  AssertNoLeakage(dataset, corpus, graph);
  std::array<std::vector<const RollCallExample*>, 3> parts;
  for (const auto& e : dataset) parts[size_t(e.split)].push_back(&e);
  for (int s = 0; s < 3; ++s) {
    if (parts[size_t(s)].empty()) {
      Fail(ErrorCode::kEmptySplit, std::string("no ") + SplitName(Split(s)) + " roll-call votes");
    }
  }
  const Eigen::Index d = reps.cols();
  auto build = [&](const std::vector<const RollCallExample*>& ex, std::vector<int>& y) {
    Matrix x(Eigen::Index(ex.size()), 2 * d);
    for (size_t i = 0; i < ex.size(); ++i) {
      x.row(Eigen::Index(i)) << reps.row(ex[i]->legislator), reps.row(ex[i]->bill);
      y.push_back(ex[i]->label);
    }
    return x;
  };
  std::array<std::vector<int>, 3> ys;
  Matrix train = build(parts[0], ys[0]), val = build(parts[1], ys[1]), test = build(parts[2], ys[2]);
  Mlp mlp(config);
  mlp.Fit(train, ys[0], &val, &ys[1]);
  RollCallReport r;
  r.examples = dataset.size();
  r.validation = ComputeMetrics(ys[1], Decide(mlp.PredictProbabilities(val)));
  Vector p_test = mlp.PredictProbabilities(test);
  r.test = ComputeMetrics(ys[2], Decide(p_test));
  r.majority_test = ComputeMetrics(ys[2], std::vector<int>(ys[2].size(), 1));
  for (size_t i = 0; i < parts[2].size(); ++i) {
    r.test_predictions.push_back({graph.Ref(parts[2][i]->legislator).key,
                                  graph.Ref(parts[2][i]->bill).key, p_test[Eigen::Index(i)], ys[2][i],
                                  "rollcall"});
  }
  return r;
}

}  // namespace legis
