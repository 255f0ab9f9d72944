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

#include "legis/pipeline.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <regex>

#include "json.hpp"
#include "legis/analysis.h"
#include "legis/evalsuite.h"
#include "legis/synth.h"

namespace legis {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* Version() { return "0.1.0"; }

namespace {

std::string Now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void WriteJson(const std::string& path, const json& j) { WriteFile(path, j.dump(2) + "\n"); }

json MetricsJson(const BinaryMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
          {"macro_f1", m.macro_f1},   {"tp", m.tp},         {"fp", m.fp},
          {"fn", m.fn},               {"tn", m.tn}};
}

SplitFractions FractionsFrom(const Config& config) {
  std::vector<double> f = config.GetDoubleList("split");
  if (f.size() != 3) Fail(ErrorCode::kInvalidArgument, "split needs three fractions");
  double sum = f[0] + f[1] + f[2];
  if (f[0] < 0 || f[1] < 0 || f[2] < 0 || std::abs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "split fractions must be non-negative and sum to 1");
  }
  return {f[0], f[1], f[2]};
}

// Resource paths default to the synthetic layout <corpus>/resources/.
std::string ResourcePath(const Config& config, const std::string& key, const std::string& file) {
  std::string path = config.GetString(key);
  if (!path.empty()) return path;
  std::string corpus = config.GetString("corpus");
  if (corpus.empty()) return "";
  fs::path base = fs::is_directory(corpus) ? fs::path(corpus) : fs::path(corpus).parent_path();
  fs::path candidate = base / "resources" / file;
  return fs::exists(candidate) ? candidate.string() : "";
}

// Corpus input files: the directory's JSONL files or a manifest plus the
// files it lists.
std::vector<std::string> CorpusFiles(const std::string& path) {
  std::vector<std::string> out;
  if (path.empty()) return out;
  if (fs::is_directory(path)) {
    for (const char* name : {"legislators.jsonl", "bills.jsonl", "speeches.jsonl",
                             "cosponsorships.jsonl", "votes.jsonl", "manifest.json"}) {
      fs::path p = fs::path(path) / name;
      if (fs::exists(p)) out.push_back(p.string());
    }
    return out;
  }
  if (!fs::exists(path)) Fail(ErrorCode::kIo, "corpus not found: " + path);
  out.push_back(path);
  json m;
  try {
    m = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchema, path + ": " + e.what());
  }
  for (const auto& [congress, files] : m.items()) {
    if (!files.is_object()) continue;
    for (const auto& [kind, file] : files.items()) {
      if (!file.is_string()) continue;
      fs::path p = fs::path(path).parent_path() / file.get<std::string>();
      if (fs::exists(p)) out.push_back(p.string());
    }
  }
  return out;
}

json ConfigJson(const Config& config) {
  json j = json::object();
  for (const auto& [k, v] : config.values()) j[k] = v;
  return j;
}

class ManifestWriter {
 public:
  ManifestWriter(const RunContext& ctx, const std::string& path) : path_(path) {
    if (path_.empty()) return;
    fs::path parent = fs::path(path_).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    manifest_ = {{"command", ctx.command},
                 {"version", Version()},
                 {"seed", ctx.config.GetInt("seed")},
                 {"config", ConfigJson(ctx.config)},
                 {"inputs", InputDigests(ctx.config)},
                 {"started", Now()},
                 {"finished", nullptr},
                 {"status", "running"}};
    WriteJson(path_, manifest_);
  }

  void Finish(const std::string& status = "ok") {
    if (path_.empty()) return;
    manifest_["finished"] = Now();
    manifest_["status"] = status;
    WriteJson(path_, manifest_);
  }

 private:
  std::string path_;
  json manifest_;
};

std::string ManifestPath(const RunContext& ctx) {
  return ctx.out_dir.empty() ? "" : Join(ctx.out_dir, "manifest.json");
}

std::string CongressDir(const std::string& out, int congress) {
  std::string dir = Join(out, "c" + std::to_string(congress));
  fs::create_directories(dir);
  return dir;
}

Encoder LoadEncoder(DocKind kind, const Config& config) {
  Encoder enc = Encoder::Create(kind, EncoderConfigFrom(config), uint64_t(config.GetInt("seed")));
  std::string path = config.GetString("encoder_params");
  if (!path.empty()) {
    if (!fs::exists(path)) Fail(ErrorCode::kMissingResource, "encoder params not found: " + path);
    enc.FromTensors(LoadTensors(path), kind == DocKind::kBill ? "enc.bill" : "enc.speech");
  }
  return enc;
}

AliasTable AliasesFrom(const Config& config) {
  std::string path = config.GetString("aliases");
  return path.empty() ? AliasTable() : LoadAliasTable(path);
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::map<std::string, std::string> InputDigests(const Config& config) {
  std::map<std::string, std::string> out;
  for (const auto& f : CorpusFiles(config.GetString("corpus"))) out[f] = FileDigest(f);
  for (const char* key : {"ideology_scores", "word_vectors", "external_embeddings", "bill_cache",
                          "speech_cache", "encoder_params", "aliases"}) {
    std::string path = config.GetString(key);
    if (!path.empty() && fs::exists(path)) out[path] = FileDigest(path);
  }
  return out;
}

void VerifyManifest(const std::string& out_dir, const Config& config) {
  std::string path = Join(out_dir, "manifest.json");
  if (!fs::exists(path)) Fail(ErrorCode::kIo, "nothing to resume: " + path + " does not exist");
  json m;
  try {
    m = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kDigestMismatch, path + ": unreadable manifest: " + e.what());
  }
  if (!m.contains("inputs") || !m["inputs"].is_object()) {
    Fail(ErrorCode::kDigestMismatch, path + ": manifest has no input digests");
  }
  for (const auto& [file, digest] : m["inputs"].items()) {
    if (!fs::exists(file)) Fail(ErrorCode::kDigestMismatch, "input disappeared since the run: " + file);
    if (!digest.is_string() || FileDigest(file) != digest.get<std::string>()) {
      Fail(ErrorCode::kDigestMismatch, "input changed since the run: " + file);
    }
  }
  for (const auto& [file, digest] : InputDigests(config)) {
    if (!m["inputs"].contains(file)) Fail(ErrorCode::kDigestMismatch, "input not part of the run: " + file);
  }
}

EncoderConfig EncoderConfigFrom(const Config& config) {
  EncoderConfig c;
  long chunk = config.GetInt("chunk_size");
  if (chunk < 1) Fail(ErrorCode::kInvalidArgument, "chunk_size must be >= 1");
  c.chunk_size = size_t(chunk);
  c.d_chunk = int(config.GetInt("d_chunk"));
  c.d_hidden = int(config.GetInt("d_hidden"));
  c.d_doc = int(config.GetInt("d_doc"));
  if (c.d_chunk < 1 || c.d_hidden < 1 || c.d_doc < 1 || c.d_doc > 2 * c.d_hidden) {
    Fail(ErrorCode::kInvalidArgument, "encoder widths must be positive with d_doc <= 2 * d_hidden");
  }
  return c;
}

std::unique_ptr<ChunkEmbedder> MakeBackend(const Config& config) {
  std::string backend = config.GetString("backend");
  if (backend == "hash") {
    return std::make_unique<HashingEmbedder>(int(config.GetInt("d_chunk")),
                                             uint64_t(config.GetInt("seed")));
  }
  if (backend == "external") {
    std::string path = config.GetString("external_embeddings");
    if (path.empty() || !fs::exists(path)) {
      Fail(ErrorCode::kMissingResource, "external backend needs external_embeddings (chunk cache)");
    }
    return std::make_unique<TableEmbedder>(EmbeddingTable::Load(path));
  }
  Fail(ErrorCode::kInvalidArgument, "unknown backend '" + backend + "' (expected hash or external)");
}

EmbeddingTable EncodeCorpus(const Corpus& corpus, DocKind kind, const Encoder& encoder,
                            const ChunkEmbedder& backend, const Roster* mask_roster) {
  EmbeddingTable table(encoder.config.d_doc);
  if (kind == DocKind::kBill) {
    for (const Bill& b : corpus.bills) table.Put(b.bill_id, encoder.Encode(b.text, b.bill_id, backend));
  } else {
    for (const Speech& s : corpus.speeches) {
      const Speech masked = mask_roster ? MaskAllCitations(s, *mask_roster) : s;
      table.Put(s.speech_id, encoder.Encode(masked.text, s.speech_id, backend));
    }
  }
  return table;
}

Prepared PrepareCongress(const Corpus& all, int congress, const Config& config,
                         const GraphOptions& options) {
  Prepared p;
  p.congress = congress;
  p.corpus = FilterBills(RestrictToCongress(all, congress), int(config.GetInt("min_cosponsors")));
  p.split = TimeSplit(p.corpus, FractionsFrom(config));
  p.bill_encoder = LoadEncoder(DocKind::kBill, config);
  p.speech_encoder = LoadEncoder(DocKind::kSpeech, config);

  std::unique_ptr<ChunkEmbedder> backend;
  auto backend_ref = [&]() -> const ChunkEmbedder& {
    if (!backend) backend = MakeBackend(config);
    return *backend;
  };
  Roster roster = Roster::ForCongress(p.corpus.legislators, congress, AliasesFrom(config));
  const Roster* mask = config.GetBool("mask_citations") ? &roster : nullptr;

  auto cached = [&](const char* key) -> std::optional<EmbeddingTable> {
    std::string path = config.GetString(key);
    if (path.empty() || !fs::exists(path)) return std::nullopt;
    return EmbeddingTable::Load(path);
  };
  if (auto t = cached("bill_cache")) {
    p.bills = std::move(*t);
  } else {
    p.bills = EncodeCorpus(p.corpus, DocKind::kBill, p.bill_encoder, backend_ref(), nullptr);
  }
  if (auto t = cached("speech_cache")) {
    p.speeches = std::move(*t);
  } else {
    p.speeches = EncodeCorpus(p.corpus, DocKind::kSpeech, p.speech_encoder, backend_ref(), mask);
  }

  GraphOptions opts = options;
  opts.include_eval_speeches = config.GetBool("include_eval_speeches");
  if (opts.seed == 0) opts.seed = uint64_t(config.GetInt("seed"));
  p.graph = BuildGraph(p.corpus, p.split, p.bills, p.speeches, opts);

  if (config.GetBool("train_encoder")) {
    auto in = std::make_unique<EncoderInputs>();
    in->bill = p.bill_encoder;
    in->speech = p.speech_encoder;
    for (int node : p.graph.NodesOf(NodeType::kBill)) {
      const Bill& b = p.corpus.GetBill(p.graph.Ref(node).key);
      in->bill_chunks.push_back(p.bill_encoder.EmbedChunks(b.text, b.bill_id, backend_ref()));
    }
    for (int node : p.graph.NodesOf(NodeType::kSpeech)) {
      const Speech* s = p.corpus.FindSpeech(p.graph.Ref(node).key);
      const Speech masked = mask ? MaskAllCitations(*s, *mask) : *s;
      in->speech_chunks.push_back(p.speech_encoder.EmbedChunks(masked.text, s->speech_id, backend_ref()));
    }
    p.encoder_inputs = std::move(in);
  }
  return p;
}

std::vector<Prepared> PrepareAll(const Config& config, const GraphOptions& options) {
  std::string path = config.GetString("corpus");
  if (path.empty()) Fail(ErrorCode::kInvalidArgument, "no corpus configured (set corpus = \"DIR\")");
  std::map<int, Corpus> set = LoadCorpusSet(path);
  const int wanted = int(config.GetInt("congress"));
  std::vector<Prepared> out;
  for (const auto& [congress, corpus] : set) {
    if (wanted != 0 && congress != wanted) continue;
    out.push_back(PrepareCongress(corpus, congress, config, options));
  }
  if (out.empty()) Fail(ErrorCode::kEmptyCongress, "no Congress " + std::to_string(wanted) + " in " + path);
  return out;
}

// ---------------------------------------------------------------------------
// corpus

std::string CorpusValidate(const std::string& path) {
  IntegrityReport report;
  auto set = LoadCorpusSet(path, &report);
  json j = {{"path", path},
            {"valid", true},
            {"congresses", json::array()},
            {"legislators", report.legislators},
            {"bills", report.bills},
            {"speeches", report.speeches},
            {"cosponsorships", report.cosponsorships},
            {"votes", report.votes},
            {"kind_disagreements", report.kind_disagreements},
            {"warnings", report.warnings}};
  for (const auto& [congress, c] : set) j["congresses"].push_back(congress);
  return j.dump(2);
}

std::string CorpusStats(const std::string& path) {
  auto set = LoadCorpusSet(path);
  json j = json::object();
  for (const auto& [congress, corpus] : set) {
    for (const auto& [c, s] : ComputeStats(corpus)) {
      j[std::to_string(c)] = {{"legislators", s.legislators},
                              {"bills", s.bills},
                              {"active", s.active},
                              {"passive", s.passive},
                              {"speeches", s.speeches},
                              {"votes", s.votes},
                              {"speeches_per_legislator", s.speeches_per_legislator},
                              {"mean_speech_words", s.speech_words}};
    }
  }
  return j.dump(2);
}

std::string CorpusSplit(const RunContext& ctx) {
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  const Config& config = ctx.config;
  std::string path = config.GetString("corpus");
  if (path.empty()) Fail(ErrorCode::kInvalidArgument, "no corpus configured");
  auto set = LoadCorpusSet(path);
  SplitFractions fractions = FractionsFrom(config);
  json summary = json::object();
  std::string rows;
  for (const auto& [congress, all] : set) {
    Corpus c = FilterBills(all, int(config.GetInt("min_cosponsors")));
    SplitAssignment split = TimeSplit(c, fractions);
    for (size_t i = 0; i < c.cosponsorships.size(); ++i) {
      const auto& r = c.cosponsorships[i];
      json row = {{"congress", congress}, {"bill_id", r.bill_id}, {"legislator_id", r.legislator_id},
                  {"signature_date", r.signature_date.ToString()}, {"kind", KindName(r.kind)},
                  {"split", SplitName(split.cosponsorships[i])}};
      rows += row.dump() + "\n";
    }
    auto counts = split.cosponsorship_counts.count(congress) ? split.cosponsorship_counts.at(congress)
                                                             : std::array<size_t, 3>{0, 0, 0};
    summary[std::to_string(congress)] = {{"bills", c.bills.size()},
                                         {"train", counts[0]},
                                         {"validation", counts[1]},
                                         {"test", counts[2]}};
  }
  if (!ctx.out_dir.empty()) {
    WriteFile(Join(ctx.out_dir, "splits.jsonl"), rows);
    WriteJson(Join(ctx.out_dir, "summary.json"), summary);
  }
  manifest.Finish();
  return summary.dump(2);
}

std::string CorpusSynth(const std::string& out_dir, const std::string& pattern, uint64_t seed,
                        int legislators, int bills, int speeches) {
  SynthOptions o;
  if (pattern == "planted") {
    o.pattern = SynthPattern::kPlanted;
  } else if (pattern == "party") {
    o.pattern = SynthPattern::kParty;
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown pattern '" + pattern + "' (expected planted or party)");
  }
  o.seed = seed;
  o.legislators = legislators;
  o.bills = bills;
  o.speeches = speeches;
  SynthCorpus synth = GenerateCorpus(o);
  WriteSynthCorpus(synth, out_dir, seed);
  json j = {{"out", out_dir},
            {"pattern", pattern},
            {"seed", seed},
            {"legislators", synth.corpus.legislators.size()},
            {"bills", synth.corpus.bills.size()},
            {"speeches", synth.corpus.speeches.size()},
            {"cosponsorships", synth.corpus.cosponsorships.size()},
            {"votes", synth.corpus.votes.size()}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// parse

std::string ParseEditions(const std::string& in_dir, const std::string& roster_path,
                          const std::string& out_dir, const std::string& aliases_path) {
  if (!fs::is_directory(in_dir)) Fail(ErrorCode::kIo, "not a directory: " + in_dir);
  std::vector<Legislator> legislators = LoadLegislators(roster_path);
  AliasTable aliases = aliases_path.empty() ? AliasTable() : LoadAliasTable(aliases_path);
  static const std::regex kName(R"(CREC-(\d{4}-\d{2}-\d{2})\.txt)");
  std::vector<std::pair<std::string, Date>> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    std::smatch m;
    std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, kName)) files.push_back({entry.path().string(), Date::Parse(m[1].str())});
  }
  std::sort(files.begin(), files.end());

  RuleBasedTagger tagger;
  std::string speeches_out, citations_out;
  json editions = json::array();
  SpeechFilterReport total;
  size_t segments_total = 0, unresolved_total = 0, citations_total = 0;
  for (const auto& [path, date] : files) {
    DailyEdition edition{date, ReadFile(path)};
    auto segments = SegmentEdition(edition, tagger);
    Roster roster = Roster::ForCongress(legislators, date.CongressNumber(), aliases);
    SpeechFilterReport report;
    std::string prefix = "CREC-" + date.ToString();
    auto speeches = FilterSpeeches(segments, roster, prefix, &report);
    size_t unresolved = 0, cites = 0;
    for (Speech& s : speeches) {
      size_t u = 0;
      s.cited_ids = ExtractCitations(s, roster, tagger, &u);
      unresolved += u;
      json j = {{"speech_id", s.speech_id}, {"author_id", s.author_id}, {"date", s.date.ToString()},
                {"text", s.text},           {"cited_ids", s.cited_ids}};
      speeches_out += j.dump() + "\n";
      for (const auto& cited : s.cited_ids) {
        json c = {{"citing_id", s.author_id}, {"cited_id", cited}, {"speech_id", s.speech_id}};
        citations_out += c.dump() + "\n";
        ++cites;
      }
    }
    size_t authored = 0;
    for (const auto& seg : segments) authored += seg.is_preamble() ? 0 : 1;
    editions.push_back({{"file", fs::path(path).filename().string()},
                        {"segments", authored},
                        {"kept", report.kept},
                        {"no_author", report.no_author},
                        {"too_short", report.too_short},
                        {"too_long", report.too_long},
                        {"citations", cites},
                        {"unresolved_mentions", unresolved}});
    segments_total += authored;
    total.kept += report.kept;
    total.no_author += report.no_author;
    total.too_short += report.too_short;
    total.too_long += report.too_long;
    unresolved_total += unresolved;
    citations_total += cites;
  }
  json summary = {{"editions", files.size()},
                  {"segments", segments_total},
                  {"kept", total.kept},
                  {"dropped",
                   {{"no_author", total.no_author},
                    {"too_short", total.too_short},
                    {"too_long", total.too_long}}},
                  {"citations", citations_total},
                  {"unresolved_mentions", unresolved_total},
                  {"per_edition", editions}};
  fs::create_directories(out_dir);
  WriteFile(Join(out_dir, "speeches.jsonl"), speeches_out);
  WriteFile(Join(out_dir, "citations.jsonl"), citations_out);
  WriteJson(Join(out_dir, "drop_report.json"), summary);
  summary.erase("per_edition");
  return summary.dump(2);
}

// ---------------------------------------------------------------------------
// encode, graph

std::string EncodeDocuments(const RunContext& ctx, const std::string& kind_name,
                            const std::string& cache_path) {
  DocKind kind;
  if (kind_name == "bill") {
    kind = DocKind::kBill;
  } else if (kind_name == "speech") {
    kind = DocKind::kSpeech;
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown kind '" + kind_name + "' (expected bill or speech)");
  }
  if (cache_path.empty()) Fail(ErrorCode::kInvalidArgument, "encode needs a cache path");
  ManifestWriter manifest(ctx, cache_path + ".manifest.json");
  const Config& config = ctx.config;
  std::string path = config.GetString("corpus");
  if (path.empty()) Fail(ErrorCode::kInvalidArgument, "no corpus configured");
  auto set = LoadCorpusSet(path);
  Encoder encoder = LoadEncoder(kind, config);
  auto backend = MakeBackend(config);
  EmbeddingTable table(encoder.config.d_doc);
  const int wanted = int(config.GetInt("congress"));
  for (const auto& [congress, corpus] : set) {
    if (wanted != 0 && congress != wanted) continue;
    Roster roster = Roster::ForCongress(corpus.legislators, congress, AliasesFrom(config));
    const Roster* mask = kind == DocKind::kSpeech && config.GetBool("mask_citations") ? &roster : nullptr;
    EmbeddingTable part = EncodeCorpus(corpus, kind, encoder, *backend, mask);
    for (const auto& key : part.keys()) table.Put(key, part.Get(key));
  }
  fs::path parent = fs::path(cache_path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  table.Save(cache_path);
  manifest.Finish();
  json j = {{"kind", kind_name}, {"documents", table.size()}, {"width", table.width()},
            {"backend", config.GetString("backend")}, {"cache", cache_path}};
  return j.dump(2);
}

std::string GraphBuild(const RunContext& ctx, const std::string& split) {
  if (split != "train") {
    Fail(ErrorCode::kInvalidArgument, "graph build admits labeled edges from the train split only");
  }
  if (ctx.out_dir.empty()) Fail(ErrorCode::kInvalidArgument, "graph build needs an output directory");
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  json summary = json::object();
  for (Prepared& p : PrepareAll(ctx.config)) {
    auto leaked = FindLeakedPairs(p.graph, p.corpus, p.split);
    if (!leaked.empty()) Fail(ErrorCode::kLeakageDetected, "held-out pair in graph: " + leaked.front());
    p.graph.Save(Join(CongressDir(ctx.out_dir, p.congress), "graph"));
    json nodes = json::object(), edges = json::object();
    for (int t = 0; t < kNumNodeTypes; ++t) nodes[NodeTypeName(NodeType(t))] = p.graph.CountOf(NodeType(t));
    for (int r = 0; r < 5; ++r) edges[RelationName(Relation(r))] = p.graph.CountEdges(Relation(r));
    summary[std::to_string(p.congress)] = {{"nodes", nodes}, {"edges", edges}};
  }
  WriteJson(Join(ctx.out_dir, "summary.json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

// ---------------------------------------------------------------------------
// train

namespace {

json TrainOne(const Prepared& p, const TrainConfig& tc, const std::string& dir, bool resume,
              std::vector<HistoryRow>* history_out, bool* diverged) {
  Trainer trainer(p.graph, p.corpus, p.split, tc, p.encoder_inputs.get());
  std::string last = Join(dir, "checkpoint-last.bin");
  TensorMap init = resume && fs::exists(last) ? LoadTensors(last) : trainer.InitialParams();
  TrainResult result = trainer.Train(init);
  *diverged = result.diverged;
  *history_out = result.history;

  SaveTensors(Join(dir, "checkpoint-best.bin"), result.best_params);
  SaveTensors(last, result.last_params);
  WriteFile(Join(dir, "history.csv"), HistoryCsv(result.history));
  std::vector<TrainingExample> auth, cit;
  for (const auto& e : result.aux_examples) (e.task == Task::kAuthorship ? auth : cit).push_back(e);
  if (!auth.empty()) WriteAuxExamples(Join(dir, "aux-auth.jsonl"), p.graph, auth, tc.seed);
  if (!cit.empty()) WriteAuxExamples(Join(dir, "aux-cit.jsonl"), p.graph, cit, tc.seed);

  Matrix reps = trainer.Representations(result.best_params);
  EvalReport val = trainer.EvaluateWith(reps, result.best_params, Split::kValidation);
  EvalReport test = trainer.EvaluateWith(reps, result.best_params, Split::kTest);
  WriteFile(Join(dir, "predictions-test.csv"), PredictionsCsv(test.predictions));
  json m = {{"congress", p.congress},
            {"best_epoch", result.best_epoch},
            {"best_validation_f1", result.best_validation_f1},
            {"epochs_run", result.epochs_run},
            {"stop_reason", result.stop_reason},
            {"diverged", result.diverged},
            {"validation", MetricsJson(val.metrics)},
            {"test", MetricsJson(test.metrics)},
            {"aux_examples", result.aux_examples.size()},
            {"skipped_auth", result.skipped_auth},
            {"skipped_cit", result.skipped_cit}};
  WriteJson(Join(dir, "metrics.json"), m);
  return m;
}

// Best-checkpoint representations of every prepared Congress: loaded from
// run_dir when given, otherwise trained into out_dir.
std::vector<Matrix> Representations(const std::vector<Prepared>& preps, const TrainConfig& tc,
                                    const std::string& run_dir, const std::string& out_dir) {
  std::vector<Matrix> out;
  for (const Prepared& p : preps) {
    Trainer trainer(p.graph, p.corpus, p.split, tc, p.encoder_inputs.get());
    TensorMap params;
    if (!run_dir.empty()) {
      std::string path = Join(Join(run_dir, "c" + std::to_string(p.congress)), "checkpoint-best.bin");
      if (!fs::exists(path)) Fail(ErrorCode::kMissingResource, "no checkpoint: " + path);
      params = LoadTensors(path);
    } else {
      TrainResult r = trainer.Train();
      if (r.diverged) Fail(ErrorCode::kDivergence, "training diverged: " + r.stop_reason);
      params = r.best_params;
      SaveTensors(Join(CongressDir(out_dir, p.congress), "checkpoint-best.bin"), params);
    }
    out.push_back(trainer.Representations(params));
  }
  return out;
}

// Data config for commands that reuse a finished run.
Config DataConfig(const RunContext& ctx, const std::string& run_dir) {
  if (run_dir.empty()) return ctx.config;
  std::string path = Join(run_dir, "config.toml");
  if (!fs::exists(path)) Fail(ErrorCode::kMissingResource, "not a run directory: " + run_dir);
  return Config::FromFile(path);
}

// Data rows of a CSV (header dropped), each with a prefix.
std::string PrefixRows(const std::string& csv, const std::string& prefix) {
  std::string out;
  size_t pos = csv.find('\n');
  while (pos != std::string::npos && pos + 1 < csv.size()) {
    size_t next = csv.find('\n', pos + 1);
    std::string line = csv.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
    if (!line.empty()) out += prefix + line + "\n";
    pos = next;
  }
  return out;
}

void RequireOut(const RunContext& ctx) {
  if (ctx.out_dir.empty()) Fail(ErrorCode::kInvalidArgument, ctx.command + " needs an output directory");
  fs::create_directories(ctx.out_dir);
}

}  // namespace

std::string TrainRun(const RunContext& ctx) {
  RequireOut(ctx);
  if (ctx.resume) VerifyManifest(ctx.out_dir, ctx.config);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  WriteFile(Join(ctx.out_dir, "config.toml"), ctx.config.Dump());
  TrainConfig tc = TrainConfig::FromConfig(ctx.config);
  json summary = {{"runs", json::array()}};
  std::string history = "congress,epoch,split,task,loss,f1\n";
  bool any_diverged = false;
  for (const Prepared& p : PrepareAll(ctx.config)) {
    std::string dir = CongressDir(ctx.out_dir, p.congress);
    std::string metrics = Join(dir, "metrics.json");
    std::vector<HistoryRow> rows;
    json m;
    if (ctx.resume && fs::exists(metrics)) {
      m = json::parse(ReadFile(metrics));
      // Reuse the stored history of a finished Congress.
      history += PrefixRows(ReadFile(Join(dir, "history.csv")), std::to_string(p.congress) + ",");
    } else {
      bool diverged = false;
      m = TrainOne(p, tc, dir, ctx.resume, &rows, &diverged);
      any_diverged |= diverged;
      history += PrefixRows(HistoryCsv(rows), std::to_string(p.congress) + ",");
    }
    summary["runs"].push_back(m);
  }
  WriteFile(Join(ctx.out_dir, "history.csv"), history);
  WriteJson(Join(ctx.out_dir, "summary.json"), summary);
  manifest.Finish(any_diverged ? "diverged" : "ok");
  if (any_diverged) {
    Fail(ErrorCode::kDivergence, "training diverged; last good checkpoint kept in " + ctx.out_dir);
  }
  return summary.dump(2);
}

// ---------------------------------------------------------------------------
// eval

std::string EvalBaseline(const RunContext& ctx, const std::string& name) {
  RequireOut(ctx);
  const BaselineSpec& spec = FindBaseline(name);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  const Config& config = ctx.config;
  TrainConfig tc = TrainConfig::FromConfig(config);
  std::string csv = "congress,baseline,split,precision,recall,f1\n";
  json summary = {{"baseline", spec.id}, {"name", spec.name}, {"classifier", spec.classifier},
                  {"congresses", json::array()}};
  for (const Prepared& p : PrepareAll(config)) {
    BaselineInputs in;
    in.corpus = &p.corpus;
    in.split = &p.split;
    in.bill_embeddings = &p.bills;
    in.speech_embeddings = &p.speeches;
    in.ideology_path = ResourcePath(config, "ideology_scores", "ideology.txt");
    in.word_vectors_path = ResourcePath(config, "word_vectors", "word_vectors.txt");
    in.forest.trees = int(config.GetInt("rf_trees"));
    in.forest.seed = tc.seed;
    in.mlp.hidden = {};
    in.mlp.dropout = 0.0;
    in.mlp.epochs = int(config.GetInt("baseline_epochs"));
    in.mlp.learning_rate = config.GetDouble("baseline_learning_rate");
    in.mlp.seed = tc.seed;
    in.train = tc;
    if ((spec.id == "B1" && in.ideology_path.empty()) || (spec.id == "B3" && in.word_vectors_path.empty())) {
      Fail(ErrorCode::kMissingResource, spec.id + " needs " +
                                            (spec.id == "B1" ? "ideology_scores" : "word_vectors"));
    }
    BaselineReport r = RunBaseline(spec.id, in);
    for (const auto& [split, m] : {std::pair{"validation", r.validation}, std::pair{"test", r.test}}) {
      csv += std::to_string(p.congress) + "," + r.id + "," + split + "," + FormatDouble(m.precision) +
             "," + FormatDouble(m.recall) + "," + FormatDouble(m.f1) + "\n";
    }
    WriteFile(Join(CongressDir(ctx.out_dir, p.congress), "baseline-" + r.id + "-predictions.csv"),
              PredictionsCsv(r.test_predictions));
    json c = {{"congress", p.congress}, {"validation", MetricsJson(r.validation)},
              {"test", MetricsJson(r.test)}};
    if (!r.node_counts.empty()) c["node_counts"] = r.node_counts;
    summary["congresses"].push_back(c);
  }
  WriteFile(Join(ctx.out_dir, "baseline-" + spec.id + ".csv"), csv);
  WriteJson(Join(ctx.out_dir, "baseline-" + spec.id + ".json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

std::string EvalAblate(const RunContext& ctx) {
  RequireOut(ctx);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  TrainConfig tc = TrainConfig::FromConfig(ctx.config);
  std::vector<Prepared> preps = PrepareAll(ctx.config);
  std::vector<AblationInput> inputs;
  for (const Prepared& p : preps) inputs.push_back({p.congress, &p.graph, &p.corpus, &p.split});
  AblationTable table = RunAblation(inputs, tc);
  WriteFile(Join(ctx.out_dir, "ablation.csv"), table.Csv());
  json summary = {{"configs", table.configs}, {"congresses", table.congresses}, {"test_f1", table.f1},
                  {"average", table.Average()}};
  WriteJson(Join(ctx.out_dir, "ablation.json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

std::string EvalRollcall(const RunContext& ctx, const std::string& run_dir) {
  RequireOut(ctx);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  Config data = DataConfig(ctx, run_dir);
  TrainConfig tc = TrainConfig::FromConfig(data);
  std::vector<Prepared> preps = PrepareAll(data);
  std::vector<Matrix> reps = Representations(preps, tc, run_dir, ctx.out_dir);
  const Config& config = ctx.config;
  MlpConfig mlp;
  int hidden = int(config.GetInt("rollcall_hidden"));
  mlp.hidden = {hidden, hidden};
  mlp.dropout = 0.2;
  mlp.epochs = int(config.GetInt("rollcall_epochs"));
  mlp.learning_rate = config.GetDouble("rollcall_learning_rate");
  mlp.seed = uint64_t(config.GetInt("seed"));
  std::string csv = "congress,model,split,precision,recall,f1\n";
  json summary = {{"congresses", json::array()}};
  for (size_t i = 0; i < preps.size(); ++i) {
    const Prepared& p = preps[i];
    size_t excluded = 0;
    auto dataset = BuildRollCallDataset(p.corpus, p.graph, p.split, &excluded);
    AssertNoLeakage(dataset, p.corpus, p.graph);
    RollCallReport r = TrainRollCall(reps[i], p.graph, dataset, p.corpus, mlp);
    auto row = [&](const char* model, const char* split, const BinaryMetrics& m) {
      csv += std::to_string(p.congress) + "," + model + "," + split + "," + FormatDouble(m.precision) +
             "," + FormatDouble(m.recall) + "," + FormatDouble(m.f1) + "\n";
    };
    row("rgcn-mlp", "validation", r.validation);
    row("rgcn-mlp", "test", r.test);
    row("majority", "test", r.majority_test);
    WriteFile(Join(CongressDir(ctx.out_dir, p.congress), "rollcall-predictions.csv"),
              PredictionsCsv(r.test_predictions));
    summary["congresses"].push_back({{"congress", p.congress},
                                     {"examples", r.examples},
                                     {"excluded_cosponsored", r.excluded},
                                     {"validation", MetricsJson(r.validation)},
                                     {"test", MetricsJson(r.test)},
                                     {"majority_test", MetricsJson(r.majority_test)}});
  }
  WriteFile(Join(ctx.out_dir, "rollcall.csv"), csv);
  WriteJson(Join(ctx.out_dir, "rollcall.json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

// ---------------------------------------------------------------------------
// analyze

std::string AnalyzeSimilarity(const RunContext& ctx, const std::string& run_dir) {
  RequireOut(ctx);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  Config data = DataConfig(ctx, run_dir);
  TrainConfig tc = TrainConfig::FromConfig(data);
  std::vector<Prepared> preps = PrepareAll(data);
  std::vector<Matrix> reps = Representations(preps, tc, run_dir, ctx.out_dir);
  json summary = {{"congresses", json::array()}};
  for (size_t i = 0; i < preps.size(); ++i) {
    const Prepared& p = preps[i];
    auto records = SimilarityAnalysis(reps[i], p.graph, p.corpus, p.split, Split::kTest);
    std::string dir = CongressDir(ctx.out_dir, p.congress);
    WriteFile(Join(dir, "similarity.csv"), SimilarityCsv(records));
    auto densities = SimilarityDensities(records);
    WriteFile(Join(dir, "similarity-density.csv"), DensityCsv(densities));
    json groups = json::object();
    for (const auto& [name, d] : densities) {
      std::vector<double> values;
      for (const auto& r : records) {
        std::string kind = KindName(r.kind);
        if (name == kind + "_sponsor") values.push_back(r.to_sponsor);
        if (name == kind + "_bill") values.push_back(r.to_bill);
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      groups[name] = {{"count", values.size()},
                      {"mean", values.empty() ? 0.0 : mean / double(values.size())},
                      {"bandwidth", d.bandwidth},
                      {"integral", Integrate(d)}};
    }
    summary["congresses"].push_back({{"congress", p.congress}, {"records", records.size()}, {"groups", groups}});
  }
  WriteJson(Join(ctx.out_dir, "similarity.json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

std::string AnalyzeProject(const RunContext& ctx, const std::string& run_dir) {
  RequireOut(ctx);
  ManifestWriter manifest(ctx, ManifestPath(ctx));
  Config data = DataConfig(ctx, run_dir);
  TrainConfig tc = TrainConfig::FromConfig(data);
  std::vector<Prepared> preps = PrepareAll(data);
  std::vector<Matrix> reps = Representations(preps, tc, run_dir, ctx.out_dir);
  auto projector = MakeProjector(ctx.config.GetString("projection"), ctx.config.GetDouble("tsne_perplexity"),
                                 int(ctx.config.GetInt("tsne_iterations")));
  json summary = {{"projection", projector->name()}, {"congresses", json::array()}};
  for (size_t i = 0; i < preps.size(); ++i) {
    const Prepared& p = preps[i];
    std::string csv = ProjectLegislators(reps[i], p.graph, p.corpus, *projector);
    WriteFile(Join(CongressDir(ctx.out_dir, p.congress), "projection.csv"), csv);
    summary["congresses"].push_back({{"congress", p.congress}, {"legislators", p.corpus.legislators.size()}});
  }
  WriteJson(Join(ctx.out_dir, "projection.json"), summary);
  manifest.Finish();
  return summary.dump(2);
}

}  // namespace legis
