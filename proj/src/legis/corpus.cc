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

#include "legis/corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "json.hpp"

namespace legis {

namespace fs = std::filesystem;
using nlohmann::json;

const char* PartyName(Party p) {
  switch (p) {
    case Party::kDemocrat: return "Democrat";
    case Party::kRepublican: return "Republican";
    case Party::kOther: return "Other";
  }
  return "Other";
}

Party ParseParty(std::string_view text) {
  std::string t = ToLower(Trim(text));
  if (t == "democrat" || t == "democratic" || t == "d" || t == "dem") return Party::kDemocrat;
  if (t == "republican" || t == "r" || t == "rep" || t == "gop") return Party::kRepublican;
  return Party::kOther;
}

const char* GenderName(Gender g) {
  switch (g) {
    case Gender::kMale: return "M";
    case Gender::kFemale: return "F";
    case Gender::kUnknown: return "U";
  }
  return "U";
}

static Gender ParseGender(std::string_view text) {
  std::string t = ToLower(Trim(text));
  if (t == "m" || t == "male") return Gender::kMale;
  if (t == "f" || t == "female") return Gender::kFemale;
  return Gender::kUnknown;
}

const char* KindName(CosponsorKind k) {
  return k == CosponsorKind::kActive ? "active" : "passive";
}

const char* SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "train";
}

// ---------------------------------------------------------------------------
// Indexing and integrity

void Corpus::Reindex() {
  legislator_index_.clear();
  bill_index_.clear();
  speech_index_.clear();
  for (size_t i = 0; i < legislators.size(); ++i) {
    const Legislator& l = legislators[i];
    if (l.bioguide_id.empty()) Fail(ErrorCode::kSchema, "legislator with empty bioguide_id");
    if (l.age <= 0) Fail(ErrorCode::kSchema, "legislator " + l.bioguide_id + " has age <= 0");
    if (!legislator_index_.emplace(l.bioguide_id, i).second) {
      Fail(ErrorCode::kSchema, "duplicate bioguide_id " + l.bioguide_id);
    }
  }
  for (size_t i = 0; i < bills.size(); ++i) {
    const Bill& b = bills[i];
    if (b.text.empty()) Fail(ErrorCode::kSchema, "bill " + b.bill_id + " has empty text");
    if (!legislator_index_.count(b.sponsor_id)) {
      Fail(ErrorCode::kDanglingReference,
           "bill " + b.bill_id + " references unknown sponsor " + b.sponsor_id);
    }
    if (!bill_index_.emplace(b.bill_id, i).second) {
      Fail(ErrorCode::kSchema, "duplicate bill_id " + b.bill_id);
    }
  }
  for (size_t i = 0; i < speeches.size(); ++i) {
    const Speech& s = speeches[i];
    if (!legislator_index_.count(s.author_id)) {
      Fail(ErrorCode::kDanglingReference,
           "speech " + s.speech_id + " references unknown author " + s.author_id);
    }
    for (const auto& c : s.cited_ids) {
      if (!legislator_index_.count(c)) {
        Fail(ErrorCode::kDanglingReference,
             "speech " + s.speech_id + " cites unknown legislator " + c);
      }
    }
    if (!speech_index_.emplace(s.speech_id, i).second) {
      Fail(ErrorCode::kSchema, "duplicate speech_id " + s.speech_id);
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& c : cosponsorships) {
    auto b = bill_index_.find(c.bill_id);
    if (b == bill_index_.end()) {
      Fail(ErrorCode::kDanglingReference, "cosponsorship references unknown bill " + c.bill_id);
    }
    if (!legislator_index_.count(c.legislator_id)) {
      Fail(ErrorCode::kDanglingReference,
           "cosponsorship references unknown legislator " + c.legislator_id);
    }
    if (bills[b->second].sponsor_id == c.legislator_id) {
      Fail(ErrorCode::kSchema,
           "sponsor " + c.legislator_id + " listed as cosponsor of " + c.bill_id);
    }
    if (!seen.emplace(c.bill_id, c.legislator_id).second) {
      Fail(ErrorCode::kSchema,
           "duplicate cosponsorship " + c.bill_id + "/" + c.legislator_id);
    }
  }
  seen.clear();
  for (const auto& v : votes) {
    if (!bill_index_.count(v.bill_id)) {
      Fail(ErrorCode::kDanglingReference, "vote references unknown bill " + v.bill_id);
    }
    if (!legislator_index_.count(v.legislator_id)) {
      Fail(ErrorCode::kDanglingReference, "vote references unknown legislator " + v.legislator_id);
    }
    if (!seen.emplace(v.bill_id, v.legislator_id).second) {
      Fail(ErrorCode::kSchema, "duplicate vote " + v.bill_id + "/" + v.legislator_id);
    }
  }
}

const Legislator* Corpus::FindLegislator(const std::string& id) const {
  auto it = legislator_index_.find(id);
  return it == legislator_index_.end() ? nullptr : &legislators[it->second];
}

const Bill* Corpus::FindBill(const std::string& id) const {
  auto it = bill_index_.find(id);
  return it == bill_index_.end() ? nullptr : &bills[it->second];
}

const Speech* Corpus::FindSpeech(const std::string& id) const {
  auto it = speech_index_.find(id);
  return it == speech_index_.end() ? nullptr : &speeches[it->second];
}

const Legislator& Corpus::GetLegislator(const std::string& id) const {
  const Legislator* l = FindLegislator(id);
  if (!l) Fail(ErrorCode::kDanglingReference, "unknown legislator " + id);
  return *l;
}

const Bill& Corpus::GetBill(const std::string& id) const {
  const Bill* b = FindBill(id);
  if (!b) Fail(ErrorCode::kDanglingReference, "unknown bill " + id);
  return *b;
}

std::vector<int> Corpus::Congresses() const {
  std::set<int> c;
  for (const auto& l : legislators) c.insert(l.congress);
  for (const auto& b : bills) c.insert(b.congress);
  return {c.begin(), c.end()};
}

// ---------------------------------------------------------------------------
// Loading

namespace {

class RecordReader {
 public:
  RecordReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {}

  std::string Str(const char* field, bool required = true) const {
    auto it = j_.find(field);
    if (it == j_.end() || it->is_null()) {
      if (required) Missing(field);
      return "";
    }
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    Bad(field, "a string");
  }

  int Int(const char* field) const {
    auto it = j_.find(field);
    if (it == j_.end()) Missing(field);
    if (it->is_number_integer()) return it->get<int>();
    if (it->is_string()) {
      try {
        return std::stoi(it->get<std::string>());
      } catch (const std::exception&) {
      }
    }
    Bad(field, "an integer");
  }

  Date DateField(const char* field) const {
    std::string s = Str(field);
    try {
      return Date::Parse(s);
    } catch (const Error& e) {
      Fail(ErrorCode::kSchema, where_ + ": field '" + field + "': " + e.what());
    }
  }

  std::vector<std::string> StrList(const char* field) const {
    std::vector<std::string> out;
    auto it = j_.find(field);
    if (it == j_.end() || it->is_null()) return out;
    if (!it->is_array()) Bad(field, "an array");
    for (const auto& e : *it) {
      if (!e.is_string()) Bad(field, "an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  bool Has(const char* field) const { return j_.contains(field) && !j_[field].is_null(); }

  [[noreturn]] void Missing(const char* field) const {
    Fail(ErrorCode::kSchema, where_ + ": missing field '" + field + "'");
  }
  [[noreturn]] void Bad(const char* field, const char* what) const {
    Fail(ErrorCode::kSchema, where_ + ": field '" + field + "' must be " + what);
  }
  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
};

template <typename Fn>
void ForEachRecord(const std::string& path, Fn&& fn) {
  std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    std::string where = path + ":" + std::to_string(i + 1);
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::exception& e) {
      Fail(ErrorCode::kSchema, where + ": " + e.what());
    }
    if (!j.is_object()) Fail(ErrorCode::kSchema, where + ": record is not an object");
    fn(RecordReader(j, where));
  }
}

struct FileSet {
  std::string legislators, bills, speeches, cosponsorships, votes;
};

Legislator ReadLegislator(const RecordReader& r) {
  Legislator l;
  l.bioguide_id = r.Str("bioguide_id");
  l.first_name = r.Str("first_name", false);
  l.last_name = r.Str("last_name");
  l.gender = ParseGender(r.Str("gender", false));
  l.age = r.Int("age");
  if (l.age <= 0) Fail(ErrorCode::kSchema, r.where() + ": age must be positive");
  l.party = ParseParty(r.Str("party", false));
  l.state = r.Str("state", false);
  l.district = r.Str("district", false);
  l.congress = r.Int("congress");
  return l;
}

Corpus LoadFiles(const FileSet& files, IntegrityReport* report) {
  Corpus c;
  ForEachRecord(files.legislators,
                [&](const RecordReader& r) { c.legislators.push_back(ReadLegislator(r)); });
  ForEachRecord(files.bills, [&](const RecordReader& r) {
    Bill b;
    b.bill_id = r.Str("bill_id");
    b.title = r.Str("title", false);
    b.introduction_date = r.DateField("introduction_date");
    b.text = r.Str("text");
    if (b.text.empty()) Fail(ErrorCode::kSchema, r.where() + ": empty bill text");
    b.topic = r.Str("topic", false);
    b.sponsor_id = r.Str("sponsor_id");
    b.congress = r.Int("congress");
    c.bills.push_back(std::move(b));
  });
  if (!files.speeches.empty() && fs::exists(files.speeches)) {
    ForEachRecord(files.speeches, [&](const RecordReader& r) {
      Speech s;
      s.speech_id = r.Str("speech_id");
      s.author_id = r.Str("author_id");
      s.date = r.DateField("date");
      s.text = r.Str("text");
      s.cited_ids = r.StrList("cited_ids");
      c.speeches.push_back(std::move(s));
    });
  }
  // Cosponsorship labels need bill dates; index bills first.
  std::unordered_map<std::string, const Bill*> bills;
  for (const auto& b : c.bills) bills.emplace(b.bill_id, &b);
  size_t disagreements = 0;
  std::vector<std::string> warnings;
  ForEachRecord(files.cosponsorships, [&](const RecordReader& r) {
    CosponsorshipRecord rec;
    rec.bill_id = r.Str("bill_id");
    rec.legislator_id = r.Str("legislator_id");
    rec.signature_date = r.DateField("signature_date");
    auto it = bills.find(rec.bill_id);
    if (it == bills.end()) {
      Fail(ErrorCode::kDanglingReference,
           r.where() + ": cosponsorship references unknown bill " + rec.bill_id);
    }
    try {
      rec.kind = AssignKind(rec, *it->second);
    } catch (const Error& e) {
      throw Error(e.code(), r.where() + ": " + e.what());
    }
    if (r.Has("kind")) {
      std::string upstream = ToLower(r.Str("kind"));
      if (upstream != "active" && upstream != "passive") r.Bad("kind", "active or passive");
      if (upstream != KindName(rec.kind)) {
        ++disagreements;
        warnings.push_back(r.where() + ": upstream kind '" + upstream +
                           "' disagrees with dates; using '" + KindName(rec.kind) + "'");
      }
    }
    c.cosponsorships.push_back(std::move(rec));
  });
  if (!files.votes.empty() && fs::exists(files.votes)) {
    ForEachRecord(files.votes, [&](const RecordReader& r) {
      RollCallVote v;
      v.bill_id = r.Str("bill_id");
      v.legislator_id = r.Str("legislator_id");
      std::string choice = ToLower(r.Str("vote"));
      if (choice == "yea" || choice == "yes" || choice == "aye") {
        v.vote = VoteChoice::kYea;
      } else if (choice == "nay" || choice == "no") {
        v.vote = VoteChoice::kNay;
      } else {
        r.Bad("vote", "yea or nay");
      }
      c.votes.push_back(std::move(v));
    });
  }
  c.Reindex();
  if (report) {
    report->legislators += c.legislators.size();
    report->bills += c.bills.size();
    report->speeches += c.speeches.size();
    report->cosponsorships += c.cosponsorships.size();
    report->votes += c.votes.size();
    report->kind_disagreements += disagreements;
    report->warnings.insert(report->warnings.end(), warnings.begin(), warnings.end());
  }
  return c;
}

FileSet DirectoryFiles(const fs::path& dir) {
  FileSet f;
  f.legislators = (dir / "legislators.jsonl").string();
  f.bills = (dir / "bills.jsonl").string();
  f.speeches = (dir / "speeches.jsonl").string();
  f.cosponsorships = (dir / "cosponsorships.jsonl").string();
  f.votes = (dir / "votes.jsonl").string();
  return f;
}

}  // namespace

std::vector<Legislator> LoadLegislators(const std::string& path) {
  std::vector<Legislator> out;
  ForEachRecord(path, [&](const RecordReader& r) { out.push_back(ReadLegislator(r)); });
  return out;
}

Corpus LoadCorpus(const std::string& dir, IntegrityReport* report) {
  if (!fs::is_directory(dir)) Fail(ErrorCode::kIo, "corpus directory not found: " + dir);
  return LoadFiles(DirectoryFiles(dir), report);
}

std::map<int, Corpus> LoadCorpusSet(const std::string& path, IntegrityReport* report) {
  std::map<int, Corpus> out;
  if (fs::is_directory(path)) {
    Corpus all = LoadCorpus(path, report);
    for (int congress : all.Congresses()) out.emplace(congress, RestrictToCongress(all, congress));
    return out;
  }
  if (!fs::exists(path)) Fail(ErrorCode::kIo, "corpus path not found: " + path);
  json manifest;
  try {
    manifest = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchema, path + ": " + e.what());
  }
  if (!manifest.is_object()) Fail(ErrorCode::kSchema, path + ": manifest must be an object");
  fs::path base = fs::path(path).parent_path();
  for (const auto& [key, entry] : manifest.items()) {
    int congress = 0;
    try {
      congress = std::stoi(key);
    } catch (const std::exception&) {
      Fail(ErrorCode::kSchema, path + ": manifest key '" + key + "' is not a Congress number");
    }
    FileSet f;
    if (entry.is_string()) {
      f = DirectoryFiles(base / entry.get<std::string>());
    } else if (entry.is_object()) {
      auto get = [&](const char* name, bool required) -> std::string {
        if (!entry.contains(name)) {
          if (required) Fail(ErrorCode::kSchema, path + ": Congress " + key + " lacks '" + name + "'");
          return "";
        }
        return (base / entry[name].get<std::string>()).string();
      };
      f.legislators = get("legislators", true);
      f.bills = get("bills", true);
      f.cosponsorships = get("cosponsorships", true);
      f.speeches = get("speeches", false);
      f.votes = get("votes", false);
    } else {
      Fail(ErrorCode::kSchema, path + ": Congress " + key + " entry must be a path or object");
    }
    Corpus c = LoadFiles(f, report);
    out.emplace(congress, RestrictToCongress(c, congress));
  }
  return out;
}

void WriteCorpus(const Corpus& corpus, const std::string& dir) {
  fs::create_directories(dir);
  fs::path d(dir);
  std::string out;
  for (const auto& l : corpus.legislators) {
    json j = {{"bioguide_id", l.bioguide_id}, {"first_name", l.first_name},
              {"last_name", l.last_name},     {"gender", GenderName(l.gender)},
              {"age", l.age},                 {"party", PartyName(l.party)},
              {"state", l.state},             {"district", l.district},
              {"congress", l.congress}};
    out += j.dump() + "\n";
  }
  WriteFile((d / "legislators.jsonl").string(), out);
  out.clear();
  for (const auto& b : corpus.bills) {
    json j = {{"bill_id", b.bill_id},
              {"title", b.title},
              {"introduction_date", b.introduction_date.ToString()},
              {"text", b.text},
              {"topic", b.topic},
              {"sponsor_id", b.sponsor_id},
              {"congress", b.congress}};
    out += j.dump() + "\n";
  }
  WriteFile((d / "bills.jsonl").string(), out);
  out.clear();
  for (const auto& s : corpus.speeches) {
    json j = {{"speech_id", s.speech_id},
              {"author_id", s.author_id},
              {"date", s.date.ToString()},
              {"text", s.text},
              {"cited_ids", s.cited_ids}};
    out += j.dump() + "\n";
  }
  WriteFile((d / "speeches.jsonl").string(), out);
  out.clear();
  for (const auto& c : corpus.cosponsorships) {
    json j = {{"bill_id", c.bill_id},
              {"legislator_id", c.legislator_id},
              {"signature_date", c.signature_date.ToString()},
              {"kind", KindName(c.kind)}};
    out += j.dump() + "\n";
  }
  WriteFile((d / "cosponsorships.jsonl").string(), out);
  out.clear();
  for (const auto& v : corpus.votes) {
    json j = {{"bill_id", v.bill_id},
              {"legislator_id", v.legislator_id},
              {"vote", v.vote == VoteChoice::kYea ? "yea" : "nay"}};
    out += j.dump() + "\n";
  }
  WriteFile((d / "votes.jsonl").string(), out);
}

Corpus RestrictToCongress(const Corpus& corpus, int congress) {
  Corpus out;
  std::set<std::string> members;
  for (const auto& l : corpus.legislators) {
    if (l.congress == congress) {
      out.legislators.push_back(l);
      members.insert(l.bioguide_id);
    }
  }
  std::set<std::string> bills;
  for (const auto& b : corpus.bills) {
    if (b.congress == congress) {
      out.bills.push_back(b);
      bills.insert(b.bill_id);
    }
  }
  for (const auto& s : corpus.speeches) {
    if (members.count(s.author_id)) {
      Speech copy = s;
      std::erase_if(copy.cited_ids, [&](const std::string& id) { return !members.count(id); });
      out.speeches.push_back(std::move(copy));
    }
  }
  for (const auto& c : corpus.cosponsorships) {
    if (bills.count(c.bill_id)) out.cosponsorships.push_back(c);
  }
  for (const auto& v : corpus.votes) {
    if (bills.count(v.bill_id)) out.votes.push_back(v);
  }
  out.Reindex();
  return out;
}

// ---------------------------------------------------------------------------
// Labels, filtering, splitting

CosponsorKind AssignKind(const CosponsorshipRecord& record, const Bill& bill) {
  if (record.signature_date < bill.introduction_date) {
    Fail(ErrorCode::kInvalidTimeline,
         "signature " + record.signature_date.ToString() + " by " + record.legislator_id +
             " precedes introduction " + bill.introduction_date.ToString() + " of " +
             bill.bill_id);
  }
  return record.signature_date == bill.introduction_date ? CosponsorKind::kActive
                                                         : CosponsorKind::kPassive;
}

Corpus FilterBills(const Corpus& corpus, int min_cosponsors) {
  if (min_cosponsors < 1) Fail(ErrorCode::kInvalidArgument, "min_cosponsors must be >= 1");
  std::unordered_map<std::string, int> counts;
  for (const auto& c : corpus.cosponsorships) ++counts[c.bill_id];
  Corpus out;
  out.legislators = corpus.legislators;
  out.speeches = corpus.speeches;
  std::set<std::string> kept;
  for (const auto& b : corpus.bills) {
    auto it = counts.find(b.bill_id);
    if (it != counts.end() && it->second >= min_cosponsors) {
      out.bills.push_back(b);
      kept.insert(b.bill_id);
    }
  }
  for (const auto& c : corpus.cosponsorships) {
    if (kept.count(c.bill_id)) out.cosponsorships.push_back(c);
  }
  for (const auto& v : corpus.votes) {
    if (kept.count(v.bill_id)) out.votes.push_back(v);
  }
  out.Reindex();
  return out;
}

std::array<size_t, 3> SplitSizes(size_t n, const SplitFractions& f) {
  const double fr[3] = {f.train, f.validation, f.test};
  for (double x : fr) {
    if (!(x > 0.0)) Fail(ErrorCode::kInvalidArgument, "split fractions must be positive");
  }
  if (std::abs(fr[0] + fr[1] + fr[2] - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "split fractions must sum to 1");
  }
  std::array<size_t, 3> sizes{};
  size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    // The epsilon guards exact products such as 0.6 * 100 = 59.999...
    sizes[i] = size_t(std::floor(fr[i] * double(n) + 1e-9));
    assigned += sizes[i];
  }
  for (int i = 0; assigned < n; i = (i + 1) % 3) {
    ++sizes[i];
    ++assigned;
  }
  return sizes;
}

std::vector<Split> SplitEvents(const std::vector<TimedEvent>& events,
                               const SplitFractions& fractions,
                               const std::vector<int>& required_congresses) {
  std::map<int, std::vector<size_t>> by_congress;
  for (int c : required_congresses) by_congress[c];
  for (size_t i = 0; i < events.size(); ++i) by_congress[events[i].congress].push_back(i);
  std::vector<Split> out(events.size(), Split::kTrain);
  for (auto& [congress, idx] : by_congress) {
    if (idx.empty()) {
      Fail(ErrorCode::kEmptyCongress, "Congress " + std::to_string(congress) + " has no events");
    }
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      if (events[a].date != events[b].date) return events[a].date < events[b].date;
      return events[a].key < events[b].key;
    });
    std::array<size_t, 3> sizes = SplitSizes(idx.size(), fractions);
    for (size_t r = 0; r < idx.size(); ++r) {
      out[idx[r]] = r < sizes[0]              ? Split::kTrain
                    : r < sizes[0] + sizes[1] ? Split::kValidation
                                              : Split::kTest;
    }
  }
  return out;
}

SplitAssignment TimeSplit(const Corpus& corpus, const SplitFractions& fractions) {
  SplitAssignment out;
  std::vector<TimedEvent> events;
  events.reserve(corpus.cosponsorships.size());
  std::set<int> bill_congresses;
  for (const auto& b : corpus.bills) bill_congresses.insert(b.congress);
  for (const auto& c : corpus.cosponsorships) {
    const Bill& b = corpus.GetBill(c.bill_id);
    events.push_back({b.congress, c.signature_date, c.bill_id + "\x1f" + c.legislator_id});
  }
  out.cosponsorships = SplitEvents(events, fractions,
                                   {bill_congresses.begin(), bill_congresses.end()});
  for (size_t i = 0; i < events.size(); ++i) {
    out.cosponsorship_counts[events[i].congress][size_t(out.cosponsorships[i])]++;
  }

  events.clear();
  for (const auto& b : corpus.bills) events.push_back({b.congress, b.introduction_date, b.bill_id});
  std::vector<Split> bill_splits = SplitEvents(events, fractions);
  for (size_t i = 0; i < events.size(); ++i) out.bills.emplace(events[i].key, bill_splits[i]);

  events.clear();
  for (const auto& s : corpus.speeches) {
    events.push_back({corpus.GetLegislator(s.author_id).congress, s.date, s.speech_id});
  }
  std::vector<Split> speech_splits = SplitEvents(events, fractions);
  for (size_t i = 0; i < events.size(); ++i) out.speeches.emplace(events[i].key, speech_splits[i]);
  return out;
}

std::map<int, CongressStats> ComputeStats(const Corpus& corpus) {
  std::map<int, CongressStats> out;
  for (const auto& l : corpus.legislators) out[l.congress].legislators++;
  for (const auto& b : corpus.bills) out[b.congress].bills++;
  for (const auto& c : corpus.cosponsorships) {
    CongressStats& s = out[corpus.GetBill(c.bill_id).congress];
    (c.kind == CosponsorKind::kActive ? s.active : s.passive)++;
  }
  for (const auto& v : corpus.votes) out[corpus.GetBill(v.bill_id).congress].votes++;
  std::map<int, size_t> words;
  for (const auto& sp : corpus.speeches) {
    int congress = corpus.GetLegislator(sp.author_id).congress;
    out[congress].speeches++;
    words[congress] += SplitWhitespace(sp.text).size();
  }
  for (auto& [congress, s] : out) {
    if (s.legislators) s.speeches_per_legislator = double(s.speeches) / double(s.legislators);
    if (s.speeches) s.speech_words = double(words[congress]) / double(s.speeches);
  }
  return out;
}

}  // namespace legis
