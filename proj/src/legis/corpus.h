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

// Domain model for legislators, bills, speeches, cosponsorship signatures and
// roll-call votes, plus loading, labeling, filtering and per-Congress
// chronological splitting.
//
// On-disk layout of a corpus directory (JSONL, UTF-8, one record per line):
//
//   legislators.jsonl    {"bioguide_id","first_name","last_name","gender",
//                         "age","party","state","district","congress"}
//   bills.jsonl          {"bill_id","title","introduction_date","text",
//                         "topic","sponsor_id","congress"}
//   speeches.jsonl       {"speech_id","author_id","date","text","cited_ids"}
//   cosponsorships.jsonl {"bill_id","legislator_id","signature_date",
//                         "kind"?}
//   votes.jsonl          {"bill_id","legislator_id","vote"}
//
// speeches.jsonl and votes.jsonl are optional. A manifest.json maps Congress
// numbers to file sets: {"112": {"legislators": "...", "bills": "...", ...}}
// with paths relative to the manifest.

#ifndef LEGIS_CORPUS_H_
#define LEGIS_CORPUS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "legis/common.h"

namespace legis {

enum class Party { kDemocrat, kRepublican, kOther };
enum class Gender { kMale, kFemale, kUnknown };
enum class CosponsorKind { kActive, kPassive };
enum class VoteChoice { kYea, kNay };
enum class Split { kTrain = 0, kValidation = 1, kTest = 2 };

const char* PartyName(Party p);
Party ParseParty(std::string_view text);  // unknown values map to kOther
const char* GenderName(Gender g);
const char* KindName(CosponsorKind k);
const char* SplitName(Split s);

struct Legislator {
  std::string bioguide_id;
  std::string first_name;
  std::string last_name;
  Gender gender = Gender::kUnknown;
  int age = 0;
  Party party = Party::kOther;
  std::string state;
  std::string district;
  int congress = 0;
};

struct Bill {
  std::string bill_id;
  std::string title;
  Date introduction_date;
  std::string text;
  std::string topic;
  std::string sponsor_id;
  int congress = 0;
};

struct CosponsorshipRecord {
  std::string bill_id;
  std::string legislator_id;
  Date signature_date;
  CosponsorKind kind = CosponsorKind::kPassive;
};

struct Speech {
  std::string speech_id;
  std::string author_id;
  Date date;
  std::string text;
  std::vector<std::string> cited_ids;
};

struct RollCallVote {
  std::string bill_id;
  std::string legislator_id;
  VoteChoice vote = VoteChoice::kYea;
};

struct IntegrityReport {
  size_t legislators = 0;
  size_t bills = 0;
  size_t speeches = 0;
  size_t cosponsorships = 0;
  size_t votes = 0;
  // Upstream kind labels that disagreed with the date rule and were replaced.
  size_t kind_disagreements = 0;
  std::vector<std::string> warnings;
};

class Corpus {
 public:
  std::vector<Legislator> legislators;
  std::vector<Bill> bills;
  std::vector<Speech> speeches;
  std::vector<CosponsorshipRecord> cosponsorships;
  std::vector<RollCallVote> votes;

  // Rebuilds the key indexes and checks every invariant and cross
  // reference. Throws SchemaError or DanglingReference.
  void Reindex();

  const Legislator* FindLegislator(const std::string& id) const;
  const Bill* FindBill(const std::string& id) const;
  const Speech* FindSpeech(const std::string& id) const;
  const Legislator& GetLegislator(const std::string& id) const;
  const Bill& GetBill(const std::string& id) const;

  std::vector<int> Congresses() const;  // sorted, from legislators and bills

 private:
  std::unordered_map<std::string, size_t> legislator_index_;
  std::unordered_map<std::string, size_t> bill_index_;
  std::unordered_map<std::string, size_t> speech_index_;
};

// Reads a legislators.jsonl roster on its own.
std::vector<Legislator> LoadLegislators(const std::string& path);

// Loads the JSONL files of one corpus directory.
Corpus LoadCorpus(const std::string& dir, IntegrityReport* report = nullptr);

// Loads a corpus directory or a manifest.json and returns one corpus per
// Congress.
std::map<int, Corpus> LoadCorpusSet(const std::string& path,
                                    IntegrityReport* report = nullptr);

void WriteCorpus(const Corpus& corpus, const std::string& dir);

// Records of one Congress. Speeches follow their author's Congress.
Corpus RestrictToCongress(const Corpus& corpus, int congress);

// Active iff the signature falls on the introduction date. Throws
// InvalidTimeline when the signature precedes the introduction.
CosponsorKind AssignKind(const CosponsorshipRecord& record, const Bill& bill);

// Keeps bills with at least min_cosponsors signatures and prunes the records
// that referenced removed bills.
Corpus FilterBills(const Corpus& corpus, int min_cosponsors);

struct SplitFractions {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

struct TimedEvent {
  int congress = 0;
  Date date;
  std::string key;  // tie-breaker among equal dates
};

// Per-Congress chronological partition. Sizes are floor(fraction * N) with
// the leftover events assigned one each to train, validation, test in that
// order. Congresses listed in required_congresses that have no events raise
// EmptyCongress.
std::vector<Split> SplitEvents(const std::vector<TimedEvent>& events,
                               const SplitFractions& fractions,
                               const std::vector<int>& required_congresses = {});

std::array<size_t, 3> SplitSizes(size_t n, const SplitFractions& fractions);

struct SplitAssignment {
  std::vector<Split> cosponsorships;  // parallel to Corpus::cosponsorships
  std::unordered_map<std::string, Split> bills;
  std::unordered_map<std::string, Split> speeches;
  std::map<int, std::array<size_t, 3>> cosponsorship_counts;  // per Congress
};

// Cosponsorships split by signature date, bills by introduction date and
// speeches by speech date.
SplitAssignment TimeSplit(const Corpus& corpus, const SplitFractions& fractions = {});

struct CongressStats {
  size_t legislators = 0;
  size_t bills = 0;
  size_t active = 0;
  size_t passive = 0;
  size_t speeches = 0;
  size_t votes = 0;
  double speeches_per_legislator = 0.0;
  double speech_words = 0.0;  // mean words per speech
};

std::map<int, CongressStats> ComputeStats(const Corpus& corpus);

}  // namespace legis

#endif  // LEGIS_CORPUS_H_
