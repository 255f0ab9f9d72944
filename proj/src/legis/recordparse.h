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

// Daily-edition transcript parsing: entity tagging, speech segmentation,
// speech filtering, roster name matching, citation extraction and citation
// masking.
//
// A speech opens with a salutation, the speaker's upper-case surname, an
// optional "of <State>", then a salutation and a chair role:
//
//   Mr. POE of Texas. Mrs. President. I rise today ...
//   Mr. BOEHNER. Mr. Speaker, ...
//
// i.e. the tag sequence SAL PERSON [GPE] SAL ROLE at the start of a line.

#ifndef LEGIS_RECORDPARSE_H_
#define LEGIS_RECORDPARSE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "legis/corpus.h"

namespace legis {

enum class EntityTag { kPerson, kGpe, kSal, kRole };
const char* EntityTagName(EntityTag tag);

struct TaggedSpan {
  size_t start = 0;
  size_t end = 0;  // exclusive
  EntityTag tag = EntityTag::kPerson;

  bool operator==(const TaggedSpan&) const = default;
};

struct DailyEdition {
  Date date;
  std::string raw_text;
};

// Named-entity tagger interface. Implementations may return spans in any
// order; TagText sorts and validates them.
class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  virtual std::vector<TaggedSpan> Tag(std::string_view text) const = 0;
};

// Lexicon and capitalization rules, used when no statistical tagger is
// configured:
//   SAL     Mr. Mrs. Ms. Madam
//   ROLE    Speaker President Chairman Chairwoman Clerk
//   PERSON  run of upper-case name tokens directly after a SAL
//   GPE     "of" + capitalized tokens directly after a PERSON
class RuleBasedTagger : public EntityTagger {
 public:
  std::vector<TaggedSpan> Tag(std::string_view text) const override;
};

std::vector<TaggedSpan> TagText(std::string_view text, const EntityTagger& tagger);

// True for printed legislator names: at least two upper-case letters and no
// lower-case letters apart from a leading Mc/Mac (McCARTHY).
bool IsUpperCaseName(std::string_view token);

struct SegmentedSpeech {
  std::string speaker_surname;  // empty for the preamble
  std::optional<std::string> speaker_gpe;
  std::string opening;
  std::string body;
  Date source_date;
  size_t offset = 0;  // of the opening within the edition

  bool is_preamble() const { return speaker_surname.empty(); }
};

// Splits an edition at every opening. Text before the first opening becomes
// an author-less preamble. Concatenating opening + body over the result
// reproduces the raw text exactly.
std::vector<SegmentedSpeech> SegmentEdition(const DailyEdition& edition,
                                            const EntityTagger& tagger);

// Sentence boundaries: . ? or ! followed by whitespace and an upper-case
// letter, except after Mr. Mrs. Ms. U.S. H.R. S.
size_t CountSentences(std::string_view text);

// Upper-case surface form -> bioguide_id, for nicknames and signatures that
// do not match the roster surname.
using AliasTable = std::unordered_map<std::string, std::string>;
AliasTable LoadAliasTable(const std::string& path);  // JSON object

// Legislators of one Congress, indexed for name resolution.
class Roster {
 public:
  Roster(const std::vector<Legislator>& legislators, AliasTable aliases = {});
  static Roster ForCongress(const std::vector<Legislator>& legislators, int congress,
                            AliasTable aliases = {});

  // Precedence: alias table, then (surname, state), then surname alone.
  // Throws Ambiguous or NotFound.
  std::string Match(std::string_view surname, const std::optional<std::string>& gpe) const;

  const Legislator* Find(const std::string& id) const;
  // Upper-case surface forms that refer to a legislator.
  std::vector<std::string> SurfaceForms(const std::string& id) const;
  size_t size() const { return legislators_.size(); }

 private:
  std::vector<Legislator> legislators_;
  AliasTable aliases_;
  std::unordered_map<std::string, size_t> by_id_;
  std::multimap<std::string, size_t> by_surname_;
};

std::string MatchName(std::string_view surname, const std::optional<std::string>& gpe,
                      const Roster& roster);

// Two-letter postal code for a state name or code; empty when unknown.
std::string StateCode(std::string_view name_or_code);

struct SpeechFilterReport {
  size_t kept = 0;
  size_t no_author = 0;
  size_t too_short = 0;
  size_t too_long = 0;
};

inline constexpr size_t kMinSentences = 10;
inline constexpr size_t kMaxSentences = 500;

// Resolves speakers against the roster and keeps speeches with an author and
// between 10 and 500 sentences. Speech ids are "<id_prefix>-<segment index>".
std::vector<Speech> FilterSpeeches(const std::vector<SegmentedSpeech>& segments,
                                   const Roster& roster, const std::string& id_prefix,
                                   SpeechFilterReport* report = nullptr);

// Roster keys of upper-case PERSON mentions in the speech text, excluding
// the author, deduplicated in order of first mention.
std::vector<std::string> ExtractCitations(const Speech& speech, const Roster& roster,
                                          const EntityTagger& tagger,
                                          size_t* unresolved = nullptr);

inline constexpr std::string_view kLegislatorMask = "<LEG>";

// Replaces every whole-word surface form of target with <LEG>. Throws
// TargetNotCited when target is not among the speech's cited_ids.
Speech MaskCitation(const Speech& speech, const std::string& target, const Roster& roster);

// Masks every cited legislator.
Speech MaskAllCitations(const Speech& speech, const Roster& roster);

// Whole-word, case-sensitive occurrence count.
size_t CountWord(std::string_view text, std::string_view word);

}  // namespace legis

#endif  // LEGIS_RECORDPARSE_H_
