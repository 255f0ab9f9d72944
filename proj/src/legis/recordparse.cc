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

#include "legis/recordparse.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace legis {
namespace {

bool IsWordByte(unsigned char c) {
  return std::isalpha(c) || c == '\'' || c == '-' || c >= 0x80;
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Token {
  size_t start;
  size_t end;
  std::string_view text;
};

std::vector<Token> Words(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size() && IsWordByte(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back({start, i, text.substr(start, i - start)});
  }
  return out;
}

bool AllSpace(std::string_view s) {
  return std::all_of(s.begin(), s.end(), IsSpace);
}

bool IsCapitalized(std::string_view token) {
  if (token.size() < 2 || !std::isupper(static_cast<unsigned char>(token[0]))) return false;
  for (size_t i = 1; i < token.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(token[i]);
    if (std::isupper(c)) return false;
  }
  return true;
}

const std::set<std::string_view> kSalutations = {"Mr", "Mrs", "Ms", "Madam"};
const std::set<std::string_view> kRoles = {"Speaker", "President", "Chairman", "Chairwoman",
                                           "Clerk"};

}  // namespace

const char* EntityTagName(EntityTag tag) {
  switch (tag) {
    case EntityTag::kPerson: return "PERSON";
    case EntityTag::kGpe: return "GPE";
    case EntityTag::kSal: return "SAL";
    case EntityTag::kRole: return "ROLE";
  }
  return "?";
}

bool IsUpperCaseName(std::string_view token) {
  std::string_view rest = token;
  if (rest.starts_with("Mac") && rest.size() > 3 && std::isupper(static_cast<unsigned char>(rest[3]))) {
    rest.remove_prefix(3);
  } else if (rest.starts_with("Mc") && rest.size() > 2 &&
             std::isupper(static_cast<unsigned char>(rest[2]))) {
    rest.remove_prefix(2);
  }
  int upper = 0;
  for (unsigned char c : rest) {
    if (std::islower(c)) return false;
    if (std::isupper(c)) ++upper;
  }
  return upper >= 2;
}

// ---------------------------------------------------------------------------
// Tagging

std::vector<TaggedSpan> RuleBasedTagger::Tag(std::string_view text) const {
  std::vector<TaggedSpan> spans;
  std::vector<Token> words = Words(text);
  for (size_t i = 0; i < words.size(); ++i) {
    const Token& w = words[i];
    if (kRoles.count(w.text)) {
      spans.push_back({w.start, w.end, EntityTag::kRole});
      continue;
    }
    if (!kSalutations.count(w.text)) continue;
    size_t sal_end = w.end;
    if (w.text != "Madam" && sal_end < text.size() && text[sal_end] == '.') ++sal_end;
    spans.push_back({w.start, sal_end, EntityTag::kSal});

    // PERSON: upper-case tokens right after the salutation, joined by
    // single spaces.
    size_t j = i + 1;
    if (j >= words.size() || !IsUpperCaseName(words[j].text)) continue;
    std::string_view gap = text.substr(sal_end, words[j].start - sal_end);
    if (gap.empty() || !AllSpace(gap)) continue;
    size_t k = j;
    while (k + 1 < words.size() && words[k + 1].start == words[k].end + 1 &&
           text[words[k].end] == ' ' && IsUpperCaseName(words[k + 1].text)) {
      ++k;
    }
    spans.push_back({words[j].start, words[k].end, EntityTag::kPerson});

    // GPE: "of" + capitalized tokens.
    size_t of = k + 1;
    if (of + 1 < words.size() && words[of].text == "of" &&
        AllSpace(text.substr(words[k].end, words[of].start - words[k].end)) &&
        words[of].start > words[k].end && IsCapitalized(words[of + 1].text) &&
        !kSalutations.count(words[of + 1].text) &&
        AllSpace(text.substr(words[of].end, words[of + 1].start - words[of].end)) &&
        words[of + 1].start > words[of].end) {
      size_t g = of + 1;
      while (g + 1 < words.size() && words[g + 1].start == words[g].end + 1 &&
             text[words[g].end] == ' ' && IsCapitalized(words[g + 1].text) &&
             !kSalutations.count(words[g + 1].text) && !kRoles.count(words[g + 1].text)) {
        ++g;
      }
      spans.push_back({words[of + 1].start, words[g].end, EntityTag::kGpe});
      i = g;
    } else {
      i = k;
    }
  }
  return spans;
}

std::vector<TaggedSpan> TagText(std::string_view text, const EntityTagger& tagger) {
  std::vector<TaggedSpan> spans = tagger.Tag(text);
  std::erase_if(spans, [&](const TaggedSpan& s) { return s.start >= s.end || s.end > text.size(); });
  std::stable_sort(spans.begin(), spans.end(), [](const TaggedSpan& a, const TaggedSpan& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  return spans;
}

// ---------------------------------------------------------------------------
// Segmentation

namespace {

struct Opening {
  size_t start;
  size_t end;
  std::string surname;
  std::optional<std::string> gpe;
};

bool AtLineStart(std::string_view text, size_t pos) {
  while (pos > 0 && (text[pos - 1] == ' ' || text[pos - 1] == '\t')) --pos;
  return pos == 0 || text[pos - 1] == '\n';
}

bool PunctGap(std::string_view gap) {
  return std::all_of(gap.begin(), gap.end(),
                     [](char c) { return IsSpace(c) || c == '.' || c == ',' || c == ';' || c == ':'; });
}

std::optional<Opening> MatchOpening(std::string_view text, const std::vector<TaggedSpan>& spans,
                                    size_t i) {
  auto tag_at = [&](size_t k, EntityTag t) { return k < spans.size() && spans[k].tag == t; };
  auto gap = [&](size_t a, size_t b) {
    return text.substr(spans[a].end, spans[b].start - spans[a].end);
  };
  if (!tag_at(i, EntityTag::kSal) || !AtLineStart(text, spans[i].start)) return std::nullopt;
  size_t person = i + 1;
  if (!tag_at(person, EntityTag::kPerson) || spans[person].start < spans[i].end) return std::nullopt;
  if (!AllSpace(gap(i, person))) return std::nullopt;
  Opening o;
  o.start = spans[i].start;
  o.surname = std::string(text.substr(spans[person].start, spans[person].end - spans[person].start));
  size_t next = person + 1;
  if (tag_at(next, EntityTag::kGpe) && spans[next].start >= spans[person].end) {
    std::vector<std::string> between = SplitWhitespace(gap(person, next));
    if (between.size() != 1 || between[0] != "of") return std::nullopt;
    o.gpe = std::string(text.substr(spans[next].start, spans[next].end - spans[next].start));
    ++next;
  }
  size_t sal = next;
  size_t role = next + 1;
  if (!tag_at(sal, EntityTag::kSal) || !tag_at(role, EntityTag::kRole)) return std::nullopt;
  if (spans[sal].start < spans[sal - 1].end || spans[role].start < spans[sal].end) return std::nullopt;
  std::string_view before_sal = gap(sal - 1, sal);
  if (before_sal.empty() || !PunctGap(before_sal)) return std::nullopt;
  if (!AllSpace(gap(sal, role)) || gap(sal, role).empty()) return std::nullopt;
  o.end = spans[role].end;
  while (o.end < text.size() && (text[o.end] == '.' || text[o.end] == ',' || text[o.end] == ':' ||
                                 text[o.end] == ';')) {
    ++o.end;
  }
  return o;
}

}  // namespace

std::vector<SegmentedSpeech> SegmentEdition(const DailyEdition& edition,
                                            const EntityTagger& tagger) {
  const std::string& text = edition.raw_text;
  std::vector<TaggedSpan> spans = TagText(text, tagger);
  std::vector<Opening> openings;
  for (size_t i = 0; i < spans.size(); ++i) {
    if (!openings.empty() && spans[i].start < openings.back().end) continue;
    if (auto o = MatchOpening(text, spans, i)) openings.push_back(std::move(*o));
  }
  std::vector<SegmentedSpeech> out;
  size_t first = openings.empty() ? text.size() : openings.front().start;
  if (first > 0) {
    SegmentedSpeech pre;
    pre.body = text.substr(0, first);
    pre.source_date = edition.date;
    out.push_back(std::move(pre));
  }
  for (size_t k = 0; k < openings.size(); ++k) {
    const Opening& o = openings[k];
    size_t body_end = k + 1 < openings.size() ? openings[k + 1].start : text.size();
    SegmentedSpeech s;
    s.speaker_surname = o.surname;
    s.speaker_gpe = o.gpe;
    s.opening = text.substr(o.start, o.end - o.start);
    s.body = text.substr(o.end, body_end - o.end);
    s.source_date = edition.date;
    s.offset = o.start;
    out.push_back(std::move(s));
  }
  return out;
}

size_t CountSentences(std::string_view text) {
  static const std::set<std::string_view> kAbbreviations = {"Mr.", "Mrs.", "Ms.", "U.S.", "H.R.",
                                                            "S."};
  bool any = std::any_of(text.begin(), text.end(), [](char c) { return !IsSpace(c); });
  if (!any) return 0;
  size_t count = 1;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    size_t j = i + 1;
    if (j >= text.size() || !IsSpace(text[j])) continue;
    while (j < text.size() && IsSpace(text[j])) ++j;
    if (j >= text.size() || !std::isupper(static_cast<unsigned char>(text[j]))) continue;
    if (c == '.') {
      size_t b = i;
      while (b > 0 && !IsSpace(text[b - 1])) --b;
      std::string_view tok = text.substr(b, i + 1 - b);
      while (!tok.empty() && (tok.front() == '(' || tok.front() == '"' || tok.front() == '\'')) {
        tok.remove_prefix(1);
      }
      if (kAbbreviations.count(tok)) continue;
    }
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Roster

namespace {

struct StateEntry {
  const char* code;
  const char* name;
};

constexpr StateEntry kStates[] = {
    {"AL", "Alabama"},        {"AK", "Alaska"},        {"AZ", "Arizona"},
    {"AR", "Arkansas"},       {"CA", "California"},    {"CO", "Colorado"},
    {"CT", "Connecticut"},    {"DE", "Delaware"},      {"FL", "Florida"},
    {"GA", "Georgia"},        {"HI", "Hawaii"},        {"ID", "Idaho"},
    {"IL", "Illinois"},       {"IN", "Indiana"},       {"IA", "Iowa"},
    {"KS", "Kansas"},         {"KY", "Kentucky"},      {"LA", "Louisiana"},
    {"ME", "Maine"},          {"MD", "Maryland"},      {"MA", "Massachusetts"},
    {"MI", "Michigan"},       {"MN", "Minnesota"},     {"MS", "Mississippi"},
    {"MO", "Missouri"},       {"MT", "Montana"},       {"NE", "Nebraska"},
    {"NV", "Nevada"},         {"NH", "New Hampshire"}, {"NJ", "New Jersey"},
    {"NM", "New Mexico"},     {"NY", "New York"},      {"NC", "North Carolina"},
    {"ND", "North Dakota"},   {"OH", "Ohio"},          {"OK", "Oklahoma"},
    {"OR", "Oregon"},         {"PA", "Pennsylvania"},  {"RI", "Rhode Island"},
    {"SC", "South Carolina"}, {"SD", "South Dakota"},  {"TN", "Tennessee"},
    {"TX", "Texas"},          {"UT", "Utah"},          {"VT", "Vermont"},
    {"VA", "Virginia"},       {"WA", "Washington"},    {"WV", "West Virginia"},
    {"WI", "Wisconsin"},      {"WY", "Wyoming"},       {"DC", "District of Columbia"},
    {"PR", "Puerto Rico"},    {"GU", "Guam"},          {"VI", "Virgin Islands"},
    {"AS", "American Samoa"}, {"MP", "Northern Mariana Islands"},
};

}  // namespace

std::string StateCode(std::string_view name_or_code) {
  std::string key = ToUpper(Trim(name_or_code));
  for (const auto& s : kStates) {
    if (key == s.code || key == ToUpper(s.name)) return s.code;
  }
  return "";
}

AliasTable LoadAliasTable(const std::string& path) {
  AliasTable out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kSchema, path + ": " + e.what());
  }
  if (!j.is_object()) Fail(ErrorCode::kSchema, path + ": alias table must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) Fail(ErrorCode::kSchema, path + ": alias '" + k + "' must map to a string");
    out.emplace(ToUpper(k), v.get<std::string>());
  }
  return out;
}

Roster::Roster(const std::vector<Legislator>& legislators, AliasTable aliases)
    : legislators_(legislators), aliases_(std::move(aliases)) {
  for (size_t i = 0; i < legislators_.size(); ++i) {
    by_id_.emplace(legislators_[i].bioguide_id, i);
    by_surname_.emplace(ToUpper(legislators_[i].last_name), i);
  }
}

Roster Roster::ForCongress(const std::vector<Legislator>& legislators, int congress,
                           AliasTable aliases) {
  std::vector<Legislator> members;
  for (const auto& l : legislators) {
    if (l.congress == congress) members.push_back(l);
  }
  return Roster(members, std::move(aliases));
}

const Legislator* Roster::Find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &legislators_[it->second];
}

std::vector<std::string> Roster::SurfaceForms(const std::string& id) const {
  std::vector<std::string> out;
  if (const Legislator* l = Find(id)) out.push_back(ToUpper(l->last_name));
  for (const auto& [alias, target] : aliases_) {
    if (target == id && std::find(out.begin(), out.end(), alias) == out.end()) {
      out.push_back(alias);
    }
  }
  std::sort(out.begin() + (out.empty() ? 0 : 1), out.end());
  return out;
}

std::string Roster::Match(std::string_view surname, const std::optional<std::string>& gpe) const {
  std::string key = ToUpper(Trim(surname));
  auto alias = aliases_.find(key);
  if (alias != aliases_.end() && by_id_.count(alias->second)) return alias->second;

  auto [lo, hi] = by_surname_.equal_range(key);
  std::vector<size_t> candidates;
  for (auto it = lo; it != hi; ++it) candidates.push_back(it->second);
  if (gpe) {
    std::string code = StateCode(*gpe);
    std::vector<size_t> in_state;
    for (size_t c : candidates) {
      if (!code.empty() && StateCode(legislators_[c].state) == code) in_state.push_back(c);
    }
    if (in_state.size() == 1) return legislators_[in_state.front()].bioguide_id;
  }
  if (candidates.size() == 1) return legislators_[candidates.front()].bioguide_id;
  if (candidates.empty()) Fail(ErrorCode::kNotFound, "no legislator named " + key);
  Fail(ErrorCode::kAmbiguous, std::to_string(candidates.size()) + " legislators named " + key +
                                  (gpe ? " from " + *gpe : std::string()));
}

std::string MatchName(std::string_view surname, const std::optional<std::string>& gpe,
                      const Roster& roster) {
  return roster.Match(surname, gpe);
}

// ---------------------------------------------------------------------------
// Filtering, citations, masking

std::vector<Speech> FilterSpeeches(const std::vector<SegmentedSpeech>& segments,
                                   const Roster& roster, const std::string& id_prefix,
                                   SpeechFilterReport* report) {
  SpeechFilterReport local;
  std::vector<Speech> out;
  for (size_t k = 0; k < segments.size(); ++k) {
    const SegmentedSpeech& seg = segments[k];
    std::string author;
    if (!seg.is_preamble()) {
      try {
        author = roster.Match(seg.speaker_surname, seg.speaker_gpe);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotFound && e.code() != ErrorCode::kAmbiguous) throw;
      }
    }
    if (author.empty()) {
      ++local.no_author;
      continue;
    }
    size_t sentences = CountSentences(seg.body);
    if (sentences < kMinSentences) {
      ++local.too_short;
      continue;
    }
    if (sentences > kMaxSentences) {
      ++local.too_long;
      continue;
    }
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "-%04zu", k);
    Speech s;
    s.speech_id = id_prefix + suffix;
    s.author_id = author;
    s.date = seg.source_date;
    s.text = seg.body;
    out.push_back(std::move(s));
    ++local.kept;
  }
  if (report) {
    report->kept += local.kept;
    report->no_author += local.no_author;
    report->too_short += local.too_short;
    report->too_long += local.too_long;
  }
  return out;
}

std::vector<std::string> ExtractCitations(const Speech& speech, const Roster& roster,
                                          const EntityTagger& tagger, size_t* unresolved) {
  std::vector<TaggedSpan> spans = TagText(speech.text, tagger);
  std::vector<std::string> out;
  for (size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].tag != EntityTag::kPerson) continue;
    std::string name = speech.text.substr(spans[i].start, spans[i].end - spans[i].start);
    bool upper = true;
    for (const auto& token : SplitWhitespace(name)) upper = upper && IsUpperCaseName(token);
    if (!upper) continue;
    std::optional<std::string> gpe;
    if (i + 1 < spans.size() && spans[i + 1].tag == EntityTag::kGpe) {
      std::string between =
          speech.text.substr(spans[i].end, spans[i + 1].start - spans[i].end);
      std::vector<std::string> words = SplitWhitespace(between);
      if (words.size() == 1 && words[0] == "of") {
        gpe = speech.text.substr(spans[i + 1].start, spans[i + 1].end - spans[i + 1].start);
      }
    }
    std::string id;
    try {
      id = roster.Match(name, gpe);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotFound && e.code() != ErrorCode::kAmbiguous) throw;
      if (unresolved) ++*unresolved;
      continue;
    }
    if (id == speech.author_id) continue;
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

size_t CountWord(std::string_view text, std::string_view word) {
  if (word.empty()) return 0;
  size_t count = 0;
  for (size_t pos = text.find(word); pos != std::string_view::npos;
       pos = text.find(word, pos + 1)) {
    bool left = pos == 0 || !IsWordByte(static_cast<unsigned char>(text[pos - 1]));
    size_t end = pos + word.size();
    bool right = end >= text.size() || !IsWordByte(static_cast<unsigned char>(text[end]));
    if (left && right) ++count;
  }
  return count;
}

static std::string ReplaceWord(std::string_view text, std::string_view word,
                               std::string_view replacement) {
  std::string out;
  size_t last = 0;
  for (size_t pos = text.find(word); pos != std::string_view::npos;
       pos = text.find(word, pos + 1)) {
    if (pos < last) continue;
    bool left = pos == 0 || !IsWordByte(static_cast<unsigned char>(text[pos - 1]));
    size_t end = pos + word.size();
    bool right = end >= text.size() || !IsWordByte(static_cast<unsigned char>(text[end]));
    if (!left || !right) continue;
    out.append(text.substr(last, pos - last));
    out.append(replacement);
    last = end;
  }
  out.append(text.substr(last));
  return out;
}

Speech MaskCitation(const Speech& speech, const std::string& target, const Roster& roster) {
  if (std::find(speech.cited_ids.begin(), speech.cited_ids.end(), target) ==
      speech.cited_ids.end()) {
    Fail(ErrorCode::kTargetNotCited, "speech " + speech.speech_id + " does not cite " + target);
  }
  Speech out = speech;
  std::vector<std::string> forms = roster.SurfaceForms(target);
  // Longer forms first so that "JACKSON LEE" is replaced before "LEE".
  std::sort(forms.begin(), forms.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  for (const auto& form : forms) out.text = ReplaceWord(out.text, form, kLegislatorMask);
  return out;
}

Speech MaskAllCitations(const Speech& speech, const Roster& roster) {
  // All targets at once, longest form first, so that masking one name never
  // splits a longer name that contains it.
  std::vector<std::string> forms;
  for (const auto& id : speech.cited_ids) {
    for (auto& f : roster.SurfaceForms(id)) forms.push_back(std::move(f));
  }
  std::stable_sort(forms.begin(), forms.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  Speech out = speech;
  for (const auto& form : forms) out.text = ReplaceWord(out.text, form, kLegislatorMask);
  return out;
}

}  // namespace legis
