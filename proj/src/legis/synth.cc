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

#include "legis/synth.h"

#include <cstdio>
#include <filesystem>
#include <set>

#include "legis/common.h"

namespace legis {
namespace {

const char* const kSurnames[] = {
    "ABBOTT",  "BARTON",  "CALLOWAY", "DENHAM",  "ELLISON", "FARRELL", "GARDNER", "HOLLAND",
    "INGRAM",  "JARVIS",  "KEATING",  "LANGLEY", "MORROW",  "NORCROSS", "OSBORNE", "PRESTON",
    "QUINLAN", "RADCLIFF", "SUTTON",  "THORNE",  "UPTON",   "VANCE",   "WHITLOCK", "YARBOROUGH",
    "ZELLER",  "ASHFORD", "BRENNAN",  "CROWLEY", "DUNMORE", "EASTON",  "FLETCHER", "GRAYSON",
    "HARLOW",  "IVERSON", "JENNINGS", "KIRKLAND", "LOWELL", "MERCER",  "NASH",    "OAKLEY"};
const char* const kFirstNames[] = {"John", "Mary", "Robert", "Linda", "James", "Susan", "David",
                                   "Karen"};
const char* const kStates[] = {"TX", "CA", "NY", "OH", "FL", "PA", "IL", "GA", "MI", "NC"};

const char* const kTopicWords[][12] = {
    {"farm", "crop", "harvest", "rural", "grain", "livestock", "soil", "irrigation", "dairy",
     "orchard", "ranch", "seed"},
    {"school", "teacher", "student", "classroom", "tuition", "literacy", "campus", "curriculum",
     "scholarship", "graduate", "textbook", "principal"},
    {"hospital", "clinic", "patient", "nurse", "vaccine", "medicine", "therapy", "physician",
     "diagnosis", "pharmacy", "insurance", "wellness"},
    {"highway", "bridge", "transit", "railway", "airport", "pipeline", "harbor", "tunnel",
     "freight", "pavement", "terminal", "corridor"},
    {"veteran", "soldier", "military", "defense", "armory", "deployment", "sailor", "barracks",
     "pension", "service", "garrison", "cadet"},
    {"energy", "solar", "turbine", "reactor", "grid", "battery", "coal", "refinery", "emission",
     "carbon", "wind", "utility"},
    {"border", "customs", "visa", "asylum", "passport", "migrant", "citizenship", "patrol",
     "consulate", "refugee", "residency", "naturalization"},
};
constexpr int kMaxTopics = 7;
constexpr int kTopicWordCount = 12;

const char* const kPartyWords[][6] = {
    {"fairness", "workers", "community", "opportunity", "protections", "families"},
    {"freedom", "taxpayers", "liberty", "enterprise", "deregulation", "sovereignty"},
    {"reform", "independence", "transparency", "balance", "accountability", "consensus"}};

const char* const kFiller[] = {"the",  "program", "federal", "nation", "support", "funding",
                               "act",  "plan",    "local",   "public", "measure", "people",
                               "state", "budget", "report",  "agency", "year",    "effort"};

std::string Pick(Rng& rng, const char* const* words, size_t n) { return words[rng.Below(n)]; }

std::string Capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = char(word[0] - 'a' + 'A');
  return word;
}

// One sentence mixing topic words, party words and filler.
std::string Sentence(Rng& rng, int topic, Party party) {
  int words = 8 + int(rng.Below(8));
  std::string out;
  for (int i = 0; i < words; ++i) {
    double u = rng.Uniform();
    std::string w;
    if (u < 0.45 && topic >= 0) {
      w = Pick(rng, kTopicWords[topic], kTopicWordCount);
    } else if (u < 0.6) {
      w = Pick(rng, kPartyWords[int(party)], 6);
    } else {
      w = Pick(rng, kFiller, std::size(kFiller));
    }
    out += i == 0 ? Capitalize(w) : " " + w;
  }
  return out + ".";
}

Date Start(int congress) { return Date(2011 + 2 * (congress - 112), 1, 5); }

}  // namespace

SynthCorpus GenerateCorpus(const SynthOptions& o) {
  if (o.legislators < 4 || o.legislators > int(std::size(kSurnames)) || o.bills < 1 ||
      o.topics < 1 || o.topics > kMaxTopics || o.speeches < 0) {
    Fail(ErrorCode::kInvalidArgument, "synthetic corpus options out of range");
  }
  SynthCorpus out;
  Corpus& c = out.corpus;
  Rng rng = Rng::Substream(o.seed, "synth." + std::to_string(int(o.pattern)));
  const Date start = Start(o.congress);
  const int span = 600;  // days of bill introductions

  for (int i = 0; i < o.legislators; ++i) {
    Legislator l;
    char id[16];
    std::snprintf(id, sizeof(id), "X%06d", 100 + i);
    l.bioguide_id = id;
    l.first_name = kFirstNames[rng.Below(std::size(kFirstNames))];
    l.last_name = kSurnames[i];
    l.last_name = l.last_name.substr(0, 1) + ToLower(l.last_name.substr(1));
    l.gender = rng.Bernoulli(0.5) ? Gender::kFemale : Gender::kMale;
    l.age = 35 + int(rng.Below(45));
    l.party = i % 2 == 0 ? Party::kDemocrat : Party::kRepublican;
    l.state = kStates[rng.Below(std::size(kStates))];
    l.district = std::to_string(1 + rng.Below(3));
    l.congress = o.congress;
    c.legislators.push_back(l);
    // Style is independent of party: i % 4 in {0, 1} are loyalists.
    out.loyalist.push_back(i % 4 < 2);
    out.topic.push_back(int(rng.Below(size_t(o.topics))));
  }

  const int n = o.legislators;
  for (int k = 0; k < o.bills; ++k) {
    Bill b;
    b.bill_id = "hr" + std::to_string(k + 1) + "-" + std::to_string(o.congress);
    b.congress = o.congress;
    b.introduction_date = start.AddDays(int(rng.Below(span)));
    const size_t sponsor_index = rng.Below(size_t(n));
    b.sponsor_id = c.legislators[sponsor_index].bioguide_id;
    int topic = int(rng.Below(size_t(o.topics)));
    b.topic = kTopicWords[topic][0];
    b.title = "A bill concerning " + std::string(kTopicWords[topic][1]) + " programs";
    std::string text;
    for (int s = 0; s < 6; ++s) text += (s ? " " : "") + Sentence(rng, topic, Party::kOther);
    b.text = text;
    c.bills.push_back(b);

    const Legislator& sponsor = c.legislators[sponsor_index];
    std::vector<CosponsorshipRecord> signers;
    for (int i = 0; i < n; ++i) {
      const Legislator& l = c.legislators[size_t(i)];
      if (l.bioguide_id == b.sponsor_id) continue;
      CosponsorshipRecord r{b.bill_id, l.bioguide_id, b.introduction_date, CosponsorKind::kActive};
      bool signs = false;
      if (o.pattern == SynthPattern::kPlanted) {
        if (out.loyalist[size_t(i)]) {
          signs = l.party == sponsor.party && rng.Bernoulli(0.45);
        } else {
          signs = out.topic[size_t(i)] == topic && rng.Bernoulli(0.8);
          r.kind = CosponsorKind::kPassive;
        }
      } else {
        signs = rng.Bernoulli(0.3);
        r.kind = l.party == sponsor.party ? CosponsorKind::kActive : CosponsorKind::kPassive;
      }
      if (!signs) continue;
      if (r.kind == CosponsorKind::kPassive) {
        r.signature_date = b.introduction_date.AddDays(1 + int(rng.Below(60)));
      }
      signers.push_back(r);
    }
    if (signers.empty()) {
      // Every bill keeps at least one signature: the nearest same-party
      // loyalist (or anyone, for the party pattern) signs on day one.
      for (int step = 1; step < n; ++step) {
        int i = (int(sponsor_index) + step) % n;
        const Legislator& l = c.legislators[size_t(i)];
        bool ok = o.pattern == SynthPattern::kParty ? l.party == sponsor.party
                                                    : out.loyalist[size_t(i)] && l.party == sponsor.party;
        if (!ok) continue;
        signers.push_back({b.bill_id, l.bioguide_id, b.introduction_date, CosponsorKind::kActive});
        break;
      }
    }
    c.cosponsorships.insert(c.cosponsorships.end(), signers.begin(), signers.end());
  }

  std::set<std::pair<std::string, std::string>> signed_pairs;
  for (const auto& r : c.cosponsorships) signed_pairs.insert({r.legislator_id, r.bill_id});

  for (int k = 0; k < o.speeches; ++k) {
    size_t a = rng.Below(size_t(n));
    const Legislator& author = c.legislators[a];
    Speech s;
    char id[32];
    std::snprintf(id, sizeof(id), "SP-%d-%04d", o.congress, k + 1);
    s.speech_id = id;
    s.author_id = author.bioguide_id;
    s.date = start.AddDays(int(rng.Below(size_t(span + 60))));
    int topic = out.topic[a];
    int sentences = 10 + int(rng.Below(6));
    std::string text;
    for (int t = 0; t < sentences; ++t) {
      text += (t ? " " : "") + Sentence(rng, out.loyalist[a] ? -1 : topic, author.party);
    }
    // Cite a colleague who shares the author's style half of the time.
    int cites = int(rng.Below(3));
    for (int t = 0; t < cites; ++t) {
      size_t j = rng.Below(size_t(n));
      if (j == a) continue;
      const std::string& target = c.legislators[j].bioguide_id;
      if (std::find(s.cited_ids.begin(), s.cited_ids.end(), target) != s.cited_ids.end()) continue;
      s.cited_ids.push_back(target);
      text += " I thank my colleague Mr. " + std::string(kSurnames[j]) + " for his leadership.";
    }
    s.text = text;
    c.speeches.push_back(s);
  }

  c.Reindex();
  for (const Bill& b : c.bills) {
    const Legislator& sponsor = c.GetLegislator(b.sponsor_id);
    for (const Legislator& l : c.legislators) {
      if (l.bioguide_id == b.sponsor_id || signed_pairs.count({l.bioguide_id, b.bill_id})) continue;
      bool yea = l.party == sponsor.party ? rng.Bernoulli(0.9) : rng.Bernoulli(0.25);
      c.votes.push_back({b.bill_id, l.bioguide_id, yea ? VoteChoice::kYea : VoteChoice::kNay});
    }
  }
  c.Reindex();
  return out;
}

void WriteSynthCorpus(const SynthCorpus& synth, const std::string& dir, uint64_t seed) {
  WriteCorpus(synth.corpus, dir);
  std::filesystem::create_directories(std::filesystem::path(dir) / "resources");
  Rng rng = Rng::Substream(seed, "synth.resources");
  std::string ideology;
  char buf[64];
  for (const Legislator& l : synth.corpus.legislators) {
    double base = l.party == Party::kDemocrat ? -0.5 : l.party == Party::kRepublican ? 0.5 : 0.0;
    std::snprintf(buf, sizeof(buf), " %.6f\n", base + 0.2 * rng.Normal());
    ideology += l.bioguide_id + buf;
  }
  WriteFile((std::filesystem::path(dir) / "resources" / "ideology.txt").string(), ideology);

  // Topic words share a direction per topic; everything else is noise.
  constexpr int kDim = 16;
  std::string vectors;
  auto emit = [&](const std::string& word, int axis) {
    vectors += word;
    for (int d = 0; d < kDim; ++d) {
      double v = 0.3 * rng.Normal() + (d == axis ? 1.0 : 0.0);
      std::snprintf(buf, sizeof(buf), " %.6f", v);
      vectors += buf;
    }
    vectors += "\n";
  };
  for (int t = 0; t < kMaxTopics; ++t) {
    for (int w = 0; w < kTopicWordCount; ++w) emit(kTopicWords[t][w], t);
  }
  for (int p = 0; p < 3; ++p) {
    for (int w = 0; w < 6; ++w) emit(kPartyWords[p][w], kMaxTopics + p);
  }
  for (const char* w : kFiller) emit(w, -1);
  WriteFile((std::filesystem::path(dir) / "resources" / "word_vectors.txt").string(), vectors);
}

}  // namespace legis
