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

// Synthetic corpora with a planted cosponsorship pattern, used by the test
// suite and by `corpus synth`.
//
// The planted generator gives each legislator a latent style. Loyalists sign
// their own party's bills on the day of introduction (active); specialists
// sign bills of their one topic weeks later (passive). Party, state and the
// other metadata are drawn independently of the style, so the label is only
// recoverable from the graph: who signed what, who spoke about what.
//
// The party generator instead makes every signature active iff signer and
// sponsor share a party, which metadata alone can decide.

#ifndef LEGIS_SYNTH_H_
#define LEGIS_SYNTH_H_

#include <cstdint>
#include <string>

#include "legis/corpus.h"

namespace legis {

enum class SynthPattern { kPlanted, kParty };

struct SynthOptions {
  SynthPattern pattern = SynthPattern::kPlanted;
  int legislators = 30;
  int bills = 100;
  int speeches = 200;
  int topics = 5;
  int congress = 112;
  uint64_t seed = 7;
};

struct SynthCorpus {
  Corpus corpus;
  std::vector<bool> loyalist;  // parallel to corpus.legislators
  std::vector<int> topic;      // parallel to corpus.legislators
};

SynthCorpus GenerateCorpus(const SynthOptions& options);

// Writes the corpus plus resources/ideology.txt (one score per legislator)
// and resources/word_vectors.txt (16-d vectors for the vocabulary).
void WriteSynthCorpus(const SynthCorpus& synth, const std::string& dir, uint64_t seed);

}  // namespace legis

#endif  // LEGIS_SYNTH_H_
