// lvc/corpus/toy_corpus.h

// Copyright 2026  The lvc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LVC_CORPUS_TOY_CORPUS_H_
#define LVC_CORPUS_TOY_CORPUS_H_

#include <cstdint>
#include <string>

#include "lvc/corpus/manifest.h"

namespace lvc {

// Harmonic pseudo-speech corpus that encodes the acoustic contrasts the
// toolkit trains and evaluates on: the "lombard" style raises f0 by 20%,
// boosts the 1-3 kHz band by 6 dB and flattens the spectral tilt relative
// to "neutral".  Speaker identity is a fixed base pitch plus a two-formant
// signature drawn from the seed.
struct ToyCorpusConfig {
  int speakers = 4;
  int utts_per_style = 5;
  int vowels_per_utt = 4;      // ~2.2 s per utterance
  uint64_t seed = 17;
  double lombard_f0_factor = 1.2;
  double lombard_boost_db = 6.0;
  double neutral_tilt_exp = 1.3;   // harmonic rolloff (1/h)^exp
  double lombard_tilt_exp = 0.65;  // flatter
};

// Writes <out_dir>/<speaker>/<style>/uttNNN.wav (+ .lab) and
// <out_dir>/manifest.tsv; returns the manifest.  Same seed, same bytes.
Manifest SynthToyCorpus(const std::string &out_dir, const ToyCorpusConfig &cfg);

}  // namespace lvc

#endif  // LVC_CORPUS_TOY_CORPUS_H_
