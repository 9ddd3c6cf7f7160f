// lvc/vc/embedding.h

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

#ifndef LVC_VC_EMBEDDING_H_
#define LVC_VC_EMBEDDING_H_

#include <map>
#include <string>
#include <vector>

#include "lvc/audio/mel.h"

namespace lvc {

constexpr int kSpeakerEmbeddingDim = 64;

struct SpeakerEmbedding {
  std::string speaker_id;
  std::vector<double> vec;  // unit L2 norm, kSpeakerEmbeddingDim entries

  double Dot(const SpeakerEmbedding &o) const;
};

// Deterministic spectral-signature provider: the per-bin mean and standard
// deviation of the pooled mel frames (2 * mel_bins values) are standardized
// and projected through a fixed seeded random orthonormal map, then
// L2-normalized.  The same utterances always produce the same embedding.
SpeakerEmbedding ComputeSpeakerEmbedding(const std::vector<MelSpectrogram> &utts,
                                         const std::string &speaker_id);

// Arithmetic mean re-normalized to unit length.  Throws on a zero mean.
SpeakerEmbedding CentroidEmbedding(const std::vector<SpeakerEmbedding> &embeddings);

// TSV import/export: speaker_id followed by 64 float columns.
void WriteEmbeddingsTsv(const std::string &path,
                        const std::vector<SpeakerEmbedding> &embeddings);
std::map<std::string, SpeakerEmbedding> ReadEmbeddingsTsv(const std::string &path);

}  // namespace lvc

#endif  // LVC_VC_EMBEDDING_H_
