// lvc/pipeline/features.h

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

#ifndef LVC_PIPELINE_FEATURES_H_
#define LVC_PIPELINE_FEATURES_H_

#include <map>
#include <string>
#include <vector>

#include "lvc/corpus/manifest.h"
#include "lvc/feats/conditioning.h"
#include "lvc/nn/tensor.h"
#include "lvc/pipeline/config.h"
#include "lvc/vc/embedding.h"

namespace lvc {

nn::Mat MelToMat(const MelSpectrogram &m);
MelSpectrogram MatToMel(const nn::Mat &m, const AnalysisConfig &cfg);

// The `extract` stage: two feature passes over the manifest (raw tracks,
// then stats-normalized dumps), per-speaker embeddings, and the stats file.
// Writes into out_dir:
//   <utt_id>.feat     normalized conditioning channels
//   stats.tsv         per-speaker log-f0 stats + global mgc stats
//   embeddings.tsv    one 64-dim row per speaker
struct ExtractionResult {
  std::map<std::string, SpeakerStats> speaker_stats;
  GlobalStats global_stats;
  std::map<std::string, SpeakerEmbedding> embeddings;
};

ExtractionResult ExtractFeatures(const Manifest &manifest, const Config &cfg,
                                 const std::string &out_dir);

void WriteStatsTsv(const std::string &path,
                   const std::map<std::string, SpeakerStats> &speaker_stats,
                   const GlobalStats &global_stats);
void ReadStatsTsv(const std::string &path,
                  std::map<std::string, SpeakerStats> *speaker_stats,
                  GlobalStats *global_stats);

// Per-style summaries for the `analyze` command.
LombardStats AnalyzeManifest(const Manifest &manifest, const Config &cfg);

}  // namespace lvc

#endif  // LVC_PIPELINE_FEATURES_H_
