// lvc/feats/conditioning.h

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

#ifndef LVC_FEATS_CONDITIONING_H_
#define LVC_FEATS_CONDITIONING_H_

#include <string>
#include <vector>

#include "lvc/feats/f0.h"
#include "lvc/feats/mgc.h"

namespace lvc {

struct NormStats {
  double mean = 0.0;
  double stddev = 1.0;
};

// Log-f0 statistics are per speaker (absolute pitch is identity, its
// dynamics are style); mgc statistics are corpus-global.
struct SpeakerStats {
  NormStats logf0;
};

struct GlobalStats {
  NormStats mgc0;
  NormStats mgc1;
};

// Frame-level conditioning channels, z-normalized, aligned with mel frames.
struct AcousticFrameFeatures {
  int frames = 0;
  std::vector<double> logf0;    // interpolated + speaker-normalized
  std::vector<double> voicing;  // {0,1} passthrough
  std::vector<double> mgc0;     // globally normalized
  std::vector<double> mgc1;     // globally normalized
  // Normalization metadata, channel order (mean, std) x (logf0, voicing,
  // mgc0, mgc1); voicing is never rescaled so its slot is (0, 1).
  double norm_meta[8] = {0, 1, 0, 1, 0, 1, 0, 1};
};

// Interpolate log-f0 across unvoiced gaps (edges extended), z-normalize
// channels, keep the voicing flag.  A fully unvoiced utterance yields an
// all-zero logf0 channel with voicing 0.
AcousticFrameFeatures ExtractConditioning(const F0Track &f0, const MgcTrack &mgc,
                                          const SpeakerStats &speaker,
                                          const GlobalStats &global);

// Convenience overload running the extractors.
AcousticFrameFeatures ExtractConditioning(const Waveform &w,
                                          const SpeakerStats &speaker,
                                          const GlobalStats &global,
                                          const AnalysisConfig &cfg = AnalysisConfig());

// Raw (pre-normalization) interpolated log-f0; exposed for stats building.
std::vector<double> InterpolateLogF0(const F0Track &f0, std::vector<double> *voicing);

SpeakerStats ComputeSpeakerStats(const std::vector<F0Track> &tracks);
GlobalStats ComputeGlobalStats(const std::vector<MgcTrack> &tracks);

// Per-style feature summary and Lombard-vs-neutral deltas.
struct StyleFeatureStats {
  double mean_f0 = 0.0, std_f0 = 0.0;
  double mean_mgc0 = 0.0, std_mgc0 = 0.0;
  double mean_mgc1 = 0.0, std_mgc1 = 0.0;
  int n_utterances = 0;
};

struct LombardStats {
  std::string style_a, style_b;
  StyleFeatureStats a, b;
  double delta_mean_f0 = 0.0;
  double delta_mean_mgc0 = 0.0;
  double delta_mean_mgc1 = 0.0;
};

// Per-utterance inputs for one style: voiced-frame mean f0 plus mean
// mgc0/mgc1.  The manifest-level wrapper lives in the pipeline.
struct UtteranceFeatureSummary {
  double mean_f0 = 0.0;  // 0 when fully unvoiced
  double mean_mgc0 = 0.0;
  double mean_mgc1 = 0.0;
};

UtteranceFeatureSummary SummarizeUtterance(const F0Track &f0, const MgcTrack &mgc);

LombardStats ComputeLombardStats(const std::vector<UtteranceFeatureSummary> &style_a,
                                 const std::vector<UtteranceFeatureSummary> &style_b,
                                 const std::string &name_a, const std::string &name_b);

// Feature dump: magic "LVCFEAT1", uint32 frame count, uint32 channel count
// (4), row-major float32 frames (logf0, voicing, mgc0, mgc1), then the 8
// float32 normalization metadata values.
void WriteFeatures(const std::string &path, const AcousticFrameFeatures &f);
AcousticFrameFeatures ReadFeatures(const std::string &path);

}  // namespace lvc

#endif  // LVC_FEATS_CONDITIONING_H_
