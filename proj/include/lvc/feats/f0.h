// lvc/feats/f0.h

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

#ifndef LVC_FEATS_F0_H_
#define LVC_FEATS_F0_H_

#include <vector>

#include "lvc/audio/mel.h"
#include "lvc/audio/waveform.h"

namespace lvc {

// Per-frame fundamental frequency; 0 marks unvoiced frames.  Frames align
// one-to-one with mel frames for the same config.
struct F0Track {
  std::vector<double> f0_hz;
  double frame_shift_ms = 12.5;

  int Frames() const { return static_cast<int>(f0_hz.size()); }
  bool Voiced(int f) const { return f0_hz[f] > 0.0; }
};

struct F0Config {
  double floor_hz = 60.0;
  double ceil_hz = 400.0;
  // Normalized autocorrelation below this at the best lag means unvoiced.
  double voicing_threshold = 0.3;
  // Frames quieter than this are unvoiced outright.
  double energy_floor_dbfs = -60.0;
};

// Normalized autocorrelation with parabolic peak interpolation.  Among lags
// whose peak comes within 15% of the global maximum the smallest lag wins,
// which suppresses octave-down errors on harmonic-rich sources.
F0Track EstimateF0(const Waveform &w, const AnalysisConfig &cfg = AnalysisConfig(),
                   const F0Config &f0cfg = F0Config());

}  // namespace lvc

#endif  // LVC_FEATS_F0_H_
