// lvc/intel/gammatone.h

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

#ifndef LVC_INTEL_GAMMATONE_H_
#define LVC_INTEL_GAMMATONE_H_

#include <vector>

#include "lvc/audio/waveform.h"

namespace lvc {

struct SiibConfig {
  int channels = 24;           // ERB-spaced
  double fmin_hz = 100.0;
  double fmax_hz = 7500.0;
  double env_rate_hz = 40.0;   // 25 ms envelope frames
  double env_lp_hz = 20.0;     // envelope low-pass
  int gammatone_order = 4;
  double discount = 0.75;      // per-channel redundancy discount
};

double HzToErbRate(double hz);
double ErbRateToHz(double erb);
double ErbBandwidth(double hz);

// Center frequencies, uniformly spaced on the ERB-rate scale.
std::vector<double> GammatoneCenters(const SiibConfig &cfg);

// Log-compressed per-channel envelopes at cfg.env_rate_hz, row-major
// channels x frames with frames = floor(duration * env_rate_hz).
std::vector<double> ComputeGammatoneEnvelopes(const Waveform &w,
                                              const SiibConfig &cfg,
                                              int *n_frames);

}  // namespace lvc

#endif  // LVC_INTEL_GAMMATONE_H_
