// lvc/feats/mgc.h

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

#ifndef LVC_FEATS_MGC_H_
#define LVC_FEATS_MGC_H_

#include <vector>

#include "lvc/audio/mel.h"
#include "lvc/audio/waveform.h"

namespace lvc {

// Mel-warped cepstral coefficients of the smoothed log-magnitude spectrum.
// Coefficient 0 carries log energy (a gain change of g moves it by ln g and
// nothing else), coefficient 1 carries spectral tilt (positive for spectra
// that fall with frequency, ~0 for flat ones).
struct MgcTrack {
  int frames = 0;
  int order = 24;  // coefficients 0..order
  double alpha = 0.42;
  std::vector<double> coeffs;  // frames x (order+1) row-major

  double At(int f, int c) const { return coeffs[(size_t)f * (order + 1) + c]; }
  double &At(int f, int c) { return coeffs[(size_t)f * (order + 1) + c]; }

  double MeanCoeff(int c) const;
};

struct MgcConfig {
  int order = 24;
  double alpha = 0.42;  // warp factor for 16 kHz
  // Cepstral smoothing keeps quefrencies below 1/floor_hz seconds.
  double lifter_floor_hz = 60.0;
  int warped_points = 256;
};

MgcTrack ComputeMgc(const Waveform &w, const AnalysisConfig &cfg = AnalysisConfig(),
                    const MgcConfig &mgc_cfg = MgcConfig());

// Cepstrally smooth a log-magnitude spectrum in place (keep the lowest
// `keep` quefrency coefficients of its even extension).
void CepstralSmooth(std::vector<double> *log_mag, int keep);

// Bilinear frequency warp w -> w + 2 atan(a sin w / (1 - a cos w)), a
// monotone map of [0, pi] onto itself that stretches low frequencies.
double WarpFrequency(double omega, double alpha);

}  // namespace lvc

#endif  // LVC_FEATS_MGC_H_
