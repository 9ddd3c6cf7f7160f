// lvc/enhance/ssdrc.h

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

#ifndef LVC_ENHANCE_SSDRC_H_
#define LVC_ENHANCE_SSDRC_H_

#include "lvc/audio/waveform.h"

namespace lvc {

// Spectral shaping: per-frame formant sharpening against the wide-scale
// spectral trend plus a fixed mid-band tilt-reduction boost.
struct SsConfig {
  double beta = 0.3;              // sharpening exponent
  double boost_lo_hz = 1000.0;    // tilt boost band
  double boost_hi_hz = 4000.0;
  double boost_db = 6.0;
  double shoulder_hz = 500.0;     // raised-cosine shoulder width
  int lifter_order = 40;          // envelope smoothing (cepstral bins kept)
  int trend_order = 3;            // wide-scale trend smoothing
};

// Dynamic range compression: attack/release envelope mapped through a
// monotone piecewise-linear static curve in dB.
struct DrcConfig {
  double attack_ms = 2.0;
  double release_ms = 20.0;
  double comp_knee_dbfs = -20.0;   // 2:1 compression above this level
  double comp_ratio = 2.0;
  double makeup_knee_dbfs = -45.0; // +makeup below this level
  double makeup_db = 12.0;
};

Waveform SpectralShaping(const Waveform &w, const SsConfig &cfg = SsConfig());
Waveform DynamicRangeCompression(const Waveform &w, const DrcConfig &cfg = DrcConfig());

// DRC(SS(w)); both stages match their output RMS to their input RMS so
// level changes never confound downstream intelligibility scores.
Waveform Ssdrc(const Waveform &w, const SsConfig &ss = SsConfig(),
               const DrcConfig &drc = DrcConfig());

// The static curve, exposed for tests: input level dB -> output level dB.
double DrcStaticCurveDb(double level_db, const DrcConfig &cfg);

}  // namespace lvc

#endif  // LVC_ENHANCE_SSDRC_H_
