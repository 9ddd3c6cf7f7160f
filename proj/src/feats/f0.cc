// lvc/feats/f0.cc

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

#include "lvc/feats/f0.h"

#include <algorithm>
#include <cmath>

#include "lvc/common.h"

namespace lvc {

namespace {

// Normalized cross-correlation r(tau) = sum x[i]x[i+tau] /
// sqrt(sum x[i]^2 * sum x[i+tau]^2) over a window of `len` samples.
double NormalizedAutocorr(const double *x, int len, int tau) {
  double num = 0.0, e0 = 0.0, e1 = 0.0;
  for (int i = 0; i < len; i++) {
    num += x[i] * x[i + tau];
    e0 += x[i] * x[i];
    e1 += x[i + tau] * x[i + tau];
  }
  const double denom = std::sqrt(e0 * e1);
  return denom > 1e-30 ? num / denom : 0.0;
}

}  // namespace

F0Track EstimateF0(const Waveform &w, const AnalysisConfig &cfg,
                   const F0Config &f0cfg) {
  ValidateWaveform(w);
  const int sr = w.sample_rate_hz;
  const int frame_len = cfg.FrameLength(sr);
  const int shift = cfg.FrameShift(sr);
  int n_frames = 0;
  // Same reflection-padded framing as the mel front end keeps tracks aligned.
  std::vector<double> frames = FrameSignal(w.samples, frame_len, shift, false, &n_frames);

  const int tau_min = std::max(2, static_cast<int>(sr / f0cfg.ceil_hz));
  const int tau_max = std::min(frame_len / 2 - 1, static_cast<int>(sr / f0cfg.floor_hz) + 1);
  if (tau_max <= tau_min) throw InvalidInput("estimate_f0: frame too short for floor_hz");
  const int corr_len = frame_len - tau_max;

  F0Track track;
  track.frame_shift_ms = cfg.frame_shift_ms;
  track.f0_hz.assign(n_frames, 0.0);

  std::vector<double> r(tau_max + 1, 0.0);
  for (int f = 0; f < n_frames; f++) {
    const double *x = frames.data() + (size_t)f * frame_len;

    double energy = 0.0;
    for (int i = 0; i < frame_len; i++) energy += x[i] * x[i];
    const double rms = std::sqrt(energy / frame_len);
    if (rms <= 0.0 || 20.0 * std::log10(rms) < f0cfg.energy_floor_dbfs) continue;

    double best = -1.0;
    for (int tau = tau_min; tau <= tau_max; tau++) {
      r[tau] = NormalizedAutocorr(x, corr_len, tau);
      best = std::max(best, r[tau]);
    }
    if (best < f0cfg.voicing_threshold) continue;

    // Smallest lag whose local maximum comes within 15% of the global peak:
    // on harmonic sources the double-period peak can edge out the true one.
    int pick = -1;
    for (int tau = tau_min + 1; tau < tau_max; tau++) {
      if (r[tau] >= r[tau - 1] && r[tau] >= r[tau + 1] && r[tau] >= 0.85 * best &&
          r[tau] >= f0cfg.voicing_threshold) {
        pick = tau;
        break;
      }
    }
    if (pick < 0) {
      for (int tau = tau_min; tau <= tau_max; tau++)
        if (r[tau] == best) { pick = tau; break; }
    }

    double tau_star = pick;
    if (pick > tau_min && pick < tau_max) {
      const double a = r[pick - 1], b = r[pick], c = r[pick + 1];
      const double denom = a - 2.0 * b + c;
      if (std::abs(denom) > 1e-12) {
        double delta = 0.5 * (a - c) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        tau_star = pick + delta;
      }
    }
    double f0 = sr / tau_star;
    if (f0 >= f0cfg.floor_hz && f0 <= f0cfg.ceil_hz) track.f0_hz[f] = f0;
  }
  return track;
}

}  // namespace lvc
