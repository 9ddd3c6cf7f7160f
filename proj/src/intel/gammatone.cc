// lvc/intel/gammatone.cc

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

#include "lvc/intel/gammatone.h"

#include <cmath>

#include "lvc/common.h"
#include "lvc/kernels/kernels.h"

namespace lvc {

double HzToErbRate(double hz) { return 21.4 * std::log10(1.0 + 0.00437 * hz); }
double ErbRateToHz(double erb) { return (std::pow(10.0, erb / 21.4) - 1.0) / 0.00437; }
double ErbBandwidth(double hz) { return 24.7 * (4.37 * hz / 1000.0 + 1.0); }

std::vector<double> GammatoneCenters(const SiibConfig &cfg) {
  if (cfg.channels < 2) throw InvalidInput("SiibConfig: need at least 2 channels");
  const double lo = HzToErbRate(cfg.fmin_hz), hi = HzToErbRate(cfg.fmax_hz);
  std::vector<double> fc(cfg.channels);
  for (int c = 0; c < cfg.channels; c++)
    fc[c] = ErbRateToHz(lo + (hi - lo) * c / (cfg.channels - 1));
  return fc;
}

std::vector<double> ComputeGammatoneEnvelopes(const Waveform &w,
                                              const SiibConfig &cfg,
                                              int *n_frames) {
  ValidateWaveform(w);
  const int sr = w.sample_rate_hz;
  const int n = w.Size();
  std::vector<double> fc = GammatoneCenters(cfg);

  std::vector<double> fc_norm(cfg.channels), pole(cfg.channels);
  for (int c = 0; c < cfg.channels; c++) {
    fc_norm[c] = fc[c] / sr;
    pole[c] = std::exp(-2.0 * M_PI * 1.019 * ErbBandwidth(fc[c]) / sr);
  }

  std::vector<double> env((size_t)cfg.channels * n);
  kernels::GammatoneEnvelopes(w.samples.data(), n, fc_norm.data(), pole.data(),
                              cfg.channels, cfg.gammatone_order, env.data());

  // Envelope low-pass (two one-pole passes) and block averaging down to the
  // envelope frame rate.
  const double a = std::exp(-2.0 * M_PI * cfg.env_lp_hz / sr);
  const int hop = static_cast<int>(sr / cfg.env_rate_hz + 0.5);
  const int frames = n / hop;
  *n_frames = frames;

  std::vector<double> out((size_t)cfg.channels * frames);
  for (int c = 0; c < cfg.channels; c++) {
    double *e = env.data() + (size_t)c * n;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; i++) {
      s1 = a * s1 + (1.0 - a) * e[i];
      s2 = a * s2 + (1.0 - a) * s1;
      e[i] = s2;
    }
    for (int f = 0; f < frames; f++) {
      double acc = 0.0;
      for (int i = f * hop; i < (f + 1) * hop; i++) acc += e[i];
      out[(size_t)c * frames + f] = std::log(std::max(acc / hop, 1e-8));
    }
  }
  return out;
}

}  // namespace lvc
