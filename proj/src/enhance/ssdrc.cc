// lvc/enhance/ssdrc.cc

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

#include "lvc/enhance/ssdrc.h"

#include <algorithm>
#include <cmath>

#include "lvc/audio/mel.h"
#include "lvc/common.h"
#include "lvc/feats/mgc.h"

namespace lvc {

namespace {

// Raised-cosine band weight in dB: 0 outside, boost_db in the flat region,
// half-cosine shoulders centered on the band edges.
double TiltBoostDb(double f, const SsConfig &cfg) {
  const double half = cfg.shoulder_hz / 2.0;
  const double rise_lo = cfg.boost_lo_hz - half, rise_hi = cfg.boost_lo_hz + half;
  const double fall_lo = cfg.boost_hi_hz - half, fall_hi = cfg.boost_hi_hz + half;
  if (f <= rise_lo || f >= fall_hi) return 0.0;
  if (f >= rise_hi && f <= fall_lo) return cfg.boost_db;
  if (f < rise_hi) {
    const double t = (f - rise_lo) / (rise_hi - rise_lo);
    return cfg.boost_db * 0.5 * (1.0 - std::cos(M_PI * t));
  }
  const double t = (fall_hi - f) / (fall_hi - fall_lo);
  return cfg.boost_db * 0.5 * (1.0 - std::cos(M_PI * t));
}

void MatchRms(const Waveform &ref, Waveform *w) {
  const double target = Rms(ref);
  if (target <= 0.0) return;
  NormalizeRms(w, target);
}

}  // namespace

Waveform SpectralShaping(const Waveform &w, const SsConfig &cfg) {
  ValidateWaveform(w);
  if (Rms(w) <= 0.0) return w;  // silence in, silence out

  AnalysisConfig acfg;
  const int frame_len = acfg.FrameLength(w.sample_rate_hz);
  const int shift = acfg.FrameShift(w.sample_rate_hz);
  if (w.Size() < frame_len)
    throw InvalidInput("spectral_shaping: waveform shorter than one frame");
  const int n_bins = acfg.fft_size / 2 + 1;
  const double hz_per_bin = static_cast<double>(w.sample_rate_hz) / acfg.fft_size;

  Stft s = ComputeStft(w.samples, frame_len, shift, acfg.fft_size);

  std::vector<double> boost(n_bins);
  for (int b = 0; b < n_bins; b++)
    boost[b] = std::pow(10.0, TiltBoostDb(b * hz_per_bin, cfg) / 20.0);

  std::vector<double> env(n_bins), trend(n_bins);
  for (int f = 0; f < s.n_frames; f++) {
    for (int b = 0; b < n_bins; b++) {
      const double a = std::abs(s.At(f, b));
      env[b] = std::log(std::max(a, 1e-10));
    }
    trend = env;
    CepstralSmooth(&env, cfg.lifter_order);
    CepstralSmooth(&trend, cfg.trend_order);
    for (int b = 0; b < n_bins; b++) {
      // Sharpen the local envelope against the wide-scale trend.
      const double gain = std::exp(cfg.beta * (env[b] - trend[b])) * boost[b];
      s.At(f, b) *= gain;
    }
  }

  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.samples = InverseStft(s, w.Size());
  MatchRms(w, &out);
  return out;
}

double DrcStaticCurveDb(double level_db, const DrcConfig &cfg) {
  if (level_db >= cfg.comp_knee_dbfs)
    return cfg.comp_knee_dbfs + (level_db - cfg.comp_knee_dbfs) / cfg.comp_ratio;
  if (level_db <= cfg.makeup_knee_dbfs) return level_db + cfg.makeup_db;
  // Linear interpolation between the makeup point and the compression knee.
  const double x0 = cfg.makeup_knee_dbfs, y0 = cfg.makeup_knee_dbfs + cfg.makeup_db;
  const double x1 = cfg.comp_knee_dbfs, y1 = cfg.comp_knee_dbfs;
  const double t = (level_db - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

Waveform DynamicRangeCompression(const Waveform &w, const DrcConfig &cfg) {
  ValidateWaveform(w);
  if (Rms(w) <= 0.0) return w;

  const double sr = w.sample_rate_hz;
  const double a_att = std::exp(-1000.0 / (cfg.attack_ms * sr));
  const double a_rel = std::exp(-1000.0 / (cfg.release_ms * sr));

  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.samples.resize(w.samples.size());
  double env = 0.0;
  for (size_t i = 0; i < w.samples.size(); i++) {
    const double mag = std::abs(w.samples[i]);
    const double a = mag > env ? a_att : a_rel;
    env = a * env + (1.0 - a) * mag;
    const double level_db = 20.0 * std::log10(std::max(env, 1e-6));
    const double gain_db = DrcStaticCurveDb(level_db, cfg) - level_db;
    out.samples[i] = w.samples[i] * std::pow(10.0, gain_db / 20.0);
  }
  MatchRms(w, &out);
  return out;
}

Waveform Ssdrc(const Waveform &w, const SsConfig &ss, const DrcConfig &drc) {
  return DynamicRangeCompression(SpectralShaping(w, ss), drc);
}

}  // namespace lvc
