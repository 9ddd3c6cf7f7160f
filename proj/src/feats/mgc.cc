// lvc/feats/mgc.cc

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

#include "lvc/feats/mgc.h"

#include <algorithm>
#include <cmath>

#include "lvc/common.h"
#include "lvc/kernels/fft.h"
#include "lvc/kernels/kernels.h"

namespace lvc {

double MgcTrack::MeanCoeff(int c) const {
  double acc = 0.0;
  for (int f = 0; f < frames; f++) acc += At(f, c);
  return frames > 0 ? acc / frames : 0.0;
}

double WarpFrequency(double omega, double alpha) {
  return omega + 2.0 * std::atan(alpha * std::sin(omega) /
                                 (1.0 - alpha * std::cos(omega)));
}

void CepstralSmooth(std::vector<double> *log_mag, int keep) {
  const int n_bins = static_cast<int>(log_mag->size());
  int n = 2;
  while (n < 2 * (n_bins - 1)) n <<= 1;

  std::vector<std::complex<double>> buf(n, 0.0);
  for (int i = 0; i < n_bins; i++) buf[i] = (*log_mag)[i];
  for (int i = 1; i < n_bins - 1; i++) buf[n - i] = (*log_mag)[i];  // even extension
  kernels::Fft(buf.data(), n, false);
  for (int q = keep; q <= n - keep; q++) buf[q] = 0.0;
  kernels::Fft(buf.data(), n, true);
  for (int i = 0; i < n_bins; i++) (*log_mag)[i] = buf[i].real();
}

namespace {

// Inverse of WarpFrequency on [0, pi] by bisection; the map is monotone.
double UnwarpFrequency(double warped, double alpha) {
  double lo = 0.0, hi = M_PI;
  for (int it = 0; it < 48; it++) {
    double mid = 0.5 * (lo + hi);
    (WarpFrequency(mid, alpha) < warped ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MgcTrack ComputeMgc(const Waveform &w, const AnalysisConfig &cfg,
                    const MgcConfig &mgc_cfg) {
  ValidateWaveform(w);
  const int sr = w.sample_rate_hz;
  const int frame_len = cfg.FrameLength(sr);
  const int shift = cfg.FrameShift(sr);
  const int n_bins = cfg.fft_size / 2 + 1;
  const int keep = std::max(2, static_cast<int>(sr / mgc_cfg.lifter_floor_hz));
  const int K = mgc_cfg.warped_points;

  int n_frames = 0;
  std::vector<double> frames = FrameSignal(w.samples, frame_len, shift, true, &n_frames);
  std::vector<std::complex<double>> spec((size_t)n_frames * n_bins);
  kernels::BatchSpectra(frames.data(), n_frames, frame_len, cfg.fft_size, spec.data());

  // Sample positions on the linear axis for a uniform warped grid (shared by
  // all frames).
  std::vector<double> src_bin(K);
  for (int k = 0; k < K; k++) {
    const double warped = M_PI * (k + 0.5) / K;
    src_bin[k] = UnwarpFrequency(warped, mgc_cfg.alpha) / M_PI * (n_bins - 1);
  }

  MgcTrack track;
  track.frames = n_frames;
  track.order = mgc_cfg.order;
  track.alpha = mgc_cfg.alpha;
  track.coeffs.assign((size_t)n_frames * (mgc_cfg.order + 1), 0.0);

  std::vector<double> log_mag(n_bins), warped(K);
  for (int f = 0; f < n_frames; f++) {
    for (int b = 0; b < n_bins; b++) {
      const double a = std::abs(spec[(size_t)f * n_bins + b]);
      log_mag[b] = std::log(std::max(a, 1e-10));
    }
    CepstralSmooth(&log_mag, keep);

    for (int k = 0; k < K; k++) {
      const double pos = src_bin[k];
      const int i0 = std::min(static_cast<int>(pos), n_bins - 2);
      const double t = pos - i0;
      warped[k] = (1.0 - t) * log_mag[i0] + t * log_mag[i0 + 1];
    }

    // DCT-II with c0 = mean so a pure gain lands only in coefficient 0.
    for (int m = 0; m <= mgc_cfg.order; m++) {
      double acc = 0.0;
      for (int k = 0; k < K; k++)
        acc += warped[k] * std::cos(M_PI * m * (k + 0.5) / K);
      track.At(f, m) = (m == 0 ? 1.0 : 2.0) * acc / K;
    }
  }
  return track;
}

}  // namespace lvc
