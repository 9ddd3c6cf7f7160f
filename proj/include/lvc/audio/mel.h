// lvc/audio/mel.h

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

#ifndef LVC_AUDIO_MEL_H_
#define LVC_AUDIO_MEL_H_

#include <complex>
#include <vector>

#include "lvc/audio/waveform.h"

namespace lvc {

constexpr double kLogEnergyFloor = 1e-10;

struct AnalysisConfig {
  double frame_length_ms = 50.0;
  double frame_shift_ms = 12.5;
  int fft_size = 1024;
  int mel_bins = 80;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;

  int FrameLength(int sr = kSampleRate) const {
    return static_cast<int>(frame_length_ms * sr / 1000.0 + 0.5);
  }
  int FrameShift(int sr = kSampleRate) const {
    return static_cast<int>(frame_shift_ms * sr / 1000.0 + 0.5);
  }
  void Validate(int sample_rate = kSampleRate) const;
};

// Natural-log mel filterbank energies, frames x mel_bins row-major.
struct MelSpectrogram {
  int frames = 0;
  int bins = 0;
  std::vector<double> values;
  AnalysisConfig config;

  double &At(int f, int b) { return values[(size_t)f * bins + b]; }
  double At(int f, int b) const { return values[(size_t)f * bins + b]; }
};

// Frame count produced by the reflection-padded framing: ceil(len / shift).
int NumFrames(int n_samples, int shift);

// Cut a signal into frames of `frame_len` every `shift` samples after
// reflection-padding it so the frame count is exactly NumFrames(len, shift).
// Output is row-major n_frames x frame_len; optionally Hann-windowed.
std::vector<double> FrameSignal(const std::vector<double> &x, int frame_len,
                                int shift, bool hann, int *n_frames);

// Periodic Hann window.
std::vector<double> HannWindow(int n);

// Triangular mel filterbank, n_filt x (fft/2+1) dense row-major.
std::vector<double> MelFilterbank(const AnalysisConfig &cfg,
                                  int sample_rate = kSampleRate);

double HzToMel(double hz);
double MelToHz(double mel);

// STFT pair shared by the mel analysis, mel inversion and the spectral
// shaping stage.  Frames follow FrameSignal's padding contract.
struct Stft {
  int n_frames = 0;
  int n_bins = 0;  // fft/2+1
  int frame_len = 0;
  int shift = 0;
  int fft_size = 0;
  std::vector<std::complex<double>> spec;  // n_frames x n_bins

  std::complex<double> &At(int f, int b) { return spec[(size_t)f * n_bins + b]; }
  std::complex<double> At(int f, int b) const { return spec[(size_t)f * n_bins + b]; }
};

Stft ComputeStft(const std::vector<double> &x, int frame_len, int shift,
                 int fft_size);

// Weighted overlap-add inverse (Hann analysis + Hann synthesis, normalized
// by the accumulated squared window), trimmed to out_len samples.
std::vector<double> InverseStft(const Stft &s, int out_len);

MelSpectrogram ComputeMelSpectrogram(const Waveform &w, const AnalysisConfig &cfg);

// Griffin-Lim inversion through the mel filterbank pseudo-inverse.
// Zero initial phase makes the result deterministic.
Waveform InvertMel(const MelSpectrogram &m, int iterations);

double MelMeanAbsError(const MelSpectrogram &a, const MelSpectrogram &b);

}  // namespace lvc

#endif  // LVC_AUDIO_MEL_H_
