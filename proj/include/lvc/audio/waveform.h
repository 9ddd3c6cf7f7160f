// lvc/audio/waveform.h

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

#ifndef LVC_AUDIO_WAVEFORM_H_
#define LVC_AUDIO_WAVEFORM_H_

#include <string>
#include <vector>

namespace lvc {

constexpr int kSampleRate = 16000;  // everything runs at 16 kHz internally

struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = kSampleRate;

  int Size() const { return static_cast<int>(samples.size()); }
  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

// Throws InvalidInput if empty or not finite.
void ValidateWaveform(const Waveform &w, const std::string &what = "waveform");

double Rms(const std::vector<double> &x);
double Rms(const Waveform &w);

// Scale so that Rms(w) == target (no-op on digital silence).
void NormalizeRms(Waveform *w, double target);

enum class WavEncoding { kPcm16, kFloat32 };

// RIFF reader for mono/multi-channel PCM-16 and IEEE-float-32 files.
// Multi-channel input is averaged to mono with a warning; any sample rate
// other than 16 kHz is resampled on load (windowed-sinc).
Waveform ReadWav(const std::string &path);

// Mono writer.  PCM-16 clamps to [-1, 1] and rounds; float32 writes as-is.
void WriteWav(const std::string &path, const Waveform &w,
              WavEncoding enc = WavEncoding::kPcm16);

// Windowed-sinc resampler (arbitrary ratio).
Waveform Resample(const Waveform &w, int new_rate_hz);

}  // namespace lvc

#endif  // LVC_AUDIO_WAVEFORM_H_
