// lvc/audio/noise.h

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

#ifndef LVC_AUDIO_NOISE_H_
#define LVC_AUDIO_NOISE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lvc/audio/mel.h"
#include "lvc/audio/waveform.h"

namespace lvc {

// Long-term average magnitude spectrum, fft/2+1 bands.
struct Ltas {
  std::vector<double> band_magnitudes;
  int Bands() const { return static_cast<int>(band_magnitudes.size()); }
};

struct NoiseCondition {
  double snr_db = -1.0;
  uint64_t seed = 0;
  // Only speech-shaped noise is supported; kept as a field so report rows
  // can name the masker.
  std::string noise_kind = "speech_shaped";
};

// Per-band mean magnitude over all analysis frames of all inputs.
Ltas ComputeLtas(const std::vector<Waveform> &corpus,
                 const AnalysisConfig &cfg = AnalysisConfig());

// Seeded Gaussian noise shaped by `ltas` via short-time overlap-add
// synthesis; output RMS is normalized to 0.1.
Waveform SpeechShapedNoise(const Ltas &ltas, double duration_s, uint64_t seed,
                           int fft_size = 1024);

// speech + g * noise with g chosen so the ratio of powers over the speech's
// active support equals snr_db.  Noise shorter than the speech is tiled.
Waveform MixAtSnr(const Waveform &speech, const Waveform &noise, double snr_db);

// Mean-square power over frames whose level exceeds -50 dBFS; the mask used
// is the speech's own active support for both signals in MixAtSnr.
// Returns false when no frame is active.
bool ActiveSupportMask(const std::vector<double> &x, std::vector<char> *mask);

// Magic "LVCLTAS1" + uint32 band count + float32 little-endian bands.
void WriteLtas(const std::string &path, const Ltas &ltas);
Ltas ReadLtas(const std::string &path);

}  // namespace lvc

#endif  // LVC_AUDIO_NOISE_H_
