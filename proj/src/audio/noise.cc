// lvc/audio/noise.cc

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

#include "lvc/audio/noise.h"

#include <cmath>
#include <cstring>
#include <fstream>

#include "lvc/common.h"
#include "lvc/kernels/fft.h"

namespace lvc {

Ltas ComputeLtas(const std::vector<Waveform> &corpus, const AnalysisConfig &cfg) {
  if (corpus.empty()) throw InvalidInput("compute_ltas: empty corpus");
  const int n_bins = cfg.fft_size / 2 + 1;
  std::vector<double> acc(n_bins, 0.0);
  long n_frames = 0;
  for (const Waveform &w : corpus) {
    ValidateWaveform(w);
    Stft s = ComputeStft(w.samples, cfg.FrameLength(w.sample_rate_hz),
                         cfg.FrameShift(w.sample_rate_hz), cfg.fft_size);
    for (int f = 0; f < s.n_frames; f++)
      for (int b = 0; b < n_bins; b++) acc[b] += std::abs(s.At(f, b));
    n_frames += s.n_frames;
  }
  Ltas out;
  out.band_magnitudes.resize(n_bins);
  for (int b = 0; b < n_bins; b++) out.band_magnitudes[b] = acc[b] / n_frames;

  bool any_positive = false;
  for (double v : out.band_magnitudes) any_positive |= v > 0.0;
  if (!any_positive) throw InvalidInput("compute_ltas: all bands are zero");
  return out;
}

Waveform SpeechShapedNoise(const Ltas &ltas, double duration_s, uint64_t seed,
                           int fft_size) {
  if (duration_s <= 0.0) throw InvalidInput("speech_shaped_noise: duration <= 0");
  if (ltas.Bands() < 2) throw InvalidInput("speech_shaped_noise: degenerate LTAS");

  const int n_out = static_cast<int>(std::lround(duration_s * kSampleRate));
  const int hop = fft_size / 4;  // Hann at quarter hop gives a flat window sum
  const int n_bins = fft_size / 2 + 1;

  // The provided LTAS may live on a different FFT grid; resample linearly.
  std::vector<double> shape(n_bins);
  for (int b = 0; b < n_bins; b++) {
    const double pos = static_cast<double>(b) * (ltas.Bands() - 1) / (n_bins - 1);
    const int i0 = static_cast<int>(pos);
    const int i1 = std::min(i0 + 1, ltas.Bands() - 1);
    const double t = pos - i0;
    shape[b] = (1.0 - t) * ltas.band_magnitudes[i0] + t * ltas.band_magnitudes[i1];
  }

  Rng rng(seed);
  std::vector<double> win = HannWindow(fft_size);
  std::vector<double> acc(n_out + 2 * fft_size, 0.0);
  std::vector<std::complex<double>> spec(fft_size);
  std::vector<double> frame(fft_size);

  const int n_frames = (n_out + fft_size) / hop + 1;
  for (int f = 0; f < n_frames; f++) {
    // Complex Gaussian bins scaled by the target magnitude shape.
    spec[0] = shape[0] * rng.Gaussian();
    for (int b = 1; b < fft_size / 2; b++) {
      spec[b] = std::complex<double>(rng.Gaussian(), rng.Gaussian()) *
                (shape[b] * M_SQRT1_2);
      spec[fft_size - b] = std::conj(spec[b]);
    }
    spec[fft_size / 2] = shape[fft_size / 2] * rng.Gaussian();
    kernels::Fft(spec.data(), fft_size, true);
    for (int i = 0; i < fft_size; i++) frame[i] = spec[i].real();

    const int start = f * hop - fft_size;  // run-in so sample 0 is stationary
    for (int i = 0; i < fft_size; i++) {
      const int idx = start + i + fft_size;
      if (idx < 0 || idx >= static_cast<int>(acc.size())) continue;
      acc[idx] += frame[i] * win[i];
    }
  }

  Waveform out;
  out.sample_rate_hz = kSampleRate;
  out.samples.assign(acc.begin() + fft_size, acc.begin() + fft_size + n_out);
  NormalizeRms(&out, 0.1);
  return out;
}

bool ActiveSupportMask(const std::vector<double> &x, std::vector<char> *mask) {
  const int n = static_cast<int>(x.size());
  const int frame = std::min(n, 800);  // 50 ms at 16 kHz
  const int hop = std::max(1, frame / 4);
  const double thresh_db = -50.0;
  mask->assign(n, 0);
  bool any = false;
  for (int start = 0; start < n; start += hop) {
    const int end = std::min(n, start + frame);
    double acc = 0.0;
    for (int i = start; i < end; i++) acc += x[i] * x[i];
    const double rms = std::sqrt(acc / std::max(1, end - start));
    if (rms > 0.0 && 20.0 * std::log10(rms) > thresh_db) {
      any = true;
      for (int i = start; i < end; i++) (*mask)[i] = 1;
    }
    if (end == n) break;
  }
  return any;
}

Waveform MixAtSnr(const Waveform &speech, const Waveform &noise, double snr_db) {
  ValidateWaveform(speech, "mix_at_snr speech");
  ValidateWaveform(noise, "mix_at_snr noise");
  if (speech.sample_rate_hz != noise.sample_rate_hz)
    throw InvalidInput("mix_at_snr: sample rate mismatch");

  const int n = speech.Size();
  std::vector<double> noise_seg(n);
  for (int i = 0; i < n; i++) noise_seg[i] = noise.samples[i % noise.Size()];

  std::vector<char> mask;
  if (!ActiveSupportMask(speech.samples, &mask))
    throw InvalidInput("mix_at_snr: speech is digital silence, cannot measure power");

  double p_s = 0.0, p_n = 0.0;
  long count = 0;
  for (int i = 0; i < n; i++) {
    if (!mask[i]) continue;
    p_s += speech.samples[i] * speech.samples[i];
    p_n += noise_seg[i] * noise_seg[i];
    count++;
  }
  p_s /= count;
  p_n /= count;
  if (p_n <= 0.0) throw InvalidInput("mix_at_snr: noise has no power on the speech support");

  const double g = std::sqrt(p_s / (p_n * std::pow(10.0, snr_db / 10.0)));
  Waveform out;
  out.sample_rate_hz = speech.sample_rate_hz;
  out.samples.resize(n);
  for (int i = 0; i < n; i++) out.samples[i] = speech.samples[i] + g * noise_seg[i];
  return out;
}

// ---------------------------------------------------------------------------
// LTAS file format
// ---------------------------------------------------------------------------

static constexpr char kLtasMagic[8] = {'L', 'V', 'C', 'L', 'T', 'A', 'S', '1'};

void WriteLtas(const std::string &path, const Ltas &ltas) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write LTAS file: " + path);
  out.write(kLtasMagic, 8);
  uint32_t n = static_cast<uint32_t>(ltas.Bands());
  out.write(reinterpret_cast<const char *>(&n), 4);
  for (double v : ltas.band_magnitudes) {
    float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char *>(&f), 4);
  }
}

Ltas ReadLtas(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open LTAS file: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kLtasMagic, 8) != 0)
    throw DataError("bad LTAS magic: " + path);
  uint32_t n = 0;
  in.read(reinterpret_cast<char *>(&n), 4);
  if (!in || n == 0 || n > (1u << 24)) throw DataError("bad LTAS band count: " + path);
  Ltas ltas;
  ltas.band_magnitudes.resize(n);
  for (uint32_t i = 0; i < n; i++) {
    float f;
    in.read(reinterpret_cast<char *>(&f), 4);
    if (!in) throw DataError("truncated LTAS file: " + path);
    ltas.band_magnitudes[i] = f;
  }
  return ltas;
}

}  // namespace lvc
