// tests/test_audio_core.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lvc/audio/mel.h"
#include "lvc/audio/noise.h"
#include "lvc/audio/waveform.h"
#include "lvc/common.h"

using namespace lvc;

namespace {

Waveform Sine(double freq, double amp, double dur_s, int sr = kSampleRate) {
  Waveform w;
  w.sample_rate_hz = sr;
  int n = static_cast<int>(dur_s * sr);
  w.samples.resize(n);
  for (int i = 0; i < n; i++) w.samples[i] = amp * std::sin(2.0 * M_PI * freq * i / sr);
  return w;
}

Waveform WhiteNoise(double amp, double dur_s, uint64_t seed) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  int n = static_cast<int>(dur_s * kSampleRate);
  w.samples.resize(n);
  for (int i = 0; i < n; i++) w.samples[i] = amp * rng.Gaussian();
  return w;
}

std::filesystem::path TmpDir() {
  auto p = std::filesystem::temp_directory_path() / "lvc_audio_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("mel of silence sits on the log floor") {
  Waveform w;
  w.samples.assign(kSampleRate, 0.0);
  MelSpectrogram m = ComputeMelSpectrogram(w, AnalysisConfig());
  const double expect = std::log(1e-10);
  for (double v : m.values) CHECK(v == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mel shape: 1 s at 16 kHz with 12.5 ms shift gives 80 x 80") {
  Waveform w = Sine(300.0, 0.3, 1.0);
  MelSpectrogram m = ComputeMelSpectrogram(w, AnalysisConfig());
  CHECK(m.frames == 80);
  CHECK(m.bins == 80);
}

TEST_CASE("mel frame count law holds for random lengths") {
  AnalysisConfig cfg;
  Rng rng(99);
  for (int trial = 0; trial < 100; trial++) {
    int n = 800 + static_cast<int>(rng.Bounded(32000));
    Waveform w;
    w.samples.resize(n);
    for (int i = 0; i < n; i++) w.samples[i] = 0.1 * std::sin(0.01 * i);
    MelSpectrogram m = ComputeMelSpectrogram(w, cfg);
    CHECK(m.frames == (n + cfg.FrameShift() - 1) / cfg.FrameShift());
  }
}

TEST_CASE("mel rejects sub-frame input") {
  Waveform w;
  w.samples.assign(100, 0.1);
  CHECK_THROWS_AS(ComputeMelSpectrogram(w, AnalysisConfig()), InvalidInput);
}

TEST_CASE("440 Hz sine peaks at the right mel bin (DFT oracle)") {
  AnalysisConfig cfg;
  Waveform w = Sine(440.0, 0.5, 1.0);
  MelSpectrogram m = ComputeMelSpectrogram(w, cfg);

  // Oracle: locate the spectral peak by direct DFT of one interior frame.
  const int frame_len = cfg.FrameLength();
  std::vector<double> win = HannWindow(frame_len);
  int best_k = 0;
  double best = -1.0;
  const int offset = 8 * cfg.FrameShift();
  for (int k = 0; k < cfg.fft_size / 2 + 1; k++) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < frame_len; i++)
      acc += w.samples[offset + i] * win[i] *
             std::polar(1.0, -2.0 * M_PI * k * i / cfg.fft_size);
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      best_k = k;
    }
  }
  const double dft_peak_hz = best_k * static_cast<double>(kSampleRate) / cfg.fft_size;
  CHECK(std::abs(dft_peak_hz - 440.0) < 16.0);  // one FFT bin

  // Mel argmax must be constant over time and its center within one mel bin
  // of the oracle peak.  The first/last few frames mix mirrored content from
  // the reflection padding, so only steady-state frames are checked.
  const int guard = cfg.FrameLength() / cfg.FrameShift() + 1;
  int argmax = -1;
  for (int f = guard; f < m.frames - guard; f++) {
    int a = 0;
    for (int b = 1; b < m.bins; b++)
      if (m.At(f, b) > m.At(f, a)) a = b;
    if (argmax < 0) argmax = a;
    CHECK(a == argmax);
  }
  const double mel_lo = HzToMel(cfg.fmin_hz), mel_hi = HzToMel(cfg.fmax_hz);
  const double dmel = (mel_hi - mel_lo) / (cfg.mel_bins + 1);
  const double center_mel = mel_lo + (argmax + 1) * dmel;
  CHECK(std::abs(center_mel - HzToMel(dft_peak_hz)) <= dmel);
}

TEST_CASE("invert_mel round trip on a sine") {
  AnalysisConfig cfg;
  Waveform w = Sine(440.0, 0.5, 1.0);
  MelSpectrogram m = ComputeMelSpectrogram(w, cfg);

  Waveform r1 = InvertMel(m, 1);
  Waveform r60 = InvertMel(m, 60);
  MelSpectrogram m1 = ComputeMelSpectrogram(r1, cfg);
  MelSpectrogram m60 = ComputeMelSpectrogram(r60, cfg);

  const double err1 = MelMeanAbsError(m, m1);
  const double err60 = MelMeanAbsError(m, m60);
  CHECK(err60 <= 0.5);
  CHECK(err60 <= err1);

  // Deterministic given the zero-phase start.
  Waveform again = InvertMel(m, 60);
  REQUIRE(again.samples.size() == r60.samples.size());
  for (size_t i = 0; i < again.samples.size(); i++)
    CHECK(again.samples[i] == r60.samples[i]);
}

TEST_CASE("invert_mel of an all-floor mel is near silence") {
  MelSpectrogram m;
  m.frames = 40;
  m.bins = 80;
  m.config = AnalysisConfig();
  m.values.assign((size_t)m.frames * m.bins, std::log(1e-10));
  Waveform out = InvertMel(m, 10);
  CHECK(Rms(out) < 1e-4);
}

TEST_CASE("ltas: white noise is approximately flat") {
  std::vector<Waveform> corpus = {WhiteNoise(0.1, 10.0, 42)};
  Ltas ltas = ComputeLtas(corpus);
  double lo = 1e30, hi = 0.0;
  for (double v : ltas.band_magnitudes) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 3.0);
}

TEST_CASE("ltas: duplicated corpus entries leave the mean unchanged") {
  Waveform w = WhiteNoise(0.1, 2.0, 7);
  Ltas a = ComputeLtas({w});
  Ltas b = ComputeLtas({w, w});
  REQUIRE(a.Bands() == b.Bands());
  for (int i = 0; i < a.Bands(); i++)
    CHECK(a.band_magnitudes[i] == doctest::Approx(b.band_magnitudes[i]).epsilon(1e-12));
}

TEST_CASE("ltas: low-passed noise has weaker high bands") {
  Waveform w = WhiteNoise(0.1, 10.0, 21);
  Waveform lp;
  lp.sample_rate_hz = kSampleRate;
  lp.samples.resize(w.samples.size());
  double state = 0.0;
  for (size_t i = 0; i < w.samples.size(); i++) {
    state = 0.1 * w.samples[i] + 0.9 * state;
    lp.samples[i] = state;
  }
  Ltas ltas = ComputeLtas({lp});
  const int bands = ltas.Bands();
  double low_min = 1e30, high_max = 0.0;
  for (int b = 1; b < bands / 16; b++) low_min = std::min(low_min, ltas.band_magnitudes[b]);
  for (int b = bands * 3 / 4; b < bands; b++) high_max = std::max(high_max, ltas.band_magnitudes[b]);
  CHECK(high_max < low_min);
}

TEST_CASE("speech-shaped noise is seed-deterministic") {
  std::vector<Waveform> corpus = {WhiteNoise(0.1, 2.0, 3)};
  Ltas ltas = ComputeLtas(corpus);
  Waveform a = SpeechShapedNoise(ltas, 2.0, 123);
  Waveform b = SpeechShapedNoise(ltas, 2.0, 123);
  Waveform c = SpeechShapedNoise(ltas, 2.0, 124);
  CHECK(a.Size() == 32000);
  REQUIRE(a.samples.size() == b.samples.size());
  bool identical = true, differs = false;
  for (size_t i = 0; i < a.samples.size(); i++) {
    identical &= a.samples[i] == b.samples[i];
    differs |= a.samples[i] != c.samples[i];
  }
  CHECK(identical);
  CHECK(differs);
  CHECK(Rms(a) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("speech-shaped noise reproduces the target LTAS within 2 dB") {
  // A speech-like tilted target: one-pole low-passed noise.
  Waveform w = WhiteNoise(0.1, 10.0, 5);
  Waveform lp;
  lp.sample_rate_hz = kSampleRate;
  lp.samples.resize(w.samples.size());
  double state = 0.0;
  for (size_t i = 0; i < w.samples.size(); i++) {
    state = 0.25 * w.samples[i] + 0.75 * state;
    lp.samples[i] = state;
  }
  Ltas target = ComputeLtas({lp});
  Waveform noise = SpeechShapedNoise(target, 10.0, 99);
  Ltas got = ComputeLtas({noise});
  REQUIRE(got.Bands() == target.Bands());

  double peak = 0.0;
  for (double v : target.band_magnitudes) peak = std::max(peak, v);

  // The synthesis normalizes overall level, so align mean log magnitude over
  // the eligible bands before comparing per band.
  double mean_t = 0.0, mean_g = 0.0;
  int eligible = 0;
  for (int b = 0; b < target.Bands(); b++) {
    if (target.band_magnitudes[b] <= 0.01 * peak) continue;
    mean_t += std::log10(target.band_magnitudes[b]);
    mean_g += std::log10(got.band_magnitudes[b]);
    eligible++;
  }
  REQUIRE(eligible > 0);
  const double offset_db = 20.0 * (mean_g - mean_t) / eligible;
  for (int b = 0; b < target.Bands(); b++) {
    if (target.band_magnitudes[b] <= 0.01 * peak) continue;
    const double diff_db = 20.0 * std::log10(got.band_magnitudes[b] /
                                             target.band_magnitudes[b]) -
                           offset_db;
    CHECK(std::abs(diff_db) <= 2.0);
  }
}

TEST_CASE("mix_at_snr closed-form gains when P_s equals P_n") {
  Waveform s = WhiteNoise(0.1, 1.0, 11);
  // Using the speech itself as noise makes the two powers exactly equal.
  auto gain_for = [&](double snr) {
    Waveform mixed = MixAtSnr(s, s, snr);
    return (mixed.samples[123] - s.samples[123]) / s.samples[123];
  };
  CHECK(gain_for(0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(gain_for(-3.0) == doctest::Approx(std::pow(10.0, 0.15)).epsilon(1e-9));
  CHECK(gain_for(-1.0) == doctest::Approx(std::pow(10.0, 0.05)).epsilon(1e-9));
}

TEST_CASE("mix_at_snr achieves the requested SNR within 0.01 dB") {
  for (double snr : {-9.0, -6.0, -3.0, -1.0, 0.0, 5.0}) {
    Waveform s = WhiteNoise(0.05, 1.3, 31);
    Waveform n = WhiteNoise(0.02, 0.9, 32);  // shorter: exercises tiling
    Waveform mixed = MixAtSnr(s, n, snr);

    std::vector<char> mask;
    REQUIRE(ActiveSupportMask(s.samples, &mask));
    double p_s = 0.0, p_n = 0.0;
    long cnt = 0;
    for (int i = 0; i < s.Size(); i++) {
      if (!mask[i]) continue;
      const double ns = mixed.samples[i] - s.samples[i];
      p_s += s.samples[i] * s.samples[i];
      p_n += ns * ns;
      cnt++;
    }
    const double achieved = 10.0 * std::log10(p_s / p_n);
    CHECK(std::abs(achieved - snr) <= 0.01);
  }
}

TEST_CASE("mix_at_snr rejects digital silence") {
  Waveform s;
  s.samples.assign(16000, 0.0);
  Waveform n = WhiteNoise(0.1, 1.0, 4);
  CHECK_THROWS_AS(MixAtSnr(s, n, 0.0), InvalidInput);
}

TEST_CASE("wav float32 round trip is exact at 16 kHz") {
  auto dir = TmpDir();
  Waveform w = WhiteNoise(0.1, 0.5, 17);
  auto path = (dir / "f32.wav").string();
  WriteWav(path, w, WavEncoding::kFloat32);
  Waveform r = ReadWav(path);
  REQUIRE(r.Size() == w.Size());
  CHECK(r.sample_rate_hz == kSampleRate);
  for (int i = 0; i < w.Size(); i++)
    CHECK(r.samples[i] == doctest::Approx(w.samples[i]).epsilon(1e-6));
}

TEST_CASE("wav pcm16 round trip within quantization error") {
  auto dir = TmpDir();
  Waveform w = Sine(220.0, 0.4, 0.25);
  auto path = (dir / "p16.wav").string();
  WriteWav(path, w, WavEncoding::kPcm16);
  Waveform r = ReadWav(path);
  REQUIRE(r.Size() == w.Size());
  for (int i = 0; i < w.Size(); i++)
    CHECK(std::abs(r.samples[i] - w.samples[i]) < 1.0 / 32000.0);
}

TEST_CASE("stereo wav is averaged to mono") {
  auto dir = TmpDir();
  auto path = (dir / "stereo.wav").string();
  // Hand-build a 2-channel PCM16 file where L = 2*R.
  const int n = 1600;
  std::string bytes;
  auto put32 = [&](uint32_t v) { for (int i = 0; i < 4; i++) bytes.push_back(char((v >> (8 * i)) & 0xff)); };
  auto put16 = [&](uint16_t v) { bytes.push_back(char(v & 0xff)); bytes.push_back(char((v >> 8) & 0xff)); };
  bytes += "RIFF"; put32(36 + n * 4); bytes += "WAVEfmt ";
  put32(16); put16(1); put16(2); put32(16000); put32(16000 * 4); put16(4); put16(16);
  bytes += "data"; put32(n * 4);
  for (int i = 0; i < n; i++) {
    auto l = static_cast<int16_t>(2000 * std::sin(2 * M_PI * 100 * i / 16000.0));
    put16(static_cast<uint16_t>(l));
    put16(static_cast<uint16_t>(l / 2));
  }
  std::ofstream(path, std::ios::binary).write(bytes.data(), bytes.size());

  Waveform r = ReadWav(path);
  REQUIRE(r.Size() == n);
  // sample 40: check the average of the two channels
  auto l = static_cast<int16_t>(2000 * std::sin(2 * M_PI * 100 * 40 / 16000.0));
  double expect = (l / 32768.0 + (l / 2) / 32768.0) / 2.0;
  CHECK(r.samples[40] == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("ltas file round trip") {
  auto dir = TmpDir();
  Ltas ltas;
  ltas.band_magnitudes = {0.5, 1.25, 3.75, 0.0078125};  // exact in float32
  auto path = (dir / "x.ltas").string();
  WriteLtas(path, ltas);
  Ltas r = ReadLtas(path);
  REQUIRE(r.Bands() == 4);
  for (int i = 0; i < 4; i++) CHECK(r.band_magnitudes[i] == ltas.band_magnitudes[i]);
}

TEST_CASE("resampler preserves a tone") {
  Waveform w = Sine(440.0, 0.5, 0.5, 48000);
  Waveform r = Resample(w, 16000);
  CHECK(r.sample_rate_hz == 16000);
  CHECK(std::abs(r.Size() - 8000) <= 1);
  // Project onto the expected tone; most energy should survive.
  double c = 0.0, s = 0.0, e = 0.0;
  for (int i = 2000; i < r.Size() - 2000; i++) {
    c += r.samples[i] * std::cos(2 * M_PI * 440.0 * i / 16000.0);
    s += r.samples[i] * std::sin(2 * M_PI * 440.0 * i / 16000.0);
    e += r.samples[i] * r.samples[i];
  }
  const int m = r.Size() - 4000;
  const double amp = 2.0 * std::sqrt(c * c + s * s) / m;
  CHECK(amp == doctest::Approx(0.5).epsilon(0.05));
  CHECK(e / m == doctest::Approx(0.125).epsilon(0.1));
}
