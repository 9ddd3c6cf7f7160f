// tests/test_acoustic_features.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "lvc/audio/mel.h"
#include "lvc/common.h"
#include "lvc/feats/conditioning.h"
#include "lvc/feats/f0.h"
#include "lvc/feats/mgc.h"

using namespace lvc;

namespace {

Waveform Sine(double freq, double amp, double dur_s) {
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  int n = static_cast<int>(dur_s * kSampleRate);
  w.samples.resize(n);
  for (int i = 0; i < n; i++) w.samples[i] = amp * std::sin(2.0 * M_PI * freq * i / kSampleRate);
  return w;
}

// Band-limited sawtooth via its harmonic series.
Waveform Sawtooth(double freq, double amp, double dur_s) {
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  int n = static_cast<int>(dur_s * kSampleRate);
  w.samples.assign(n, 0.0);
  const int n_harm = static_cast<int>((kSampleRate / 2.0 - 100.0) / freq);
  for (int h = 1; h <= n_harm; h++)
    for (int i = 0; i < n; i++)
      w.samples[i] += amp * std::sin(2.0 * M_PI * freq * h * i / kSampleRate) / h;
  NormalizeRms(&w, 0.1);
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

double MedianAbsF0Error(const F0Track &t, double truth) {
  std::vector<double> errs;
  for (double f : t.f0_hz)
    if (f > 0.0) errs.push_back(std::abs(f - truth));
  REQUIRE(!errs.empty());
  std::sort(errs.begin(), errs.end());
  return errs[errs.size() / 2];
}

}  // namespace

TEST_CASE("f0: digital silence is fully unvoiced") {
  Waveform w;
  w.samples.assign(16000, 0.0);
  F0Track t = EstimateF0(w);
  for (double f : t.f0_hz) CHECK(f == 0.0);
}

TEST_CASE("f0: 220 Hz sine tracked within 2 Hz, >= 90% voiced") {
  Waveform w = Sine(220.0, 0.3, 1.0);
  F0Track t = EstimateF0(w);
  int voiced = 0;
  for (double f : t.f0_hz) voiced += f > 0.0;
  CHECK(voiced >= 0.9 * t.Frames());
  CHECK(MedianAbsF0Error(t, 220.0) < 2.0);
}

TEST_CASE("f0: 120 Hz sawtooth, no octave errors above 5%") {
  Waveform w = Sawtooth(120.0, 0.2, 1.0);
  F0Track t = EstimateF0(w);
  CHECK(MedianAbsF0Error(t, 120.0) < 2.0);
  int voiced = 0, octave = 0;
  for (double f : t.f0_hz) {
    if (f <= 0.0) continue;
    voiced++;
    if (std::abs(f / 120.0 - 1.0) > 0.3) octave++;
  }
  REQUIRE(voiced > 0);
  CHECK(static_cast<double>(octave) / voiced < 0.05);
}

TEST_CASE("f0: octave-error rate below 5% over 100 harmonic tones") {
  Rng rng(2024);
  int bad_tones = 0;
  for (int trial = 0; trial < 100; trial++) {
    const double f0 = rng.Uniform(80.0, 350.0);
    Waveform w;
    w.sample_rate_hz = kSampleRate;
    w.samples.assign(12000, 0.0);
    const int n_harm = std::min(12, static_cast<int>(7500.0 / f0));
    for (int h = 1; h <= n_harm; h++) {
      const double a = std::pow(1.0 / h, rng.Uniform(0.7, 1.4));
      const double ph = rng.Uniform(0.0, 2.0 * M_PI);
      for (size_t i = 0; i < w.samples.size(); i++)
        w.samples[i] += 0.05 * a * std::sin(2.0 * M_PI * f0 * h * i / kSampleRate + ph);
    }
    F0Track t = EstimateF0(w);
    if (MedianAbsF0Error(t, f0) > 0.2 * f0) bad_tones++;
  }
  CHECK(bad_tones < 5);
}

TEST_CASE("mgc: doubling the gain moves only coefficient 0, by ln 2") {
  Waveform w = WhiteNoise(0.1, 1.0, 55);
  Waveform w2 = w;
  for (double &s : w2.samples) s *= 2.0;
  MgcTrack a = ComputeMgc(w);
  MgcTrack b = ComputeMgc(w2);
  REQUIRE(a.frames == b.frames);
  for (int f = 0; f < a.frames; f++) {
    CHECK(std::abs(b.At(f, 0) - a.At(f, 0) - std::log(2.0)) < 0.01);
    for (int c = 1; c <= a.order; c++)
      CHECK(std::abs(b.At(f, c) - a.At(f, c)) < 1e-6);
  }
}

TEST_CASE("mgc: gain invariance property over random waveforms") {
  Rng rng(77);
  for (int trial = 0; trial < 5; trial++) {
    Waveform w = WhiteNoise(rng.Uniform(0.02, 0.2), 0.5, 1000 + trial);
    const double g = rng.Uniform(0.25, 4.0);
    Waveform wg = w;
    for (double &s : wg.samples) s *= g;
    MgcTrack a = ComputeMgc(w), b = ComputeMgc(wg);
    double max_dc0 = 0.0, max_rest = 0.0;
    for (int f = 0; f < a.frames; f++) {
      max_dc0 = std::max(max_dc0, std::abs(b.At(f, 0) - a.At(f, 0) - std::log(g)));
      for (int c = 1; c <= a.order; c++)
        max_rest = std::max(max_rest, std::abs(b.At(f, c) - a.At(f, c)));
    }
    CHECK(max_dc0 < 0.01);
    CHECK(max_rest < 1e-6);
  }
}

TEST_CASE("mgc: white noise has ~zero tilt, and tilt orders rising < flat < falling") {
  Waveform white = WhiteNoise(0.1, 1.0, 91);
  MgcTrack mw = ComputeMgc(white);
  CHECK(std::abs(mw.MeanCoeff(1)) < 0.05);

  // Rising spectrum: first difference (pre-emphasis).
  Waveform rising;
  rising.sample_rate_hz = kSampleRate;
  rising.samples.resize(white.samples.size());
  for (size_t i = 1; i < white.samples.size(); i++)
    rising.samples[i] = white.samples[i] - 0.95 * white.samples[i - 1];
  rising.samples[0] = white.samples[0];

  // Falling spectrum: one-pole low-pass.
  Waveform falling;
  falling.sample_rate_hz = kSampleRate;
  falling.samples.resize(white.samples.size());
  double state = 0.0;
  for (size_t i = 0; i < white.samples.size(); i++) {
    state = 0.3 * white.samples[i] + 0.7 * state;
    falling.samples[i] = state;
  }

  MgcTrack mr = ComputeMgc(rising), mf = ComputeMgc(falling);
  CHECK(mr.MeanCoeff(1) < mw.MeanCoeff(1));
  CHECK(mw.MeanCoeff(1) < mf.MeanCoeff(1));
}

TEST_CASE("interpolated log-f0 bridges an unvoiced gap linearly") {
  F0Track t;
  t.f0_hz.assign(31, 0.0);
  for (int i = 0; i < 10; i++) t.f0_hz[i] = 200.0;
  for (int i = 21; i < 31; i++) t.f0_hz[i] = 300.0;
  std::vector<double> voicing;
  std::vector<double> interp = InterpolateLogF0(t, &voicing);

  // midpoint of the gap: frames 9 (voiced, ln200) .. 21 (voiced, ln300)
  const double expect_mid = 0.5 * (std::log(200.0) + std::log(300.0));
  CHECK(interp[15] == doctest::Approx(expect_mid).epsilon(1e-9));
  CHECK(voicing[15] == 0.0);
  CHECK(interp[0] == doctest::Approx(std::log(200.0)));
  CHECK(interp[30] == doctest::Approx(std::log(300.0)));

  // Continuity: no jump inside the gap exceeds the endpoint difference.
  const double endpoint_diff = std::abs(std::log(300.0) - std::log(200.0));
  for (int i = 9; i < 21; i++)
    CHECK(std::abs(interp[i + 1] - interp[i]) <= endpoint_diff + 1e-12);
}

TEST_CASE("interpolated log-f0 of a fully unvoiced track is all zero") {
  F0Track t;
  t.f0_hz.assign(20, 0.0);
  std::vector<double> voicing;
  std::vector<double> interp = InterpolateLogF0(t, &voicing);
  for (double v : interp) CHECK(v == 0.0);
  for (double v : voicing) CHECK(v == 0.0);
}

TEST_CASE("extract_conditioning: constant 220 Hz with matched speaker stats is ~zero") {
  Waveform w = Sine(220.0, 0.3, 1.0);
  SpeakerStats spk;
  spk.logf0 = {std::log(220.0), 0.1};
  GlobalStats glob;
  glob.mgc0 = {0.0, 1.0};
  glob.mgc1 = {0.0, 1.0};
  AcousticFrameFeatures f = ExtractConditioning(w, spk, glob);
  for (int i = 0; i < f.frames; i++) CHECK(std::abs(f.logf0[i]) < 0.25);
}

TEST_CASE("extract_conditioning frame count equals mel frame count on random inputs") {
  Rng rng(31337);
  SpeakerStats spk;
  GlobalStats glob;
  for (int trial = 0; trial < 50; trial++) {
    const int n = 800 + static_cast<int>(rng.Bounded(24000));
    Waveform w;
    w.sample_rate_hz = kSampleRate;
    w.samples.resize(n);
    for (int i = 0; i < n; i++)
      w.samples[i] = 0.1 * std::sin(2.0 * M_PI * 150.0 * i / kSampleRate) +
                     0.01 * rng.Gaussian();
    AcousticFrameFeatures f = ExtractConditioning(w, spk, glob);
    MelSpectrogram m = ComputeMelSpectrogram(w, AnalysisConfig());
    CHECK(f.frames == m.frames);
    CHECK(static_cast<int>(f.voicing.size()) == m.frames);
  }
}

TEST_CASE("feature dump round trip") {
  auto dir = std::filesystem::temp_directory_path() / "lvc_feat_test";
  std::filesystem::create_directories(dir);
  Waveform w = Sine(180.0, 0.2, 0.8);
  SpeakerStats spk;
  spk.logf0 = {std::log(180.0), 0.2};
  GlobalStats glob;
  glob.mgc0 = {-5.0, 2.0};
  glob.mgc1 = {0.5, 0.3};
  AcousticFrameFeatures f = ExtractConditioning(w, spk, glob);
  const auto path = (dir / "u.feat").string();
  WriteFeatures(path, f);
  AcousticFrameFeatures r = ReadFeatures(path);
  REQUIRE(r.frames == f.frames);
  for (int i = 0; i < f.frames; i++) {
    CHECK(r.logf0[i] == static_cast<double>(static_cast<float>(f.logf0[i])));
    CHECK(r.voicing[i] == f.voicing[i]);
    CHECK(r.mgc0[i] == static_cast<double>(static_cast<float>(f.mgc0[i])));
    CHECK(r.mgc1[i] == static_cast<double>(static_cast<float>(f.mgc1[i])));
  }
  for (int i = 0; i < 8; i++)
    CHECK(r.norm_meta[i] == static_cast<double>(static_cast<float>(f.norm_meta[i])));
}

TEST_CASE("lombard_contrast: identical corpora give zero deltas") {
  std::vector<UtteranceFeatureSummary> a = {
      {150.0, -4.0, 0.8}, {160.0, -4.2, 0.7}, {170.0, -3.8, 0.9}};
  LombardStats s = ComputeLombardStats(a, a, "lombard", "neutral");
  CHECK(s.delta_mean_f0 == doctest::Approx(0.0));
  CHECK(s.delta_mean_mgc0 == doctest::Approx(0.0));
  CHECK(s.delta_mean_mgc1 == doctest::Approx(0.0));
}

TEST_CASE("lombard_contrast rejects an empty partition") {
  std::vector<UtteranceFeatureSummary> a = {{150.0, -4.0, 0.8}};
  std::vector<UtteranceFeatureSummary> empty;
  CHECK_THROWS_AS(ComputeLombardStats(a, empty, "a", "b"), InvalidInput);
}
