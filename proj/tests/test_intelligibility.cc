// tests/test_intelligibility.cc

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

#include "lvc/common.h"
#include "lvc/intel/gammatone.h"
#include "lvc/intel/siib.h"

using namespace lvc;

namespace {

Waveform WhiteNoise(double amp, double dur_s, uint64_t seed) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  int n = static_cast<int>(dur_s * kSampleRate);
  w.samples.resize(n);
  for (int i = 0; i < n; i++) w.samples[i] = amp * rng.Gaussian();
  return w;
}

// Speech-like test utterance: harmonic segments with moving f0 plus a noise
// burst, long enough for the MI estimator.
Waveform PseudoSpeech(double dur_s, uint64_t seed) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  const int n = static_cast<int>(dur_s * kSampleRate);
  w.samples.assign(n, 0.0);
  const int seg = 4000;
  for (int start = 0; start < n; start += seg) {
    const double f0 = rng.Uniform(110.0, 260.0);
    const bool voiced = rng.Uniform() > 0.25;
    const int end = std::min(n, start + seg);
    for (int i = start; i < end; i++) {
      const double t = static_cast<double>(i - start) / seg;
      const double env = std::sin(M_PI * t);
      if (voiced) {
        double s = 0.0;
        for (int h = 1; h <= 12; h++)
          s += std::sin(2.0 * M_PI * f0 * h * i / kSampleRate + h) / h;
        w.samples[i] = 0.1 * env * s;
      } else {
        w.samples[i] = 0.05 * env * rng.Gaussian();
      }
    }
  }
  NormalizeRms(&w, 0.08);
  return w;
}

}  // namespace

TEST_CASE("gammatone: pure tone peaks in the matching channel") {
  SiibConfig cfg;
  std::vector<double> centers = GammatoneCenters(cfg);
  for (int target : {3, 11, 19}) {
    Waveform w;
    w.sample_rate_hz = kSampleRate;
    w.samples.resize(32000);
    for (int i = 0; i < 32000; i++)
      w.samples[i] = 0.2 * std::sin(2.0 * M_PI * centers[target] * i / kSampleRate);
    int frames = 0;
    std::vector<double> env = ComputeGammatoneEnvelopes(w, cfg, &frames);
    int best = -1;
    double best_mean = -1e30;
    for (int c = 0; c < cfg.channels; c++) {
      double acc = 0.0;
      for (int f = 0; f < frames; f++) acc += env[(size_t)c * frames + f];
      if (acc / frames > best_mean) {
        best_mean = acc / frames;
        best = c;
      }
    }
    CHECK(best == target);
  }
}

TEST_CASE("gammatone: silence sits at the log floor, frame count = floor(dur*40)") {
  SiibConfig cfg;
  Waveform w;
  w.sample_rate_hz = kSampleRate;
  w.samples.assign(26400, 0.0);  // 1.65 s
  int frames = 0;
  std::vector<double> env = ComputeGammatoneEnvelopes(w, cfg, &frames);
  CHECK(frames == 66);
  for (double v : env) CHECK(v == doctest::Approx(std::log(1e-8)));
}

TEST_CASE("gc mutual information: monotone copy, sign symmetry, null") {
  Rng rng(12);
  std::vector<double> x(1000), y(1000), neg(1000);
  for (int i = 0; i < 1000; i++) {
    x[i] = rng.Gaussian();
    y[i] = x[i];
    neg[i] = -x[i];
  }
  const double mi_same = MutualInformationGc(x, y);
  CHECK(mi_same > 2.0);
  const double mi_neg = MutualInformationGc(x, neg);
  CHECK(mi_neg == doctest::Approx(mi_same).epsilon(1e-12));

  int below = 0;
  for (int trial = 0; trial < 100; trial++) {
    Rng r2(1000 + trial);
    std::vector<double> a(1000), b(1000);
    for (int i = 0; i < 1000; i++) {
      a[i] = r2.Gaussian();
      b[i] = r2.Gaussian();
    }
    if (MutualInformationGc(a, b) < 0.01) below++;
  }
  CHECK(below >= 95);
}

TEST_CASE("gc mutual information input contract") {
  std::vector<double> x(100, 1.0), y(100);
  for (int i = 0; i < 100; i++) y[i] = i;
  CHECK_THROWS_AS(MutualInformationGc(x, y), InvalidInput);  // constant input
  std::vector<double> small(32, 0.0);
  CHECK_THROWS_AS(MutualInformationGc(small, small), InvalidInput);
  std::vector<double> a(100, 0.0), b(99, 0.0);
  CHECK_THROWS_AS(MutualInformationGc(a, b), InvalidInput);
}

TEST_CASE("siib: monotone degradation with SNR") {
  Waveform x = PseudoSpeech(2.0, 5);
  Waveform noise = WhiteNoise(0.1, 2.2, 6);
  const double self = Siib(x, x).bits_per_second;
  Waveform deg1 = MixAtSnr(x, noise, -1.0);
  Waveform deg9 = MixAtSnr(x, noise, -9.0);
  const double at1 = Siib(x, deg1).bits_per_second;
  const double at9 = Siib(x, deg9).bits_per_second;
  CHECK(self > at1);
  CHECK(at1 > at9);
}

TEST_CASE("siib: independent noise scores below 5 bits/s") {
  Waveform x = PseudoSpeech(10.0, 41);
  Waveform indep = WhiteNoise(0.08, 10.0, 42);
  CHECK(Siib(x, indep).bits_per_second < 5.0);
}

TEST_CASE("siib: scale invariance for power-of-two gains") {
  Waveform x = PseudoSpeech(2.0, 77);
  Waveform noise = WhiteNoise(0.1, 2.2, 78);
  Waveform deg = MixAtSnr(x, noise, -3.0);
  const double base = Siib(x, deg).bits_per_second;
  for (double g : {0.5, 2.0}) {
    Waveform scaled = deg;
    for (double &s : scaled.samples) s *= g;
    CHECK(std::abs(Siib(x, scaled).bits_per_second - base) < 1e-9);
  }
}

TEST_CASE("siib rejects too-short input") {
  Waveform x = PseudoSpeech(0.4, 1);
  CHECK_THROWS_AS(Siib(x, x), InvalidInput);
  // 1 s clears the 0.5 s gate but not the 64-envelope-frame requirement.
  Waveform y = PseudoSpeech(1.0, 2);
  CHECK_THROWS_AS(Siib(y, y), InvalidInput);
}

TEST_CASE("t-interval matches the published t table") {
  // t_{0.975, 3} = 3.1824; scores {1,2,3,4}: sd = 1.29099, half-width
  // = 3.1824 * 1.29099 / 2 = 2.0540
  std::vector<double> scores = {1.0, 2.0, 3.0, 4.0};
  double mean = 0.0, ci = 0.0;
  MeanCi95(scores, &mean, &ci);
  CHECK(mean == doctest::Approx(2.5));
  CHECK(ci == doctest::Approx(2.0540).epsilon(1e-3));
}

TEST_CASE("evaluate_condition: SNR ordering, CI shrinkage, determinism") {
  std::vector<std::string> ids;
  std::vector<Waveform> clean;
  for (int i = 0; i < 4; i++) {
    ids.push_back("utt" + std::to_string(i));
    clean.push_back(PseudoSpeech(2.0, 100 + i));
  }
  NoiseCondition c1{-1.0, 9};
  NoiseCondition c3{-3.0, 9};
  EvalRow r1 = EvaluateCondition(ids, clean, clean, c1);
  EvalRow r3 = EvaluateCondition(ids, clean, clean, c3);
  CHECK(r1.mean_oi > r3.mean_oi);
  CHECK(r1.n == 4);

  // duplicating the utterance set: same mean, tighter interval
  std::vector<std::string> ids2 = ids;
  std::vector<Waveform> clean2 = clean;
  for (int i = 0; i < 4; i++) {
    ids2.push_back(ids[i]);  // same seeds -> same per-utterance scores
    clean2.push_back(clean[i]);
  }
  EvalRow rdup = EvaluateCondition(ids2, clean2, clean2, c1);
  CHECK(rdup.mean_oi == doctest::Approx(r1.mean_oi).epsilon(1e-12));
  CHECK(rdup.ci95 < r1.ci95);

  EvalRow again = EvaluateCondition(ids, clean, clean, c1);
  CHECK(again.mean_oi == r1.mean_oi);
  CHECK(again.ci95 == r1.ci95);
}

TEST_CASE("evaluate_condition input contract") {
  std::vector<std::string> ids = {"a", "b"};
  std::vector<Waveform> two = {PseudoSpeech(2.0, 1), PseudoSpeech(2.0, 2)};
  std::vector<Waveform> one = {two[0]};
  CHECK_THROWS_AS(EvaluateCondition(ids, two, one, NoiseCondition{}), InvalidInput);
  std::vector<std::string> one_id = {"a"};
  CHECK_THROWS_AS(EvaluateCondition(one_id, one, one, NoiseCondition{}), InvalidInput);
}
