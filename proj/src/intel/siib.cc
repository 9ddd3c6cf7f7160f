// lvc/intel/siib.cc

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

#include "lvc/intel/siib.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "lvc/common.h"

namespace lvc {

double InverseNormalCdf(double p) {
  // Acklam's rational approximation.
  if (p <= 0.0 || p >= 1.0) throw InvalidInput("InverseNormalCdf: p outside (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > phigh) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {

// Average ranks (ties share their mean rank), mapped to normal scores.
std::vector<double> NormalScores(const std::vector<double> &x) {
  const int n = static_cast<int>(x.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return x[i] < x[j]; });
  std::vector<double> rank(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) j++;
    const double avg = 0.5 * (i + j) + 1.0;  // 1-based average rank
    for (int k = i; k <= j; k++) rank[idx[k]] = avg;
    i = j + 1;
  }
  std::vector<double> z(n);
  for (int k = 0; k < n; k++) z[k] = InverseNormalCdf(rank[k] / (n + 1.0));
  return z;
}

double Pearson(const std::vector<double> &x, const std::vector<double> &y) {
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; i++) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < n; i++) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw InvalidInput("mutual_information_gc: constant input sequence");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double MutualInformationGc(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size())
    throw InvalidInput("mutual_information_gc: length mismatch");
  if (x.size() < 64)
    throw InvalidInput("mutual_information_gc: need at least 64 samples");
  const double rho = Pearson(NormalScores(x), NormalScores(y));
  const double rho2 = std::min(rho * rho, 1.0 - 1e-6);
  return std::max(0.0, -0.5 * std::log(1.0 - rho2));
}

SiibScore Siib(const Waveform &clean, const Waveform &degraded, const SiibConfig &cfg) {
  ValidateWaveform(clean, "siib clean");
  ValidateWaveform(degraded, "siib degraded");
  if (clean.sample_rate_hz != degraded.sample_rate_hz)
    throw InvalidInput("siib: sample rate mismatch");
  if (clean.DurationSeconds() < 0.5)
    throw InvalidInput("siib: clean signal shorter than 0.5 s");
  if (degraded.Size() < clean.Size())
    throw InvalidInput("siib: degraded shorter than clean");

  Waveform trimmed;
  trimmed.sample_rate_hz = degraded.sample_rate_hz;
  trimmed.samples.assign(degraded.samples.begin(),
                         degraded.samples.begin() + clean.Size());

  int frames_c = 0, frames_d = 0;
  std::vector<double> env_c = ComputeGammatoneEnvelopes(clean, cfg, &frames_c);
  std::vector<double> env_d = ComputeGammatoneEnvelopes(trimmed, cfg, &frames_d);
  if (frames_c < 64)
    throw InvalidInput("siib: too short for the MI estimator (need 64 envelope frames)");

  double total_nats = 0.0;
  std::vector<double> a(frames_c), b(frames_c);
  for (int c = 0; c < cfg.channels; c++) {
    std::copy_n(env_c.begin() + (size_t)c * frames_c, frames_c, a.begin());
    std::copy_n(env_d.begin() + (size_t)c * frames_d, frames_c, b.begin());
    total_nats += MutualInformationGc(a, b);
  }
  SiibScore s;
  s.bits_per_second = total_nats * cfg.env_rate_hz * cfg.discount / std::log(2.0);
  return s;
}

void MeanCi95(const std::vector<double> &scores, double *mean, double *ci95) {
  const int n = static_cast<int>(scores.size());
  if (n < 2) throw InvalidInput("MeanCi95: need at least 2 scores");
  double m = 0.0;
  for (double s : scores) m += s;
  m /= n;
  double var = 0.0;
  for (double s : scores) var += (s - m) * (s - m);
  var /= (n - 1);
  boost::math::students_t dist(n - 1);
  const double t = boost::math::quantile(dist, 0.975);
  *mean = m;
  *ci95 = t * std::sqrt(var / n);
}

EvalRow EvaluateCondition(const std::vector<std::string> &utt_ids,
                          const std::vector<Waveform> &clean,
                          const std::vector<Waveform> &processed,
                          const NoiseCondition &cond, const SiibConfig &cfg,
                          const Ltas *masker_ltas) {
  if (utt_ids.size() != clean.size() || clean.size() != processed.size())
    throw InvalidInput("evaluate_condition: misaligned utterance sets");
  if (clean.size() < 2)
    throw InvalidInput("evaluate_condition: need at least 2 utterances");

  Ltas ltas = masker_ltas != nullptr ? *masker_ltas : ComputeLtas(clean);
  std::vector<double> scores(clean.size());
  for (size_t i = 0; i < clean.size(); i++) {
    const uint64_t seed = cond.seed ^ Fnv1a(utt_ids[i]);
    Waveform noise =
        SpeechShapedNoise(ltas, processed[i].DurationSeconds() + 0.1, seed);
    Waveform degraded = MixAtSnr(processed[i], noise, cond.snr_db);
    // Converted audio may run a frame short of its reference; align on the
    // common length.
    Waveform ref = clean[i];
    if (degraded.Size() < ref.Size())
      ref.samples.resize(degraded.Size());
    scores[i] = Siib(ref, degraded, cfg).bits_per_second;
  }
  EvalRow row;
  row.snr_db = cond.snr_db;
  row.n = static_cast<int>(scores.size());
  MeanCi95(scores, &row.mean_oi, &row.ci95);
  return row;
}

}  // namespace lvc
