// lvc/intel/siib.h

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

#ifndef LVC_INTEL_SIIB_H_
#define LVC_INTEL_SIIB_H_

#include <string>
#include <vector>

#include "lvc/audio/noise.h"
#include "lvc/intel/gammatone.h"

namespace lvc {

// Gaussian-copula mutual information in nats: both sequences are rank
// transformed to normal scores and the Gaussian MI -0.5*ln(1-rho^2) of the
// scores is returned (clamped non-negative, rho^2 capped below 1).
// Requires equal lengths >= 64 and non-constant inputs.
double MutualInformationGc(const std::vector<double> &x, const std::vector<double> &y);

struct SiibScore {
  double bits_per_second = 0.0;
};

// Sum over gammatone channels of the envelope mutual information, scaled to
// bits/second:  sum_c MI_c * env_rate * discount / ln 2.
//
// The clean signal must be at least 0.5 s AND long enough to produce the 64
// envelope frames the MI estimator needs (1.6 s at the default 40 Hz rate);
// the degraded signal must be at least as long and is trimmed to match.
SiibScore Siib(const Waveform &clean, const Waveform &degraded,
               const SiibConfig &cfg = SiibConfig());

struct EvalRow {
  std::string system;
  double snr_db = 0.0;
  double mean_oi = 0.0;
  double ci95 = 0.0;  // half-width of the 95% t-interval over utterances
  int n = 0;
};

// Score each processed utterance against its clean reference after mixing
// speech-shaped noise at cond.snr_db.  The masker spectrum is `masker_ltas`
// when given; otherwise it is computed from the clean set.  Comparisons
// across systems must share one masker, or style-matched noise cancels the
// very spectral differences being measured.  Each utterance's noise seed
// derives from cond.seed and the utterance id, so results do not depend on
// evaluation order.
EvalRow EvaluateCondition(const std::vector<std::string> &utt_ids,
                          const std::vector<Waveform> &clean,
                          const std::vector<Waveform> &processed,
                          const NoiseCondition &cond,
                          const SiibConfig &cfg = SiibConfig(),
                          const Ltas *masker_ltas = nullptr);

// Mean and 95% t-interval half-width over per-utterance scores.
void MeanCi95(const std::vector<double> &scores, double *mean, double *ci95);

// Inverse standard normal CDF (rational approximation, |rel err| < 1.2e-9).
double InverseNormalCdf(double p);

}  // namespace lvc

#endif  // LVC_INTEL_SIIB_H_
