// lvc/vc/classifier.h

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

#ifndef LVC_VC_CLASSIFIER_H_
#define LVC_VC_CLASSIFIER_H_

#include <cstdint>

#include "lvc/nn/param_store.h"
#include "lvc/nn/tape.h"

namespace lvc {

struct ClassifierConfig {
  int mel_bins = 80;
  int channels = 32;
  int kernel = 5;
  uint64_t seed = 1;
};

// Lombard-vs-neutral probability from a mel spectrogram: three strided
// convolutions, global average pooling, sigmoid.  The output layer starts
// at zero, so an untrained classifier answers exactly 0.5.
class StyleClassifier {
 public:
  explicit StyleClassifier(const ClassifierConfig &cfg);

  nn::ParamStore &Params() { return params_; }
  const nn::ParamStore &Params() const { return params_; }
  const ClassifierConfig &Config() const { return cfg_; }

  // Build the classification graph on a caller-owned tape.  When frozen,
  // parameters enter as plain value leaves: no gradient ever reaches them.
  int BuildGraph(nn::Tape *tape, int mel_node, bool frozen);

  // Eval-mode probability of Lombard for a T x mel_bins matrix.
  double Classify(const nn::Mat &mel);

 private:
  ClassifierConfig cfg_;
  nn::ParamStore params_;
};

}  // namespace lvc

#endif  // LVC_VC_CLASSIFIER_H_
