// lvc/pipeline/train.h

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

#ifndef LVC_PIPELINE_TRAIN_H_
#define LVC_PIPELINE_TRAIN_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lvc/corpus/alignment.h"
#include "lvc/corpus/manifest.h"
#include "lvc/pipeline/config.h"
#include "lvc/vc/classifier.h"
#include "lvc/vc/model.h"

namespace lvc {

struct StepLogRow {
  long step = 0;
  double l_rec = 0.0;
  double l_kl = 0.0;
  std::optional<double> l_s;
  double total = 0.0;
};

// TSV step log; the l_s column appears only in style-loss runs.
void WriteStepLog(const std::string &path, const std::vector<StepLogRow> &log,
                  bool with_style_column);

// 95/5 per-speaker, per-style holdout (at least one utterance per group).
void SplitHoldout(const Manifest &m, double fraction, std::vector<int> *train_idx,
                  std::vector<int> *holdout_idx);

struct ClassifierTrainResult {
  std::vector<StepLogRow> log;
  double holdout_accuracy = 0.0;
  int holdout_n = 0;
};

// Stage I: train the Lombard/neutral classifier on oracle mel-spectrograms.
// Throws if the manifest holds a single style.
ClassifierTrainResult TrainStyleClassifier(const Manifest &manifest,
                                           const Config &cfg,
                                           StyleClassifier *clf);

struct VcTrainResult {
  std::unique_ptr<VcModel> model;
  PhonemeVocab vocab;
  std::vector<StepLogRow> log;
  uint64_t classifier_hash_before = 0;
  uint64_t classifier_hash_after = 0;
};

// Stage II (+ joint continuation when cfg style_loss is on: vc_steps without
// the style term, then joint_steps with the frozen classifier attached).
// features_dir supplies conditioning dumps and the speaker embeddings;
// conditioning dumps are only required for modes other than `none` and are
// validated before training starts.
VcTrainResult TrainVcModel(const Manifest &manifest,
                           const std::string &features_dir, const Config &cfg,
                           StyleClassifier *clf_or_null);

}  // namespace lvc

#endif  // LVC_PIPELINE_TRAIN_H_
