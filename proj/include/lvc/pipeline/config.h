// lvc/pipeline/config.h

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

#ifndef LVC_PIPELINE_CONFIG_H_
#define LVC_PIPELINE_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lvc/audio/mel.h"
#include "lvc/corpus/toy_corpus.h"
#include "lvc/enhance/ssdrc.h"
#include "lvc/feats/f0.h"
#include "lvc/feats/mgc.h"
#include "lvc/intel/gammatone.h"
#include "lvc/vc/model.h"

namespace lvc {

struct TrainingConfig {
  int batch_size = 16;
  double learning_rate = 1e-4;
  int vc_steps = 1200;
  int classifier_steps = 400;
  int joint_steps = 1200;
  uint64_t seed = 1;
  double beta_kl = 1e-3;
  double lambda_s = 1.0;
  ConditioningMode mode = ConditioningMode::kNone;
  bool style_loss = false;
  int crop_frames = 96;
  double holdout_fraction = 0.05;
};

// `key = value` configuration with a closed key set: every key has a
// default, unknown keys are rejected, and the hash covers the canonical
// form (all keys, sorted) so it identifies the effective configuration.
class Config {
 public:
  Config();  // defaults

  static Config FromFile(const std::string &path);

  void Set(const std::string &key, const std::string &value);
  bool Known(const std::string &key) const;

  const std::string &GetRaw(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  int GetInt(const std::string &key) const;
  bool GetBool(const std::string &key) const;
  uint64_t GetU64(const std::string &key) const;

  std::string Canonical() const;  // "key = value\n" sorted
  uint64_t Hash() const;

  AnalysisConfig Analysis() const;
  F0Config F0() const;
  MgcConfig Mgc() const;
  SsConfig Ss() const;
  DrcConfig Drc() const;
  SiibConfig Siib() const;
  TrainingConfig Training() const;
  ToyCorpusConfig Toy() const;
  int GlIterations() const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace lvc

#endif  // LVC_PIPELINE_CONFIG_H_
