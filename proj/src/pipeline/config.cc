// lvc/pipeline/config.cc

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

#include "lvc/pipeline/config.h"

#include <fstream>
#include <sstream>

#include "lvc/common.h"

namespace lvc {

namespace {

const std::map<std::string, std::string> &DefaultKeys() {
  static const std::map<std::string, std::string> defaults = {
      {"audio.sample_rate", "16000"},
      {"mel.frame_length_ms", "50"},
      {"mel.frame_shift_ms", "12.5"},
      {"mel.fft_size", "1024"},
      {"mel.bins", "80"},
      {"mel.fmin_hz", "0"},
      {"mel.fmax_hz", "8000"},
      {"f0.floor_hz", "60"},
      {"f0.ceil_hz", "400"},
      {"f0.voicing_threshold", "0.3"},
      {"mgc.order", "24"},
      {"mgc.alpha", "0.42"},
      {"ss.beta", "0.3"},
      {"ss.boost_lo_hz", "1000"},
      {"ss.boost_hi_hz", "4000"},
      {"ss.boost_db", "6"},
      {"ss.shoulder_hz", "500"},
      {"ss.lifter_order", "40"},
      {"ss.trend_order", "3"},
      {"drc.attack_ms", "2"},
      {"drc.release_ms", "20"},
      {"drc.comp_knee_dbfs", "-20"},
      {"drc.comp_ratio", "2"},
      {"drc.makeup_knee_dbfs", "-45"},
      {"drc.makeup_db", "12"},
      {"siib.channels", "24"},
      {"siib.fmin_hz", "100"},
      {"siib.fmax_hz", "7500"},
      {"siib.env_rate_hz", "40"},
      {"siib.discount", "0.75"},
      {"train.batch_size", "16"},
      {"train.learning_rate", "0.0001"},
      {"train.vc_steps", "1200"},
      {"train.classifier_steps", "400"},
      {"train.joint_steps", "1200"},
      {"train.seed", "1"},
      {"train.beta_kl", "0.001"},
      {"train.lambda_s", "1"},
      {"train.conditioning", "none"},
      {"train.style_loss", "off"},
      {"train.crop_frames", "96"},
      {"train.holdout_fraction", "0.05"},
      {"toy.speakers", "4"},
      {"toy.utts_per_style", "5"},
      {"toy.vowels_per_utt", "4"},
      {"toy.seed", "17"},
      {"eval.seed", "1"},
      {"gl.iterations", "60"},
  };
  return defaults;
}

std::string Trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

Config::Config() : kv_(DefaultKeys()) {}

Config Config::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config " + path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    cfg.Set(Trim(t.substr(0, eq)), Trim(t.substr(eq + 1)));
  }
  return cfg;
}

void Config::Set(const std::string &key, const std::string &value) {
  if (!Known(key)) throw InvalidInput("unknown config key: " + key);
  if (key == "audio.sample_rate" && value != "16000")
    throw InvalidInput("audio.sample_rate is fixed at 16000 in this release");
  kv_[key] = value;
}

bool Config::Known(const std::string &key) const {
  return DefaultKeys().count(key) > 0;
}

const std::string &Config::GetRaw(const std::string &key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw InvalidInput("unknown config key: " + key);
  return it->second;
}

double Config::GetDouble(const std::string &key) const {
  try {
    return std::stod(GetRaw(key));
  } catch (const std::exception &) {
    throw InvalidInput("config key " + key + " is not numeric: " + GetRaw(key));
  }
}

int Config::GetInt(const std::string &key) const {
  const double v = GetDouble(key);
  const int i = static_cast<int>(v);
  if (v != i) throw InvalidInput("config key " + key + " must be an integer");
  return i;
}

bool Config::GetBool(const std::string &key) const {
  const std::string &v = GetRaw(key);
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw InvalidInput("config key " + key + " must be on/off: " + v);
}

uint64_t Config::GetU64(const std::string &key) const {
  try {
    return std::stoull(GetRaw(key));
  } catch (const std::exception &) {
    throw InvalidInput("config key " + key + " is not a valid seed: " + GetRaw(key));
  }
}

std::string Config::Canonical() const {
  std::ostringstream os;
  for (const auto &[k, v] : kv_) os << k << " = " << v << "\n";
  return os.str();
}

uint64_t Config::Hash() const { return Fnv1a(Canonical()); }

AnalysisConfig Config::Analysis() const {
  AnalysisConfig a;
  a.frame_length_ms = GetDouble("mel.frame_length_ms");
  a.frame_shift_ms = GetDouble("mel.frame_shift_ms");
  a.fft_size = GetInt("mel.fft_size");
  a.mel_bins = GetInt("mel.bins");
  a.fmin_hz = GetDouble("mel.fmin_hz");
  a.fmax_hz = GetDouble("mel.fmax_hz");
  a.Validate(GetInt("audio.sample_rate"));
  return a;
}

F0Config Config::F0() const {
  F0Config f;
  f.floor_hz = GetDouble("f0.floor_hz");
  f.ceil_hz = GetDouble("f0.ceil_hz");
  f.voicing_threshold = GetDouble("f0.voicing_threshold");
  if (f.floor_hz <= 0 || f.ceil_hz <= f.floor_hz)
    throw InvalidInput("f0 floor/ceil misordered");
  return f;
}

MgcConfig Config::Mgc() const {
  MgcConfig m;
  m.order = GetInt("mgc.order");
  m.alpha = GetDouble("mgc.alpha");
  m.lifter_floor_hz = GetDouble("f0.floor_hz");
  if (m.order < 2) throw InvalidInput("mgc.order must be >= 2");
  return m;
}

SsConfig Config::Ss() const {
  SsConfig s;
  s.beta = GetDouble("ss.beta");
  s.boost_lo_hz = GetDouble("ss.boost_lo_hz");
  s.boost_hi_hz = GetDouble("ss.boost_hi_hz");
  s.boost_db = GetDouble("ss.boost_db");
  s.shoulder_hz = GetDouble("ss.shoulder_hz");
  s.lifter_order = GetInt("ss.lifter_order");
  s.trend_order = GetInt("ss.trend_order");
  if (s.beta < 0.0 || s.beta > 1.0) throw InvalidInput("ss.beta must be in [0,1]");
  if (s.boost_db < 0.0) throw InvalidInput("ss.boost_db must be >= 0");
  return s;
}

DrcConfig Config::Drc() const {
  DrcConfig d;
  d.attack_ms = GetDouble("drc.attack_ms");
  d.release_ms = GetDouble("drc.release_ms");
  d.comp_knee_dbfs = GetDouble("drc.comp_knee_dbfs");
  d.comp_ratio = GetDouble("drc.comp_ratio");
  d.makeup_knee_dbfs = GetDouble("drc.makeup_knee_dbfs");
  d.makeup_db = GetDouble("drc.makeup_db");
  if (d.makeup_knee_dbfs >= d.comp_knee_dbfs)
    throw InvalidInput("drc curve knots misordered");
  return d;
}

SiibConfig Config::Siib() const {
  SiibConfig s;
  s.channels = GetInt("siib.channels");
  s.fmin_hz = GetDouble("siib.fmin_hz");
  s.fmax_hz = GetDouble("siib.fmax_hz");
  s.env_rate_hz = GetDouble("siib.env_rate_hz");
  s.discount = GetDouble("siib.discount");
  if (s.channels < 2) throw InvalidInput("siib.channels must be >= 2");
  return s;
}

TrainingConfig Config::Training() const {
  TrainingConfig t;
  t.batch_size = GetInt("train.batch_size");
  t.learning_rate = GetDouble("train.learning_rate");
  t.vc_steps = GetInt("train.vc_steps");
  t.classifier_steps = GetInt("train.classifier_steps");
  t.joint_steps = GetInt("train.joint_steps");
  t.seed = GetU64("train.seed");
  t.beta_kl = GetDouble("train.beta_kl");
  t.lambda_s = GetDouble("train.lambda_s");
  t.mode = ParseConditioningMode(GetRaw("train.conditioning"));
  t.style_loss = GetBool("train.style_loss");
  t.crop_frames = GetInt("train.crop_frames");
  t.holdout_fraction = GetDouble("train.holdout_fraction");
  if (t.batch_size < 1 || t.vc_steps < 1 || t.classifier_steps < 1 ||
      t.joint_steps < 1 || t.crop_frames < 8)
    throw InvalidInput("training config counts must be positive");
  return t;
}

ToyCorpusConfig Config::Toy() const {
  ToyCorpusConfig t;
  t.speakers = GetInt("toy.speakers");
  t.utts_per_style = GetInt("toy.utts_per_style");
  t.vowels_per_utt = GetInt("toy.vowels_per_utt");
  t.seed = GetU64("toy.seed");
  return t;
}

int Config::GlIterations() const {
  const int n = GetInt("gl.iterations");
  if (n < 1) throw InvalidInput("gl.iterations must be >= 1");
  return n;
}

}  // namespace lvc
