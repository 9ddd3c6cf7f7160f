// lvc/pipeline/eval.cc

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

#include "lvc/pipeline/eval.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lvc/audio/waveform.h"
#include "lvc/common.h"
#include "lvc/corpus/alignment.h"
#include "lvc/enhance/ssdrc.h"
#include "lvc/pipeline/features.h"
#include "lvc/vc/checkpoint.h"
#include "lvc/vc/embedding.h"
#include "lvc/vc/model.h"

namespace fs = std::filesystem;

namespace lvc {

void RunConversion(const Manifest &sources, const ConversionJob &job,
                   const Config &cfg) {
  fs::create_directories(job.out_dir);
  const AnalysisConfig acfg = cfg.Analysis();

  nn::ParamStore params;
  CheckpointMeta meta = LoadCheckpoint(job.checkpoint_path, &params);
  if (meta.kind != 0)
    throw DataError("convert: checkpoint is not a conversion model: " +
                    job.checkpoint_path);
  const ConditioningMode mode = ParseConditioningMode(meta.conditioning);

  VcModelConfig mcfg;
  mcfg.vocab_size = static_cast<int>(meta.vocab.size());
  mcfg.mode = mode;
  VcModel model(mcfg);
  LoadCheckpoint(job.checkpoint_path, &model.Params());
  PhonemeVocab vocab(meta.vocab);

  auto embeddings =
      ReadEmbeddingsTsv((fs::path(job.features_dir) / "embeddings.tsv").string());
  auto target_it = embeddings.find(job.target_speaker);
  if (target_it == embeddings.end())
    throw DataError("convert: unknown target speaker " + job.target_speaker);
  const SpeakerEmbedding &target = target_it->second;

  const int gl_iters = cfg.GlIterations();
  for (const auto &r : sources.records) {
    auto src_it = embeddings.find(r.speaker_id);
    if (src_it == embeddings.end())
      throw DataError("convert: no embedding for source speaker " + r.speaker_id);

    MelSpectrogram mel = ComputeMelSpectrogram(ReadWav(r.wav_path), acfg);
    std::vector<int> ids = ToIds(
        UpsamplePhonemes(LoadAlignment(r.alignment_path), acfg.frame_shift_ms,
                         mel.frames),
        vocab);

    nn::Mat cond;
    const nn::Mat *cond_ptr = nullptr;
    if (mode != ConditioningMode::kNone) {
      const fs::path feat = fs::path(job.features_dir) / (r.utt_id + ".feat");
      if (!fs::exists(feat))
        throw DataError("convert: missing features for " + r.utt_id +
                        " required by mode " + meta.conditioning);
      AcousticFrameFeatures f = ReadFeatures(feat.string());
      if (f.frames != mel.frames)
        throw DataError("convert: feature/mel frame mismatch for " + r.utt_id);
      cond = SelectConditioning(f, mode);
      cond_ptr = &cond;
    }

    nn::Mat out = model.Convert(ids, MelToMat(mel), src_it->second, target, cond_ptr);
    Waveform audio = InvertMel(MatToMel(out, acfg), gl_iters);
    const std::string name = r.utt_id + "__to__" + job.target_speaker + ".wav";
    WriteWav((fs::path(job.out_dir) / name).string(), audio, WavEncoding::kPcm16);
  }
  WriteRunMeta(job.out_dir, cfg.Hash(), "convert");
}

namespace {

std::string UttIdFromStem(const std::string &stem) {
  const size_t pos = stem.find("__to__");
  return pos == std::string::npos ? stem : stem.substr(0, pos);
}

std::map<std::string, std::string> ScanWavDir(const std::string &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".wav") continue;
    const std::string id = UttIdFromStem(e.path().stem().string());
    if (out.count(id))
      throw DataError("eval: duplicate utterance id '" + id + "' in " + dir);
    out[id] = e.path().string();
  }
  if (out.empty()) throw DataError("eval: no wav files in " + dir);
  return out;
}

// A source is either a directory of wavs or a manifest TSV, optionally
// filtered to one style with a "#style" suffix (e.g. manifest.tsv#lombard).
std::map<std::string, std::string> ResolveAudioSource(const std::string &spec) {
  std::string path = spec, style;
  const size_t pos = spec.rfind('#');
  if (pos != std::string::npos) {
    path = spec.substr(0, pos);
    style = spec.substr(pos + 1);
  }
  if (fs::is_directory(path)) {
    if (!style.empty())
      throw InvalidInput("eval: style filter '" + style +
                         "' only applies to manifest sources: " + spec);
    return ScanWavDir(path);
  }
  if (!fs::exists(path)) throw DataError("eval: source missing: " + spec);
  Manifest m = LoadManifest(path);
  std::map<std::string, std::string> out;
  for (const auto &r : m.records) {
    if (!style.empty() && r.style != style) continue;
    out[r.utt_id] = r.wav_path;
  }
  if (out.empty()) throw DataError("eval: no records match source: " + spec);
  return out;
}

}  // namespace

void RunEnhance(const std::string &in_spec, const std::string &out_dir,
                const Config &cfg) {
  const auto inputs = ResolveAudioSource(in_spec);
  fs::create_directories(out_dir);
  const SsConfig ss = cfg.Ss();
  const DrcConfig drc = cfg.Drc();
  for (const auto &[id, path] : inputs) {
    Waveform w = ReadWav(path);
    WriteWav((fs::path(out_dir) / (id + ".wav")).string(), Ssdrc(w, ss, drc),
             WavEncoding::kPcm16);
  }
  WriteRunMeta(out_dir, cfg.Hash(), "enhance");
}

ExperimentReport RunEval(const std::string &clean_dir,
                         const std::vector<SystemSpec> &systems,
                         const std::vector<double> &snrs, uint64_t seed,
                         const Config &cfg, bool force) {
  if (systems.empty()) throw InvalidInput("eval: no systems given");
  if (snrs.empty()) throw InvalidInput("eval: no SNR conditions given");

  const auto clean = ResolveAudioSource(clean_dir);
  const SiibConfig siib_cfg = cfg.Siib();

  // One masker for every system and SNR, shaped by the full clean set.
  Ltas masker;
  {
    std::vector<Waveform> all;
    for (const auto &[_, path] : clean) all.push_back(ReadWav(path));
    masker = ComputeLtas(all, cfg.Analysis());
  }

  // Refuse mixed-provenance inputs unless forced.
  for (const auto &sys : systems) {
    uint64_t hash = 0;
    if (fs::is_directory(sys.dir) && ReadRunMetaHash(sys.dir, &hash) &&
        hash != cfg.Hash()) {
      if (!force)
        throw DataError("eval: system '" + sys.name +
                        "' was produced under a different config (run.meta "
                        "hash mismatch); pass --force to override");
      LogWarn("eval: config hash mismatch for system '" + sys.name +
              "' overridden by --force");
    }
  }

  ExperimentReport report;
  report.config_hash = cfg.Hash();
  report.version = kVersionString;

  std::vector<SystemSpec> ordered = systems;
  std::sort(ordered.begin(), ordered.end(),
            [](const SystemSpec &a, const SystemSpec &b) { return a.name < b.name; });
  std::vector<double> snrs_sorted = snrs;
  std::sort(snrs_sorted.begin(), snrs_sorted.end());

  for (const auto &sys : ordered) {
    const auto processed = ResolveAudioSource(sys.dir);
    std::vector<std::string> missing;
    for (const auto &[id, _] : processed)
      if (!clean.count(id)) missing.push_back(id);
    if (!missing.empty()) {
      std::string list;
      for (const auto &id : missing) list += " " + id;
      throw DataError("eval: system '" + sys.name +
                      "' has utterances without clean references:" + list);
    }

    std::vector<std::string> ids;
    std::vector<Waveform> clean_wavs, proc_wavs;
    for (const auto &[id, path] : processed) {
      ids.push_back(id);
      clean_wavs.push_back(ReadWav(clean.at(id)));
      proc_wavs.push_back(ReadWav(path));
    }
    for (double snr : snrs_sorted) {
      NoiseCondition cond;
      cond.snr_db = snr;
      cond.seed = seed;
      EvalRow row =
          EvaluateCondition(ids, clean_wavs, proc_wavs, cond, siib_cfg, &masker);
      row.system = sys.name;
      report.rows.push_back(row);
    }
  }
  return report;
}

void WriteReportTsv(const std::string &path, const ExperimentReport &report) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write report: " + path);
  out << "system\tsnr_db\tmean_oi\tci95\tn\n";
  char buf[128];
  for (const auto &r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%s\t%g\t%.2f\t%.2f\t%d\n", r.system.c_str(),
                  r.snr_db, r.mean_oi, r.ci95, r.n);
    out << buf;
  }
}

void WriteReportMeta(const std::string &path, const ExperimentReport &report) {
  nlohmann::json j;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(report.config_hash));
  j["config_hash"] = hash;
  j["version"] = report.version;
  const auto now = std::chrono::system_clock::now();
  j["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write report metadata: " + path);
  out << j.dump(2) << "\n";
}

std::string FormatReportTable(const ExperimentReport &report) {
  // Paper-style cells: one row per system, one "mean (ci)" column per SNR.
  std::vector<double> snrs;
  std::vector<std::string> names;
  for (const auto &r : report.rows) {
    if (std::find(snrs.begin(), snrs.end(), r.snr_db) == snrs.end())
      snrs.push_back(r.snr_db);
    if (std::find(names.begin(), names.end(), r.system) == names.end())
      names.push_back(r.system);
  }
  std::ostringstream os;
  os << "system";
  char buf[64];
  for (double s : snrs) {
    std::snprintf(buf, sizeof(buf), "\tSNR %g", s);
    os << buf;
  }
  os << "\n";
  for (const auto &name : names) {
    os << name;
    for (double s : snrs) {
      for (const auto &r : report.rows) {
        if (r.system == name && r.snr_db == s) {
          std::snprintf(buf, sizeof(buf), "\t%.2f (%.2f)", r.mean_oi, r.ci95);
          os << buf;
        }
      }
    }
    os << "\n";
  }
  return os.str();
}

void WriteRunMeta(const std::string &dir, uint64_t config_hash,
                  const std::string &stage) {
  nlohmann::json j;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(config_hash));
  j["config_hash"] = hash;
  j["stage"] = stage;
  j["version"] = kVersionString;
  std::ofstream out(fs::path(dir) / "run.meta", std::ios::trunc);
  if (!out) throw DataError("cannot write run.meta in " + dir);
  out << j.dump(2) << "\n";
}

bool ReadRunMetaHash(const std::string &dir, uint64_t *hash) {
  const fs::path p = fs::path(dir) / "run.meta";
  if (!fs::exists(p)) return false;
  std::ifstream in(p);
  nlohmann::json j;
  try {
    in >> j;
    *hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
  } catch (const std::exception &) {
    throw DataError("malformed run.meta in " + dir);
  }
  return true;
}

}  // namespace lvc
