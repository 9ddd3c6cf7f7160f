// lvc/pipeline/features.cc

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

#include "lvc/pipeline/features.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lvc/audio/waveform.h"
#include "lvc/common.h"
#include "lvc/feats/f0.h"
#include "lvc/feats/mgc.h"

namespace fs = std::filesystem;

namespace lvc {

nn::Mat MelToMat(const MelSpectrogram &m) {
  nn::Mat out(m.frames, m.bins);
  out.v = m.values;
  return out;
}

MelSpectrogram MatToMel(const nn::Mat &m, const AnalysisConfig &cfg) {
  MelSpectrogram out;
  out.frames = m.rows;
  out.bins = m.cols;
  out.values = m.v;
  out.config = cfg;
  return out;
}

ExtractionResult ExtractFeatures(const Manifest &manifest, const Config &cfg,
                                 const std::string &out_dir) {
  fs::create_directories(out_dir);
  const AnalysisConfig acfg = cfg.Analysis();
  const F0Config f0cfg = cfg.F0();
  const MgcConfig mgc_cfg = cfg.Mgc();

  // Pass 1: raw tracks per utterance, grouped for the stats.
  std::vector<F0Track> f0_tracks(manifest.Size());
  std::vector<MgcTrack> mgc_tracks(manifest.Size());
  std::map<std::string, std::vector<F0Track>> per_speaker_f0;
  std::vector<MgcTrack> all_mgc;
  std::map<std::string, std::vector<MelSpectrogram>> per_speaker_mels;
  for (int i = 0; i < manifest.Size(); i++) {
    const auto &r = manifest.records[i];
    Waveform w = ReadWav(r.wav_path);
    f0_tracks[i] = EstimateF0(w, acfg, f0cfg);
    mgc_tracks[i] = ComputeMgc(w, acfg, mgc_cfg);
    per_speaker_f0[r.speaker_id].push_back(f0_tracks[i]);
    all_mgc.push_back(mgc_tracks[i]);
    per_speaker_mels[r.speaker_id].push_back(ComputeMelSpectrogram(w, acfg));
  }

  ExtractionResult res;
  for (const auto &[spk, tracks] : per_speaker_f0)
    res.speaker_stats[spk] = ComputeSpeakerStats(tracks);
  res.global_stats = ComputeGlobalStats(all_mgc);

  // Pass 2: normalized dumps.
  for (int i = 0; i < manifest.Size(); i++) {
    const auto &r = manifest.records[i];
    AcousticFrameFeatures f =
        ExtractConditioning(f0_tracks[i], mgc_tracks[i],
                            res.speaker_stats.at(r.speaker_id), res.global_stats);
    WriteFeatures((fs::path(out_dir) / (r.utt_id + ".feat")).string(), f);
  }

  // Speaker embeddings over each speaker's full utterance set.
  std::vector<SpeakerEmbedding> embs;
  for (const auto &[spk, mels] : per_speaker_mels) {
    SpeakerEmbedding e = ComputeSpeakerEmbedding(mels, spk);
    res.embeddings[spk] = e;
    embs.push_back(std::move(e));
  }
  WriteEmbeddingsTsv((fs::path(out_dir) / "embeddings.tsv").string(), embs);
  WriteStatsTsv((fs::path(out_dir) / "stats.tsv").string(), res.speaker_stats,
                res.global_stats);
  return res;
}

void WriteStatsTsv(const std::string &path,
                   const std::map<std::string, SpeakerStats> &speaker_stats,
                   const GlobalStats &global_stats) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write stats file: " + path);
  out.precision(17);
  out << "global\tmgc\t" << global_stats.mgc0.mean << '\t' << global_stats.mgc0.stddev
      << '\t' << global_stats.mgc1.mean << '\t' << global_stats.mgc1.stddev << '\n';
  for (const auto &[spk, s] : speaker_stats)
    out << "speaker\t" << spk << '\t' << s.logf0.mean << '\t' << s.logf0.stddev << '\n';
}

void ReadStatsTsv(const std::string &path,
                  std::map<std::string, SpeakerStats> *speaker_stats,
                  GlobalStats *global_stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stats file: " + path);
  speaker_stats->clear();
  std::string line;
  bool have_global = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string kind;
    std::getline(ss, kind, '\t');
    if (kind == "global") {
      std::string tag, a, b, c, d;
      std::getline(ss, tag, '\t');
      std::getline(ss, a, '\t');
      std::getline(ss, b, '\t');
      std::getline(ss, c, '\t');
      std::getline(ss, d, '\t');
      global_stats->mgc0 = {std::stod(a), std::stod(b)};
      global_stats->mgc1 = {std::stod(c), std::stod(d)};
      have_global = true;
    } else if (kind == "speaker") {
      std::string spk, a, b;
      std::getline(ss, spk, '\t');
      std::getline(ss, a, '\t');
      std::getline(ss, b, '\t');
      (*speaker_stats)[spk].logf0 = {std::stod(a), std::stod(b)};
    } else {
      throw DataError("malformed stats line: " + line);
    }
  }
  if (!have_global || speaker_stats->empty())
    throw DataError("incomplete stats file: " + path);
}

LombardStats AnalyzeManifest(const Manifest &manifest, const Config &cfg) {
  const AnalysisConfig acfg = cfg.Analysis();
  const F0Config f0cfg = cfg.F0();
  const MgcConfig mgc_cfg = cfg.Mgc();
  std::vector<UtteranceFeatureSummary> lombard, neutral;
  for (const auto &r : manifest.records) {
    Waveform w = ReadWav(r.wav_path);
    UtteranceFeatureSummary s =
        SummarizeUtterance(EstimateF0(w, acfg, f0cfg), ComputeMgc(w, acfg, mgc_cfg));
    (r.style == kStyleLombard ? lombard : neutral).push_back(s);
  }
  return ComputeLombardStats(lombard, neutral, kStyleLombard, kStyleNeutral);
}

}  // namespace lvc
