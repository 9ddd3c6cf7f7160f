// lvc/corpus/manifest.cc

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

#include "lvc/corpus/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lvc/common.h"

namespace fs = std::filesystem;

namespace lvc {

std::vector<std::string> Manifest::Speakers() const {
  std::vector<std::string> out;
  for (const auto &[spk, _] : speaker_index) out.push_back(spk);
  return out;
}

std::vector<int> Manifest::RecordsOfStyle(const std::string &style) const {
  std::vector<int> out;
  for (int i = 0; i < Size(); i++)
    if (records[i].style == style) out.push_back(i);
  return out;
}

void Manifest::RebuildIndex() {
  speaker_index.clear();
  for (int i = 0; i < Size(); i++)
    speaker_index[records[i].speaker_id].push_back(i);
}

void Manifest::Validate(bool check_paths) const {
  std::set<std::string> seen;
  for (const auto &r : records) {
    if (!seen.insert(r.utt_id).second)
      throw DataError("manifest: duplicate utt_id " + r.utt_id);
    if (r.style != kStyleLombard && r.style != kStyleNeutral)
      throw DataError("manifest: unknown style '" + r.style + "' for " + r.utt_id);
    if (check_paths) {
      if (!fs::exists(r.wav_path))
        throw DataError("manifest: missing wav " + r.wav_path);
      if (!fs::exists(r.alignment_path))
        throw DataError("manifest: missing alignment " + r.alignment_path);
    }
  }
}

Manifest BuildManifest(const std::string &root) {
  if (!fs::is_directory(root))
    throw DataError("build_manifest: root does not exist: " + root);

  Manifest m;
  std::vector<fs::path> speakers;
  for (const auto &e : fs::directory_iterator(root))
    if (e.is_directory()) speakers.push_back(e.path());
  std::sort(speakers.begin(), speakers.end());

  for (const auto &spk_dir : speakers) {
    const std::string speaker = spk_dir.filename().string();
    for (const char *style : {kStyleLombard, kStyleNeutral}) {
      const fs::path style_dir = spk_dir / style;
      if (!fs::is_directory(style_dir)) continue;
      std::vector<fs::path> wavs;
      for (const auto &e : fs::directory_iterator(style_dir))
        if (e.path().extension() == ".wav") wavs.push_back(e.path());
      std::sort(wavs.begin(), wavs.end());
      for (const auto &wav : wavs) {
        fs::path lab = wav;
        lab.replace_extension(".lab");
        if (!fs::exists(lab)) {
          LogWarn("skipping " + wav.string() + ": no sibling .lab alignment");
          continue;
        }
        UtteranceRecord r;
        r.speaker_id = speaker;
        r.style = style;
        r.utt_id = speaker + "_" + style + "_" + wav.stem().string();
        r.wav_path = wav.string();
        r.alignment_path = lab.string();
        m.records.push_back(std::move(r));
      }
    }
  }
  if (m.records.empty())
    throw DataError("build_manifest: no usable records under " + root);
  m.RebuildIndex();
  m.Validate();
  return m;
}

void WriteManifest(const std::string &path, const Manifest &m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << "utt_id\tspeaker_id\tstyle\twav_path\talignment_path\n";
  for (const auto &r : m.records)
    out << r.utt_id << '\t' << r.speaker_id << '\t' << r.style << '\t'
        << r.wav_path << '\t' << r.alignment_path << '\n';
}

Manifest LoadManifest(const std::string &path, bool check_paths) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  Manifest m;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("utt_id\t", 0) == 0) continue;  // header
    }
    std::stringstream ss(line);
    UtteranceRecord r;
    if (!std::getline(ss, r.utt_id, '\t') || !std::getline(ss, r.speaker_id, '\t') ||
        !std::getline(ss, r.style, '\t') || !std::getline(ss, r.wav_path, '\t') ||
        !std::getline(ss, r.alignment_path))
      throw DataError("malformed manifest line: " + line);
    m.records.push_back(std::move(r));
  }
  if (m.records.empty()) throw DataError("empty manifest: " + path);
  m.RebuildIndex();
  m.Validate(check_paths);
  return m;
}

void SplitSpeakers(const Manifest &m, const SplitSpec &spec, Manifest *train,
                   Manifest *eval) {
  std::set<std::string> targets(spec.target_speakers.begin(),
                                spec.target_speakers.end());
  for (const auto &t : targets)
    if (m.speaker_index.find(t) == m.speaker_index.end())
      throw DataError("split_speakers: target speaker missing: " + t);

  train->records.clear();
  eval->records.clear();
  for (const auto &r : m.records)
    (targets.count(r.speaker_id) ? eval : train)->records.push_back(r);
  if (train->records.empty())
    throw DataError("split_speakers: no training speakers left");
  train->RebuildIndex();
  eval->RebuildIndex();
}

}  // namespace lvc
