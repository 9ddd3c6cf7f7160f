// lvc/corpus/manifest.h

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

#ifndef LVC_CORPUS_MANIFEST_H_
#define LVC_CORPUS_MANIFEST_H_

#include <map>
#include <string>
#include <vector>

namespace lvc {

inline const char *kStyleLombard = "lombard";
inline const char *kStyleNeutral = "neutral";

struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string style;  // "lombard" or "neutral"
  std::string wav_path;
  std::string alignment_path;
};

struct Manifest {
  std::vector<UtteranceRecord> records;
  // speaker_id -> record indices, rebuilt on load
  std::map<std::string, std::vector<int>> speaker_index;

  int Size() const { return static_cast<int>(records.size()); }
  std::vector<std::string> Speakers() const;
  std::vector<int> RecordsOfStyle(const std::string &style) const;
  void RebuildIndex();
  // Throws on duplicate utt_ids, unknown styles or missing files.
  void Validate(bool check_paths = true) const;
};

// Scan <root>/<speaker>/<style>/*.wav with sibling .lab alignments.
// Records missing their alignment are skipped with a warning.
Manifest BuildManifest(const std::string &root);

// TSV round trip: utt_id, speaker_id, style, wav_path, alignment_path.
void WriteManifest(const std::string &path, const Manifest &m);
Manifest LoadManifest(const std::string &path, bool check_paths = true);

struct SplitSpec {
  std::vector<std::string> target_speakers;
};

// Eval gets exactly the target speakers' records, train gets everyone else.
void SplitSpeakers(const Manifest &m, const SplitSpec &spec, Manifest *train,
                   Manifest *eval);

}  // namespace lvc

#endif  // LVC_CORPUS_MANIFEST_H_
