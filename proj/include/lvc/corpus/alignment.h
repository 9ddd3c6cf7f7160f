// lvc/corpus/alignment.h

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

#ifndef LVC_CORPUS_ALIGNMENT_H_
#define LVC_CORPUS_ALIGNMENT_H_

#include <string>
#include <vector>

namespace lvc {

struct PhonemeInterval {
  std::string phoneme;
  double start_ms = 0.0;
  double end_ms = 0.0;
};

struct PhonemeAlignment {
  std::vector<PhonemeInterval> entries;

  // Entries must be monotone, non-overlapping (contiguous within 1 ms) and
  // have positive duration.
  void Validate() const;
};

// .lab format: one "phoneme<TAB>start_ms<TAB>end_ms" per line.
PhonemeAlignment LoadAlignment(const std::string &path);
void WriteAlignment(const std::string &path, const PhonemeAlignment &a);

// Frame t is labeled by the entry covering t*shift ms; frames past the last
// entry repeat the final phoneme.  Output length is exactly total_frames.
std::vector<std::string> UpsamplePhonemes(const PhonemeAlignment &a,
                                          double frame_shift_ms,
                                          int total_frames);

// Stable symbol -> id mapping over a set of alignments (sorted order).
class PhonemeVocab {
 public:
  PhonemeVocab() = default;
  explicit PhonemeVocab(const std::vector<std::string> &symbols);

  int Id(const std::string &symbol) const;  // throws on unknown symbol
  int Size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string> &Symbols() const { return symbols_; }

  static PhonemeVocab FromAlignments(const std::vector<PhonemeAlignment> &as);

 private:
  std::vector<std::string> symbols_;
};

std::vector<int> ToIds(const std::vector<std::string> &phonemes,
                       const PhonemeVocab &vocab);

}  // namespace lvc

#endif  // LVC_CORPUS_ALIGNMENT_H_
