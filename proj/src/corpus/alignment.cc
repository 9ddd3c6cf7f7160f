// lvc/corpus/alignment.cc

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

#include "lvc/corpus/alignment.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lvc/common.h"

namespace lvc {

void PhonemeAlignment::Validate() const {
  if (entries.empty()) throw DataError("alignment: no entries");
  double prev_end = -1.0;
  for (const auto &e : entries) {
    if (e.start_ms < 0.0 || e.end_ms <= e.start_ms)
      throw DataError("alignment: bad interval for " + e.phoneme);
    if (prev_end >= 0.0 && std::abs(e.start_ms - prev_end) > 1.0)
      throw DataError("alignment: gap/overlap before " + e.phoneme);
    if (prev_end >= 0.0 && e.start_ms < prev_end - 1.0)
      throw DataError("alignment: entries not monotone at " + e.phoneme);
    prev_end = e.end_ms;
  }
}

PhonemeAlignment LoadAlignment(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open alignment: " + path);
  PhonemeAlignment a;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    PhonemeInterval e;
    std::string start, end;
    if (!std::getline(ss, e.phoneme, '\t') || !std::getline(ss, start, '\t') ||
        !std::getline(ss, end))
      throw DataError("malformed alignment line in " + path + ": " + line);
    try {
      e.start_ms = std::stod(start);
      e.end_ms = std::stod(end);
    } catch (const std::exception &) {
      throw DataError("non-numeric alignment time in " + path + ": " + line);
    }
    a.entries.push_back(std::move(e));
  }
  a.Validate();
  return a;
}

void WriteAlignment(const std::string &path, const PhonemeAlignment &a) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write alignment: " + path);
  for (const auto &e : a.entries)
    out << e.phoneme << '\t' << e.start_ms << '\t' << e.end_ms << '\n';
}

std::vector<std::string> UpsamplePhonemes(const PhonemeAlignment &a,
                                          double frame_shift_ms,
                                          int total_frames) {
  a.Validate();
  if (total_frames < 1) throw InvalidInput("upsample_phonemes: total_frames < 1");
  std::vector<std::string> out(total_frames);
  size_t cursor = 0;
  for (int t = 0; t < total_frames; t++) {
    const double time_ms = t * frame_shift_ms;
    while (cursor + 1 < a.entries.size() && time_ms >= a.entries[cursor].end_ms)
      cursor++;
    out[t] = a.entries[cursor].phoneme;
  }
  return out;
}

PhonemeVocab::PhonemeVocab(const std::vector<std::string> &symbols)
    : symbols_(symbols) {
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
}

int PhonemeVocab::Id(const std::string &symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol)
    throw DataError("phoneme vocabulary: unknown symbol '" + symbol + "'");
  return static_cast<int>(it - symbols_.begin());
}

PhonemeVocab PhonemeVocab::FromAlignments(const std::vector<PhonemeAlignment> &as) {
  std::vector<std::string> syms;
  for (const auto &a : as)
    for (const auto &e : a.entries) syms.push_back(e.phoneme);
  return PhonemeVocab(syms);
}

std::vector<int> ToIds(const std::vector<std::string> &phonemes,
                       const PhonemeVocab &vocab) {
  std::vector<int> ids(phonemes.size());
  for (size_t i = 0; i < phonemes.size(); i++) ids[i] = vocab.Id(phonemes[i]);
  return ids;
}

}  // namespace lvc
