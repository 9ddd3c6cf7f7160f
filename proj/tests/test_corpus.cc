// tests/test_corpus.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lvc/audio/waveform.h"
#include "lvc/common.h"
#include "lvc/corpus/alignment.h"
#include "lvc/corpus/manifest.h"
#include "lvc/corpus/toy_corpus.h"
#include "lvc/feats/conditioning.h"
#include "lvc/feats/f0.h"
#include "lvc/feats/mgc.h"

using namespace lvc;
namespace fs = std::filesystem;

namespace {

fs::path FreshDir(const std::string &name) {
  fs::path p = fs::temp_directory_path() / "lvc_corpus_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

uint64_t HashFile(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return Fnv1a(bytes.data(), bytes.size());
}

// The shared toy corpus used by several cases below.
const Manifest &SharedToy() {
  static Manifest m = [] {
    auto dir = FreshDir("shared");
    ToyCorpusConfig cfg;
    return SynthToyCorpus(dir.string(), cfg);
  }();
  return m;
}

}  // namespace

TEST_CASE("toy corpus has speakers x utterances x styles records") {
  const Manifest &m = SharedToy();
  CHECK(m.Size() == 40);  // 4 speakers x (5 lombard + 5 neutral)
  CHECK(m.Speakers().size() == 4);
  CHECK(m.RecordsOfStyle(kStyleLombard).size() == 20);
  CHECK(m.RecordsOfStyle(kStyleNeutral).size() == 20);
  m.Validate();
}

TEST_CASE("toy corpus synthesis is bit-identical per seed") {
  auto dir_a = FreshDir("det_a");
  auto dir_b = FreshDir("det_b");
  ToyCorpusConfig cfg;
  cfg.speakers = 2;
  cfg.utts_per_style = 2;
  Manifest a = SynthToyCorpus(dir_a.string(), cfg);
  Manifest b = SynthToyCorpus(dir_b.string(), cfg);
  REQUIRE(a.Size() == b.Size());
  for (int i = 0; i < a.Size(); i++) {
    CHECK(HashFile(a.records[i].wav_path) == HashFile(b.records[i].wav_path));
    CHECK(HashFile(a.records[i].alignment_path) == HashFile(b.records[i].alignment_path));
  }
  ToyCorpusConfig other = cfg;
  other.seed = 18;
  auto dir_c = FreshDir("det_c");
  Manifest c = SynthToyCorpus(dir_c.string(), other);
  CHECK(HashFile(a.records[0].wav_path) != HashFile(c.records[0].wav_path));
}

TEST_CASE("build_manifest scans the toy layout and skips wavs without alignments") {
  auto dir = FreshDir("scan");
  ToyCorpusConfig cfg;
  cfg.speakers = 2;
  cfg.utts_per_style = 3;
  SynthToyCorpus(dir.string(), cfg);

  // orphan wav without .lab must be skipped with a warning
  Waveform junk;
  junk.sample_rate_hz = kSampleRate;
  junk.samples.assign(8000, 0.01);
  WriteWav((dir / "sp01" / "lombard" / "orphan.wav").string(), junk);

  Manifest m = BuildManifest(dir.string());
  CHECK(m.Size() == 12);
  for (const auto &r : m.records) CHECK(r.utt_id.find("orphan") == std::string::npos);
}

TEST_CASE("build_manifest rejects a missing root") {
  CHECK_THROWS_AS(BuildManifest("/nonexistent/lvc_root"), DataError);
}

TEST_CASE("manifest round trip preserves records; duplicates are rejected") {
  auto dir = FreshDir("roundtrip");
  const Manifest &m = SharedToy();
  auto path = (dir / "manifest.tsv").string();
  WriteManifest(path, m);
  Manifest r = LoadManifest(path);
  REQUIRE(r.Size() == m.Size());
  for (int i = 0; i < m.Size(); i++) {
    CHECK(r.records[i].utt_id == m.records[i].utt_id);
    CHECK(r.records[i].speaker_id == m.records[i].speaker_id);
    CHECK(r.records[i].style == m.records[i].style);
    CHECK(r.records[i].wav_path == m.records[i].wav_path);
    CHECK(r.records[i].alignment_path == m.records[i].alignment_path);
  }

  Manifest dup = m;
  dup.records.push_back(m.records[0]);
  CHECK_THROWS_AS(dup.Validate(), DataError);
}

TEST_CASE("upsample_phonemes interval lookup") {
  PhonemeAlignment a;
  a.entries = {{"A", 0.0, 25.0}, {"B", 25.0, 62.5}};
  auto labels = UpsamplePhonemes(a, 12.5, 5);
  REQUIRE(labels.size() == 5);
  CHECK(labels[0] == "A");
  CHECK(labels[1] == "A");
  CHECK(labels[2] == "B");
  CHECK(labels[3] == "B");
  CHECK(labels[4] == "B");

  PhonemeAlignment single;
  single.entries = {{"X", 0.0, 100.0}};
  for (const auto &l : UpsamplePhonemes(single, 12.5, 8)) CHECK(l == "X");

  // one frame past the alignment span repeats the last phoneme
  auto past = UpsamplePhonemes(a, 12.5, 6);
  CHECK(past[5] == "B");
}

TEST_CASE("upsample_phonemes always returns exactly total_frames") {
  Rng rng(555);
  for (int trial = 0; trial < 50; trial++) {
    PhonemeAlignment a;
    double t = 0.0;
    const int n_seg = 1 + static_cast<int>(rng.Bounded(6));
    for (int s = 0; s < n_seg; s++) {
      const double d = rng.Uniform(20.0, 300.0);
      a.entries.push_back({"p" + std::to_string(s), t, t + d});
      t += d;
    }
    const int total = 1 + static_cast<int>(rng.Bounded(300));
    CHECK(static_cast<int>(UpsamplePhonemes(a, 12.5, total).size()) == total);
  }
}

TEST_CASE("alignment validation catches overlaps and gaps") {
  PhonemeAlignment bad_gap;
  bad_gap.entries = {{"A", 0.0, 20.0}, {"B", 40.0, 60.0}};
  CHECK_THROWS_AS(bad_gap.Validate(), DataError);

  PhonemeAlignment bad_span;
  bad_span.entries = {{"A", 10.0, 10.0}};
  CHECK_THROWS_AS(bad_span.Validate(), DataError);
}

TEST_CASE("alignment file round trip and vocab") {
  auto dir = FreshDir("labs");
  PhonemeAlignment a;
  a.entries = {{"sil", 0.0, 80.0}, {"aa", 80.0, 400.0}, {"s", 400.0, 480.0}};
  auto path = (dir / "x.lab").string();
  WriteAlignment(path, a);
  PhonemeAlignment r = LoadAlignment(path);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[1].phoneme == "aa");
  CHECK(r.entries[1].start_ms == doctest::Approx(80.0));

  PhonemeVocab vocab = PhonemeVocab::FromAlignments({a});
  CHECK(vocab.Size() == 3);
  CHECK(vocab.Id("aa") == 0);  // sorted order: aa, s, sil
  CHECK(vocab.Id("s") == 1);
  CHECK(vocab.Id("sil") == 2);
  CHECK_THROWS_AS(vocab.Id("zz"), DataError);
}

TEST_CASE("split_speakers partitions train/eval disjointly") {
  const Manifest &m = SharedToy();
  SplitSpec spec;
  spec.target_speakers = {"sp04"};
  Manifest train, eval;
  SplitSpeakers(m, spec, &train, &eval);
  CHECK(train.Speakers().size() == 3);
  CHECK(eval.Speakers().size() == 1);
  CHECK(train.Size() + eval.Size() == m.Size());
  for (const auto &r : eval.records) CHECK(r.speaker_id == "sp04");
  for (const auto &r : train.records) CHECK(r.speaker_id != "sp04");

  SplitSpec missing;
  missing.target_speakers = {"sp99"};
  CHECK_THROWS_AS(SplitSpeakers(m, missing, &train, &eval), DataError);
}

TEST_CASE("toy corpus encodes the style contrasts it promises") {
  const Manifest &m = SharedToy();
  std::vector<UtteranceFeatureSummary> lombard, neutral;
  std::vector<std::pair<double, double>> points;  // (mean f0, mean mgc1)
  std::vector<int> labels;
  for (const auto &r : m.records) {
    Waveform w = ReadWav(r.wav_path);
    UtteranceFeatureSummary s = SummarizeUtterance(EstimateF0(w), ComputeMgc(w));
    (r.style == kStyleLombard ? lombard : neutral).push_back(s);
    points.push_back({s.mean_f0, s.mean_mgc1});
    labels.push_back(r.style == kStyleLombard ? 1 : 0);
  }
  LombardStats stats = ComputeLombardStats(lombard, neutral, kStyleLombard, kStyleNeutral);
  CHECK(stats.delta_mean_f0 > 0.0);       // raised pitch
  CHECK(stats.delta_mean_mgc1 < 0.0);     // flattened tilt
  CHECK(stats.a.n_utterances == 20);

  // Separability oracle: Fisher LDA on (mean f0, mean mgc1) >= 90%.
  double m1[2] = {0, 0}, m0[2] = {0, 0};
  int n1 = 0, n0 = 0;
  for (size_t i = 0; i < points.size(); i++) {
    if (labels[i]) { m1[0] += points[i].first; m1[1] += points[i].second; n1++; }
    else { m0[0] += points[i].first; m0[1] += points[i].second; n0++; }
  }
  for (double *mm : {m1, m0}) { /* normalize below */ (void)mm; }
  m1[0] /= n1; m1[1] /= n1; m0[0] /= n0; m0[1] /= n0;
  double cov[3] = {0, 0, 0};  // xx, yy, xy pooled
  for (size_t i = 0; i < points.size(); i++) {
    const double *mu = labels[i] ? m1 : m0;
    const double dx = points[i].first - mu[0], dy = points[i].second - mu[1];
    cov[0] += dx * dx; cov[1] += dy * dy; cov[2] += dx * dy;
  }
  const double n = static_cast<double>(points.size());
  cov[0] = cov[0] / n + 1e-6; cov[1] = cov[1] / n + 1e-6; cov[2] /= n;
  const double det = cov[0] * cov[1] - cov[2] * cov[2];
  const double inv[3] = {cov[1] / det, cov[0] / det, -cov[2] / det};
  const double diff[2] = {m1[0] - m0[0], m1[1] - m0[1]};
  const double wvec[2] = {inv[0] * diff[0] + inv[2] * diff[1],
                          inv[2] * diff[0] + inv[1] * diff[1]};
  const double thresh = 0.5 * (wvec[0] * (m1[0] + m0[0]) + wvec[1] * (m1[1] + m0[1]));
  int correct = 0;
  for (size_t i = 0; i < points.size(); i++) {
    const double score = wvec[0] * points[i].first + wvec[1] * points[i].second;
    correct += (score > thresh ? 1 : 0) == labels[i];
  }
  CHECK(static_cast<double>(correct) / points.size() >= 0.9);
}
