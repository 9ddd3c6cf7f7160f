// tests/test_pipeline.cc

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

#include "lvc/common.h"
#include "lvc/corpus/toy_corpus.h"
#include "lvc/pipeline/config.h"
#include "lvc/pipeline/eval.h"
#include "lvc/pipeline/features.h"
#include "lvc/pipeline/train.h"
#include "lvc/vc/checkpoint.h"

using namespace lvc;
namespace fs = std::filesystem;

namespace {

fs::path Work() {
  static fs::path p = [] {
    fs::path q = fs::temp_directory_path() / "lvc_pipeline_test";
    fs::remove_all(q);
    fs::create_directories(q);
    return q;
  }();
  return p;
}

// Small corpus + features shared across the training cases.
struct Fixture {
  Manifest manifest;
  std::string feats_dir;
  Config cfg;
};

const Fixture &SharedFixture() {
  static Fixture f = [] {
    Fixture fx;
    ToyCorpusConfig tcfg;
    tcfg.speakers = 3;
    tcfg.utts_per_style = 3;
    fx.manifest = SynthToyCorpus((Work() / "corpus").string(), tcfg);
    fx.feats_dir = (Work() / "feats").string();
    ExtractFeatures(fx.manifest, fx.cfg, fx.feats_dir);
    return fx;
  }();
  return f;
}

std::string FileBytes(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("config: defaults, overrides, unknown keys, hashing") {
  Config cfg;
  CHECK(cfg.GetInt("mel.bins") == 80);
  CHECK(cfg.GetDouble("train.learning_rate") == doctest::Approx(1e-4));
  CHECK(cfg.Training().batch_size == 16);
  CHECK_THROWS_AS(cfg.Set("mel.bogus", "1"), InvalidInput);
  CHECK_THROWS_AS(cfg.Set("audio.sample_rate", "22050"), InvalidInput);

  const uint64_t h0 = cfg.Hash();
  cfg.Set("train.seed", "99");
  CHECK(cfg.Hash() != h0);
  Config cfg2;
  cfg2.Set("train.seed", "99");
  CHECK(cfg.Hash() == cfg2.Hash());
}

TEST_CASE("config file parsing with comments") {
  const auto path = (Work() / "conf.cfg").string();
  std::ofstream(path) << "# comment\n"
                      << "ss.beta = 0.25\n"
                      << "\n"
                      << "train.conditioning = mgc\n";
  Config cfg = Config::FromFile(path);
  CHECK(cfg.GetDouble("ss.beta") == doctest::Approx(0.25));
  CHECK(cfg.Training().mode == ConditioningMode::kMgc);

  std::ofstream(path) << "nonsense line\n";
  CHECK_THROWS_AS(Config::FromFile(path), InvalidInput);
  std::ofstream(path) << "no.such.key = 1\n";
  CHECK_THROWS_AS(Config::FromFile(path), InvalidInput);
}

TEST_CASE("extract writes dumps, stats and embeddings") {
  const Fixture &fx = SharedFixture();
  for (const auto &r : fx.manifest.records)
    CHECK(fs::exists(fs::path(fx.feats_dir) / (r.utt_id + ".feat")));
  CHECK(fs::exists(fs::path(fx.feats_dir) / "stats.tsv"));
  CHECK(fs::exists(fs::path(fx.feats_dir) / "embeddings.tsv"));

  std::map<std::string, SpeakerStats> spk;
  GlobalStats glob;
  ReadStatsTsv((fs::path(fx.feats_dir) / "stats.tsv").string(), &spk, &glob);
  CHECK(spk.size() == 3);
  CHECK(glob.mgc0.stddev > 0.0);
  // speaker log-f0 means should be plausible voice pitches
  for (const auto &[_, s] : spk) {
    CHECK(s.logf0.mean > std::log(80.0));
    CHECK(s.logf0.mean < std::log(420.0));
  }

  auto embs = ReadEmbeddingsTsv((fs::path(fx.feats_dir) / "embeddings.tsv").string());
  CHECK(embs.size() == 3);
}

TEST_CASE("holdout split keeps one utterance per speaker-style group") {
  const Fixture &fx = SharedFixture();
  std::vector<int> train_idx, hold_idx;
  SplitHoldout(fx.manifest, 0.05, &train_idx, &hold_idx);
  CHECK(train_idx.size() + hold_idx.size() == static_cast<size_t>(fx.manifest.Size()));
  CHECK(hold_idx.size() == 6);  // 3 speakers x 2 styles x 1
  std::set<std::pair<std::string, std::string>> groups;
  for (int i : hold_idx)
    groups.insert({fx.manifest.records[i].speaker_id, fx.manifest.records[i].style});
  CHECK(groups.size() == 6);
}

TEST_CASE("classifier training learns and is seed-deterministic") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  cfg.Set("train.classifier_steps", "250");
  cfg.Set("train.batch_size", "12");

  StyleClassifier clf(ClassifierConfig{80, 32, 5, cfg.Training().seed});
  ClassifierTrainResult r = TrainStyleClassifier(fx.manifest, cfg, &clf);
  CHECK(r.log.front().total > r.log.back().total);  // BCE fell
  CHECK(r.holdout_n == 6);
  CHECK(r.holdout_accuracy >= 0.95);

  StyleClassifier clf2(ClassifierConfig{80, 32, 5, cfg.Training().seed});
  ClassifierTrainResult r2 = TrainStyleClassifier(fx.manifest, cfg, &clf2);
  CHECK(r2.holdout_accuracy == r.holdout_accuracy);
  CHECK(clf.Params().ContentHash() == clf2.Params().ContentHash());

  // pooling stability: a one-frame crop barely moves the probability
  double worst = 0.0;
  for (const auto &rec : fx.manifest.records) {
    MelSpectrogram mel =
        ComputeMelSpectrogram(ReadWav(rec.wav_path), cfg.Analysis());
    nn::Mat full = MelToMat(mel);
    nn::Mat cropped(full.rows - 1, full.cols);
    for (int i = 0; i < cropped.rows; i++)
      for (int c = 0; c < cropped.cols; c++) cropped.At(i, c) = full.At(i, c);
    worst = std::max(worst, std::abs(clf.Classify(full) - clf.Classify(cropped)));
  }
  CHECK(worst < 0.05);
}

TEST_CASE("classifier training rejects single-style manifests") {
  const Fixture &fx = SharedFixture();
  Manifest lombard_only;
  for (const auto &r : fx.manifest.records)
    if (r.style == kStyleLombard) lombard_only.records.push_back(r);
  lombard_only.RebuildIndex();
  StyleClassifier clf(ClassifierConfig{});
  Config cfg = fx.cfg;
  CHECK_THROWS_AS(TrainStyleClassifier(lombard_only, cfg, &clf), InvalidInput);
}

TEST_CASE("vc training contract errors surface before any optimization") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  cfg.Set("train.vc_steps", "5");

  // style loss flag and classifier presence must agree
  cfg.Set("train.style_loss", "on");
  CHECK_THROWS_AS(TrainVcModel(fx.manifest, fx.feats_dir, cfg, nullptr), InvalidInput);
  cfg.Set("train.style_loss", "off");
  StyleClassifier clf(ClassifierConfig{});
  CHECK_THROWS_AS(TrainVcModel(fx.manifest, fx.feats_dir, cfg, &clf), InvalidInput);

  // conditioning mode without dumps: features directory lacks .feat files
  const auto empty_feats = (Work() / "empty_feats").string();
  fs::create_directories(empty_feats);
  fs::copy_file(fs::path(fx.feats_dir) / "embeddings.tsv",
                fs::path(empty_feats) / "embeddings.tsv",
                fs::copy_options::overwrite_existing);
  cfg.Set("train.conditioning", "f0mgc");
  CHECK_THROWS_AS(TrainVcModel(fx.manifest, empty_feats, cfg, nullptr), DataError);
}

TEST_CASE("short vc training run: logging schema and determinism") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  cfg.Set("train.vc_steps", "8");
  cfg.Set("train.joint_steps", "4");
  cfg.Set("train.batch_size", "4");
  cfg.Set("train.conditioning", "mgc");

  VcTrainResult base = TrainVcModel(fx.manifest, fx.feats_dir, cfg, nullptr);
  CHECK(base.log.size() == 8);
  for (const auto &row : base.log) CHECK(!row.l_s.has_value());

  VcTrainResult again = TrainVcModel(fx.manifest, fx.feats_dir, cfg, nullptr);
  CHECK(base.model->Params().ContentHash() == again.model->Params().ContentHash());

  // style run: l_s appears only after the vc stage, classifier stays frozen
  Config style_cfg = cfg;
  style_cfg.Set("train.style_loss", "on");
  StyleClassifier clf(ClassifierConfig{80, 32, 5, 2});
  {
    Rng r(4);
    for (double &v : clf.Params().Get("clf.out.w").value.v) v = r.Uniform(-0.2, 0.2);
  }
  VcTrainResult style = TrainVcModel(fx.manifest, fx.feats_dir, style_cfg, &clf);
  CHECK(style.log.size() == 12);
  CHECK(!style.log[7].l_s.has_value());
  CHECK(style.log[8].l_s.has_value());
  CHECK(style.classifier_hash_before == style.classifier_hash_after);

  // log file schema
  const auto base_log = (Work() / "base.log.tsv").string();
  const auto style_log = (Work() / "style.log.tsv").string();
  WriteStepLog(base_log, base.log, false);
  WriteStepLog(style_log, style.log, true);
  CHECK(FileBytes(base_log).rfind("step\tl_rec\tl_kl\ttotal\n", 0) == 0);
  CHECK(FileBytes(style_log).rfind("step\tl_rec\tl_kl\tl_s\ttotal\n", 0) == 0);
}

TEST_CASE("conversion writes one wav per source and is byte-deterministic") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  cfg.Set("train.vc_steps", "6");
  cfg.Set("train.batch_size", "4");
  cfg.Set("gl.iterations", "8");

  VcTrainResult r = TrainVcModel(fx.manifest, fx.feats_dir, cfg, nullptr);
  const auto ckpt = (Work() / "m.ckpt").string();
  CheckpointMeta meta;
  meta.kind = 0;
  meta.config_hash = cfg.Hash();
  meta.step = r.log.size();
  meta.conditioning = "none";
  meta.vocab = r.vocab.Symbols();
  SaveCheckpoint(ckpt, meta, r.model->Params());

  Manifest sources;
  for (const auto &rec : fx.manifest.records)
    if (rec.speaker_id == "sp01" && rec.style == kStyleLombard)
      sources.records.push_back(rec);
  sources.RebuildIndex();

  ConversionJob job;
  job.checkpoint_path = ckpt;
  job.features_dir = fx.feats_dir;
  job.target_speaker = "sp03";
  job.out_dir = (Work() / "conv_a").string();
  RunConversion(sources, job, cfg);

  for (const auto &rec : sources.records) {
    const fs::path wav = fs::path(job.out_dir) / (rec.utt_id + "__to__sp03.wav");
    CHECK(fs::exists(wav));
    // duration within one frame shift of the source
    Waveform out = ReadWav(wav.string());
    Waveform src = ReadWav(rec.wav_path);
    CHECK(std::abs(out.Size() - src.Size()) <= 200);
  }

  ConversionJob job_b = job;
  job_b.out_dir = (Work() / "conv_b").string();
  RunConversion(sources, job_b, cfg);
  for (const auto &rec : sources.records) {
    const std::string name = rec.utt_id + "__to__sp03.wav";
    CHECK(FileBytes(fs::path(job.out_dir) / name) ==
          FileBytes(fs::path(job_b.out_dir) / name));
  }

  // unknown target speaker
  ConversionJob bad = job;
  bad.target_speaker = "sp99";
  bad.out_dir = (Work() / "conv_bad").string();
  CHECK_THROWS_AS(RunConversion(sources, bad, cfg), DataError);
}

TEST_CASE("run_eval: report determinism, ordering, and input checks") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  const std::string manifest_path = (Work() / "corpus" / "manifest.tsv").string();

  std::vector<SystemSpec> systems = {
      {"lombard", manifest_path + "#lombard"},
      {"neutral", manifest_path + "#neutral"},
  };
  ExperimentReport rep = RunEval(manifest_path, systems, {-1.0, -3.0}, 5, cfg, false);
  REQUIRE(rep.rows.size() == 4);
  // sorted by (system, snr ascending)
  CHECK(rep.rows[0].system == "lombard");
  CHECK(rep.rows[0].snr_db == -3.0);
  CHECK(rep.rows[1].snr_db == -1.0);
  CHECK(rep.rows[2].system == "neutral");
  for (const auto &row : rep.rows) CHECK(row.n == 9);

  const auto tsv_a = (Work() / "rep_a.tsv").string();
  const auto tsv_b = (Work() / "rep_b.tsv").string();
  WriteReportTsv(tsv_a, rep);
  ExperimentReport rep2 = RunEval(manifest_path, systems, {-1.0, -3.0}, 5, cfg, false);
  WriteReportTsv(tsv_b, rep2);
  CHECK(FileBytes(tsv_a) == FileBytes(tsv_b));

  const std::string table = FormatReportTable(rep);
  CHECK(table.find("SNR -3") != std::string::npos);
  CHECK(table.find("(") != std::string::npos);

  // id mismatch: system with utterances missing from the clean set
  std::vector<SystemSpec> bad = {{"lombard", manifest_path + "#lombard"}};
  CHECK_THROWS_AS(RunEval(manifest_path + "#neutral", bad, {-1.0}, 5, cfg, false),
                  DataError);
}

TEST_CASE("run_eval refuses mixed config hashes unless forced") {
  const Fixture &fx = SharedFixture();
  Config cfg = fx.cfg;
  const std::string manifest_path = (Work() / "corpus" / "manifest.tsv").string();

  // an enhanced dir carries the hash of the config that produced it
  const auto enh_dir = (Work() / "enh").string();
  RunEnhance(manifest_path + "#neutral", enh_dir, cfg);

  Config other = cfg;
  other.Set("ss.beta", "0.21");
  std::vector<SystemSpec> systems = {{"ssdrc", enh_dir}};
  CHECK_THROWS_AS(RunEval(manifest_path, systems, {-1.0}, 5, other, false), DataError);
  // force overrides
  ExperimentReport rep = RunEval(manifest_path, systems, {-1.0}, 5, other, true);
  CHECK(rep.rows.size() == 1);
}
