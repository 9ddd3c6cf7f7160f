// tools/lvc_main.cc

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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvc/common.h"
#include "lvc/corpus/toy_corpus.h"
#include "lvc/pipeline/config.h"
#include "lvc/pipeline/eval.h"
#include "lvc/pipeline/features.h"
#include "lvc/pipeline/train.h"
#include "lvc/vc/checkpoint.h"

namespace fs = std::filesystem;
using namespace lvc;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
};

Config LoadConfig(const CommonArgs &common) {
  Config cfg = common.config_path.empty() ? Config()
                                          : Config::FromFile(common.config_path);
  for (const std::string &kv : common.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("--set expects key=value, got: " + kv);
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    auto trim = [](std::string &s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    };
    trim(key);
    trim(value);
    cfg.Set(key, value);
  }
  return cfg;
}

void AddCommon(CLI::App *cmd, CommonArgs *common) {
  cmd->add_option("--config", common->config_path, "key = value config file");
  cmd->add_option("--set", common->overrides,
                  "override a config key, e.g. --set train.seed=3");
}

int Run(int argc, char **argv) {
  CLI::App app{"Lombard-preserving voice conversion toolkit"};
  app.require_subcommand(1);
  CommonArgs common;

  // synth-corpus
  auto *synth = app.add_subcommand("synth-corpus",
                                   "generate the synthetic two-style corpus");
  std::string synth_out;
  synth->add_option("--out", synth_out, "output directory")->required();
  AddCommon(synth, &common);

  // extract
  auto *extract = app.add_subcommand(
      "extract", "frame features, stats and speaker embeddings for a manifest");
  std::string extract_manifest, extract_out;
  extract->add_option("--manifest", extract_manifest)->required();
  extract->add_option("--out", extract_out)->required();
  AddCommon(extract, &common);

  // train-classifier
  auto *trainc = app.add_subcommand("train-classifier",
                                    "stage I: style classifier on oracle mels");
  std::string trainc_manifest, trainc_out;
  trainc->add_option("--manifest", trainc_manifest)->required();
  trainc->add_option("--out", trainc_out, "checkpoint path")->required();
  AddCommon(trainc, &common);

  // train
  auto *train = app.add_subcommand("train", "train the conversion model");
  std::string train_manifest, train_features, train_out, train_clf;
  std::string train_conditioning = "none", train_style = "off";
  train->add_option("--manifest", train_manifest)->required();
  train->add_option("--features", train_features, "extract output directory")
      ->required();
  train->add_option("--out", train_out, "checkpoint path")->required();
  train->add_option("--conditioning", train_conditioning)
      ->check(CLI::IsMember({"none", "f0", "mgc", "f0mgc"}));
  train->add_option("--style-loss", train_style)->check(CLI::IsMember({"on", "off"}));
  train->add_option("--classifier", train_clf, "frozen classifier checkpoint");
  AddCommon(train, &common);

  // convert
  auto *convert = app.add_subcommand("convert", "convert a manifest to a target speaker");
  std::string conv_manifest, conv_features, conv_ckpt, conv_target, conv_out;
  convert->add_option("--manifest", conv_manifest, "source utterances")->required();
  convert->add_option("--features", conv_features)->required();
  convert->add_option("--checkpoint", conv_ckpt)->required();
  convert->add_option("--target", conv_target, "target speaker id")->required();
  convert->add_option("--out", conv_out)->required();
  AddCommon(convert, &common);

  // enhance
  auto *enhance = app.add_subcommand("enhance", "spectral shaping + compression");
  std::string enh_in, enh_out;
  enhance->add_option("--in", enh_in)->required();
  enhance->add_option("--out", enh_out)->required();
  AddCommon(enhance, &common);

  // eval
  auto *eval = app.add_subcommand("eval", "objective intelligibility report");
  std::string eval_clean, eval_out;
  std::vector<std::string> eval_systems;
  std::vector<double> eval_snrs;
  bool eval_force = false;
  eval->add_option("--clean", eval_clean, "clean reference directory")->required();
  eval->add_option("--system", eval_systems, "name=dir (repeatable)")->required();
  eval->add_option("--snr", eval_snrs, "SNR in dB (repeatable)")->required();
  eval->add_option("--out", eval_out, "report TSV path")->required();
  eval->add_flag("--force", eval_force, "ignore config-hash mismatches");
  AddCommon(eval, &common);

  // analyze
  auto *analyze = app.add_subcommand("analyze", "style contrast statistics");
  std::string ana_manifest;
  analyze->add_option("--manifest", ana_manifest)->required();
  AddCommon(analyze, &common);

  CLI11_PARSE(app, argc, argv);
  Config cfg = LoadConfig(common);

  if (synth->parsed()) {
    Manifest m = SynthToyCorpus(synth_out, cfg.Toy());
    std::cout << "wrote " << m.Size() << " utterances under " << synth_out << "\n"
              << "manifest: " << (fs::path(synth_out) / "manifest.tsv").string()
              << "\n";
    return 0;
  }

  if (extract->parsed()) {
    Manifest m = LoadManifest(extract_manifest);
    ExtractionResult r = ExtractFeatures(m, cfg, extract_out);
    std::cout << "extracted features for " << m.Size() << " utterances, "
              << r.embeddings.size() << " speaker embeddings -> " << extract_out
              << "\n";
    return 0;
  }

  if (trainc->parsed()) {
    Manifest m = LoadManifest(trainc_manifest);
    StyleClassifier clf(ClassifierConfig{80, 32, 5, cfg.Training().seed});
    ClassifierTrainResult r = TrainStyleClassifier(m, cfg, &clf);
    CheckpointMeta meta;
    meta.kind = 1;
    meta.config_hash = cfg.Hash();
    meta.step = cfg.Training().classifier_steps;
    SaveCheckpoint(trainc_out, meta, clf.Params());
    WriteStepLog(trainc_out + ".log.tsv", r.log, /*with_style_column=*/true);
    std::printf("classifier: %d steps, held-out accuracy %.1f%% (%d utterances)\n",
                cfg.Training().classifier_steps, 100.0 * r.holdout_accuracy,
                r.holdout_n);
    std::cout << "checkpoint: " << trainc_out << "\n";
    return 0;
  }

  if (train->parsed()) {
    Config train_cfg = cfg;
    train_cfg.Set("train.conditioning", train_conditioning);
    train_cfg.Set("train.style_loss", train_style);
    const TrainingConfig tc = train_cfg.Training();

    Manifest m = LoadManifest(train_manifest);
    std::unique_ptr<StyleClassifier> clf;
    if (tc.style_loss) {
      if (train_clf.empty())
        throw InvalidInput("train: --style-loss on requires --classifier");
      clf = std::make_unique<StyleClassifier>(ClassifierConfig{80, 32, 5, tc.seed});
      CheckpointMeta cm = LoadCheckpoint(train_clf, &clf->Params());
      if (cm.kind != 1)
        throw DataError("train: --classifier is not a classifier checkpoint");
    } else if (!train_clf.empty()) {
      throw InvalidInput("train: --classifier given but style loss is off");
    }

    VcTrainResult r = TrainVcModel(m, train_features, train_cfg, clf.get());
    CheckpointMeta meta;
    meta.kind = 0;
    meta.config_hash = train_cfg.Hash();
    meta.step = r.log.size();
    meta.conditioning = ConditioningModeName(tc.mode);
    meta.style_loss = tc.style_loss;
    meta.vocab = r.vocab.Symbols();
    SaveCheckpoint(train_out, meta, r.model->Params());
    WriteStepLog(train_out + ".log.tsv", r.log, tc.style_loss);

    if (clf) {
      if (r.classifier_hash_before != r.classifier_hash_after)
        throw DataError("train: frozen classifier parameters changed");
      std::cout << "frozen classifier hash unchanged: ok\n";
    }
    std::printf("train: %zu steps, final l_rec %.4f, total %.4f\n", r.log.size(),
                r.log.back().l_rec, r.log.back().total);
    std::cout << "checkpoint: " << train_out << "\n";
    return 0;
  }

  if (convert->parsed()) {
    Manifest m = LoadManifest(conv_manifest);
    ConversionJob job;
    job.checkpoint_path = conv_ckpt;
    job.features_dir = conv_features;
    job.target_speaker = conv_target;
    job.out_dir = conv_out;
    RunConversion(m, job, cfg);
    std::cout << "converted " << m.Size() << " utterances -> " << conv_out << "\n";
    return 0;
  }

  if (enhance->parsed()) {
    RunEnhance(enh_in, enh_out, cfg);
    std::cout << "enhanced wavs -> " << enh_out << "\n";
    return 0;
  }

  if (eval->parsed()) {
    std::vector<SystemSpec> systems;
    for (const std::string &s : eval_systems) {
      const size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw InvalidInput("--system expects name=dir, got: " + s);
      systems.push_back({s.substr(0, eq), s.substr(eq + 1)});
    }
    ExperimentReport report =
        RunEval(eval_clean, systems, eval_snrs, cfg.GetU64("eval.seed"), cfg,
                eval_force);
    WriteReportTsv(eval_out, report);
    WriteReportMeta(eval_out + ".meta.json", report);
    std::cout << FormatReportTable(report) << "report: " << eval_out << "\n";
    return 0;
  }

  if (analyze->parsed()) {
    Manifest m = LoadManifest(ana_manifest);
    LombardStats s = AnalyzeManifest(m, cfg);
    std::printf("style      n    mean_f0   std_f0   mean_mgc0  mean_mgc1\n");
    std::printf("%-9s %4d %9.2f %8.2f %10.3f %10.3f\n", s.style_a.c_str(),
                s.a.n_utterances, s.a.mean_f0, s.a.std_f0, s.a.mean_mgc0,
                s.a.mean_mgc1);
    std::printf("%-9s %4d %9.2f %8.2f %10.3f %10.3f\n", s.style_b.c_str(),
                s.b.n_utterances, s.b.mean_f0, s.b.std_f0, s.b.mean_mgc0,
                s.b.mean_mgc1);
    std::printf("delta (%s - %s): f0 %+.2f Hz, mgc0 %+.3f, mgc1 %+.3f\n",
                s.style_a.c_str(), s.style_b.c_str(), s.delta_mean_f0,
                s.delta_mean_mgc0, s.delta_mean_mgc1);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const InvalidInput &e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return 2;
  } catch (const DataError &e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
