// lvc/pipeline/train.cc

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

#include "lvc/pipeline/train.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "lvc/audio/waveform.h"
#include "lvc/common.h"
#include "lvc/pipeline/features.h"

namespace fs = std::filesystem;

namespace lvc {

void WriteStepLog(const std::string &path, const std::vector<StepLogRow> &log,
                  bool with_style_column) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write step log: " + path);
  out.precision(10);
  out << "step\tl_rec\tl_kl" << (with_style_column ? "\tl_s" : "") << "\ttotal\n";
  for (const auto &row : log) {
    out << row.step << '\t' << row.l_rec << '\t' << row.l_kl;
    if (with_style_column) out << '\t' << (row.l_s ? *row.l_s : 0.0);
    out << '\t' << row.total << '\n';
  }
}

void SplitHoldout(const Manifest &m, double fraction, std::vector<int> *train_idx,
                  std::vector<int> *holdout_idx) {
  train_idx->clear();
  holdout_idx->clear();
  // group indices by (speaker, style), sorted by utt_id inside the group
  std::map<std::pair<std::string, std::string>, std::vector<int>> groups;
  for (int i = 0; i < m.Size(); i++)
    groups[{m.records[i].speaker_id, m.records[i].style}].push_back(i);
  for (auto &[key, idx] : groups) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return m.records[a].utt_id < m.records[b].utt_id;
    });
    const int n = static_cast<int>(idx.size());
    const int n_hold = std::max(1, static_cast<int>(std::lround(fraction * n)));
    for (int i = 0; i < n; i++)
      (i < n - n_hold ? train_idx : holdout_idx)->push_back(idx[i]);
  }
  if (train_idx->empty())
    throw InvalidInput("holdout split left no training utterances");
}

namespace {

struct UtteranceTensors {
  nn::Mat mel;
  std::vector<int> phone_ids;
  nn::Mat cond;  // selected channels, possibly 0 columns
  bool lombard = false;
  std::string speaker_id;
};

// Random training crop applied consistently to mel, phonemes and cond.
UtteranceTensors Crop(const UtteranceTensors &u, int crop_frames, Rng *rng) {
  const int t = u.mel.rows;
  if (t <= crop_frames) return u;
  const int start = static_cast<int>(rng->Bounded(t - crop_frames + 1));
  UtteranceTensors out;
  out.lombard = u.lombard;
  out.speaker_id = u.speaker_id;
  out.mel = nn::Mat(crop_frames, u.mel.cols);
  for (int r = 0; r < crop_frames; r++)
    for (int c = 0; c < u.mel.cols; c++) out.mel.At(r, c) = u.mel.At(start + r, c);
  out.phone_ids.assign(u.phone_ids.begin() + start,
                       u.phone_ids.begin() + start + crop_frames);
  out.cond = nn::Mat(crop_frames, u.cond.cols);
  for (int r = 0; r < crop_frames; r++)
    for (int c = 0; c < u.cond.cols; c++) out.cond.At(r, c) = u.cond.At(start + r, c);
  return out;
}

std::vector<nn::Mat> LoadMels(const Manifest &m, const AnalysisConfig &acfg) {
  std::vector<nn::Mat> mels(m.Size());
  for (int i = 0; i < m.Size(); i++)
    mels[i] = MelToMat(ComputeMelSpectrogram(ReadWav(m.records[i].wav_path), acfg));
  return mels;
}

}  // namespace

ClassifierTrainResult TrainStyleClassifier(const Manifest &manifest,
                                           const Config &cfg,
                                           StyleClassifier *clf) {
  const TrainingConfig tc = cfg.Training();
  if (manifest.RecordsOfStyle(kStyleLombard).empty() ||
      manifest.RecordsOfStyle(kStyleNeutral).empty())
    throw InvalidInput("train_style_classifier: manifest must contain both styles");

  std::vector<nn::Mat> mels = LoadMels(manifest, cfg.Analysis());
  std::vector<int> train_idx, holdout_idx;
  SplitHoldout(manifest, tc.holdout_fraction, &train_idx, &holdout_idx);

  nn::AdamOptimizer adam(nn::AdamConfig{tc.learning_rate});
  Rng rng(Fnv1a("classifier_batches", tc.seed));
  ClassifierTrainResult res;
  clf->Params().ZeroGrad();

  for (int step = 1; step <= tc.classifier_steps; step++) {
    double loss_acc = 0.0;
    for (int b = 0; b < tc.batch_size; b++) {
      const int idx = train_idx[rng.Bounded(train_idx.size())];
      const nn::Mat &mel = mels[idx];
      nn::Mat crop = mel;
      if (mel.rows > tc.crop_frames) {
        const int start = static_cast<int>(rng.Bounded(mel.rows - tc.crop_frames + 1));
        crop = nn::Mat(tc.crop_frames, mel.cols);
        for (int r = 0; r < tc.crop_frames; r++)
          for (int c = 0; c < mel.cols; c++) crop.At(r, c) = mel.At(start + r, c);
      }
      nn::Tape tape;
      const int p = clf->BuildGraph(&tape, tape.Leaf(crop), /*frozen=*/false);
      const int bce = tape.BceLoss(
          p, manifest.records[idx].style == kStyleLombard ? 1.0 : 0.0);
      const int scaled = tape.WeightedSum({{bce, 1.0 / tc.batch_size}});
      tape.Backward(scaled);
      loss_acc += tape.Value(bce).At(0, 0);
    }
    adam.Step(&clf->Params());
    StepLogRow row;
    row.step = step;
    row.l_rec = 0.0;
    row.l_kl = 0.0;
    row.l_s = loss_acc / tc.batch_size;
    row.total = *row.l_s;
    res.log.push_back(row);
  }

  int correct = 0;
  for (int idx : holdout_idx) {
    const double p = clf->Classify(mels[idx]);
    const bool is_lombard = manifest.records[idx].style == kStyleLombard;
    correct += (p > 0.5) == is_lombard;
  }
  res.holdout_n = static_cast<int>(holdout_idx.size());
  res.holdout_accuracy =
      holdout_idx.empty() ? 0.0 : static_cast<double>(correct) / res.holdout_n;
  return res;
}

VcTrainResult TrainVcModel(const Manifest &manifest, const std::string &features_dir,
                           const Config &cfg, StyleClassifier *clf_or_null) {
  const TrainingConfig tc = cfg.Training();
  const AnalysisConfig acfg = cfg.Analysis();
  if (tc.style_loss && clf_or_null == nullptr)
    throw InvalidInput("train: style loss requested but no classifier given");
  if (!tc.style_loss && clf_or_null != nullptr)
    throw InvalidInput("train: classifier given but style loss is off");

  // Vocabulary from the training alignments.
  std::vector<PhonemeAlignment> alignments;
  for (const auto &r : manifest.records)
    alignments.push_back(LoadAlignment(r.alignment_path));
  PhonemeVocab vocab = PhonemeVocab::FromAlignments(alignments);

  // Speaker embeddings from the extract stage.
  const std::string emb_path = (fs::path(features_dir) / "embeddings.tsv").string();
  std::map<std::string, SpeakerEmbedding> embeddings = ReadEmbeddingsTsv(emb_path);
  for (const auto &[spk, _] : manifest.speaker_index)
    if (embeddings.find(spk) == embeddings.end())
      throw DataError("train: no embedding for speaker " + spk + " in " + emb_path);

  // Validate the conditioning dumps up front, before any optimization.
  const bool needs_cond = tc.mode != ConditioningMode::kNone;
  if (needs_cond) {
    for (const auto &r : manifest.records) {
      const fs::path p = fs::path(features_dir) / (r.utt_id + ".feat");
      if (!fs::exists(p))
        throw DataError("train: conditioning mode '" +
                        ConditioningModeName(tc.mode) +
                        "' needs features, missing " + p.string());
    }
  }

  // Materialize training tensors.
  std::vector<UtteranceTensors> data(manifest.Size());
  for (int i = 0; i < manifest.Size(); i++) {
    const auto &r = manifest.records[i];
    MelSpectrogram mel = ComputeMelSpectrogram(ReadWav(r.wav_path), acfg);
    data[i].mel = MelToMat(mel);
    data[i].phone_ids = ToIds(
        UpsamplePhonemes(alignments[i], acfg.frame_shift_ms, mel.frames), vocab);
    if (needs_cond) {
      AcousticFrameFeatures f =
          ReadFeatures((fs::path(features_dir) / (r.utt_id + ".feat")).string());
      if (f.frames != mel.frames)
        throw DataError("train: feature/mel frame mismatch for " + r.utt_id);
      data[i].cond = SelectConditioning(f, tc.mode);
    } else {
      data[i].cond = nn::Mat(mel.frames, 0);
    }
    data[i].lombard = r.style == kStyleLombard;
    data[i].speaker_id = r.speaker_id;
  }

  VcModelConfig mcfg;
  mcfg.vocab_size = vocab.Size();
  mcfg.mode = tc.mode;
  mcfg.seed = tc.seed;
  VcTrainResult res;
  res.model = std::make_unique<VcModel>(mcfg);
  res.vocab = vocab;

  // Per-bin mel statistics over the training corpus drive the model's fixed
  // normalization layer.
  {
    nn::Mat mean(1, mcfg.mel_bins), stddev(1, mcfg.mel_bins);
    long frames = 0;
    for (const auto &u : data) frames += u.mel.rows;
    for (const auto &u : data)
      for (int r = 0; r < u.mel.rows; r++)
        for (int c = 0; c < mcfg.mel_bins; c++) mean.At(0, c) += u.mel.At(r, c);
    for (int c = 0; c < mcfg.mel_bins; c++) mean.At(0, c) /= frames;
    for (const auto &u : data)
      for (int r = 0; r < u.mel.rows; r++)
        for (int c = 0; c < mcfg.mel_bins; c++) {
          const double d = u.mel.At(r, c) - mean.At(0, c);
          stddev.At(0, c) += d * d;
        }
    for (int c = 0; c < mcfg.mel_bins; c++)
      stddev.At(0, c) = std::sqrt(stddev.At(0, c) / frames);
    res.model->SetMelNorm(mean, stddev);
  }

  nn::AdamOptimizer adam(nn::AdamConfig{tc.learning_rate});
  Rng batch_rng(Fnv1a("vc_batches", tc.seed));
  Rng eps_rng(Fnv1a("vae_eps", tc.seed));
  res.model->Params().ZeroGrad();

  if (clf_or_null != nullptr)
    res.classifier_hash_before = clf_or_null->Params().ContentHash();

  const int total_steps = tc.vc_steps + (tc.style_loss ? tc.joint_steps : 0);
  for (int step = 1; step <= total_steps; step++) {
    const bool with_style = tc.style_loss && step > tc.vc_steps;
    StepLogRow row;
    row.step = step;
    if (with_style) row.l_s = 0.0;

    for (int b = 0; b < tc.batch_size; b++) {
      const int idx = static_cast<int>(batch_rng.Bounded(data.size()));
      UtteranceTensors u = Crop(data[idx], tc.crop_frames, &batch_rng);
      nn::Tape tape;
      ReconstructionGraph g = BuildReconstructionGraph(
          &tape, res.model.get(), with_style ? clf_or_null : nullptr, u.mel,
          u.phone_ids, embeddings.at(u.speaker_id),
          needs_cond ? &u.cond : nullptr, u.lombard, tc.beta_kl, tc.lambda_s,
          &eps_rng);
      const int scaled = tape.WeightedSum({{g.total_node, 1.0 / tc.batch_size}});
      tape.Backward(scaled);

      row.l_rec += tape.Value(g.l_rec_node).At(0, 0) / tc.batch_size;
      row.l_kl += tape.Value(g.l_kl_node).At(0, 0) / tc.batch_size;
      row.total += tape.Value(g.total_node).At(0, 0) / tc.batch_size;
      if (with_style) *row.l_s += tape.Value(g.l_s_node).At(0, 0) / tc.batch_size;
    }
    adam.Step(&res.model->Params());
    res.log.push_back(row);
  }

  if (clf_or_null != nullptr)
    res.classifier_hash_after = clf_or_null->Params().ContentHash();
  return res;
}

}  // namespace lvc
