// lvc/vc/model.cc

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

#include "lvc/vc/model.h"

#include <algorithm>
#include <cmath>

#include "lvc/common.h"

namespace lvc {

int CondChannels(ConditioningMode mode) {
  switch (mode) {
    case ConditioningMode::kNone: return 0;
    case ConditioningMode::kF0: return 2;
    case ConditioningMode::kMgc: return 2;
    case ConditioningMode::kF0Mgc: return 4;
  }
  return 0;
}

std::string ConditioningModeName(ConditioningMode mode) {
  switch (mode) {
    case ConditioningMode::kNone: return "none";
    case ConditioningMode::kF0: return "f0";
    case ConditioningMode::kMgc: return "mgc";
    case ConditioningMode::kF0Mgc: return "f0mgc";
  }
  return "none";
}

ConditioningMode ParseConditioningMode(const std::string &name) {
  if (name == "none") return ConditioningMode::kNone;
  if (name == "f0") return ConditioningMode::kF0;
  if (name == "mgc") return ConditioningMode::kMgc;
  if (name == "f0mgc") return ConditioningMode::kF0Mgc;
  throw InvalidInput("unknown conditioning mode: " + name);
}

nn::Mat SelectConditioning(const AcousticFrameFeatures &f, ConditioningMode mode) {
  const int c = CondChannels(mode);
  nn::Mat out(f.frames, c);
  if (c == 0) return out;
  for (int t = 0; t < f.frames; t++) {
    int col = 0;
    if (mode == ConditioningMode::kF0 || mode == ConditioningMode::kF0Mgc) {
      out.At(t, col++) = f.logf0[t];
      out.At(t, col++) = f.voicing[t];
    }
    if (mode == ConditioningMode::kMgc || mode == ConditioningMode::kF0Mgc) {
      out.At(t, col++) = f.mgc0[t];
      out.At(t, col++) = f.mgc1[t];
    }
  }
  return out;
}

double L1ReconstructionLoss(const nn::Mat &pred, const nn::Mat &target) {
  if (!pred.SameShape(target))
    throw InvalidInput("l1_reconstruction_loss: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < pred.Size(); i++) acc += std::abs(pred.v[i] - target.v[i]);
  return acc / pred.Size();
}

double KlLossValue(const nn::Mat &mu, const nn::Mat &logvar) {
  if (!mu.SameShape(logvar)) throw InvalidInput("kl_loss: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < mu.Size(); i++) {
    if (!std::isfinite(mu.v[i]) || !std::isfinite(logvar.v[i]))
      throw InvalidInput("kl_loss: non-finite input");
    acc += 0.5 * (mu.v[i] * mu.v[i] + std::exp(logvar.v[i]) - 1.0 - logvar.v[i]);
  }
  return acc / mu.Size();
}

double StyleReconstructionLoss(double p_lombard, bool lombard_label) {
  const double p = std::clamp(p_lombard, 1e-7, 1.0 - 1e-7);
  const double y = lombard_label ? 1.0 : 0.0;
  return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

namespace {

void UniformInit(nn::Mat *m, double scale, Rng *rng) {
  for (double &v : m->v) v = rng->Uniform(-scale, scale);
}

}  // namespace

VcModel::VcModel(const VcModelConfig &cfg) : cfg_(cfg) {
  if (cfg.vocab_size < 1) throw InvalidInput("VcModel: vocab_size must be >= 1");
  Rng rng(Fnv1a("vc_model", cfg.seed));

  auto dense = [&](const std::string &name, int rows, int cols, int fan_in) {
    nn::Param &p = params_.Create(name, rows, cols);
    UniformInit(&p.value, std::sqrt(1.0 / fan_in), &rng);
    return &p;
  };

  dense("phone.embed", cfg.vocab_size, cfg.phone_embed_dim, cfg.phone_embed_dim);
  dense("phone.conv.w", cfg.phone_ctx_dim, cfg.phone_embed_dim * 3, cfg.phone_embed_dim * 3);
  params_.Create("phone.conv.b", 1, cfg.phone_ctx_dim);

  const int ref_in = cfg.mel_bins + cfg.spk_dim;
  dense("refenc.conv1.w", cfg.refenc_dim, ref_in * 3, ref_in * 3);
  params_.Create("refenc.conv1.b", 1, cfg.refenc_dim);
  dense("refenc.conv2.w", cfg.refenc_dim, cfg.refenc_dim * 3, cfg.refenc_dim * 3);
  params_.Create("refenc.conv2.b", 1, cfg.refenc_dim);
  dense("refenc.conv3.w", cfg.refenc_dim, cfg.refenc_dim * 3, cfg.refenc_dim * 3);
  params_.Create("refenc.conv3.b", 1, cfg.refenc_dim);
  dense("refenc.proj.w", cfg.refenc_dim, 2 * cfg.latent_dim, cfg.refenc_dim);
  params_.Create("refenc.proj.b", 1, 2 * cfg.latent_dim);

  const int phone_out = cfg.phone_ctx_dim + cfg.spk_dim;
  const int dec_in = phone_out + cfg.latent_dim + cfg.spk_dim + CondChannels(cfg.mode);
  dense("dec.proj.w", dec_in, cfg.dec_dim, dec_in);
  params_.Create("dec.proj.b", 1, cfg.dec_dim);
  dense("dec.conv.w", cfg.dec_dim, cfg.dec_dim * 3, cfg.dec_dim * 3);
  params_.Create("dec.conv.b", 1, cfg.dec_dim);
  dense("dec.out.w", cfg.dec_dim, cfg.mel_bins, cfg.dec_dim);
  params_.Create("dec.out.b", 1, cfg.mel_bins);

  // Per-bin mel statistics: the network reads and writes normalized mels,
  // with this fixed affine layer mapping to the raw log-mel domain.  Filled
  // from the training corpus by SetMelNorm, stored with the checkpoint,
  // never touched by the optimizer (they enter graphs as plain leaves).
  params_.Create("mel_norm.mean", 1, cfg.mel_bins);
  nn::Param &std_p = params_.Create("mel_norm.std", 1, cfg.mel_bins);
  for (double &v : std_p.value.v) v = 1.0;
}

void VcModel::SetMelNorm(const nn::Mat &mean, const nn::Mat &stddev) {
  if (mean.cols != cfg_.mel_bins || stddev.cols != cfg_.mel_bins ||
      mean.rows != 1 || stddev.rows != 1)
    throw InvalidInput("SetMelNorm: stats must be 1 x mel_bins");
  params_.Get("mel_norm.mean").value = mean;
  nn::Param &std_p = params_.Get("mel_norm.std");
  std_p.value = stddev;
  for (double &v : std_p.value.v) v = std::max(v, 1e-3);
}

int VcModel::SpkRows(nn::Tape *t, const SpeakerEmbedding &spk, int rows) {
  if (static_cast<int>(spk.vec.size()) != cfg_.spk_dim)
    throw InvalidInput("VcModel: speaker embedding dimension mismatch");
  nn::Mat row(1, cfg_.spk_dim);
  for (int c = 0; c < cfg_.spk_dim; c++) row.At(0, c) = spk.vec[c];
  return t->BroadcastRow(t->Leaf(std::move(row)), rows);
}

int VcModel::NormalizeMel(nn::Tape *t, int mel_node) {
  const nn::Mat &mean = params_.Get("mel_norm.mean").value;
  const nn::Mat &stddev = params_.Get("mel_norm.std").value;
  nn::Mat neg_mean(1, cfg_.mel_bins), inv_std(1, cfg_.mel_bins);
  for (int c = 0; c < cfg_.mel_bins; c++) {
    neg_mean.At(0, c) = -mean.At(0, c);
    inv_std.At(0, c) = 1.0 / stddev.At(0, c);
  }
  int h = t->AddRowBias(mel_node, t->Leaf(std::move(neg_mean)));
  return t->MulRowBroadcast(h, t->Leaf(std::move(inv_std)));
}

void VcModel::BuildReferenceEncoder(nn::Tape *t, int mel_node, int spk_rows_node,
                                    int *mu_node, int *logvar_node) {
  auto leaf = [&](const std::string &n) { return t->ParamLeaf(&params_.Get(n)); };
  int h = t->ConcatCols({NormalizeMel(t, mel_node), spk_rows_node});
  h = t->Tanh(t->Conv1d(h, leaf("refenc.conv1.w"), leaf("refenc.conv1.b"), 3, 2, 1));
  h = t->Tanh(t->Conv1d(h, leaf("refenc.conv2.w"), leaf("refenc.conv2.b"), 3, 2, 1));
  h = t->Tanh(t->Conv1d(h, leaf("refenc.conv3.w"), leaf("refenc.conv3.b"), 3, 2, 1));
  h = t->AddRowBias(t->Matmul(h, leaf("refenc.proj.w")), leaf("refenc.proj.b"));
  *mu_node = t->SliceCols(h, 0, cfg_.latent_dim);
  *logvar_node = t->SliceCols(h, cfg_.latent_dim, 2 * cfg_.latent_dim);
}

int VcModel::BuildPhonemeEncoder(nn::Tape *t, const std::vector<int> &phoneme_ids,
                                 int spk_rows_node) {
  auto leaf = [&](const std::string &n) { return t->ParamLeaf(&params_.Get(n)); };
  int h = t->LookupRows(&params_.Get("phone.embed"), phoneme_ids);
  h = t->Tanh(t->Conv1d(h, leaf("phone.conv.w"), leaf("phone.conv.b"), 3, 1, 1));
  return t->ConcatCols({h, spk_rows_node});
}

int VcModel::BuildDecoder(nn::Tape *t, int phone_node, int latent_node,
                          int spk_rows_node, const nn::Mat *cond) {
  auto leaf = [&](const std::string &n) { return t->ParamLeaf(&params_.Get(n)); };
  const int frames = t->Rows(phone_node);
  const int latent_up = t->UpsampleRows(latent_node, cfg_.downsample, frames);

  std::vector<int> parts = {phone_node, latent_up, spk_rows_node};
  if (CondChannels(cfg_.mode) > 0) {
    if (cond == nullptr)
      throw InvalidInput("decode: conditioning required for mode " +
                         ConditioningModeName(cfg_.mode));
    if (cond->rows != frames || cond->cols != CondChannels(cfg_.mode))
      throw InvalidInput("decode: conditioning shape mismatch");
    parts.push_back(t->Leaf(*cond));
  } else if (cond != nullptr && cond->cols != 0) {
    throw InvalidInput("decode: conditioning passed but mode is none");
  }

  int h = t->ConcatCols(parts);
  h = t->Tanh(t->AddRowBias(t->Matmul(h, leaf("dec.proj.w")), leaf("dec.proj.b")));
  h = t->Tanh(t->Conv1d(h, leaf("dec.conv.w"), leaf("dec.conv.b"), 3, 1, 1));
  h = t->AddRowBias(t->Matmul(h, leaf("dec.out.w")), leaf("dec.out.b"));
  // fixed de-normalization back to the raw log-mel domain
  h = t->MulRowBroadcast(h, t->Leaf(params_.Get("mel_norm.std").value));
  return t->AddRowBias(h, t->Leaf(params_.Get("mel_norm.mean").value));
}

namespace {

nn::Mat PadRowsReflect(const nn::Mat &m, int min_rows) {
  if (m.rows >= min_rows) return m;
  nn::Mat out(min_rows, m.cols);
  for (int r = 0; r < min_rows; r++) {
    int src = r;
    // bounce off the end until inside
    while (src >= m.rows) src = 2 * m.rows - 2 - src >= 0 ? 2 * m.rows - 2 - src : 0;
    for (int c = 0; c < m.cols; c++) out.At(r, c) = m.At(src, c);
  }
  return out;
}

}  // namespace

LatentSeq VcModel::EncodeReference(const nn::Mat &mel, const SpeakerEmbedding &spk,
                                   bool sample, Rng *eps_rng) {
  if (mel.cols != cfg_.mel_bins)
    throw InvalidInput("encode_reference: mel bin count mismatch");
  nn::Mat padded = PadRowsReflect(mel, cfg_.downsample);
  nn::Tape t;
  const int mel_node = t.Leaf(padded);
  const int spk_rows = SpkRows(&t, spk, padded.rows);
  int mu_node = 0, logvar_node = 0;
  BuildReferenceEncoder(&t, mel_node, spk_rows, &mu_node, &logvar_node);

  LatentSeq out;
  out.mu = t.Value(mu_node);
  out.logvar = t.Value(logvar_node);
  if (sample) {
    if (eps_rng == nullptr)
      throw InvalidInput("encode_reference: sampling requires an RNG");
    out.sample = out.mu;
    for (size_t i = 0; i < out.sample.Size(); i++)
      out.sample.v[i] += std::exp(0.5 * out.logvar.v[i]) * eps_rng->Gaussian();
  } else {
    out.sample = out.mu;
  }
  return out;
}

nn::Mat VcModel::EncodePhonemes(const std::vector<int> &phoneme_ids,
                                const SpeakerEmbedding &spk) {
  if (phoneme_ids.empty()) throw InvalidInput("encode_phonemes: empty sequence");
  nn::Tape t;
  const int spk_rows = SpkRows(&t, spk, static_cast<int>(phoneme_ids.size()));
  return t.Value(BuildPhonemeEncoder(&t, phoneme_ids, spk_rows));
}

nn::Mat VcModel::Decode(const nn::Mat &phone_enc, const nn::Mat &latent_sample,
                        const SpeakerEmbedding &spk, const nn::Mat *cond) {
  nn::Tape t;
  const int phone_node = t.Leaf(phone_enc);
  const int latent_node = t.Leaf(latent_sample);
  const int spk_rows = SpkRows(&t, spk, phone_enc.rows);
  return t.Value(BuildDecoder(&t, phone_node, latent_node, spk_rows, cond));
}

nn::Mat VcModel::Convert(const std::vector<int> &source_phoneme_ids,
                         const nn::Mat &source_mel,
                         const SpeakerEmbedding &source_spk,
                         const SpeakerEmbedding &target_spk, const nn::Mat *cond) {
  if (static_cast<int>(source_phoneme_ids.size()) != source_mel.rows)
    throw InvalidInput("convert: phoneme/mel frame mismatch");
  LatentSeq latent = EncodeReference(source_mel, source_spk, /*sample=*/false, nullptr);
  nn::Mat phone_enc = EncodePhonemes(source_phoneme_ids, target_spk);
  return Decode(phone_enc, latent.mu, target_spk, cond);
}

ReconstructionGraph BuildReconstructionGraph(nn::Tape *t, VcModel *model,
                                             StyleClassifier *clf_or_null,
                                             const nn::Mat &mel,
                                             const std::vector<int> &phoneme_ids,
                                             const SpeakerEmbedding &spk,
                                             const nn::Mat *cond, bool lombard_label,
                                             double beta_kl, double lambda_s,
                                             Rng *eps_rng) {
  if (static_cast<int>(phoneme_ids.size()) != mel.rows)
    throw InvalidInput("forward_reconstruct: phoneme/mel frame mismatch");

  const int mel_node = t->Leaf(mel);
  const int spk_rows = [&] {
    nn::Mat row(1, static_cast<int>(spk.vec.size()));
    for (size_t c = 0; c < spk.vec.size(); c++) row.At(0, (int)c) = spk.vec[c];
    return t->BroadcastRow(t->Leaf(std::move(row)), mel.rows);
  }();

  int mu_node = 0, logvar_node = 0;
  model->BuildReferenceEncoder(t, mel_node, spk_rows, &mu_node, &logvar_node);

  int latent_node;
  if (eps_rng != nullptr) {
    nn::Mat eps(t->Rows(mu_node), t->Cols(mu_node));
    for (double &v : eps.v) v = eps_rng->Gaussian();
    latent_node = t->Reparameterize(mu_node, logvar_node, eps);
  } else {
    latent_node = mu_node;
  }

  const int phone_node = model->BuildPhonemeEncoder(t, phoneme_ids, spk_rows);
  const int pred_node = model->BuildDecoder(t, phone_node, latent_node, spk_rows, cond);

  ReconstructionGraph g;
  g.pred_node = pred_node;
  g.l_rec_node = t->L1Loss(pred_node, mel);
  g.l_kl_node = t->KlLoss(mu_node, logvar_node);
  std::vector<std::pair<int, double>> terms = {{g.l_rec_node, 1.0},
                                               {g.l_kl_node, beta_kl}};
  if (clf_or_null != nullptr) {
    const int p = clf_or_null->BuildGraph(t, pred_node, /*frozen=*/true);
    g.l_s_node = t->BceLoss(p, lombard_label ? 1.0 : 0.0);
    terms.push_back({g.l_s_node, lambda_s});
  }
  g.total_node = t->WeightedSum(terms);
  return g;
}

ForwardResult ForwardReconstruct(VcModel *model, StyleClassifier *clf_or_null,
                                 const nn::Mat &mel,
                                 const std::vector<int> &phoneme_ids,
                                 const SpeakerEmbedding &spk, const nn::Mat *cond,
                                 bool lombard_label, double beta_kl,
                                 double lambda_s, Rng *eps_rng) {
  nn::Tape t;
  ReconstructionGraph g =
      BuildReconstructionGraph(&t, model, clf_or_null, mel, phoneme_ids, spk, cond,
                               lombard_label, beta_kl, lambda_s, eps_rng);
  ForwardResult r;
  r.pred_mel = t.Value(g.pred_node);
  r.losses.l_rec = t.Value(g.l_rec_node).At(0, 0);
  r.losses.l_kl = t.Value(g.l_kl_node).At(0, 0);
  if (g.l_s_node >= 0) r.losses.l_s = t.Value(g.l_s_node).At(0, 0);
  r.losses.beta_kl = beta_kl;
  r.losses.lambda_s = lambda_s;
  return r;
}

}  // namespace lvc
