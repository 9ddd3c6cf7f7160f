// lvc/vc/model.h

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

#ifndef LVC_VC_MODEL_H_
#define LVC_VC_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "lvc/common.h"
#include "lvc/feats/conditioning.h"
#include "lvc/nn/tape.h"
#include "lvc/vc/classifier.h"
#include "lvc/vc/embedding.h"

namespace lvc {

enum class ConditioningMode { kNone, kF0, kMgc, kF0Mgc };

int CondChannels(ConditioningMode mode);
std::string ConditioningModeName(ConditioningMode mode);
ConditioningMode ParseConditioningMode(const std::string &name);

// T x c matrix of the conditioning channels selected by the mode (empty for
// kNone).  f0 contributes (logf0, voicing), mgc contributes (mgc0, mgc1).
nn::Mat SelectConditioning(const AcousticFrameFeatures &f, ConditioningMode mode);

struct VcModelConfig {
  int mel_bins = 80;
  int spk_dim = kSpeakerEmbeddingDim;
  int latent_dim = 8;
  int downsample = 8;  // reference-encoder temporal stride (2^3)
  int phone_embed_dim = 64;
  int phone_ctx_dim = 64;
  int refenc_dim = 32;
  int dec_dim = 96;
  int vocab_size = 0;
  ConditioningMode mode = ConditioningMode::kNone;
  uint64_t seed = 1;
};

struct LatentSeq {
  nn::Mat mu;      // ceil(T/8) x latent_dim
  nn::Mat logvar;
  nn::Mat sample;  // mu at inference, mu + sigma*eps in training
};

struct LossBundle {
  double l_rec = 0.0;
  double l_kl = 0.0;
  std::optional<double> l_s;
  double beta_kl = 1e-3;
  double lambda_s = 1.0;
  double Total() const {
    return l_rec + beta_kl * l_kl + (l_s ? lambda_s * *l_s : 0.0);
  }
};

// Loss values as plain functions (the training graph recomputes the same
// quantities on the tape).
double L1ReconstructionLoss(const nn::Mat &pred, const nn::Mat &target);
double KlLossValue(const nn::Mat &mu, const nn::Mat &logvar);
// -[y ln p + (1-y) ln(1-p)] with p clamped to [1e-7, 1-1e-7]; label y = 1
// for Lombard.
double StyleReconstructionLoss(double p_lombard, bool lombard_label);

// Many-to-many conversion network: a variational reference encoder over the
// mel input, a frame-level phoneme encoder, and a convolutional decoder that
// consumes both plus the speaker vector and optional acoustic conditioning.
class VcModel {
 public:
  explicit VcModel(const VcModelConfig &cfg);

  const VcModelConfig &Config() const { return cfg_; }
  nn::ParamStore &Params() { return params_; }
  const nn::ParamStore &Params() const { return params_; }

  // Per-bin mel mean/std (1 x mel_bins each) from the training corpus; the
  // network trains in the normalized domain behind a fixed affine output.
  void SetMelNorm(const nn::Mat &mean, const nn::Mat &stddev);

  // --- graph builders (training path) ---
  // mu/logvar at ceil(T/downsample) rate.
  void BuildReferenceEncoder(nn::Tape *t, int mel_node, int spk_rows_node,
                             int *mu_node, int *logvar_node);
  int BuildPhonemeEncoder(nn::Tape *t, const std::vector<int> &phoneme_ids,
                          int spk_rows_node);
  int BuildDecoder(nn::Tape *t, int phone_node, int latent_node,
                   int spk_rows_node, const nn::Mat *cond);

  // --- eval-path wrappers ---
  // Inputs shorter than the downsample factor are reflection-padded.
  LatentSeq EncodeReference(const nn::Mat &mel, const SpeakerEmbedding &spk,
                            bool sample, Rng *eps_rng);
  nn::Mat EncodePhonemes(const std::vector<int> &phoneme_ids,
                         const SpeakerEmbedding &spk);
  nn::Mat Decode(const nn::Mat &phone_enc, const nn::Mat &latent_sample,
                 const SpeakerEmbedding &spk, const nn::Mat *cond);

  // Full conversion: source content and style, target identity, VAE mean.
  nn::Mat Convert(const std::vector<int> &source_phoneme_ids,
                  const nn::Mat &source_mel, const SpeakerEmbedding &source_spk,
                  const SpeakerEmbedding &target_spk, const nn::Mat *cond);

 private:
  int SpkRows(nn::Tape *t, const SpeakerEmbedding &spk, int rows);
  int NormalizeMel(nn::Tape *t, int mel_node);

  VcModelConfig cfg_;
  nn::ParamStore params_;
};

// Reconstruction pathway: same speaker in and out, losses assembled on the
// caller's tape so a training step can run Backward on total_node.  The
// classifier enters frozen (value leaves); l_s_node is -1 when absent.
struct ReconstructionGraph {
  int pred_node = -1;
  int l_rec_node = -1;
  int l_kl_node = -1;
  int l_s_node = -1;
  int total_node = -1;
};

ReconstructionGraph BuildReconstructionGraph(nn::Tape *t, VcModel *model,
                                             StyleClassifier *clf_or_null,
                                             const nn::Mat &mel,
                                             const std::vector<int> &phoneme_ids,
                                             const SpeakerEmbedding &spk,
                                             const nn::Mat *cond,
                                             bool lombard_label, double beta_kl,
                                             double lambda_s, Rng *eps_rng);

// Value-level wrapper (no gradients); eps_rng == nullptr uses the VAE mean.
struct ForwardResult {
  nn::Mat pred_mel;
  LossBundle losses;
};

ForwardResult ForwardReconstruct(VcModel *model, StyleClassifier *clf_or_null,
                                 const nn::Mat &mel,
                                 const std::vector<int> &phoneme_ids,
                                 const SpeakerEmbedding &spk,
                                 const nn::Mat *cond, bool lombard_label,
                                 double beta_kl, double lambda_s, Rng *eps_rng);

}  // namespace lvc

#endif  // LVC_VC_MODEL_H_
