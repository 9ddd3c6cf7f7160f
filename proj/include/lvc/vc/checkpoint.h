// lvc/vc/checkpoint.h

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

#ifndef LVC_VC_CHECKPOINT_H_
#define LVC_VC_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lvc/nn/param_store.h"

namespace lvc {

// Versioned archive of named float32 parameter arrays plus the run metadata
// needed to reload the exact model: config hash, step count, conditioning
// mode, style-loss flag and (for conversion models) the phoneme vocabulary.
struct CheckpointMeta {
  uint8_t kind = 0;  // 0 = conversion model, 1 = style classifier
  uint64_t config_hash = 0;
  uint64_t step = 0;
  std::string conditioning = "none";
  bool style_loss = false;
  std::vector<std::string> vocab;
};

void SaveCheckpoint(const std::string &path, const CheckpointMeta &meta,
                    const nn::ParamStore &params);

// Loads metadata and fills `params`: existing entries must match shapes;
// missing entries are created.
CheckpointMeta LoadCheckpoint(const std::string &path, nn::ParamStore *params);

// Metadata only (no parameter payload decoding).
CheckpointMeta PeekCheckpoint(const std::string &path);

}  // namespace lvc

#endif  // LVC_VC_CHECKPOINT_H_
