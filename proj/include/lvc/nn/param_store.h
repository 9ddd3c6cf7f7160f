// lvc/nn/param_store.h

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

#ifndef LVC_NN_PARAM_STORE_H_
#define LVC_NN_PARAM_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lvc/nn/tensor.h"

namespace lvc {
namespace nn {

struct Param {
  std::string name;
  Mat value;
  Mat grad;
  Mat adam_m;
  Mat adam_v;
};

// Named parameter arrays with deterministic (sorted) iteration order.
class ParamStore {
 public:
  Param &Create(const std::string &name, int rows, int cols);
  Param &Get(const std::string &name);
  const Param &Get(const std::string &name) const;
  bool Has(const std::string &name) const;

  void ZeroGrad();
  std::vector<Param *> All();
  std::vector<const Param *> All() const;

  // Hash of all parameter value bytes, iteration in name order; used to
  // assert that frozen parameters never move.
  uint64_t ContentHash() const;

 private:
  std::map<std::string, Param> params_;
};

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class AdamOptimizer {
 public:
  explicit AdamOptimizer(const AdamConfig &cfg) : cfg_(cfg) {}

  // Applies accumulated gradients to every parameter and zeroes them.
  void Step(ParamStore *params);
  long StepCount() const { return step_; }

 private:
  AdamConfig cfg_;
  long step_ = 0;
};

}  // namespace nn
}  // namespace lvc

#endif  // LVC_NN_PARAM_STORE_H_
