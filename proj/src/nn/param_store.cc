// lvc/nn/param_store.cc

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

#include "lvc/nn/param_store.h"

#include <cmath>

#include "lvc/common.h"

namespace lvc {
namespace nn {

Param &ParamStore::Create(const std::string &name, int rows, int cols) {
  if (params_.count(name)) throw InvalidInput("ParamStore: duplicate param " + name);
  Param &p = params_[name];
  p.name = name;
  p.value = Mat(rows, cols);
  p.grad = Mat(rows, cols);
  p.adam_m = Mat(rows, cols);
  p.adam_v = Mat(rows, cols);
  return p;
}

Param &ParamStore::Get(const std::string &name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw InvalidInput("ParamStore: unknown param " + name);
  return it->second;
}

const Param &ParamStore::Get(const std::string &name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw InvalidInput("ParamStore: unknown param " + name);
  return it->second;
}

bool ParamStore::Has(const std::string &name) const { return params_.count(name) > 0; }

void ParamStore::ZeroGrad() {
  for (auto &[_, p] : params_)
    std::fill(p.grad.v.begin(), p.grad.v.end(), 0.0);
}

std::vector<Param *> ParamStore::All() {
  std::vector<Param *> out;
  for (auto &[_, p] : params_) out.push_back(&p);
  return out;
}

std::vector<const Param *> ParamStore::All() const {
  std::vector<const Param *> out;
  for (const auto &[_, p] : params_) out.push_back(&p);
  return out;
}

uint64_t ParamStore::ContentHash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto &[name, p] : params_) {
    h = Fnv1a(name, h);
    h = Fnv1a(p.value.v.data(), p.value.v.size() * sizeof(double), h);
  }
  return h;
}

void AdamOptimizer::Step(ParamStore *params) {
  step_++;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, step_);
  const double bc2 = 1.0 - std::pow(cfg_.beta2, step_);
  for (Param *p : params->All()) {
    for (size_t i = 0; i < p->value.Size(); i++) {
      const double g = p->grad.v[i];
      p->adam_m.v[i] = cfg_.beta1 * p->adam_m.v[i] + (1.0 - cfg_.beta1) * g;
      p->adam_v.v[i] = cfg_.beta2 * p->adam_v.v[i] + (1.0 - cfg_.beta2) * g * g;
      const double mhat = p->adam_m.v[i] / bc1;
      const double vhat = p->adam_v.v[i] / bc2;
      p->value.v[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
      p->grad.v[i] = 0.0;
    }
  }
}

}  // namespace nn
}  // namespace lvc
