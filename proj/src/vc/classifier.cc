// lvc/vc/classifier.cc

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

#include "lvc/vc/classifier.h"

#include <cmath>

#include "lvc/common.h"

namespace lvc {

namespace {

void UniformInit(nn::Mat *m, double scale, Rng *rng) {
  for (double &v : m->v) v = rng->Uniform(-scale, scale);
}

}  // namespace

StyleClassifier::StyleClassifier(const ClassifierConfig &cfg) : cfg_(cfg) {
  Rng rng(Fnv1a("style_classifier", cfg.seed));
  const int ch = cfg.channels, k = cfg.kernel;

  auto conv = [&](const std::string &name, int c_in, int c_out) {
    nn::Param &w = params_.Create(name + ".w", c_out, c_in * k);
    UniformInit(&w.value, std::sqrt(1.0 / (c_in * k)), &rng);
    params_.Create(name + ".b", 1, c_out);
  };
  conv("clf.conv1", cfg.mel_bins, ch);
  conv("clf.conv2", ch, ch);
  conv("clf.conv3", ch, ch);
  // Zero-initialized head: sigmoid(0) = 0.5 before any training.
  params_.Create("clf.out.w", ch, 1);
  params_.Create("clf.out.b", 1, 1);
}

int StyleClassifier::BuildGraph(nn::Tape *tape, int mel_node, bool frozen) {
  auto leaf = [&](const std::string &name) {
    nn::Param &p = params_.Get(name);
    return frozen ? tape->Leaf(p.value) : tape->ParamLeaf(&p);
  };
  const int k = cfg_.kernel, pad = (cfg_.kernel - 1) / 2;
  int h = mel_node;
  h = tape->Relu(tape->Conv1d(h, leaf("clf.conv1.w"), leaf("clf.conv1.b"), k, 2, pad));
  h = tape->Relu(tape->Conv1d(h, leaf("clf.conv2.w"), leaf("clf.conv2.b"), k, 2, pad));
  h = tape->Relu(tape->Conv1d(h, leaf("clf.conv3.w"), leaf("clf.conv3.b"), k, 2, pad));
  h = tape->MeanRows(h);
  h = tape->AddRowBias(tape->Matmul(h, leaf("clf.out.w")), leaf("clf.out.b"));
  return tape->Sigmoid(h);
}

double StyleClassifier::Classify(const nn::Mat &mel) {
  if (mel.cols != cfg_.mel_bins)
    throw InvalidInput("classify_style: mel bin count mismatch");
  nn::Tape tape;
  const int p = BuildGraph(&tape, tape.Leaf(mel), /*frozen=*/true);
  return tape.Value(p).At(0, 0);
}

}  // namespace lvc
