// lvc/vc/embedding.cc

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

#include "lvc/vc/embedding.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lvc/common.h"

namespace lvc {

namespace {

// The projection is keyed by a fixed constant, independent of any
// user-facing seed: embeddings must be identical across runs and processes.
std::vector<double> &ProjectionMatrix(int in_dim) {
  static std::map<int, std::vector<double>> cache;
  auto it = cache.find(in_dim);
  if (it != cache.end()) return it->second;

  Rng rng(0x5eedbeefcafe1234ULL);
  std::vector<double> q((size_t)kSpeakerEmbeddingDim * in_dim);
  for (double &v : q) v = rng.Gaussian();
  // Gram-Schmidt over rows.
  for (int r = 0; r < kSpeakerEmbeddingDim; r++) {
    double *row = q.data() + (size_t)r * in_dim;
    for (int p = 0; p < r; p++) {
      const double *prev = q.data() + (size_t)p * in_dim;
      double dot = 0.0;
      for (int c = 0; c < in_dim; c++) dot += row[c] * prev[c];
      for (int c = 0; c < in_dim; c++) row[c] -= dot * prev[c];
    }
    double norm = 0.0;
    for (int c = 0; c < in_dim; c++) norm += row[c] * row[c];
    norm = std::sqrt(norm);
    for (int c = 0; c < in_dim; c++) row[c] /= norm;
  }
  return cache.emplace(in_dim, std::move(q)).first->second;
}

}  // namespace

double SpeakerEmbedding::Dot(const SpeakerEmbedding &o) const {
  double acc = 0.0;
  for (size_t i = 0; i < vec.size(); i++) acc += vec[i] * o.vec[i];
  return acc;
}

SpeakerEmbedding ComputeSpeakerEmbedding(const std::vector<MelSpectrogram> &utts,
                                         const std::string &speaker_id) {
  if (utts.empty())
    throw InvalidInput("speaker_embedding: need at least one utterance");
  const int bins = utts[0].bins;

  // Pooled per-bin mean/std over all frames of all utterances.
  std::vector<double> sum(bins, 0.0), sum2(bins, 0.0);
  long frames = 0;
  for (const auto &m : utts) {
    if (m.bins != bins) throw InvalidInput("speaker_embedding: bin mismatch");
    for (int f = 0; f < m.frames; f++)
      for (int b = 0; b < bins; b++) {
        sum[b] += m.At(f, b);
        sum2[b] += m.At(f, b) * m.At(f, b);
      }
    frames += m.frames;
  }
  std::vector<double> stats(2 * bins);
  for (int b = 0; b < bins; b++) {
    const double mean = sum[b] / frames;
    stats[b] = mean;
    stats[bins + b] = std::sqrt(std::max(sum2[b] / frames - mean * mean, 0.0));
  }

  // Standardize the signature vector so its common offset does not dominate
  // cosine geometry after projection.
  double m = 0.0;
  for (double v : stats) m += v;
  m /= stats.size();
  double var = 0.0;
  for (double v : stats) var += (v - m) * (v - m);
  const double sd = std::sqrt(var / stats.size());
  for (double &v : stats) v = (v - m) / std::max(sd, 1e-9);

  const std::vector<double> &q = ProjectionMatrix(2 * bins);
  SpeakerEmbedding e;
  e.speaker_id = speaker_id;
  e.vec.resize(kSpeakerEmbeddingDim);
  for (int r = 0; r < kSpeakerEmbeddingDim; r++) {
    double acc = 0.0;
    const double *row = q.data() + (size_t)r * stats.size();
    for (size_t c = 0; c < stats.size(); c++) acc += row[c] * stats[c];
    e.vec[r] = acc;
  }
  double norm = 0.0;
  for (double v : e.vec) norm += v * v;
  norm = std::sqrt(norm);
  if (norm < 1e-12)
    throw InvalidInput("speaker_embedding: degenerate all-zero signature");
  for (double &v : e.vec) v /= norm;
  return e;
}

SpeakerEmbedding CentroidEmbedding(const std::vector<SpeakerEmbedding> &embeddings) {
  if (embeddings.empty())
    throw InvalidInput("centroid_embedding: need at least one embedding");
  const size_t dim = embeddings[0].vec.size();
  SpeakerEmbedding e;
  e.speaker_id = embeddings[0].speaker_id;
  e.vec.assign(dim, 0.0);
  for (const auto &emb : embeddings) {
    if (emb.vec.size() != dim)
      throw InvalidInput("centroid_embedding: dimension mismatch");
    for (size_t i = 0; i < dim; i++) e.vec[i] += emb.vec[i];
  }
  double norm = 0.0;
  for (double v : e.vec) norm += v * v;
  norm = std::sqrt(norm);
  if (norm < 1e-12)
    throw InvalidInput("centroid_embedding: mean embedding is the zero vector");
  for (double &v : e.vec) v /= norm;
  return e;
}

void WriteEmbeddingsTsv(const std::string &path,
                        const std::vector<SpeakerEmbedding> &embeddings) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write embeddings: " + path);
  out.precision(17);
  for (const auto &e : embeddings) {
    out << e.speaker_id;
    for (double v : e.vec) out << '\t' << v;
    out << '\n';
  }
}

std::map<std::string, SpeakerEmbedding> ReadEmbeddingsTsv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings: " + path);
  std::map<std::string, SpeakerEmbedding> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    SpeakerEmbedding e;
    std::string field;
    if (!std::getline(ss, e.speaker_id, '\t'))
      throw DataError("malformed embeddings line: " + line);
    while (std::getline(ss, field, '\t')) e.vec.push_back(std::stod(field));
    if (static_cast<int>(e.vec.size()) != kSpeakerEmbeddingDim)
      throw DataError("embeddings row for " + e.speaker_id + " has " +
                      std::to_string(e.vec.size()) + " values, expected 64");
    out[e.speaker_id] = std::move(e);
  }
  if (out.empty()) throw DataError("empty embeddings file: " + path);
  return out;
}

}  // namespace lvc
