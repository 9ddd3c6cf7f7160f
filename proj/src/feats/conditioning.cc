// lvc/feats/conditioning.cc

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

#include "lvc/feats/conditioning.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "lvc/common.h"

namespace lvc {

namespace {

NormStats MeanStd(const std::vector<double> &v) {
  NormStats s;
  if (v.empty()) return s;
  double acc = 0.0;
  for (double x : v) acc += x;
  s.mean = acc / v.size();
  double var = 0.0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / v.size());
  return s;
}

double ZNorm(double x, const NormStats &s) {
  return (x - s.mean) / std::max(s.stddev, 1e-6);
}

}  // namespace

std::vector<double> InterpolateLogF0(const F0Track &f0, std::vector<double> *voicing) {
  const int n = f0.Frames();
  std::vector<double> out(n, 0.0);
  if (voicing) voicing->assign(n, 0.0);

  std::vector<int> anchors;
  for (int i = 0; i < n; i++) {
    if (f0.Voiced(i)) {
      anchors.push_back(i);
      if (voicing) (*voicing)[i] = 1.0;
    }
  }
  if (anchors.empty()) return out;  // documented fallback: all zeros

  for (int i = 0; i < n; i++) {
    if (f0.Voiced(i)) {
      out[i] = std::log(f0.f0_hz[i]);
      continue;
    }
    // nearest voiced anchors on either side; edges extend
    auto it = std::lower_bound(anchors.begin(), anchors.end(), i);
    if (it == anchors.begin()) {
      out[i] = std::log(f0.f0_hz[anchors.front()]);
    } else if (it == anchors.end()) {
      out[i] = std::log(f0.f0_hz[anchors.back()]);
    } else {
      const int right = *it, left = *(it - 1);
      const double lv = std::log(f0.f0_hz[left]), rv = std::log(f0.f0_hz[right]);
      const double t = static_cast<double>(i - left) / (right - left);
      out[i] = (1.0 - t) * lv + t * rv;
    }
  }
  return out;
}

AcousticFrameFeatures ExtractConditioning(const F0Track &f0, const MgcTrack &mgc,
                                          const SpeakerStats &speaker,
                                          const GlobalStats &global) {
  if (f0.Frames() != mgc.frames)
    throw InvalidInput("extract_conditioning: f0/mgc frame mismatch");
  AcousticFrameFeatures out;
  out.frames = f0.Frames();

  std::vector<double> raw = InterpolateLogF0(f0, &out.voicing);
  bool any_voiced = false;
  for (double v : out.voicing) any_voiced |= v > 0.0;

  out.logf0.resize(out.frames);
  out.mgc0.resize(out.frames);
  out.mgc1.resize(out.frames);
  for (int i = 0; i < out.frames; i++) {
    out.logf0[i] = any_voiced ? ZNorm(raw[i], speaker.logf0) : 0.0;
    out.mgc0[i] = ZNorm(mgc.At(i, 0), global.mgc0);
    out.mgc1[i] = ZNorm(mgc.At(i, 1), global.mgc1);
  }
  out.norm_meta[0] = speaker.logf0.mean;
  out.norm_meta[1] = speaker.logf0.stddev;
  out.norm_meta[2] = 0.0;
  out.norm_meta[3] = 1.0;
  out.norm_meta[4] = global.mgc0.mean;
  out.norm_meta[5] = global.mgc0.stddev;
  out.norm_meta[6] = global.mgc1.mean;
  out.norm_meta[7] = global.mgc1.stddev;
  return out;
}

AcousticFrameFeatures ExtractConditioning(const Waveform &w,
                                          const SpeakerStats &speaker,
                                          const GlobalStats &global,
                                          const AnalysisConfig &cfg) {
  return ExtractConditioning(EstimateF0(w, cfg), ComputeMgc(w, cfg), speaker, global);
}

SpeakerStats ComputeSpeakerStats(const std::vector<F0Track> &tracks) {
  std::vector<double> voiced_logf0;
  for (const F0Track &t : tracks)
    for (double f0 : t.f0_hz)
      if (f0 > 0.0) voiced_logf0.push_back(std::log(f0));
  SpeakerStats s;
  s.logf0 = MeanStd(voiced_logf0);
  if (voiced_logf0.empty()) s.logf0 = {0.0, 1.0};
  return s;
}

GlobalStats ComputeGlobalStats(const std::vector<MgcTrack> &tracks) {
  std::vector<double> c0, c1;
  for (const MgcTrack &t : tracks) {
    for (int f = 0; f < t.frames; f++) {
      c0.push_back(t.At(f, 0));
      c1.push_back(t.At(f, 1));
    }
  }
  GlobalStats g;
  g.mgc0 = MeanStd(c0);
  g.mgc1 = MeanStd(c1);
  return g;
}

UtteranceFeatureSummary SummarizeUtterance(const F0Track &f0, const MgcTrack &mgc) {
  UtteranceFeatureSummary s;
  double f0_acc = 0.0;
  int voiced = 0;
  for (double v : f0.f0_hz) {
    if (v > 0.0) {
      f0_acc += v;
      voiced++;
    }
  }
  s.mean_f0 = voiced > 0 ? f0_acc / voiced : 0.0;
  s.mean_mgc0 = mgc.MeanCoeff(0);
  s.mean_mgc1 = mgc.MeanCoeff(1);
  return s;
}

LombardStats ComputeLombardStats(const std::vector<UtteranceFeatureSummary> &style_a,
                                 const std::vector<UtteranceFeatureSummary> &style_b,
                                 const std::string &name_a, const std::string &name_b) {
  if (style_a.empty() || style_b.empty())
    throw InvalidInput("lombard_contrast: empty style partition");

  auto summarize = [](const std::vector<UtteranceFeatureSummary> &utts) {
    StyleFeatureStats s;
    s.n_utterances = static_cast<int>(utts.size());
    std::vector<double> f0, m0, m1;
    for (const auto &u : utts) {
      f0.push_back(u.mean_f0);
      m0.push_back(u.mean_mgc0);
      m1.push_back(u.mean_mgc1);
    }
    NormStats a = MeanStd(f0), b = MeanStd(m0), c = MeanStd(m1);
    s.mean_f0 = a.mean;
    s.std_f0 = a.stddev;
    s.mean_mgc0 = b.mean;
    s.std_mgc0 = b.stddev;
    s.mean_mgc1 = c.mean;
    s.std_mgc1 = c.stddev;
    return s;
  };

  LombardStats out;
  out.style_a = name_a;
  out.style_b = name_b;
  out.a = summarize(style_a);
  out.b = summarize(style_b);
  out.delta_mean_f0 = out.a.mean_f0 - out.b.mean_f0;
  out.delta_mean_mgc0 = out.a.mean_mgc0 - out.b.mean_mgc0;
  out.delta_mean_mgc1 = out.a.mean_mgc1 - out.b.mean_mgc1;
  return out;
}

// ---------------------------------------------------------------------------
// Dump format
// ---------------------------------------------------------------------------

static constexpr char kFeatMagic[8] = {'L', 'V', 'C', 'F', 'E', 'A', 'T', '1'};

void WriteFeatures(const std::string &path, const AcousticFrameFeatures &f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write feature file: " + path);
  out.write(kFeatMagic, 8);
  uint32_t frames = static_cast<uint32_t>(f.frames), channels = 4;
  out.write(reinterpret_cast<const char *>(&frames), 4);
  out.write(reinterpret_cast<const char *>(&channels), 4);
  auto put = [&](double v) {
    float x = static_cast<float>(v);
    out.write(reinterpret_cast<const char *>(&x), 4);
  };
  for (int i = 0; i < f.frames; i++) {
    put(f.logf0[i]);
    put(f.voicing[i]);
    put(f.mgc0[i]);
    put(f.mgc1[i]);
  }
  for (double v : f.norm_meta) put(v);
}

AcousticFrameFeatures ReadFeatures(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feature file: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kFeatMagic, 8) != 0)
    throw DataError("bad feature magic: " + path);
  uint32_t frames = 0, channels = 0;
  in.read(reinterpret_cast<char *>(&frames), 4);
  in.read(reinterpret_cast<char *>(&channels), 4);
  if (!in || channels != 4 || frames > (1u << 24))
    throw DataError("bad feature header: " + path);
  auto get = [&]() {
    float x = 0.0f;
    in.read(reinterpret_cast<char *>(&x), 4);
    return static_cast<double>(x);
  };
  AcousticFrameFeatures f;
  f.frames = static_cast<int>(frames);
  f.logf0.resize(frames);
  f.voicing.resize(frames);
  f.mgc0.resize(frames);
  f.mgc1.resize(frames);
  for (uint32_t i = 0; i < frames; i++) {
    f.logf0[i] = get();
    f.voicing[i] = get();
    f.mgc0[i] = get();
    f.mgc1[i] = get();
  }
  for (double &v : f.norm_meta) v = get();
  if (!in) throw DataError("truncated feature file: " + path);
  return f;
}

}  // namespace lvc
