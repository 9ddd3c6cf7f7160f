// lvc/corpus/toy_corpus.cc

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

#include "lvc/corpus/toy_corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "lvc/audio/waveform.h"
#include "lvc/common.h"
#include "lvc/corpus/alignment.h"

namespace fs = std::filesystem;

namespace lvc {

namespace {

constexpr const char *kVowels[] = {"aa", "eh", "iy", "ow", "uw"};
constexpr const char *kConsonants[] = {"s", "f", "sh"};

struct SpeakerVoice {
  double base_f0;
  double formant1, formant2;
  double bw1, bw2;
};

SpeakerVoice MakeVoice(uint64_t corpus_seed, int speaker_idx) {
  Rng rng(Fnv1a(std::string("voice"),
                corpus_seed ^ (uint64_t)speaker_idx * 0x9e3779b97f4a7c15ULL));
  SpeakerVoice v;
  v.base_f0 = rng.Uniform(110.0, 240.0);
  v.formant1 = rng.Uniform(550.0, 900.0);
  v.formant2 = rng.Uniform(1350.0, 2250.0);
  v.bw1 = rng.Uniform(90.0, 140.0);
  v.bw2 = rng.Uniform(120.0, 180.0);
  return v;
}

double FormantGain(double f, const SpeakerVoice &v, double vowel_shift) {
  const double f1 = v.formant1 * vowel_shift;
  const double f2 = v.formant2 * vowel_shift;
  const double g1 = 5.0 * std::exp(-((f - f1) * (f - f1)) / (2.0 * v.bw1 * v.bw1));
  const double g2 = 3.5 * std::exp(-((f - f2) * (f - f2)) / (2.0 * v.bw2 * v.bw2));
  return 1.0 + g1 + g2;
}

double MidBandBoost(double f, double boost_db) {
  if (f <= 800.0 || f >= 3200.0) return 1.0;
  double w = 1.0;
  if (f < 1200.0) w = 0.5 * (1.0 - std::cos(M_PI * (f - 800.0) / 400.0));
  else if (f > 2800.0) w = 0.5 * (1.0 - std::cos(M_PI * (3200.0 - f) / 400.0));
  return std::pow(10.0, boost_db * w / 20.0);
}

void AddVowel(std::vector<double> *samples, int start, int len, double f0,
              const SpeakerVoice &voice, double vowel_shift, bool lombard,
              const ToyCorpusConfig &cfg, Rng *rng) {
  const double tilt_exp = lombard ? cfg.lombard_tilt_exp : cfg.neutral_tilt_exp;
  const int n_harm = static_cast<int>(7600.0 / f0);
  std::vector<double> amp(n_harm + 1, 0.0), phase(n_harm + 1, 0.0);
  for (int h = 1; h <= n_harm; h++) {
    const double f = h * f0;
    double a = std::pow(1.0 / h, tilt_exp) * FormantGain(f, voice, vowel_shift);
    if (lombard) a *= MidBandBoost(f, cfg.lombard_boost_db);
    amp[h] = a;
    phase[h] = rng->Uniform(0.0, 2.0 * M_PI);
  }
  const int ramp = 320;  // 20 ms attack/release
  for (int i = 0; i < len; i++) {
    double env = 1.0;
    if (i < ramp) env = 0.5 * (1.0 - std::cos(M_PI * i / ramp));
    else if (i >= len - ramp) env = 0.5 * (1.0 - std::cos(M_PI * (len - 1 - i) / ramp));
    double s = 0.0;
    for (int h = 1; h <= n_harm; h++)
      s += amp[h] * std::sin(2.0 * M_PI * f0 * h * i / kSampleRate + phase[h]);
    (*samples)[start + i] += 0.02 * env * s;
  }
}

void AddConsonant(std::vector<double> *samples, int start, int len, Rng *rng) {
  const int ramp = 160;
  double prev = 0.0;
  for (int i = 0; i < len; i++) {
    double env = 1.0;
    if (i < ramp) env = 0.5 * (1.0 - std::cos(M_PI * i / ramp));
    else if (i >= len - ramp) env = 0.5 * (1.0 - std::cos(M_PI * (len - 1 - i) / ramp));
    const double white = rng->Gaussian();
    // First difference tips the noise toward the high band.
    (*samples)[start + i] += 0.012 * env * (white - 0.7 * prev);
    prev = white;
  }
}

}  // namespace

Manifest SynthToyCorpus(const std::string &out_dir, const ToyCorpusConfig &cfg) {
  if (cfg.speakers < 1 || cfg.utts_per_style < 1)
    throw InvalidInput("synth_toy_corpus: need at least 1 speaker and 1 utterance");
  fs::create_directories(out_dir);

  Manifest manifest;
  for (int s = 0; s < cfg.speakers; s++) {
    char spk_name[16];
    std::snprintf(spk_name, sizeof(spk_name), "sp%02d", s + 1);
    const SpeakerVoice voice = MakeVoice(cfg.seed, s);

    for (const char *style : {kStyleLombard, kStyleNeutral}) {
      const bool lombard = std::string(style) == kStyleLombard;
      const fs::path dir = fs::path(out_dir) / spk_name / style;
      fs::create_directories(dir);

      for (int u = 0; u < cfg.utts_per_style; u++) {
        // Per-utterance seed so synthesis order never matters.
        Rng rng(Fnv1a(std::string(spk_name) + "/" + style + "/" + std::to_string(u),
                      cfg.seed));

        PhonemeAlignment align;
        std::vector<double> samples;
        auto ms_of = [&](size_t pos) { return pos * 1000.0 / kSampleRate; };

        auto add_silence = [&](int len, bool label) {
          const size_t start = samples.size();
          samples.resize(samples.size() + len, 0.0);
          if (label)
            align.entries.push_back({"sil", ms_of(start), ms_of(samples.size())});
        };

        add_silence(1280, true);  // 80 ms lead-in
        const double style_f0 = voice.base_f0 * (lombard ? cfg.lombard_f0_factor : 1.0);
        for (int vseg = 0; vseg < cfg.vowels_per_utt; vseg++) {
          const int vowel_idx = static_cast<int>(rng.Bounded(5));
          const double vowel_shift = 0.9 + 0.05 * vowel_idx;
          const double f0 = style_f0 * rng.Uniform(0.97, 1.03);
          const int vlen = 4800 + static_cast<int>(rng.Bounded(2400));  // 300-450 ms

          const size_t vstart = samples.size();
          samples.resize(samples.size() + vlen, 0.0);
          AddVowel(&samples, static_cast<int>(vstart), vlen, f0, voice, vowel_shift,
                   lombard, cfg, &rng);
          align.entries.push_back({kVowels[vowel_idx], ms_of(vstart), ms_of(samples.size())});

          if (vseg + 1 < cfg.vowels_per_utt) {
            const int cons_idx = static_cast<int>(rng.Bounded(3));
            const int clen = 1120 + static_cast<int>(rng.Bounded(640));  // 70-110 ms
            const size_t cstart = samples.size();
            samples.resize(samples.size() + clen, 0.0);
            AddConsonant(&samples, static_cast<int>(cstart), clen, &rng);
            align.entries.push_back({kConsonants[cons_idx], ms_of(cstart), ms_of(samples.size())});
          }
        }
        add_silence(1280, true);

        Waveform w;
        w.sample_rate_hz = kSampleRate;
        w.samples = std::move(samples);
        NormalizeRms(&w, 0.08);
        for (double &v : w.samples) v = std::clamp(v, -0.99, 0.99);

        char utt_name[16];
        std::snprintf(utt_name, sizeof(utt_name), "utt%03d", u + 1);
        const fs::path wav_path = dir / (std::string(utt_name) + ".wav");
        const fs::path lab_path = dir / (std::string(utt_name) + ".lab");
        WriteWav(wav_path.string(), w, WavEncoding::kPcm16);
        WriteAlignment(lab_path.string(), align);

        UtteranceRecord r;
        r.speaker_id = spk_name;
        r.style = style;
        r.utt_id = std::string(spk_name) + "_" + style + "_" + utt_name;
        r.wav_path = wav_path.string();
        r.alignment_path = lab_path.string();
        manifest.records.push_back(std::move(r));
      }
    }
  }
  manifest.RebuildIndex();
  manifest.Validate();
  WriteManifest((fs::path(out_dir) / "manifest.tsv").string(), manifest);
  return manifest;
}

}  // namespace lvc
