// lvc/audio/waveform.cc

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

#include "lvc/audio/waveform.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lvc/common.h"

namespace lvc {

void ValidateWaveform(const Waveform &w, const std::string &what) {
  if (w.samples.empty()) throw InvalidInput(what + ": empty waveform");
  if (w.sample_rate_hz <= 0) throw InvalidInput(what + ": bad sample rate");
  for (double s : w.samples)
    if (!std::isfinite(s)) throw InvalidInput(what + ": non-finite sample");
}

double Rms(const std::vector<double> &x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / x.size());
}

double Rms(const Waveform &w) { return Rms(w.samples); }

void NormalizeRms(Waveform *w, double target) {
  double r = Rms(*w);
  if (r <= 0.0) return;
  double g = target / r;
  for (double &s : w->samples) s *= g;
}

// ---------------------------------------------------------------------------
// RIFF parsing
// ---------------------------------------------------------------------------

namespace {

uint32_t ReadU32(const unsigned char *p) {
  return (uint32_t)p[0] | ((uint32_t)p[1] << 8) | ((uint32_t)p[2] << 16) |
         ((uint32_t)p[3] << 24);
}
uint16_t ReadU16(const unsigned char *p) {
  return (uint16_t)(p[0] | (p[1] << 8));
}
void PutU32(std::string *s, uint32_t v) {
  for (int i = 0; i < 4; i++) s->push_back(char((v >> (8 * i)) & 0xff));
}
void PutU16(std::string *s, uint16_t v) {
  s->push_back(char(v & 0xff));
  s->push_back(char((v >> 8) & 0xff));
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open WAV file: " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const unsigned char *chunk = buf.data() + pos;
    uint32_t len = ReadU32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0 && len >= 16) {
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data_off = pos + 8;
      data_len = std::min<size_t>(len, buf.size() - data_off);
    }
    pos += 8 + len + (len & 1);  // chunks are word-aligned
  }
  if (format == 0 || data_off == 0)
    throw DataError("WAV missing fmt/data chunk: " + path);
  if (channels == 0) throw DataError("WAV has zero channels: " + path);

  size_t bytes_per = bits / 8;
  size_t n_frames = data_len / (bytes_per * channels);
  if (n_frames == 0) throw DataError("WAV has no samples: " + path);

  std::vector<double> mono(n_frames, 0.0);
  const unsigned char *d = buf.data() + data_off;
  if (format == 1 && bits == 16) {
    for (size_t i = 0; i < n_frames; i++) {
      double acc = 0.0;
      for (int c = 0; c < channels; c++) {
        int16_t v;
        std::memcpy(&v, d + (i * channels + c) * 2, 2);
        acc += v / 32768.0;
      }
      mono[i] = acc / channels;
    }
  } else if (format == 3 && bits == 32) {
    for (size_t i = 0; i < n_frames; i++) {
      double acc = 0.0;
      for (int c = 0; c < channels; c++) {
        float v;
        std::memcpy(&v, d + (i * channels + c) * 4, 4);
        acc += v;
      }
      mono[i] = acc / channels;
    }
  } else {
    throw DataError("unsupported WAV encoding (want PCM-16 or float-32): " + path);
  }
  if (channels > 1)
    LogWarn("averaged " + std::to_string(channels) + " channels to mono: " + path);

  Waveform w;
  w.samples = std::move(mono);
  w.sample_rate_hz = static_cast<int>(rate);
  for (double &s : w.samples) s = std::clamp(s, -1.0, 1.0);
  if (w.sample_rate_hz != kSampleRate) {
    LogWarn("resampling " + path + " from " + std::to_string(w.sample_rate_hz) +
            " Hz to " + std::to_string(kSampleRate) + " Hz");
    w = Resample(w, kSampleRate);
  }
  ValidateWaveform(w, path);
  return w;
}

void WriteWav(const std::string &path, const Waveform &w, WavEncoding enc) {
  ValidateWaveform(w, path);
  std::string out;
  uint32_t n = static_cast<uint32_t>(w.samples.size());
  uint16_t bits = enc == WavEncoding::kPcm16 ? 16 : 32;
  uint32_t data_bytes = n * (bits / 8);
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, enc == WavEncoding::kPcm16 ? 1 : 3);
  PutU16(&out, 1);
  PutU32(&out, static_cast<uint32_t>(w.sample_rate_hz));
  PutU32(&out, static_cast<uint32_t>(w.sample_rate_hz) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  out += "data";
  PutU32(&out, data_bytes);
  if (enc == WavEncoding::kPcm16) {
    for (double s : w.samples) {
      double c = std::clamp(s, -1.0, 1.0);
      auto v = static_cast<int16_t>(std::lrint(c * 32767.0));
      out.push_back(char(v & 0xff));
      out.push_back(char((v >> 8) & 0xff));
    }
  } else {
    for (double s : w.samples) {
      float f = static_cast<float>(s);
      uint32_t u;
      std::memcpy(&u, &f, 4);
      PutU32(&out, u);
    }
  }
  std::ofstream of(path, std::ios::binary | std::ios::trunc);
  if (!of) throw DataError("cannot write WAV file: " + path);
  of.write(out.data(), static_cast<std::streamsize>(out.size()));
}

Waveform Resample(const Waveform &w, int new_rate_hz) {
  if (new_rate_hz == w.sample_rate_hz) return w;
  if (new_rate_hz <= 0) throw InvalidInput("Resample: bad target rate");
  const double ratio = static_cast<double>(new_rate_hz) / w.sample_rate_hz;
  const auto n_out = static_cast<size_t>(std::floor(w.samples.size() * ratio));
  // When downsampling, widen the sinc to act as the anti-alias low-pass.
  const double cutoff = std::min(1.0, ratio);
  const int half_taps = 16;
  Waveform out;
  out.sample_rate_hz = new_rate_hz;
  out.samples.resize(n_out);
  const int n_in = static_cast<int>(w.samples.size());
  for (size_t i = 0; i < n_out; i++) {
    const double center = i / ratio;
    const int lo = static_cast<int>(std::floor(center)) - half_taps + 1;
    const int hi = static_cast<int>(std::floor(center)) + half_taps;
    double acc = 0.0;
    for (int j = lo; j <= hi; j++) {
      if (j < 0 || j >= n_in) continue;
      const double x = (center - j) * cutoff;
      double sinc = x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
      const double u = (center - j) / half_taps;  // Hann taper
      const double win = 0.5 + 0.5 * std::cos(M_PI * std::clamp(u, -1.0, 1.0));
      acc += w.samples[j] * sinc * win * cutoff;
    }
    out.samples[i] = acc;
  }
  return out;
}

}  // namespace lvc
