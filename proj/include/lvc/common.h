// lvc/common.h

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

#ifndef LVC_COMMON_H_
#define LVC_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lvc {

// Thrown when a caller violates an operation's contract (bad arguments,
// malformed config, shape mismatches).  The CLI maps it to exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string &msg) : std::runtime_error(msg) {}
};

// Thrown when on-disk data is missing or inconsistent (unreadable WAV,
// id mismatches between directories, corrupt checkpoints).  Exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &msg) : std::runtime_error(msg) {}
};

void LogInfo(const std::string &msg);
void LogWarn(const std::string &msg);

// FNV-1a, used for config hashes and for deriving per-utterance seeds.
uint64_t Fnv1a(const void *data, size_t n, uint64_t seed = 0xcbf29ce484222325ULL);
uint64_t Fnv1a(const std::string &s, uint64_t seed = 0xcbf29ce484222325ULL);
inline uint64_t Fnv1a(const char *s, uint64_t seed = 0xcbf29ce484222325ULL) {
  return Fnv1a(std::string(s), seed);
}

// Deterministic RNG wrapper.  std::mt19937_64 output is fully specified by
// the standard; the distributions below are hand-rolled because the
// std::*_distribution classes are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t NextU64() { return gen_(); }

  // Uniform in [0, 1).
  double Uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n).  Modulo bias is irrelevant here; what matters
  // is that the sequence is identical on every platform.
  uint64_t Bounded(uint64_t n) { return gen_() % n; }

  // Standard normal via Box-Muller (cached second value).
  double Gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lvc

#endif  // LVC_COMMON_H_
