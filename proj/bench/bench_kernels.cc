// bench/bench_kernels.cc

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

// Serial reference vs OpenMP variants of the hot kernels.  Run with
// OMP_NUM_THREADS to size the thread pool.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "lvc/common.h"
#include "lvc/kernels/kernels.h"

using namespace lvc;
using namespace lvc::kernels;

namespace {

std::vector<double> RandomVec(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto &x : v) x = rng.Uniform(-1.0, 1.0);
  return v;
}

void BM_MatmulSerial(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  auto a = RandomVec((size_t)n * n, 1), b = RandomVec((size_t)n * n, 2);
  std::vector<double> c((size_t)n * n);
  for (auto _ : state) {
    MatmulNNSerial(a.data(), b.data(), c.data(), n, n, n);
    benchmark::ClobberMemory();
  }
}

void BM_MatmulParallel(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  auto a = RandomVec((size_t)n * n, 1), b = RandomVec((size_t)n * n, 2);
  std::vector<double> c((size_t)n * n);
  for (auto _ : state) {
    MatmulNNParallel(a.data(), b.data(), c.data(), n, n, n);
    benchmark::ClobberMemory();
  }
}

void BM_Conv1dSerial(benchmark::State &state) {
  const int t = 512, c_in = 96, c_out = 96, kw = 3;
  auto x = RandomVec((size_t)t * c_in, 3);
  auto w = RandomVec((size_t)c_out * c_in * kw, 4);
  auto bias = RandomVec(c_out, 5);
  std::vector<double> y((size_t)t * c_out);
  for (auto _ : state) {
    Conv1dForwardSerial(x.data(), w.data(), bias.data(), y.data(), t, c_in, c_out, kw, 1, 1);
    benchmark::ClobberMemory();
  }
}

void BM_Conv1dParallel(benchmark::State &state) {
  const int t = 512, c_in = 96, c_out = 96, kw = 3;
  auto x = RandomVec((size_t)t * c_in, 3);
  auto w = RandomVec((size_t)c_out * c_in * kw, 4);
  auto bias = RandomVec(c_out, 5);
  std::vector<double> y((size_t)t * c_out);
  for (auto _ : state) {
    Conv1dForwardParallel(x.data(), w.data(), bias.data(), y.data(), t, c_in, c_out, kw, 1, 1);
    benchmark::ClobberMemory();
  }
}

void BM_SpectraSerial(benchmark::State &state) {
  const int frames = 160, frame_len = 800, nfft = 1024;
  auto x = RandomVec((size_t)frames * frame_len, 6);
  std::vector<std::complex<double>> out((size_t)frames * (nfft / 2 + 1));
  for (auto _ : state) {
    BatchSpectraSerial(x.data(), frames, frame_len, nfft, out.data());
    benchmark::ClobberMemory();
  }
}

void BM_SpectraParallel(benchmark::State &state) {
  const int frames = 160, frame_len = 800, nfft = 1024;
  auto x = RandomVec((size_t)frames * frame_len, 6);
  std::vector<std::complex<double>> out((size_t)frames * (nfft / 2 + 1));
  for (auto _ : state) {
    BatchSpectraParallel(x.data(), frames, frame_len, nfft, out.data());
    benchmark::ClobberMemory();
  }
}

void BM_FilterbankSerial(benchmark::State &state) {
  const int frames = 160, bins = 513, filt = 80;
  auto p = RandomVec((size_t)frames * bins, 7);
  auto f = RandomVec((size_t)filt * bins, 8);
  std::vector<double> out((size_t)frames * filt);
  for (auto _ : state) {
    ApplyFilterbankSerial(p.data(), f.data(), out.data(), frames, bins, filt);
    benchmark::ClobberMemory();
  }
}

void BM_FilterbankParallel(benchmark::State &state) {
  const int frames = 160, bins = 513, filt = 80;
  auto p = RandomVec((size_t)frames * bins, 7);
  auto f = RandomVec((size_t)filt * bins, 8);
  std::vector<double> out((size_t)frames * filt);
  for (auto _ : state) {
    ApplyFilterbankParallel(p.data(), f.data(), out.data(), frames, bins, filt);
    benchmark::ClobberMemory();
  }
}

void BM_GammatoneSerial(benchmark::State &state) {
  const int n = 32000, ch = 24;
  auto x = RandomVec(n, 9);
  std::vector<double> fc(ch), pole(ch), env((size_t)ch * n);
  for (int c = 0; c < ch; c++) {
    fc[c] = 0.01 + 0.015 * c;
    pole[c] = 0.96;
  }
  for (auto _ : state) {
    GammatoneEnvelopesSerial(x.data(), n, fc.data(), pole.data(), ch, 4, env.data());
    benchmark::ClobberMemory();
  }
}

void BM_GammatoneParallel(benchmark::State &state) {
  const int n = 32000, ch = 24;
  auto x = RandomVec(n, 9);
  std::vector<double> fc(ch), pole(ch), env((size_t)ch * n);
  for (int c = 0; c < ch; c++) {
    fc[c] = 0.01 + 0.015 * c;
    pole[c] = 0.96;
  }
  for (auto _ : state) {
    GammatoneEnvelopesParallel(x.data(), n, fc.data(), pole.data(), ch, 4, env.data());
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK(BM_MatmulSerial)->Arg(128)->Arg(256);
BENCHMARK(BM_MatmulParallel)->Arg(128)->Arg(256);
BENCHMARK(BM_Conv1dSerial);
BENCHMARK(BM_Conv1dParallel);
BENCHMARK(BM_SpectraSerial);
BENCHMARK(BM_SpectraParallel);
BENCHMARK(BM_FilterbankSerial);
BENCHMARK(BM_FilterbankParallel);
BENCHMARK(BM_GammatoneSerial);
BENCHMARK(BM_GammatoneParallel);

BENCHMARK_MAIN();
