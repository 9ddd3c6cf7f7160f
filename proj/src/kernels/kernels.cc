// lvc/kernels/kernels.cc

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

#include "lvc/kernels/kernels.h"

#include <atomic>
#include <cmath>
#include <cstring>

#include "lvc/kernels/fft.h"

namespace lvc {
namespace kernels {

static std::atomic<ExecMode> g_exec_mode{ExecMode::kParallel};

void SetExecMode(ExecMode mode) { g_exec_mode.store(mode); }
ExecMode GetExecMode() { return g_exec_mode.load(); }

static inline bool Parallel() { return g_exec_mode.load() == ExecMode::kParallel; }

// ---------------------------------------------------------------------------
// Matmul
// ---------------------------------------------------------------------------

static inline void MatmulNNRow(const double *a, const double *b, double *c,
                               int i, int k, int n) {
  double *crow = c + (size_t)i * n;
  for (int j = 0; j < n; j++) crow[j] = 0.0;
  const double *arow = a + (size_t)i * k;
  for (int p = 0; p < k; p++) {
    const double av = arow[p];
    const double *brow = b + (size_t)p * n;
    for (int j = 0; j < n; j++) crow[j] += av * brow[j];
  }
}

void MatmulNNSerial(const double *a, const double *b, double *c, int m, int k, int n) {
  for (int i = 0; i < m; i++) MatmulNNRow(a, b, c, i, k, n);
}

void MatmulNNParallel(const double *a, const double *b, double *c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; i++) MatmulNNRow(a, b, c, i, k, n);
}

void MatmulNN(const double *a, const double *b, double *c, int m, int k, int n) {
  Parallel() ? MatmulNNParallel(a, b, c, m, k, n) : MatmulNNSerial(a, b, c, m, k, n);
}

static inline void MatmulNTRow(const double *a, const double *b, double *c,
                               int i, int k, int n) {
  const double *arow = a + (size_t)i * k;
  double *crow = c + (size_t)i * n;
  for (int j = 0; j < n; j++) {
    const double *brow = b + (size_t)j * k;
    double acc = 0.0;
    for (int p = 0; p < k; p++) acc += arow[p] * brow[p];
    crow[j] = acc;
  }
}

void MatmulNTSerial(const double *a, const double *b, double *c, int m, int k, int n) {
  for (int i = 0; i < m; i++) MatmulNTRow(a, b, c, i, k, n);
}

void MatmulNTParallel(const double *a, const double *b, double *c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; i++) MatmulNTRow(a, b, c, i, k, n);
}

void MatmulNT(const double *a, const double *b, double *c, int m, int k, int n) {
  Parallel() ? MatmulNTParallel(a, b, c, m, k, n) : MatmulNTSerial(a, b, c, m, k, n);
}

// A is [k x m], result C[m x n] = A^T * B.  Row i of C reads column i of A,
// so each output row is still independent.
static inline void MatmulTNRow(const double *a, const double *b, double *c,
                               int i, int m, int k, int n) {
  double *crow = c + (size_t)i * n;
  for (int j = 0; j < n; j++) crow[j] = 0.0;
  for (int p = 0; p < k; p++) {
    const double av = a[(size_t)p * m + i];
    const double *brow = b + (size_t)p * n;
    for (int j = 0; j < n; j++) crow[j] += av * brow[j];
  }
}

void MatmulTNSerial(const double *a, const double *b, double *c, int m, int k, int n) {
  for (int i = 0; i < m; i++) MatmulTNRow(a, b, c, i, m, k, n);
}

void MatmulTNParallel(const double *a, const double *b, double *c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; i++) MatmulTNRow(a, b, c, i, m, k, n);
}

void MatmulTN(const double *a, const double *b, double *c, int m, int k, int n) {
  Parallel() ? MatmulTNParallel(a, b, c, m, k, n) : MatmulTNSerial(a, b, c, m, k, n);
}

// ---------------------------------------------------------------------------
// Conv1d
// ---------------------------------------------------------------------------

static inline int ConvOutLen(int t_in, int kw, int stride, int pad) {
  return (t_in + 2 * pad - kw) / stride + 1;
}

static inline void Conv1dOutFrame(const double *x, const double *w,
                                  const double *bias, double *y, int t,
                                  int t_in, int c_in, int c_out, int kw,
                                  int stride, int pad) {
  double *yrow = y + (size_t)t * c_out;
  for (int o = 0; o < c_out; o++) {
    const double *wrow = w + (size_t)o * c_in * kw;
    double acc = bias ? bias[o] : 0.0;
    for (int dk = 0; dk < kw; dk++) {
      const int ti = t * stride + dk - pad;
      if (ti < 0 || ti >= t_in) continue;
      const double *xrow = x + (size_t)ti * c_in;
      for (int ci = 0; ci < c_in; ci++) acc += xrow[ci] * wrow[ci * kw + dk];
    }
    yrow[o] = acc;
  }
}

void Conv1dForwardSerial(const double *x, const double *w, const double *bias,
                         double *y, int t_in, int c_in, int c_out, int kw,
                         int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
  for (int t = 0; t < t_out; t++)
    Conv1dOutFrame(x, w, bias, y, t, t_in, c_in, c_out, kw, stride, pad);
}

void Conv1dForwardParallel(const double *x, const double *w, const double *bias,
                           double *y, int t_in, int c_in, int c_out, int kw,
                           int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
#pragma omp parallel for schedule(static)
  for (int t = 0; t < t_out; t++)
    Conv1dOutFrame(x, w, bias, y, t, t_in, c_in, c_out, kw, stride, pad);
}

void Conv1dForward(const double *x, const double *w, const double *bias,
                   double *y, int t_in, int c_in, int c_out, int kw,
                   int stride, int pad) {
  Parallel() ? Conv1dForwardParallel(x, w, bias, y, t_in, c_in, c_out, kw, stride, pad)
             : Conv1dForwardSerial(x, w, bias, y, t_in, c_in, c_out, kw, stride, pad);
}

// dx frame ti gathers from all output frames that touched it; iterating over
// input frames keeps writes disjoint.
static inline void Conv1dInputFrame(const double *dy, const double *w,
                                    double *dx, int ti, int t_in, int c_in,
                                    int c_out, int kw, int stride, int pad,
                                    int t_out) {
  double *dxrow = dx + (size_t)ti * c_in;
  for (int dk = 0; dk < kw; dk++) {
    const int num = ti + pad - dk;
    if (num < 0 || num % stride != 0) continue;
    const int t = num / stride;
    if (t < 0 || t >= t_out) continue;
    const double *dyrow = dy + (size_t)t * c_out;
    for (int o = 0; o < c_out; o++) {
      const double g = dyrow[o];
      const double *wrow = w + (size_t)o * c_in * kw;
      for (int ci = 0; ci < c_in; ci++) dxrow[ci] += g * wrow[ci * kw + dk];
    }
  }
}

void Conv1dBackwardInputSerial(const double *dy, const double *w, double *dx,
                               int t_in, int c_in, int c_out, int kw,
                               int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
  for (int ti = 0; ti < t_in; ti++)
    Conv1dInputFrame(dy, w, dx, ti, t_in, c_in, c_out, kw, stride, pad, t_out);
}

void Conv1dBackwardInputParallel(const double *dy, const double *w, double *dx,
                                 int t_in, int c_in, int c_out, int kw,
                                 int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
#pragma omp parallel for schedule(static)
  for (int ti = 0; ti < t_in; ti++)
    Conv1dInputFrame(dy, w, dx, ti, t_in, c_in, c_out, kw, stride, pad, t_out);
}

void Conv1dBackwardInput(const double *dy, const double *w, double *dx,
                         int t_in, int c_in, int c_out, int kw, int stride,
                         int pad) {
  Parallel() ? Conv1dBackwardInputParallel(dy, w, dx, t_in, c_in, c_out, kw, stride, pad)
             : Conv1dBackwardInputSerial(dy, w, dx, t_in, c_in, c_out, kw, stride, pad);
}

// Each output channel owns its own dw row and dbias entry.
static inline void Conv1dParamChannel(const double *x, const double *dy,
                                      double *dw, double *dbias, int o,
                                      int t_in, int c_in, int c_out, int kw,
                                      int stride, int pad, int t_out) {
  double *dwrow = dw + (size_t)o * c_in * kw;
  double db = 0.0;
  for (int t = 0; t < t_out; t++) {
    const double g = dy[(size_t)t * c_out + o];
    db += g;
    for (int dk = 0; dk < kw; dk++) {
      const int ti = t * stride + dk - pad;
      if (ti < 0 || ti >= t_in) continue;
      const double *xrow = x + (size_t)ti * c_in;
      for (int ci = 0; ci < c_in; ci++) dwrow[ci * kw + dk] += g * xrow[ci];
    }
  }
  if (dbias) dbias[o] += db;
}

void Conv1dBackwardParamsSerial(const double *x, const double *dy, double *dw,
                                double *dbias, int t_in, int c_in, int c_out,
                                int kw, int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
  for (int o = 0; o < c_out; o++)
    Conv1dParamChannel(x, dy, dw, dbias, o, t_in, c_in, c_out, kw, stride, pad, t_out);
}

void Conv1dBackwardParamsParallel(const double *x, const double *dy, double *dw,
                                  double *dbias, int t_in, int c_in, int c_out,
                                  int kw, int stride, int pad) {
  const int t_out = ConvOutLen(t_in, kw, stride, pad);
#pragma omp parallel for schedule(static)
  for (int o = 0; o < c_out; o++)
    Conv1dParamChannel(x, dy, dw, dbias, o, t_in, c_in, c_out, kw, stride, pad, t_out);
}

void Conv1dBackwardParams(const double *x, const double *dy, double *dw,
                          double *dbias, int t_in, int c_in, int c_out,
                          int kw, int stride, int pad) {
  Parallel() ? Conv1dBackwardParamsParallel(x, dy, dw, dbias, t_in, c_in, c_out, kw, stride, pad)
             : Conv1dBackwardParamsSerial(x, dy, dw, dbias, t_in, c_in, c_out, kw, stride, pad);
}

// ---------------------------------------------------------------------------
// Spectra / filterbank
// ---------------------------------------------------------------------------

static inline void SpectrumFrame(const double *frames, int f, int frame_len,
                                 int nfft, std::complex<double> *out) {
  RealSpectrum(frames + (size_t)f * frame_len, frame_len, nfft,
               out + (size_t)f * (nfft / 2 + 1));
}

void BatchSpectraSerial(const double *frames, int n_frames, int frame_len,
                        int nfft, std::complex<double> *out) {
  for (int f = 0; f < n_frames; f++) SpectrumFrame(frames, f, frame_len, nfft, out);
}

void BatchSpectraParallel(const double *frames, int n_frames, int frame_len,
                          int nfft, std::complex<double> *out) {
#pragma omp parallel for schedule(static)
  for (int f = 0; f < n_frames; f++) SpectrumFrame(frames, f, frame_len, nfft, out);
}

void BatchSpectra(const double *frames, int n_frames, int frame_len, int nfft,
                  std::complex<double> *out) {
  Parallel() ? BatchSpectraParallel(frames, n_frames, frame_len, nfft, out)
             : BatchSpectraSerial(frames, n_frames, frame_len, nfft, out);
}

static inline void FilterbankFrame(const double *power, const double *filters,
                                   double *out, int f, int n_bins, int n_filt) {
  const double *prow = power + (size_t)f * n_bins;
  double *orow = out + (size_t)f * n_filt;
  for (int m = 0; m < n_filt; m++) {
    const double *frow = filters + (size_t)m * n_bins;
    double acc = 0.0;
    for (int b = 0; b < n_bins; b++) acc += frow[b] * prow[b];
    orow[m] = acc;
  }
}

void ApplyFilterbankSerial(const double *power, const double *filters,
                           double *out, int n_frames, int n_bins, int n_filt) {
  for (int f = 0; f < n_frames; f++)
    FilterbankFrame(power, filters, out, f, n_bins, n_filt);
}

void ApplyFilterbankParallel(const double *power, const double *filters,
                             double *out, int n_frames, int n_bins, int n_filt) {
#pragma omp parallel for schedule(static)
  for (int f = 0; f < n_frames; f++)
    FilterbankFrame(power, filters, out, f, n_bins, n_filt);
}

void ApplyFilterbank(const double *power, const double *filters, double *out,
                     int n_frames, int n_bins, int n_filt) {
  Parallel() ? ApplyFilterbankParallel(power, filters, out, n_frames, n_bins, n_filt)
             : ApplyFilterbankSerial(power, filters, out, n_frames, n_bins, n_filt);
}

// ---------------------------------------------------------------------------
// Gammatone
// ---------------------------------------------------------------------------

static inline void GammatoneChannel(const double *x, int n, double fc_norm,
                                    double pole, int order, double *env) {
  // Demodulate at fc, cascade one-pole low-passes, take the magnitude.
  // The (1-pole)^order gain keeps unit response at the center frequency.
  const std::complex<double> rot(std::cos(-2.0 * M_PI * fc_norm),
                                 std::sin(-2.0 * M_PI * fc_norm));
  std::complex<double> phase(1.0, 0.0);
  const double a = pole;
  const double b = 1.0 - pole;
  std::complex<double> state[8];
  for (int s = 0; s < order; s++) state[s] = 0.0;
  for (int i = 0; i < n; i++) {
    std::complex<double> v = x[i] * phase;
    for (int s = 0; s < order; s++) {
      state[s] = b * v + a * state[s];
      v = state[s];
    }
    env[i] = std::abs(v);
    phase *= rot;
    // Renormalize occasionally so the oscillator does not drift.
    if ((i & 4095) == 4095) phase /= std::abs(phase);
  }
}

void GammatoneEnvelopesSerial(const double *x, int n, const double *fc_norm,
                              const double *pole, int n_channels, int order,
                              double *env) {
  for (int c = 0; c < n_channels; c++)
    GammatoneChannel(x, n, fc_norm[c], pole[c], order, env + (size_t)c * n);
}

void GammatoneEnvelopesParallel(const double *x, int n, const double *fc_norm,
                                const double *pole, int n_channels, int order,
                                double *env) {
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_channels; c++)
    GammatoneChannel(x, n, fc_norm[c], pole[c], order, env + (size_t)c * n);
}

void GammatoneEnvelopes(const double *x, int n, const double *fc_norm,
                        const double *pole, int n_channels, int order,
                        double *env) {
  Parallel() ? GammatoneEnvelopesParallel(x, n, fc_norm, pole, n_channels, order, env)
             : GammatoneEnvelopesSerial(x, n, fc_norm, pole, n_channels, order, env);
}

}  // namespace kernels
}  // namespace lvc
