// lvc/kernels/kernels.h

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

#ifndef LVC_KERNELS_KERNELS_H_
#define LVC_KERNELS_KERNELS_H_

#include <complex>
#include <cstdint>
#include <vector>

// Data-parallel inner loops used across the toolkit.  Every kernel has a
// serial reference implementation and an OpenMP variant that distributes
// independent output elements over threads.  Because each output element is
// computed by exactly the same arithmetic in the same order in both
// variants, the two are bit-identical for any thread count; tests assert
// this and the bench target measures the gap.

namespace lvc {
namespace kernels {

enum class ExecMode { kSerial, kParallel };

// Process-wide dispatch switch.  Defaults to kParallel.
void SetExecMode(ExecMode mode);
ExecMode GetExecMode();

// C[m x n] = A[m x k] * B[k x n], row-major.
void MatmulNN(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulNNSerial(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulNNParallel(const double *a, const double *b, double *c, int m, int k, int n);

// C[m x n] = A[m x k] * B[n x k]^T.
void MatmulNT(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulNTSerial(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulNTParallel(const double *a, const double *b, double *c, int m, int k, int n);

// C[m x n] = A[k x m]^T * B[k x n].
void MatmulTN(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulTNSerial(const double *a, const double *b, double *c, int m, int k, int n);
void MatmulTNParallel(const double *a, const double *b, double *c, int m, int k, int n);

// 1-D convolution over time.  x is [t_in x c_in] row-major, w is
// [c_out x (c_in*kw)], y is [t_out x c_out] with
// t_out = (t_in + 2*pad - kw) / stride + 1 and zero padding.
void Conv1dForward(const double *x, const double *w, const double *bias,
                   double *y, int t_in, int c_in, int c_out, int kw,
                   int stride, int pad);
void Conv1dForwardSerial(const double *x, const double *w, const double *bias,
                         double *y, int t_in, int c_in, int c_out, int kw,
                         int stride, int pad);
void Conv1dForwardParallel(const double *x, const double *w, const double *bias,
                           double *y, int t_in, int c_in, int c_out, int kw,
                           int stride, int pad);

// Gradient w.r.t. the input; dx must be zero-initialized by the caller.
void Conv1dBackwardInput(const double *dy, const double *w, double *dx,
                         int t_in, int c_in, int c_out, int kw, int stride,
                         int pad);
void Conv1dBackwardInputSerial(const double *dy, const double *w, double *dx,
                               int t_in, int c_in, int c_out, int kw,
                               int stride, int pad);
void Conv1dBackwardInputParallel(const double *dy, const double *w, double *dx,
                                 int t_in, int c_in, int c_out, int kw,
                                 int stride, int pad);

// Gradients w.r.t. weights and bias; accumulated into dw/dbias.
void Conv1dBackwardParams(const double *x, const double *dy, double *dw,
                          double *dbias, int t_in, int c_in, int c_out,
                          int kw, int stride, int pad);
void Conv1dBackwardParamsSerial(const double *x, const double *dy, double *dw,
                                double *dbias, int t_in, int c_in, int c_out,
                                int kw, int stride, int pad);
void Conv1dBackwardParamsParallel(const double *x, const double *dy, double *dw,
                                  double *dbias, int t_in, int c_in, int c_out,
                                  int kw, int stride, int pad);

// One-sided magnitude spectra for a batch of frames.  frames is
// [n_frames x frame_len] (already windowed), out is [n_frames x (nfft/2+1)].
void BatchSpectra(const double *frames, int n_frames, int frame_len, int nfft,
                  std::complex<double> *out);
void BatchSpectraSerial(const double *frames, int n_frames, int frame_len,
                        int nfft, std::complex<double> *out);
void BatchSpectraParallel(const double *frames, int n_frames, int frame_len,
                          int nfft, std::complex<double> *out);

// Apply a filterbank to power spectra: mel[f x n_filt] from
// power[f x n_bins], filters given as dense [n_filt x n_bins].
void ApplyFilterbank(const double *power, const double *filters, double *out,
                     int n_frames, int n_bins, int n_filt);
void ApplyFilterbankSerial(const double *power, const double *filters,
                           double *out, int n_frames, int n_bins, int n_filt);
void ApplyFilterbankParallel(const double *power, const double *filters,
                             double *out, int n_frames, int n_bins, int n_filt);

// Complex one-pole gammatone cascade per channel: for each channel c the
// input is demodulated at fc[c], run through `order` cascaded one-pole
// low-passes with pole radius pole[c], and the magnitude envelope is
// written to env[c * n + i].
void GammatoneEnvelopes(const double *x, int n, const double *fc_norm,
                        const double *pole, int n_channels, int order,
                        double *env);
void GammatoneEnvelopesSerial(const double *x, int n, const double *fc_norm,
                              const double *pole, int n_channels, int order,
                              double *env);
void GammatoneEnvelopesParallel(const double *x, int n, const double *fc_norm,
                                const double *pole, int n_channels, int order,
                                double *env);

}  // namespace kernels
}  // namespace lvc

#endif  // LVC_KERNELS_KERNELS_H_
