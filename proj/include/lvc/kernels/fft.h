// lvc/kernels/fft.h

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

#ifndef LVC_KERNELS_FFT_H_
#define LVC_KERNELS_FFT_H_

#include <complex>
#include <vector>

namespace lvc {
namespace kernels {

// In-place iterative radix-2 complex FFT.  n must be a power of two.
// The inverse transform includes the 1/n scaling.  Every call recomputes
// twiddles the same way, so results are bit-reproducible run to run.
void Fft(std::complex<double> *data, int n, bool inverse);

// FFT of a real frame zero-padded to n, returning the n/2+1 one-sided
// spectrum.
void RealSpectrum(const double *frame, int frame_len, int n,
                  std::complex<double> *out);

// Inverse of RealSpectrum: rebuild a length-n real signal from a one-sided
// spectrum (conjugate symmetry is imposed).
void RealInverse(const std::complex<double> *spec, int n, double *out);

inline bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace kernels
}  // namespace lvc

#endif  // LVC_KERNELS_FFT_H_
