// lvc/kernels/fft.cc

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

#include "lvc/kernels/fft.h"

#include <cmath>
#include <cstring>

#include "lvc/common.h"

namespace lvc {
namespace kernels {

void Fft(std::complex<double> *data, int n, bool inverse) {
  if (!IsPowerOfTwo(n)) throw InvalidInput("Fft: size must be a power of two");

  // Bit-reversal permutation.
  for (int i = 1, j = 0; i < n; i++) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / len;
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; k++) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / n;
    for (int i = 0; i < n; i++) data[i] *= scale;
  }
}

void RealSpectrum(const double *frame, int frame_len, int n,
                  std::complex<double> *out) {
  if (frame_len > n) throw InvalidInput("RealSpectrum: frame longer than fft size");
  std::vector<std::complex<double>> buf(n);
  for (int i = 0; i < frame_len; i++) buf[i] = frame[i];
  Fft(buf.data(), n, false);
  std::memcpy(out, buf.data(), sizeof(std::complex<double>) * (n / 2 + 1));
}

void RealInverse(const std::complex<double> *spec, int n, double *out) {
  std::vector<std::complex<double>> buf(n);
  for (int k = 0; k <= n / 2; k++) buf[k] = spec[k];
  for (int k = n / 2 + 1; k < n; k++) buf[k] = std::conj(spec[n - k]);
  Fft(buf.data(), n, true);
  for (int i = 0; i < n; i++) out[i] = buf[i].real();
}

}  // namespace kernels
}  // namespace lvc
