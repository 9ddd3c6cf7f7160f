// lvc/nn/tensor.h

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

#ifndef LVC_NN_TENSOR_H_
#define LVC_NN_TENSOR_H_

#include <vector>

namespace lvc {
namespace nn {

// Row-major 2-D array; the only tensor shape the models need (time x
// channels, or 1 x dim for vectors and scalars).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

  double &At(int r, int c) { return v[(size_t)r * cols + c]; }
  double At(int r, int c) const { return v[(size_t)r * cols + c]; }
  size_t Size() const { return v.size(); }
  bool SameShape(const Mat &o) const { return rows == o.rows && cols == o.cols; }
};

}  // namespace nn
}  // namespace lvc

#endif  // LVC_NN_TENSOR_H_
