// lvc/nn/tape.cc

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

#include "lvc/nn/tape.h"

#include <algorithm>
#include <cmath>

#include "lvc/common.h"
#include "lvc/kernels/kernels.h"

namespace lvc {
namespace nn {

int Tape::Push(Mat value, BackwardFn backward) {
  Node n;
  n.grad = Mat(value.rows, value.cols);
  n.value = std::move(value);
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int Tape::Leaf(Mat m) { return Push(std::move(m), nullptr); }

int Tape::ParamLeaf(Param *p) {
  int id = Push(p->value, nullptr);
  param_nodes_.push_back({id, p});
  return id;
}

int Tape::Matmul(int a, int b) {
  const Mat &A = Value(a), &B = Value(b);
  if (A.cols != B.rows) throw InvalidInput("Tape::Matmul: shape mismatch");
  Mat out(A.rows, B.cols);
  kernels::MatmulNN(A.v.data(), B.v.data(), out.v.data(), A.rows, A.cols, B.cols);
  return Push(std::move(out), [a, b](Tape &t, int self) {
    const Mat &A = t.Value(a), &B = t.Value(b);
    const Mat &G = t.GradOf(self);
    // dA += G * B^T ; dB += A^T * G
    Mat da(A.rows, A.cols), db(B.rows, B.cols);
    kernels::MatmulNT(G.v.data(), B.v.data(), da.v.data(), G.rows, G.cols, A.cols);
    kernels::MatmulTN(A.v.data(), G.v.data(), db.v.data(), A.cols, A.rows, G.cols);
    Mat &ga = t.GradOf(a);
    for (size_t i = 0; i < ga.Size(); i++) ga.v[i] += da.v[i];
    Mat &gb = t.GradOf(b);
    for (size_t i = 0; i < gb.Size(); i++) gb.v[i] += db.v[i];
  });
}

int Tape::AddRowBias(int x, int bias) {
  const Mat &X = Value(x), &B = Value(bias);
  if (B.rows != 1 || B.cols != X.cols)
    throw InvalidInput("Tape::AddRowBias: bias must be 1 x cols");
  Mat out = X;
  for (int r = 0; r < X.rows; r++)
    for (int c = 0; c < X.cols; c++) out.At(r, c) += B.At(0, c);
  return Push(std::move(out), [x, bias](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (size_t i = 0; i < gx.Size(); i++) gx.v[i] += G.v[i];
    Mat &gb = t.GradOf(bias);
    for (int r = 0; r < G.rows; r++)
      for (int c = 0; c < G.cols; c++) gb.At(0, c) += G.At(r, c);
  });
}

int Tape::MulRowBroadcast(int x, int row) {
  const Mat &X = Value(x), &R = Value(row);
  if (R.rows != 1 || R.cols != X.cols)
    throw InvalidInput("Tape::MulRowBroadcast: row must be 1 x cols");
  Mat out = X;
  for (int r = 0; r < X.rows; r++)
    for (int c = 0; c < X.cols; c++) out.At(r, c) *= R.At(0, c);
  return Push(std::move(out), [x, row](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    const Mat &X = t.Value(x), &R = t.Value(row);
    Mat &gx = t.GradOf(x);
    Mat &gr = t.GradOf(row);
    for (int r = 0; r < G.rows; r++)
      for (int c = 0; c < G.cols; c++) {
        gx.At(r, c) += G.At(r, c) * R.At(0, c);
        gr.At(0, c) += G.At(r, c) * X.At(r, c);
      }
  });
}

int Tape::Conv1d(int x, int w, int bias, int kw, int stride, int pad) {
  const Mat &X = Value(x), &W = Value(w);
  const int c_in = X.cols;
  if (W.cols != c_in * kw) throw InvalidInput("Tape::Conv1d: weight shape mismatch");
  const int c_out = W.rows;
  const int t_out = (X.rows + 2 * pad - kw) / stride + 1;
  if (t_out < 1) throw InvalidInput("Tape::Conv1d: output would be empty");
  const double *bias_ptr = bias >= 0 ? Value(bias).v.data() : nullptr;
  if (bias >= 0 && (Value(bias).rows != 1 || Value(bias).cols != c_out))
    throw InvalidInput("Tape::Conv1d: bias shape mismatch");

  Mat out(t_out, c_out);
  kernels::Conv1dForward(X.v.data(), W.v.data(), bias_ptr, out.v.data(), X.rows,
                         c_in, c_out, kw, stride, pad);
  return Push(std::move(out), [x, w, bias, kw, stride, pad](Tape &t, int self) {
    const Mat &X = t.Value(x), &W = t.Value(w);
    const Mat &G = t.GradOf(self);
    const int c_in = X.cols, c_out = W.rows;

    Mat dx(X.rows, X.cols);
    kernels::Conv1dBackwardInput(G.v.data(), W.v.data(), dx.v.data(), X.rows,
                                 c_in, c_out, kw, stride, pad);
    Mat &gx = t.GradOf(x);
    for (size_t i = 0; i < gx.Size(); i++) gx.v[i] += dx.v[i];

    Mat &gw = t.GradOf(w);
    double *gb = bias >= 0 ? t.GradOf(bias).v.data() : nullptr;
    kernels::Conv1dBackwardParams(X.v.data(), G.v.data(), gw.v.data(), gb,
                                  X.rows, c_in, c_out, kw, stride, pad);
  });
}

int Tape::Tanh(int x) {
  Mat out = Value(x);
  for (double &v : out.v) v = std::tanh(v);
  return Push(std::move(out), [x](Tape &t, int self) {
    const Mat &Y = t.Value(self), &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (size_t i = 0; i < gx.Size(); i++)
      gx.v[i] += G.v[i] * (1.0 - Y.v[i] * Y.v[i]);
  });
}

int Tape::Relu(int x) {
  Mat out = Value(x);
  for (double &v : out.v) v = std::max(v, 0.0);
  return Push(std::move(out), [x](Tape &t, int self) {
    const Mat &Y = t.Value(self), &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (size_t i = 0; i < gx.Size(); i++)
      if (Y.v[i] > 0.0) gx.v[i] += G.v[i];
  });
}

int Tape::Sigmoid(int x) {
  Mat out = Value(x);
  for (double &v : out.v) v = 1.0 / (1.0 + std::exp(-v));
  return Push(std::move(out), [x](Tape &t, int self) {
    const Mat &Y = t.Value(self), &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (size_t i = 0; i < gx.Size(); i++)
      gx.v[i] += G.v[i] * Y.v[i] * (1.0 - Y.v[i]);
  });
}

int Tape::ConcatCols(const std::vector<int> &xs) {
  if (xs.empty()) throw InvalidInput("Tape::ConcatCols: empty input");
  const int rows = Value(xs[0]).rows;
  int cols = 0;
  for (int id : xs) {
    if (Value(id).rows != rows) throw InvalidInput("Tape::ConcatCols: row mismatch");
    cols += Value(id).cols;
  }
  Mat out(rows, cols);
  int off = 0;
  for (int id : xs) {
    const Mat &X = Value(id);
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < X.cols; c++) out.At(r, off + c) = X.At(r, c);
    off += X.cols;
  }
  return Push(std::move(out), [xs](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    int off = 0;
    for (int id : xs) {
      Mat &gx = t.GradOf(id);
      for (int r = 0; r < gx.rows; r++)
        for (int c = 0; c < gx.cols; c++) gx.At(r, c) += G.At(r, off + c);
      off += gx.cols;
    }
  });
}

int Tape::SliceCols(int x, int c0, int c1) {
  const Mat &X = Value(x);
  if (c0 < 0 || c1 > X.cols || c0 >= c1)
    throw InvalidInput("Tape::SliceCols: bad range");
  Mat out(X.rows, c1 - c0);
  for (int r = 0; r < X.rows; r++)
    for (int c = c0; c < c1; c++) out.At(r, c - c0) = X.At(r, c);
  return Push(std::move(out), [x, c0](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (int r = 0; r < G.rows; r++)
      for (int c = 0; c < G.cols; c++) gx.At(r, c0 + c) += G.At(r, c);
  });
}

int Tape::BroadcastRow(int x, int t_rows) {
  const Mat &X = Value(x);
  if (X.rows != 1) throw InvalidInput("Tape::BroadcastRow: input must be 1 x C");
  Mat out(t_rows, X.cols);
  for (int r = 0; r < t_rows; r++)
    for (int c = 0; c < X.cols; c++) out.At(r, c) = X.At(0, c);
  return Push(std::move(out), [x](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (int r = 0; r < G.rows; r++)
      for (int c = 0; c < G.cols; c++) gx.At(0, c) += G.At(r, c);
  });
}

int Tape::UpsampleRows(int x, int factor, int out_rows) {
  const Mat &X = Value(x);
  const int full = X.rows * factor;
  if (out_rows > full && out_rows - full >= factor)
    throw InvalidInput("Tape::UpsampleRows: frame mismatch beyond one group");
  if (full - out_rows >= factor && out_rows < full)
    throw InvalidInput("Tape::UpsampleRows: frame mismatch beyond one group");
  Mat out(out_rows, X.cols);
  for (int r = 0; r < out_rows; r++) {
    const int src = std::min(r / factor, X.rows - 1);
    for (int c = 0; c < X.cols; c++) out.At(r, c) = X.At(src, c);
  }
  return Push(std::move(out), [x, factor](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    for (int r = 0; r < G.rows; r++) {
      const int src = std::min(r / factor, gx.rows - 1);
      for (int c = 0; c < G.cols; c++) gx.At(src, c) += G.At(r, c);
    }
  });
}

int Tape::MeanRows(int x) {
  const Mat &X = Value(x);
  Mat out(1, X.cols);
  for (int r = 0; r < X.rows; r++)
    for (int c = 0; c < X.cols; c++) out.At(0, c) += X.At(r, c);
  for (int c = 0; c < X.cols; c++) out.At(0, c) /= X.rows;
  return Push(std::move(out), [x](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    Mat &gx = t.GradOf(x);
    const double inv = 1.0 / gx.rows;
    for (int r = 0; r < gx.rows; r++)
      for (int c = 0; c < gx.cols; c++) gx.At(r, c) += G.At(0, c) * inv;
  });
}

int Tape::LookupRows(Param *table, const std::vector<int> &ids) {
  const Mat &T = table->value;
  for (int id : ids)
    if (id < 0 || id >= T.rows)
      throw InvalidInput("Tape::LookupRows: id out of range");
  Mat out(static_cast<int>(ids.size()), T.cols);
  for (size_t r = 0; r < ids.size(); r++)
    for (int c = 0; c < T.cols; c++) out.At(static_cast<int>(r), c) = T.At(ids[r], c);
  return Push(std::move(out), [table, ids](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    for (size_t r = 0; r < ids.size(); r++)
      for (int c = 0; c < G.cols; c++)
        table->grad.At(ids[r], c) += G.At(static_cast<int>(r), c);
  });
}

int Tape::Reparameterize(int mu, int logvar, const Mat &eps) {
  const Mat &M = Value(mu), &L = Value(logvar);
  if (!M.SameShape(L) || !M.SameShape(eps))
    throw InvalidInput("Tape::Reparameterize: shape mismatch");
  Mat out = M;
  for (size_t i = 0; i < out.Size(); i++)
    out.v[i] += std::exp(0.5 * L.v[i]) * eps.v[i];
  return Push(std::move(out), [mu, logvar, eps](Tape &t, int self) {
    const Mat &G = t.GradOf(self);
    const Mat &L = t.Value(logvar);
    Mat &gm = t.GradOf(mu);
    Mat &gl = t.GradOf(logvar);
    for (size_t i = 0; i < G.Size(); i++) {
      gm.v[i] += G.v[i];
      gl.v[i] += G.v[i] * 0.5 * std::exp(0.5 * L.v[i]) * eps.v[i];
    }
  });
}

int Tape::L1Loss(int pred, const Mat &target) {
  const Mat &P = Value(pred);
  if (!P.SameShape(target)) throw InvalidInput("Tape::L1Loss: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < P.Size(); i++) acc += std::abs(P.v[i] - target.v[i]);
  Mat out(1, 1);
  out.At(0, 0) = acc / P.Size();
  return Push(std::move(out), [pred, target](Tape &t, int self) {
    const double g = t.GradOf(self).At(0, 0);
    const Mat &P = t.Value(pred);
    Mat &gp = t.GradOf(pred);
    const double inv = 1.0 / P.Size();
    for (size_t i = 0; i < P.Size(); i++) {
      const double d = P.v[i] - target.v[i];
      gp.v[i] += g * inv * (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0));
    }
  });
}

int Tape::KlLoss(int mu, int logvar) {
  const Mat &M = Value(mu), &L = Value(logvar);
  if (!M.SameShape(L)) throw InvalidInput("Tape::KlLoss: shape mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < M.Size(); i++) {
    if (!std::isfinite(M.v[i]) || !std::isfinite(L.v[i]))
      throw InvalidInput("Tape::KlLoss: non-finite input");
    acc += 0.5 * (M.v[i] * M.v[i] + std::exp(L.v[i]) - 1.0 - L.v[i]);
  }
  Mat out(1, 1);
  out.At(0, 0) = acc / M.Size();
  return Push(std::move(out), [mu, logvar](Tape &t, int self) {
    const double g = t.GradOf(self).At(0, 0);
    const Mat &M = t.Value(mu), &L = t.Value(logvar);
    Mat &gm = t.GradOf(mu);
    Mat &gl = t.GradOf(logvar);
    const double inv = 1.0 / M.Size();
    for (size_t i = 0; i < M.Size(); i++) {
      gm.v[i] += g * inv * M.v[i];
      gl.v[i] += g * inv * 0.5 * (std::exp(L.v[i]) - 1.0);
    }
  });
}

int Tape::BceLoss(int prob, double label) {
  const Mat &P = Value(prob);
  if (P.rows != 1 || P.cols != 1) throw InvalidInput("Tape::BceLoss: prob must be scalar");
  const double p = std::clamp(P.At(0, 0), 1e-7, 1.0 - 1e-7);
  Mat out(1, 1);
  out.At(0, 0) = -(label * std::log(p) + (1.0 - label) * std::log(1.0 - p));
  return Push(std::move(out), [prob, label](Tape &t, int self) {
    const double g = t.GradOf(self).At(0, 0);
    const double p = std::clamp(t.Value(prob).At(0, 0), 1e-7, 1.0 - 1e-7);
    t.GradOf(prob).At(0, 0) += g * (-label / p + (1.0 - label) / (1.0 - p));
  });
}

int Tape::WeightedSum(const std::vector<std::pair<int, double>> &terms) {
  double acc = 0.0;
  for (const auto &[id, coeff] : terms) {
    const Mat &X = Value(id);
    if (X.rows != 1 || X.cols != 1)
      throw InvalidInput("Tape::WeightedSum: terms must be scalars");
    acc += coeff * X.At(0, 0);
  }
  Mat out(1, 1);
  out.At(0, 0) = acc;
  return Push(std::move(out), [terms](Tape &t, int self) {
    const double g = t.GradOf(self).At(0, 0);
    for (const auto &[id, coeff] : terms) t.GradOf(id).At(0, 0) += g * coeff;
  });
}

void Tape::Backward(int loss_id) {
  if (Value(loss_id).rows != 1 || Value(loss_id).cols != 1)
    throw InvalidInput("Tape::Backward: loss must be scalar");
  GradOf(loss_id).At(0, 0) = 1.0;
  for (int id = loss_id; id >= 0; id--)
    if (nodes_[id].backward) nodes_[id].backward(*this, id);
  for (auto &[id, p] : param_nodes_) {
    const Mat &g = nodes_[id].grad;
    for (size_t i = 0; i < g.Size(); i++) p->grad.v[i] += g.v[i];
  }
}

}  // namespace nn
}  // namespace lvc
