// lvc/nn/tape.h

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

#ifndef LVC_NN_TAPE_H_
#define LVC_NN_TAPE_H_

#include <functional>
#include <utility>
#include <vector>

#include "lvc/nn/param_store.h"
#include "lvc/nn/tensor.h"

namespace lvc {
namespace nn {

// Reverse-mode autodiff over Mat values.  Build a graph per example, call
// Backward on the scalar loss, discard the tape.  Parameter leaves
// accumulate into Param::grad so batches sum naturally.
class Tape {
 public:
  int Leaf(Mat m);
  int ParamLeaf(Param *p);

  // [m x k] * [k x n]
  int Matmul(int a, int b);
  // x + bias broadcast over rows; bias is 1 x C
  int AddRowBias(int x, int bias);
  // x .* row broadcast over rows; row is 1 x C
  int MulRowBroadcast(int x, int row);
  // x: [T x Cin], w: [Cout x Cin*kw], bias: 1 x Cout (node id or -1)
  int Conv1d(int x, int w, int bias, int kw, int stride, int pad);
  int Tanh(int x);
  int Relu(int x);
  int Sigmoid(int x);
  int ConcatCols(const std::vector<int> &xs);
  int SliceCols(int x, int c0, int c1);
  // 1 x C -> T x C
  int BroadcastRow(int x, int t);
  // repeat each row `factor` times, then trim/pad (repeat last row) to
  // out_rows
  int UpsampleRows(int x, int factor, int out_rows);
  int MeanRows(int x);  // T x C -> 1 x C
  // rows gathered from an embedding table
  int LookupRows(Param *table, const std::vector<int> &ids);
  // mu + exp(0.5*logvar) .* eps
  int Reparameterize(int mu, int logvar, const Mat &eps);

  // losses (1 x 1 results)
  int L1Loss(int pred, const Mat &target);
  int KlLoss(int mu, int logvar);
  int BceLoss(int prob, double label);  // prob is 1 x 1, clamped internally
  // sum_i coeff_i * terms_i over 1 x 1 nodes
  int WeightedSum(const std::vector<std::pair<int, double>> &terms);

  const Mat &Value(int id) const { return nodes_[id].value; }
  int Rows(int id) const { return nodes_[id].value.rows; }
  int Cols(int id) const { return nodes_[id].value.cols; }

  // Seeds d(loss)/d(loss) = 1 and sweeps the graph in reverse.
  void Backward(int loss_id);

 private:
  using BackwardFn = std::function<void(Tape &, int self)>;

  struct Node {
    Mat value;
    Mat grad;
    BackwardFn backward;  // null for leaves
  };

  int Push(Mat value, BackwardFn backward);

  Mat &GradOf(int id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
  std::vector<std::pair<int, Param *>> param_nodes_;
};

}  // namespace nn
}  // namespace lvc

#endif  // LVC_NN_TAPE_H_
