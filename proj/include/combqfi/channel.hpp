// Copyright 2026 The combqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMBQFI_CHANNEL_HPP
#define COMBQFI_CHANNEL_HPP

#include <string>
#include <vector>

#include "combqfi/comb.hpp"
#include "combqfi/tensor.hpp"

namespace combqfi {

// Kraus operators (out x in) and their derivatives at the working point.
struct KrausSet {
  std::vector<Mat> kraus;
  std::vector<Mat> dkraus;
  Layout in_layout;
  Layout out_layout;

  int size() const { return static_cast<int>(kraus.size()); }
  int din() const { return total_dim(in_layout); }
  int dout() const { return total_dim(out_layout); }
  // throws on shape problems
  void validate() const;
  double tp_error() const;  // max |sum K^dag K - 1|
  bool trace_preserving(double tol = 1e-9) const { return tp_error() <= tol; }
  std::vector<Operator> kraus_ops() const;
};

class MixingMatrix {
 public:
  explicit MixingMatrix(Mat h, double tol = 1e-12);
  static MixingMatrix zero(int r) { return MixingMatrix(Mat::Zero(r, r)); }
  const Mat& h() const { return h_; }
  int dim() const { return static_cast<int>(h_.rows()); }

 private:
  Mat h_;
};

// One use of the channel: a Kraus set on (H, R) -> (H, R), probe factor
// first. A register of dimension 1 gives an uncorrelated channel.
struct Tooth {
  KrausSet kset;
  int dh = 2;
  int dr = 1;
};
Tooth make_tooth(std::vector<Mat> kraus, std::vector<Mat> dkraus, int dh, int dr);

// Register channels placed around the teeth of a block. Empty lists mean
// the identity.
struct CutStrategy {
  std::string name = "none";
  std::vector<Mat> lead;     // before the first tooth
  std::vector<Mat> between;  // between consecutive teeth
  std::vector<Mat> trail;    // after the last tooth
};

// Kraus vectors of m composed teeth on the layout
// (R_in, H1, H2, ..., H_2m, R_out); R_in or R_out are absent once closed.
struct BlockComb {
  int m = 0;
  Layout layout;
  Mat K;   // columns are Kraus vectors
  Mat dK;  // derivative vectors
  Layout out;  // trailing labels removed by Tr_out
  CombStructure structure;
  bool input_closed = false;
  bool output_traced = false;

  int count() const { return static_cast<int>(K.cols()); }
  int dim() const { return static_cast<int>(K.rows()); }
};

KrausSet apply_mixing(const KrausSet& k, const MixingMatrix& h);
BlockComb apply_mixing(const BlockComb& b, const MixingMatrix& h);

// Drops Kraus vectors with norm below prune_tol (zero disables pruning).
BlockComb compose_block(const Tooth& t, int m, const CutStrategy& cut = {}, double prune_tol = 1e-14);
// Single-use block from a register-free Kraus set.
BlockComb block_from_kraus(const KrausSet& k);

// Feeds sigma into R_in.
BlockComb close_input(const BlockComb& b, const Mat& sigma);
// Discards R_out: its index joins the Kraus index.
BlockComb trace_out_register(const BlockComb& b);
// Unitary remix to an orthogonal set of rank many vectors.
BlockComb canonicalize(const BlockComb& b, double rel_tol = 1e-12);

Operator choi_of(const KrausSet& k);
Operator choi_of(const BlockComb& b);
Operator dchoi_of(const KrausSet& k);
Operator dchoi_of(const BlockComb& b);

// Kraus operators of a classical stochastic map p(s|r) given as a matrix.
std::vector<Mat> stochastic_kraus(const Eigen::MatrixXd& p, double tol = 0.0);

}  // namespace combqfi

#endif
