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

#ifndef COMBQFI_PERFORMANCE_HPP
#define COMBQFI_PERFORMANCE_HPP

#include <vector>

#include "combqfi/channel.hpp"
#include "combqfi/comb.hpp"
#include "combqfi/sdp.hpp"

namespace combqfi {

// Partial inner products of the Kraus vectors with the output basis:
// column k * d + j of c is (1 (x) <j|) |K_k>, likewise cdot0 for |dK_k>.
struct Slices {
  Layout in_layout;
  int dim = 0;  // dimension of in_layout
  int r = 0;    // Kraus count
  int d = 0;    // dimension of the traced labels
  Mat c;
  Mat cdot0;
};

Slices slices_of(const BlockComb& b);
Slices slices_of(const KrausSet& k);

// Real parametrization of hermitian h (r x r): r diagonal entries, then the
// real and imaginary parts of each upper pair.
struct HEntry {
  int k;
  int kp;
  cplx coef;
};
inline int h_param_count(int r) { return r * r; }
std::vector<std::vector<HEntry>> h_entries(int r);
MixingMatrix h_from_params(const Eigen::VectorXd& p, int r);

struct PerfData {
  Slices slices;
  Mat cdot(const MixingMatrix& h) const;  // columns of |cdot_kj(h)>
  Mat omega(const MixingMatrix& h) const;
  Mat beta(const MixingMatrix& h) const;
};

PerfData build_perf(const BlockComb& b);
PerfData build_perf(const KrausSet& k);

// Columns of the upper right corner of an arrow block
//   [[X, Cdot], [Cdot^dag, 1]]
// with Cdot = e0 - i g (h (x) 1_d)^T, i.e. column (k, j) picks up
// -i sum_k' h_kk' g(:, k' d + j).
struct ArrowSpec {
  Mat e0;
  Mat g;
};

// The block must have size e0.rows() + r d; X is left to the caller.
// h0 < 0 means a fixed h already folded into e0.
void add_arrow(LmiBlock& blk, int h0, int r, int d, const ArrowSpec& a);

// Adds scale * beta(h) at (row_off, col_off) plus its adjoint.
void add_beta(LmiBlock& blk, int h0, const Slices& s, cplx scale, int row_off, int col_off);

// Iterative step arrow: e0 = |0>|cdot0> + (sqrt f / 2)|1>|c>, g = |0>|c>.
// With f = 0 the virtual qubit is dropped (dv = 1).
ArrowSpec step_arrow(const Slices& s, double f_prev);

// Control comb dims {dv, d(in_1), d(out_1), ..., d(in_m)}.
std::vector<int> control_dims(const BlockComb& b, int dv);
std::vector<int> control_dims(const KrausSet& k, int dv);

// Linear conditions P(beta(h)) = 0 over the h parameters, reduced to
// independent rows.
struct Beta1System {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd h_ls;  // least squares solution
  double residual = 0.0;  // |P beta(h_ls)| / max(1, |P beta0|)
};
Beta1System beta1_system(const PerfData& p, const std::vector<int>& dims);
Mat beta1_of(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims);

double lambda_A(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims, double tol = 1e-9);
double lambda_B(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims, double tol = 1e-9);

}  // namespace combqfi

#endif
