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

#ifndef COMBQFI_COMB_HPP
#define COMBQFI_COMB_HPP

#include <vector>

#include "combqfi/sdp.hpp"
#include "combqfi/tensor.hpp"

namespace combqfi {

// Teeth (K1,K2), (K3,K4), ... An empty Layout stands for a trivial space.
struct CombStructure {
  struct Slot {
    Layout in;
    Layout out;
  };
  std::vector<Slot> teeth;

  CombStructure() = default;
  explicit CombStructure(std::vector<Slot> t) : teeth(std::move(t)) {}
  // Builds a structure straight from the 2N space dimensions.
  static CombStructure from_dims(const std::vector<int>& dims);

  int size() const { return static_cast<int>(teeth.size()); }
  std::vector<int> dims() const;  // d(K1), ..., d(K2N)
  Layout layout() const;          // K1 K2 ... K2N concatenated
  int total_dim() const;
};

// Sparse matrix entry used by the chain builders.
struct Entry {
  int i;
  int j;
  cplx v;
};

// X -> Tr_S X (x) 1_S / d_S, keeping every subsystem in place.
Mat trace_replace(const Mat& x, const std::vector<int>& dims, const std::vector<int>& positions);

// Affine comb conditions on E (hermitian, on the structure layout), written
// as a real linear system over the D^2 real coordinates of E:
// Re/Im of the upper triangle, diagonal first.
struct CombConditions {
  std::vector<int> dims;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  // max violation of the chain and normalization conditions, and min eig
  double residual(const Mat& e) const;
  double min_eig_of(const Mat& e) const;
};

CombConditions comb_conditions(const CombStructure& s);
double comb_residual(const CombStructure& s, const Mat& e);
bool is_comb(const CombStructure& s, const Mat& e, double tol = 1e-8);
Eigen::VectorXd hermitian_coords(const Mat& e);
Mat hermitian_from_coords(const Eigen::VectorXd& x, int d);

// Orthogonal projector onto the linear space underlying the comb conditions:
// solutions of the homogeneous chain with zero normalization. With a
// trivial K1 this is the space of traceless operators in the chain.
class CombProjector {
 public:
  explicit CombProjector(std::vector<int> dims);
  explicit CombProjector(const CombStructure& s) : CombProjector(s.dims()) {}
  Mat apply(const Mat& x) const;
  // Orthonormal (Hilbert-Schmidt) hermitian basis of the projected space.
  std::vector<Mat> hermitian_basis(double tol = 1e-10) const;
  const std::vector<int>& dims() const { return dims_; }

 private:
  std::vector<int> dims_;
};

struct XmSplit {
  Mat x1;  // component in the comb space
  Mat x2;  // orthogonal remainder
};
XmSplit project_Xm(const Mat& x, const CombStructure& s);

// The dual chain Q^(1), ..., Q^(N) with Tr_{2k-1} Q^(k) = Q^(k-1) (x) 1_{2k-2},
// parametrized without equalities. Every variable carries its coefficient
// in Q^(N) (x) 1_{2N} as an upper-triangle entry list.
struct DualChain {
  std::vector<int> dims;
  int first_var = 0;
  int nvars = 0;
  std::vector<std::vector<Entry>> coef;
  std::vector<int> level;
  Eigen::VectorXd trace_q1;  // Tr Q^(1) per variable

  int block_dim() const;
  // adds the coefficients into blk at the given diagonal offset
  void place(LmiBlock& blk, int offset) const;
  Mat top(const Eigen::VectorXd& y) const;  // Q^(N) (x) 1 at y
};

DualChain dual_chain_basis(const std::vector<int>& dims);
DualChain add_dual_chain(SdpProblem& p, const std::vector<int>& dims);

// min Tr Q^(1) s.t. Q^(N) (x) 1 >= a, the chain, with a hermitian.
SdpProblem dual_comb_conditions(const CombStructure& s, const Mat& a);

// Primal max Tr(a C) over combs, parametrized as C0 + sum x_b X_b.
SdpProblem primal_comb_problem(const CombStructure& s, const Mat& a);

// Complex spanning set of the dual affine space: operators Y^(N-1) (x) 1 with
// the Y chain (Y^(0) scalar for a trivial first space). beta1 vanishes
// exactly when beta lies in this span.
std::vector<Mat> beta1_zero_conditions(const CombStructure& s);
// Distance of x from the span above, relative to max(1, |x|).
double beta1_residual(const std::vector<Mat>& span, const Mat& x);

}  // namespace combqfi

#endif
