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

#ifndef COMBQFI_SDP_HPP
#define COMBQFI_SDP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "combqfi/tensor.hpp"

namespace combqfi {

// Problems are stored in the form
//
//   minimize    c^T y
//   subject to  F0_b + sum_i y_i F_{i,b}  >= 0   for every block b
//               Aeq y = beq
//
// with y real. Hermitian matrix unknowns are expanded into real coordinates by
// the builders. Each F_{i,b} is a short list of dictionary terms
// a |w_x><w_y| + conj(a) |w_y><w_x|, where w_x is the unit vector e_x for
// x < n and the extra column U(:, x - n) otherwise.

struct SdpTerm {
  int var;
  int x;
  int y;
  cplx a;
};

struct LmiBlock {
  int n = 0;
  Mat F0;
  Mat U;
  std::vector<SdpTerm> terms;

  explicit LmiBlock(int size = 0);
  int add_column(const Vec& v);
  int dict_size() const { return n + static_cast<int>(U.cols()); }
  void add(int var, int x, int y, cplx a) { terms.push_back({var, x, y, a}); }
  // adds a hermitian matrix g (given densely) as coefficient of var, with
  // offset into the unit-vector range
  void add_dense(int var, const Mat& g, int row_off, int col_off, double tol = 0.0);
  Mat evaluate(const Eigen::VectorXd& y) const;
  Mat coefficient(int var) const;
};

struct SdpProblem {
  int nvars = 0;
  Eigen::VectorXd c;
  std::vector<LmiBlock> blocks;
  Eigen::MatrixXd Aeq;
  Eigen::VectorXd beq;

  int add_var(double cost = 0.0);
  int add_vars(int k);
  int add_block(int n);
  void add_equality(const Eigen::VectorXd& row, double rhs);
  void finalize();  // pads c / Aeq to nvars
  double objective(const Eigen::VectorXd& y) const { return c.dot(y); }
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };
std::string to_string(SdpStatus s);

struct SdpResiduals {
  double primal_eq = 0.0;
  double psd_min_eig = 0.0;
  double duality_gap = 0.0;
  double dual_infeas = 0.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double value = 0.0;
  double dual_value = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXd lambda;
  std::vector<Mat> S;
  std::vector<Mat> Z;
  SdpResiduals residuals;
  int iterations = 0;
  std::string message;
  bool ok() const { return status == SdpStatus::Optimal; }
};

struct SolverSettings {
  double tol = 1e-7;
  int max_iter = 120;
  bool verbose = false;
};

class SdpSolver {
 public:
  virtual ~SdpSolver() = default;
  virtual SdpSolution solve(const SdpProblem& p, const SolverSettings& s) const = 0;
};

// Infeasible primal-dual path following, HKM direction, Mehrotra corrector.
class InteriorPointSolver : public SdpSolver {
 public:
  SdpSolution solve(const SdpProblem& p, const SolverSettings& s) const override;
};

SdpSolution solve(const SdpProblem& p, double tol = 1e-7);
SdpSolution solve(const SdpProblem& p, const SolverSettings& s);

// Real symmetric image of a complex problem. Variables are shared, so the
// back map of y is the identity; matrices come back through complex_block.
SdpProblem embed_real(const SdpProblem& p);
Mat realify(const Mat& m);
Mat complex_block(const Mat& real_block);

void dump(const SdpProblem& p, std::ostream& os);

}  // namespace combqfi

#endif
