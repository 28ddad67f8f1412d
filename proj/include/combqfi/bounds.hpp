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

#ifndef COMBQFI_BOUNDS_HPP
#define COMBQFI_BOUNDS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combqfi/models.hpp"
#include "combqfi/performance.hpp"

namespace combqfi {

// Raised when an SDP does not reach an accepted optimum.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One SDP solve with what is needed to audit it.
struct StepResult {
  double value = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
  SdpResiduals residuals;
  int iterations = 0;
  double seconds = 0.0;
  Eigen::VectorXd h;  // h parameters at the optimum
  double max_residual() const;
};

enum class ScalingKind { SS, HS };
std::string to_string(ScalingKind k);

struct Asymptote {
  ScalingKind kind = ScalingKind::SS;
  double coefficient = 0.0;
};

struct BoundSeries {
  int m = 1;
  std::map<int, double> values;
  std::map<int, StepResult> steps;  // keyed by the N reached
  std::optional<Asymptote> asymptote;
};

struct BoundOptions {
  double tol = 1e-8;
  double feas_tol = 1e-7;  // beta_1 = 0 residual accepted as feasible
  bool verbose = false;
};

// New bound from one block given the running bound f_prev.
StepResult iterative_bound_step(const BlockComb& b, double f_prev, const BoundOptions& o = {});

// Bounds at the requested N. The chain is cut into blocks of m uses; the
// last block may be shorter.
BoundSeries iterative_bound(const Model& model, int m, const std::vector<int>& ns, const BoundOptions& o = {});

// Exact adaptive QFI of the full N-use comb.
StepResult exact_comb_qfi(const Model& model, int n, const BoundOptions& o = {});

// f_prev + 4 min_h (|alpha(h)| + sqrt(f_prev) |beta(h)|)
StepResult old_bound_step(const KrausSet& k, double f_prev, const BoundOptions& o = {});
BoundSeries old_bound_series(const KrausSet& k, int nmax, const BoundOptions& o = {});

struct AsymptoticResult {
  bool feasible = false;  // SS: beta_1 = 0 admits a solution
  double coefficient = 0.0;
  double beta1_residual = 0.0;
  StepResult step;
};
AsymptoticResult asymptotic_ss(const BlockComb& b, const BoundOptions& o = {});
AsymptoticResult asymptotic_hs(const BlockComb& b, const BoundOptions& o = {});

struct Classification {
  Asymptote asymptote;
  double beta1_residual = 0.0;
  Eigen::VectorXd h;
  StepResult step;
};
// SS when the beta_1 = 0 system has a solution within o.feas_tol, else HS.
Classification classify_scaling(const BlockComb& b, const BoundOptions& o = {});

// a(n+1) = a(n) + A + 2 B sqrt(a(n)), a(0) = 0
Asymptote lemma1_limit(double A, double B);
std::vector<double> lemma1_sequence(double A, double B, int n);

}  // namespace combqfi

#endif
