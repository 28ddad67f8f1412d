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

#include "combqfi/qfi.hpp"

#include <Eigen/Eigenvalues>

#include "combqfi/performance.hpp"

namespace combqfi {

double qfi_mixed(const StatePair& s, double kernel_tol) {
  const Mat& rho = s.rho;
  const Mat& dr = s.drho;
  if (rho.rows() != rho.cols() || dr.rows() != rho.rows() || dr.cols() != rho.cols())
    throw std::invalid_argument("qfi_mixed: shape mismatch");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("qfi_mixed: rho is not hermitian");
  if ((dr - dr.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, dr.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("qfi_mixed: drho is not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const auto& lam = es.eigenvalues();
  Mat d = es.eigenvectors().adjoint() * dr * es.eigenvectors();
  double f = 0.0;
  for (int i = 0; i < lam.size(); ++i)
    for (int j = 0; j < lam.size(); ++j) {
      const double s2 = lam(i) + lam(j);
      if (s2 > kernel_tol) f += 2.0 * std::norm(d(i, j)) / s2;
    }
  return f;
}

double qfi_pure(const Vec& psi, const Vec& dpsi) {
  const cplx ov = psi.dot(dpsi);
  return 4.0 * (dpsi.squaredNorm() - std::norm(ov));
}

double channel_qfi(const KrausSet& k, double tol) {
  k.validate();
  if (!k.trace_preserving(1e-9)) throw std::invalid_argument("channel_qfi: Kraus set is not trace preserving");
  PerfData pd = build_perf(k);
  const Slices& s = pd.slices;
  SdpProblem p;
  int t = p.add_var(1.0);
  int h0 = p.add_vars(h_param_count(s.r));
  p.finalize();
  int b = p.add_block(s.dim + s.r * s.d);
  ArrowSpec a{s.cdot0, s.c};
  add_arrow(p.blocks[b], h0, s.r, s.d, a);
  for (int i = 0; i < s.dim; ++i) p.blocks[b].add(t, i, i, 0.5);
  auto sol = solve(p, tol);
  if (!sol.ok()) throw std::runtime_error("channel_qfi: solver returned " + to_string(sol.status));
  return 4.0 * sol.value;
}

}  // namespace combqfi
