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

#include "combqfi/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace combqfi {

double StepResult::max_residual() const {
  return std::max({residuals.primal_eq, -residuals.psd_min_eig, std::abs(residuals.duality_gap),
                   residuals.dual_infeas, 0.0});
}

std::string to_string(ScalingKind k) { return k == ScalingKind::SS ? "SS" : "HS"; }

namespace {

StepResult run(const SdpProblem& p, const BoundOptions& o, int h0, int nh, const char* what) {
  SolverSettings st;
  st.tol = o.tol;
  st.verbose = o.verbose;
  auto t0 = std::chrono::steady_clock::now();
  SdpSolution sol = solve(p, st);
  StepResult r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.status = sol.status;
  r.residuals = sol.residuals;
  r.iterations = sol.iterations;
  if (!sol.ok())
    throw SolverError(std::string(what) + ": solver returned " + to_string(sol.status) + " (" + sol.message + ")");
  r.value = sol.value;
  if (h0 >= 0) r.h = sol.y.segment(h0, nh);
  return r;
}

}  // namespace

StepResult iterative_bound_step(const BlockComb& b, double f_prev, const BoundOptions& o) {
  PerfData pd = build_perf(b);
  const Slices& s = pd.slices;
  const int dv = f_prev > 0 ? 2 : 1;
  SdpProblem p;
  DualChain ch = add_dual_chain(p, control_dims(b, dv));
  const int nh = h_param_count(s.r);
  const int h0 = p.add_vars(nh);
  p.finalize();
  int bi = p.add_block(dv * s.dim + s.r * s.d);
  ch.place(p.blocks[bi], 0);
  add_arrow(p.blocks[bi], h0, s.r, s.d, step_arrow(s, f_prev));
  StepResult r = run(p, o, h0, nh, "iterative_bound_step");
  r.value *= 4.0;
  return r;
}

BoundSeries iterative_bound(const Model& model, int m, const std::vector<int>& ns, const BoundOptions& o) {
  if (m < 1) throw std::invalid_argument("iterative_bound: m must be at least 1");
  std::set<int> want(ns.begin(), ns.end());
  if (want.empty()) return BoundSeries{m, {}, {}, {}};
  if (*want.begin() < 1) throw std::invalid_argument("iterative_bound: N must be at least 1");
  const int lmax = m * ((*want.rbegin() - 1) / m);
  BoundSeries out;
  out.m = m;
  std::map<int, double> f{{0, 0.0}};
  std::optional<BlockComb> first, middle;
  for (int l = 0; l < lmax; l += m) {
    const BlockComb* b;
    if (l == 0) {
      if (!first) first = model.block(m, Boundary::first_only());
      b = &*first;
    } else {
      if (!middle) middle = model.block(m, Boundary::middle());
      b = &*middle;
    }
    StepResult r = iterative_bound_step(*b, f[l], o);
    f[l + m] = r.value;
    out.steps[l + m] = r;
  }
  std::map<std::pair<int, bool>, BlockComb> last;
  for (int n : want) {
    const int l = m * ((n - 1) / m);
    const int mp = n - l;
    auto key = std::make_pair(mp, l == 0);
    auto it = last.find(key);
    if (it == last.end()) it = last.emplace(key, model.block(mp, Boundary{l == 0, true})).first;
    StepResult r = iterative_bound_step(it->second, f[l], o);
    out.values[n] = r.value;
    // intermediate steps are kept under their own N; the final step wins
    out.steps[n] = r;
  }
  return out;
}

StepResult exact_comb_qfi(const Model& model, int n, const BoundOptions& o) {
  if (n < 1) throw std::invalid_argument("exact_comb_qfi: N must be at least 1");
  return iterative_bound_step(model.full_chain(n), 0.0, o);
}

StepResult old_bound_step(const KrausSet& k, double f_prev, const BoundOptions& o) {
  if (f_prev < 0) throw std::invalid_argument("old_bound_step: negative f_prev");
  PerfData pd = build_perf(k);
  const Slices& s = pd.slices;
  SdpProblem p;
  const int t1 = p.add_var(1.0);
  const int t2 = f_prev > 0 ? p.add_var(std::sqrt(f_prev)) : -1;
  const int nh = h_param_count(s.r);
  const int h0 = p.add_vars(nh);
  p.finalize();
  int b1 = p.add_block(s.dim + s.r * s.d);
  add_arrow(p.blocks[b1], h0, s.r, s.d, ArrowSpec{s.cdot0, s.c});
  for (int i = 0; i < s.dim; ++i) p.blocks[b1].add(t1, i, i, 0.5);
  if (t2 >= 0) {
    int b2 = p.add_block(2 * s.dim);
    add_beta(p.blocks[b2], h0, s, 1.0, 0, s.dim);
    for (int i = 0; i < 2 * s.dim; ++i) p.blocks[b2].add(t2, i, i, 0.5);
  }
  StepResult r = run(p, o, h0, nh, "old_bound_step");
  r.value = f_prev + 4.0 * r.value;
  return r;
}

BoundSeries old_bound_series(const KrausSet& k, int nmax, const BoundOptions& o) {
  BoundSeries out;
  out.m = 1;
  double f = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    StepResult r = old_bound_step(k, f, o);
    f = r.value;
    out.values[n] = f;
    out.steps[n] = r;
  }
  return out;
}

AsymptoticResult asymptotic_ss(const BlockComb& b, const BoundOptions& o) {
  PerfData pd = build_perf(b);
  const Slices& s = pd.slices;
  std::vector<int> dims = control_dims(b, 1);
  Beta1System sys = beta1_system(pd, dims);
  AsymptoticResult out;
  out.beta1_residual = sys.residual;
  if (sys.residual > o.feas_tol) return out;
  out.feasible = true;
  SdpProblem p;
  DualChain ch = add_dual_chain(p, dims);
  const int nh = h_param_count(s.r);
  const int h0 = p.add_vars(nh);
  p.finalize();
  int bi = p.add_block(s.dim + s.r * s.d);
  ch.place(p.blocks[bi], 0);
  add_arrow(p.blocks[bi], h0, s.r, s.d, step_arrow(s, 0.0));
  for (Eigen::Index i = 0; i < sys.A.rows(); ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(p.nvars);
    row.segment(h0, nh) = sys.A.row(i).transpose();
    p.add_equality(row, sys.b(i));
  }
  out.step = run(p, o, h0, nh, "asymptotic_ss");
  out.coefficient = 4.0 / b.m * out.step.value;
  return out;
}

AsymptoticResult asymptotic_hs(const BlockComb& b, const BoundOptions& o) {
  PerfData pd = build_perf(b);
  const Slices& s = pd.slices;
  SdpProblem p;
  DualChain ch = add_dual_chain(p, control_dims(b, 2));
  const int nh = h_param_count(s.r);
  const int h0 = p.add_vars(nh);
  p.finalize();
  int bi = p.add_block(2 * s.dim);
  ch.place(p.blocks[bi], 0);
  add_beta(p.blocks[bi], h0, s, -0.5, 0, s.dim);
  AsymptoticResult out;
  out.feasible = true;
  out.step = run(p, o, h0, nh, "asymptotic_hs");
  const double lb = 2.0 / b.m * out.step.value;
  out.coefficient = lb * lb;
  return out;
}

Classification classify_scaling(const BlockComb& b, const BoundOptions& o) {
  Classification c;
  AsymptoticResult ss = asymptotic_ss(b, o);
  c.beta1_residual = ss.beta1_residual;
  if (ss.feasible) {
    c.asymptote = {ScalingKind::SS, ss.coefficient};
    c.step = ss.step;
  } else {
    AsymptoticResult hs = asymptotic_hs(b, o);
    c.asymptote = {ScalingKind::HS, hs.coefficient};
    c.step = hs.step;
  }
  c.h = c.step.h;
  return c;
}

Asymptote lemma1_limit(double A, double B) {
  if (A < 0 || B < 0) throw std::invalid_argument("lemma1_limit: A and B must be nonnegative");
  if (A < B * B * (1 - 1e-12)) throw std::invalid_argument("lemma1_limit: requires A >= B^2");
  if (B == 0.0) return {ScalingKind::SS, A};
  return {ScalingKind::HS, B * B};
}

std::vector<double> lemma1_sequence(double A, double B, int n) {
  std::vector<double> a(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) a[i + 1] = a[i] + A + 2 * B * std::sqrt(a[i]);
  return a;
}

}  // namespace combqfi
