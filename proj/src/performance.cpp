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

#include "combqfi/performance.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace combqfi {

Slices slices_of(const BlockComb& b) {
  const size_t no = b.out.size();
  if (no > b.layout.size()) throw std::invalid_argument("slices_of: bad output labels");
  for (size_t i = 0; i < no; ++i)
    if (!b.layout[b.layout.size() - no + i].same(b.out[i]))
      throw std::invalid_argument("slices_of: output labels must trail the layout");
  Slices s;
  s.in_layout.assign(b.layout.begin(), b.layout.end() - static_cast<long>(no));
  s.dim = total_dim(s.in_layout);
  s.d = total_dim(b.out);
  s.r = b.count();
  s.c.resize(s.dim, s.r * s.d);
  s.cdot0.resize(s.dim, s.r * s.d);
  for (int k = 0; k < s.r; ++k)
    for (int j = 0; j < s.d; ++j)
      for (int x = 0; x < s.dim; ++x) {
        s.c(x, k * s.d + j) = b.K(x * s.d + j, k);
        s.cdot0(x, k * s.d + j) = b.dK(x * s.d + j, k);
      }
  return s;
}

Slices slices_of(const KrausSet& k) {
  k.validate();
  Slices s;
  s.in_layout = k.in_layout;
  s.dim = k.din();
  s.d = k.dout();
  s.r = k.size();
  s.c.resize(s.dim, s.r * s.d);
  s.cdot0.resize(s.dim, s.r * s.d);
  for (int a = 0; a < s.r; ++a)
    for (int j = 0; j < s.d; ++j) {
      s.c.col(a * s.d + j) = k.kraus[a].row(j).transpose();
      s.cdot0.col(a * s.d + j) = k.dkraus[a].row(j).transpose();
    }
  return s;
}

std::vector<std::vector<HEntry>> h_entries(int r) {
  std::vector<std::vector<HEntry>> e;
  for (int k = 0; k < r; ++k) e.push_back({{k, k, 1.0}});
  for (int k = 0; k < r; ++k)
    for (int kp = k + 1; kp < r; ++kp) {
      e.push_back({{k, kp, 1.0}, {kp, k, 1.0}});
      e.push_back({{k, kp, cplx(0, 1)}, {kp, k, cplx(0, -1)}});
    }
  return e;
}

MixingMatrix h_from_params(const Eigen::VectorXd& p, int r) {
  if (p.size() != h_param_count(r)) throw std::invalid_argument("h_from_params: wrong parameter count");
  auto e = h_entries(r);
  Mat h = Mat::Zero(r, r);
  for (int v = 0; v < p.size(); ++v)
    for (const auto& x : e[v]) h(x.k, x.kp) += p(v) * x.coef;
  return MixingMatrix(h);
}

Mat PerfData::cdot(const MixingMatrix& h) const {
  const Slices& s = slices;
  if (h.dim() != s.r) throw std::invalid_argument("PerfData: h dimension does not match Kraus count");
  Mat out = s.cdot0;
  for (int k = 0; k < s.r; ++k)
    for (int kp = 0; kp < s.r; ++kp) {
      const cplx hk = h.h()(k, kp);
      if (hk == 0.0) continue;
      out.middleCols(k * s.d, s.d) -= cplx(0, 1) * hk * s.c.middleCols(kp * s.d, s.d);
    }
  return out;
}

Mat PerfData::omega(const MixingMatrix& h) const {
  Mat cd = cdot(h);
  return cd * cd.adjoint();
}

Mat PerfData::beta(const MixingMatrix& h) const { return cdot(h) * slices.c.adjoint(); }

PerfData build_perf(const BlockComb& b) { return PerfData{slices_of(b)}; }
PerfData build_perf(const KrausSet& k) { return PerfData{slices_of(k)}; }

namespace {

Vec embed(const Eigen::Ref<const Vec>& v, int n, int off) {
  Vec e = Vec::Zero(n);
  e.segment(off, v.size()) = v;
  return e;
}

}  // namespace

void add_arrow(LmiBlock& blk, int h0, int r, int d, const ArrowSpec& a) {
  const int n0 = static_cast<int>(a.e0.rows());
  const int nc = r * d;
  if (blk.n != n0 + nc || a.e0.cols() != nc) throw std::invalid_argument("add_arrow: block size mismatch");
  blk.F0.topRightCorner(n0, nc) += a.e0;
  blk.F0.bottomLeftCorner(nc, n0) += a.e0.adjoint();
  blk.F0.bottomRightCorner(nc, nc) += Mat::Identity(nc, nc);
  if (h0 < 0) return;
  if (a.g.rows() != n0 || a.g.cols() != nc) throw std::invalid_argument("add_arrow: g has the wrong shape");
  std::vector<int> col(nc);
  for (int c = 0; c < nc; ++c) col[c] = blk.add_column(embed(a.g.col(c), blk.n, 0));
  auto e = h_entries(r);
  for (size_t v = 0; v < e.size(); ++v)
    for (const auto& x : e[v])
      for (int j = 0; j < d; ++j)
        blk.add(h0 + static_cast<int>(v), col[x.kp * d + j], n0 + x.k * d + j, cplx(0, -1) * x.coef);
}

void add_beta(LmiBlock& blk, int h0, const Slices& s, cplx scale, int row_off, int col_off) {
  const int n = s.dim;
  Mat b0 = scale * (s.cdot0 * s.c.adjoint());
  blk.F0.block(row_off, col_off, n, n) += b0;
  blk.F0.block(col_off, row_off, n, n) += b0.adjoint();
  if (h0 < 0) return;
  const int nc = s.r * s.d;
  std::vector<int> rc(nc), cc(nc);
  for (int c = 0; c < nc; ++c) {
    rc[c] = blk.add_column(embed(s.c.col(c), blk.n, row_off));
    cc[c] = blk.add_column(embed(s.c.col(c), blk.n, col_off));
  }
  auto e = h_entries(s.r);
  for (size_t v = 0; v < e.size(); ++v)
    for (const auto& x : e[v])
      for (int j = 0; j < s.d; ++j)
        blk.add(h0 + static_cast<int>(v), rc[x.kp * s.d + j], cc[x.k * s.d + j], scale * cplx(0, -1) * x.coef);
}

ArrowSpec step_arrow(const Slices& s, double f_prev) {
  if (f_prev < 0) throw std::invalid_argument("step_arrow: negative f_prev");
  if (f_prev == 0.0) return ArrowSpec{s.cdot0, s.c};
  const int n = s.dim, nc = s.r * s.d;
  ArrowSpec a;
  a.e0 = Mat::Zero(2 * n, nc);
  a.g = Mat::Zero(2 * n, nc);
  a.e0.topRows(n) = s.cdot0;
  a.e0.bottomRows(n) = 0.5 * std::sqrt(f_prev) * s.c;
  a.g.topRows(n) = s.c;
  return a;
}

std::vector<int> control_dims(const BlockComb& b, int dv) {
  std::vector<int> d{dv};
  const int m = b.structure.size();
  for (int k = 0; k < m; ++k) {
    d.push_back(total_dim(b.structure.teeth[k].in));
    if (k + 1 < m) d.push_back(total_dim(b.structure.teeth[k].out));
  }
  return d;
}

std::vector<int> control_dims(const KrausSet& k, int dv) { return {dv, k.din()}; }

namespace {

void stack_re_im(const Mat& m, Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    out(2 * i) = m.data()[i].real();
    out(2 * i + 1) = m.data()[i].imag();
  }
}

}  // namespace

Beta1System beta1_system(const PerfData& p, const std::vector<int>& dims) {
  const Slices& s = p.slices;
  CombProjector pr(dims);
  if (pr.dims().empty()) throw std::invalid_argument("beta1_system: empty dims");
  int dtot = 1;
  for (int x : dims) dtot *= x;
  if (dtot != s.dim) throw std::invalid_argument("beta1_system: dims do not match the slice space");
  const int r = s.r, d = s.d, n = s.dim;
  // projected -i C_k' C_k^dag per pair
  std::vector<Mat> m(static_cast<size_t>(r) * r);
  for (int k = 0; k < r; ++k)
    for (int kp = 0; kp < r; ++kp)
      m[k * r + kp] = pr.apply(cplx(0, -1) * s.c.middleCols(kp * d, d) * s.c.middleCols(k * d, d).adjoint());
  auto e = h_entries(r);
  const Eigen::Index rows = 2LL * n * n;
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(e.size()));
  for (size_t v = 0; v < e.size(); ++v) {
    Mat bv = Mat::Zero(n, n);
    for (const auto& x : e[v]) bv += x.coef * m[x.k * r + x.kp];
    stack_re_im(bv, a.col(static_cast<Eigen::Index>(v)));
  }
  Eigen::VectorXd rhs(rows);
  stack_re_im(-pr.apply(s.cdot0 * s.c.adjoint()), rhs);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, smax)) ++rank;
  Beta1System out;
  const auto u = svd.matrixU().leftCols(rank);
  const auto vr = svd.matrixV().leftCols(rank);
  out.h_ls = vr * (u.transpose() * rhs).cwiseQuotient(sv.head(rank));
  out.residual = (a * out.h_ls - rhs).norm() / std::max(1.0, rhs.norm());
  out.A = vr.transpose();
  out.b = out.A * out.h_ls;
  return out;
}

Mat beta1_of(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims) {
  return CombProjector(dims).apply(p.beta(h));
}

double lambda_A(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims, double tol) {
  auto sol = solve(dual_comb_conditions(CombStructure::from_dims(dims), p.omega(h)), tol);
  if (!sol.ok()) throw std::runtime_error("lambda_A: solver returned " + to_string(sol.status));
  return 4.0 * sol.value;
}

double lambda_B(const PerfData& p, const MixingMatrix& h, const std::vector<int>& dims, double tol) {
  std::vector<int> dv = dims;
  dv[0] *= 2;
  const int n = p.slices.dim;
  Mat b = p.beta(h);
  Mat a = Mat::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = 0.5 * b;
  a.bottomLeftCorner(n, n) = 0.5 * b.adjoint();
  auto sol = solve(dual_comb_conditions(CombStructure::from_dims(dv), a), tol);
  if (!sol.ok()) throw std::runtime_error("lambda_B: solver returned " + to_string(sol.status));
  return 2.0 * sol.value;
}

}  // namespace combqfi
