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

#include "combqfi/comb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace combqfi {

CombStructure CombStructure::from_dims(const std::vector<int>& dims) {
  if (dims.size() % 2 != 0) throw std::invalid_argument("comb dims must come in pairs");
  CombStructure s;
  // generic labels, ancilla kind, numbered by position
  for (size_t k = 0; k < dims.size(); k += 2) {
    Slot t;
    if (dims[k] > 1) t.in.push_back(ancilla(static_cast<int>(k), dims[k]));
    if (dims[k + 1] > 1) t.out.push_back(ancilla(static_cast<int>(k + 1), dims[k + 1]));
    s.teeth.push_back(t);
  }
  return s;
}

std::vector<int> CombStructure::dims() const {
  std::vector<int> d;
  for (const auto& t : teeth) {
    d.push_back(combqfi::total_dim(t.in));
    d.push_back(combqfi::total_dim(t.out));
  }
  return d;
}

Layout CombStructure::layout() const {
  Layout l;
  for (const auto& t : teeth) {
    l.insert(l.end(), t.in.begin(), t.in.end());
    l.insert(l.end(), t.out.begin(), t.out.end());
  }
  return l;
}

int CombStructure::total_dim() const { return combqfi::total_dim(layout()); }

Mat trace_replace(const Mat& x, const std::vector<int>& dims, const std::vector<int>& positions) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> tr(n, false);
  for (int p : positions) tr[p] = true;
  int dt = 1;
  for (int p = 0; p < n; ++p)
    if (tr[p]) dt *= dims[p];
  if (dt == 1) return x;
  const int d = static_cast<int>(x.rows());
  // split every flat index into kept and traced parts
  std::vector<int> keep(d), trc(d);
  for (int a = 0; a < d; ++a) {
    int rem = a, k = 0, t = 0, kmul = 1, tmul = 1;
    for (int p = n - 1; p >= 0; --p) {
      int digit = rem % dims[p];
      rem /= dims[p];
      if (tr[p]) {
        t += digit * tmul;
        tmul *= dims[p];
      } else {
        k += digit * kmul;
        kmul *= dims[p];
      }
    }
    keep[a] = k;
    trc[a] = t;
  }
  const int dk = d / dt;
  Mat red = Mat::Zero(dk, dk);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a)
      if (trc[a] == trc[b]) red(keep[a], keep[b]) += x(a, b);
  red /= static_cast<double>(dt);
  Mat r = Mat::Zero(d, d);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a)
      if (trc[a] == trc[b]) r(a, b) = red(keep[a], keep[b]);
  return r;
}

namespace {

std::vector<int> range(int a, int b) {
  std::vector<int> r;
  for (int i = a; i < b; ++i) r.push_back(i);
  return r;
}

double prod(const std::vector<int>& d, int a, int b) {
  double p = 1;
  for (int i = a; i < b; ++i) p *= d[i];
  return p;
}

// Stacks Re and Im of every entry.
void push_complex(std::vector<double>& out, const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
}

// Linear part of the chain conditions; the last block is Tr_{K2..} E on K1.
std::vector<double> chain_map(const Mat& e, const std::vector<int>& dims) {
  const int n2 = static_cast<int>(dims.size());
  const int nt = n2 / 2;
  std::vector<double> out;
  for (int k = 2; k <= nt; ++k) {
    Mat a = trace_replace(e, dims, range(2 * k - 1, n2));
    Mat b = trace_replace(e, dims, range(2 * k - 2, n2));
    push_complex(out, a - b);
  }
  std::vector<int> rest = range(1, n2);
  push_complex(out, partial_trace_dims(e, dims, rest));
  return out;
}

}  // namespace

Eigen::VectorXd hermitian_coords(const Mat& e) {
  const int d = static_cast<int>(e.rows());
  Eigen::VectorXd x(d * d);
  int v = 0;
  for (int i = 0; i < d; ++i) x(v++) = e(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      x(v++) = e(i, j).real();
      x(v++) = e(i, j).imag();
    }
  return x;
}

Mat hermitian_from_coords(const Eigen::VectorXd& x, int d) {
  Mat e = Mat::Zero(d, d);
  int v = 0;
  for (int i = 0; i < d; ++i) e(i, i) = x(v++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      e(i, j) = cplx(x(v), x(v + 1));
      e(j, i) = std::conj(e(i, j));
      v += 2;
    }
  return e;
}

CombConditions comb_conditions(const CombStructure& s) {
  CombConditions cc;
  cc.dims = s.dims();
  const int d = s.total_dim();
  const int nx = d * d;
  double norm = 1.0;
  for (int k = 1; k < s.size(); ++k) norm *= cc.dims[2 * k];
  Mat zero = Mat::Zero(d, d);
  std::vector<double> c0 = chain_map(zero, cc.dims);
  const int nr = static_cast<int>(c0.size());
  Eigen::MatrixXd a(nr, nx);
  for (int v = 0; v < nx; ++v) {
    Eigen::VectorXd ev = Eigen::VectorXd::Zero(nx);
    ev(v) = 1.0;
    std::vector<double> col = chain_map(hermitian_from_coords(ev, d), cc.dims);
    for (int r = 0; r < nr; ++r) a(r, v) = col[r];
  }
  // rhs: zeros for the chain, norm * identity on K1 for the last block
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nr);
  const int d1 = cc.dims[0];
  const int tail = 2 * d1 * d1;
  for (int j = 0; j < d1; ++j) b(nr - tail + 2 * (j * d1 + j)) = norm;
  // reduce to independent rows
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  const double smax = sv.size() ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, smax)) ++rank;
  cc.A = svd.matrixV().leftCols(rank).transpose();
  cc.b = (svd.matrixU().leftCols(rank).transpose() * b).cwiseQuotient(sv.head(rank));
  return cc;
}

double CombConditions::residual(const Mat& e) const {
  const int n2 = static_cast<int>(dims.size());
  const int nt = n2 / 2;
  double r = 0.0;
  for (int k = 2; k <= nt; ++k) {
    Mat a = trace_replace(e, dims, range(2 * k - 1, n2));
    Mat b = trace_replace(e, dims, range(2 * k - 2, n2));
    r = std::max(r, (a - b).cwiseAbs().maxCoeff());
  }
  double norm = 1.0;
  for (int k = 1; k < nt; ++k) norm *= dims[2 * k];
  Mat t = partial_trace_dims(e, dims, range(1, n2));
  t -= norm * Mat::Identity(t.rows(), t.cols());
  r = std::max(r, t.cwiseAbs().maxCoeff());
  r = std::max(r, (e - e.adjoint()).cwiseAbs().maxCoeff());
  return r;
}

double CombConditions::min_eig_of(const Mat& e) const { return min_eig(e); }

double comb_residual(const CombStructure& s, const Mat& e) {
  CombConditions cc;
  cc.dims = s.dims();
  return cc.residual(e);
}

bool is_comb(const CombStructure& s, const Mat& e, double tol) {
  return comb_residual(s, e) <= tol && min_eig(e) >= -tol;
}

CombProjector::CombProjector(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() % 2 != 0) throw std::invalid_argument("CombProjector: bad dims");
}

Mat CombProjector::apply(const Mat& x) const {
  const int n2 = static_cast<int>(dims_.size());
  const int nt = n2 / 2;
  Mat y = x;
  for (int k = 2; k <= nt; ++k) {
    Mat a = trace_replace(y, dims_, range(2 * k - 1, n2));
    Mat b = trace_replace(y, dims_, range(2 * k - 2, n2));
    y = y - a + b;
  }
  y -= trace_replace(y, dims_, range(1, n2));
  return y;
}

std::vector<Mat> CombProjector::hermitian_basis(double tol) const {
  int d = 1;
  for (int x : dims_) d *= x;
  const int nx = d * d;
  // orthonormal coordinates: off-diagonal parts scaled by sqrt 2
  auto to_on = [&](const Mat& e) {
    Eigen::VectorXd c = hermitian_coords(e);
    for (int v = d; v < nx; ++v) c(v) *= std::sqrt(2.0);
    return c;
  };
  Eigen::MatrixXd p(nx, nx);
  for (int v = 0; v < nx; ++v) {
    Eigen::VectorXd ev = Eigen::VectorXd::Zero(nx);
    ev(v) = v < d ? 1.0 : 1.0 / std::sqrt(2.0);
    p.col(v) = to_on(apply(hermitian_from_coords(ev, d)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (p + p.transpose()));
  std::vector<Mat> basis;
  for (int i = 0; i < nx; ++i) {
    if (es.eigenvalues()(i) < 0.5 || std::abs(es.eigenvalues()(i) - 1.0) > 1e3 * tol + 1e-6) continue;
    Eigen::VectorXd c = es.eigenvectors().col(i);
    for (int v = d; v < nx; ++v) c(v) /= std::sqrt(2.0);
    basis.push_back(hermitian_from_coords(c, d));
  }
  return basis;
}

XmSplit project_Xm(const Mat& x, const CombStructure& s) {
  CombProjector p(s);
  XmSplit r;
  r.x1 = p.apply(x);
  r.x2 = x - r.x1;
  return r;
}

namespace {

using EntryList = std::vector<Entry>;

std::vector<EntryList> herm_basis(int d) {
  std::vector<EntryList> b;
  for (int a = 0; a < d; ++a) b.push_back({{a, a, 1.0}});
  for (int a = 0; a < d; ++a)
    for (int c = a + 1; c < d; ++c) {
      b.push_back({{a, c, 1.0}, {c, a, 1.0}});
      b.push_back({{a, c, cplx(0, 1)}, {c, a, cplx(0, -1)}});
    }
  return b;
}

std::vector<EntryList> traceless_basis(int d) {
  std::vector<EntryList> b;
  for (int a = 0; a + 1 < d; ++a) b.push_back({{a, a, 1.0}, {a + 1, a + 1, -1.0}});
  for (int a = 0; a < d; ++a)
    for (int c = a + 1; c < d; ++c) {
      b.push_back({{a, c, 1.0}, {c, a, 1.0}});
      b.push_back({{a, c, cplx(0, 1)}, {c, a, cplx(0, -1)}});
    }
  return b;
}

EntryList kron_entries(const EntryList& a, const EntryList& b, int db) {
  EntryList r;
  for (const auto& x : a)
    for (const auto& y : b) r.push_back({x.i * db + y.i, x.j * db + y.j, x.v * y.v});
  return r;
}

// (x) 1_p, scaled, upper triangle only
EntryList expand_upper(const EntryList& a, int p, double scale) {
  EntryList r;
  for (const auto& x : a) {
    if (x.i > x.j) continue;
    for (int e = 0; e < p; ++e) r.push_back({x.i * p + e, x.j * p + e, scale * x.v});
  }
  return r;
}

}  // namespace

int DualChain::block_dim() const {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

void DualChain::place(LmiBlock& blk, int offset) const {
  for (int v = 0; v < nvars; ++v)
    for (const auto& e : coef[v]) {
      if (e.i == e.j)
        blk.add(first_var + v, offset + e.i, offset + e.i, 0.5 * e.v.real());
      else
        blk.add(first_var + v, offset + e.i, offset + e.j, e.v);
    }
}

Mat DualChain::top(const Eigen::VectorXd& y) const {
  const int d = block_dim();
  Mat q = Mat::Zero(d, d);
  for (int v = 0; v < nvars; ++v) {
    const double yv = y(first_var + v);
    for (const auto& e : coef[v]) {
      q(e.i, e.j) += yv * e.v;
      if (e.i != e.j) q(e.j, e.i) += yv * std::conj(e.v);
    }
  }
  return q;
}

DualChain dual_chain_basis(const std::vector<int>& dims) {
  if (dims.empty() || dims.size() % 2 != 0) throw std::invalid_argument("dual chain: bad dims");
  DualChain ch;
  ch.dims = dims;
  const int n2 = static_cast<int>(dims.size());
  const int nt = n2 / 2;
  const int dtot = ch.block_dim();
  std::vector<double> tr;
  // level 1: full hermitian basis on K1
  {
    const int d1 = dims[0];
    double scale = 1.0;
    for (int l = 2; l <= nt; ++l) scale /= dims[2 * l - 2];
    const int p = dtot / d1;
    auto hb = herm_basis(d1);
    for (size_t b = 0; b < hb.size(); ++b) {
      ch.coef.push_back(expand_upper(hb[b], p, scale));
      ch.level.push_back(1);
      tr.push_back(static_cast<int>(b) < d1 ? 1.0 : 0.0);
    }
  }
  for (int k = 2; k <= nt; ++k) {
    const int dk = dims[2 * k - 2];  // K_{2k-1}
    if (dk == 1) continue;
    const int dprev = static_cast<int>(prod(dims, 0, 2 * k - 2));
    double scale = 1.0;
    for (int l = k + 1; l <= nt; ++l) scale /= dims[2 * l - 2];
    const int p = dtot / (dprev * dk);
    auto g = herm_basis(dprev);
    auto t = traceless_basis(dk);
    for (const auto& gm : g)
      for (const auto& tau : t) {
        ch.coef.push_back(expand_upper(kron_entries(gm, tau, dk), p, scale));
        ch.level.push_back(k);
        tr.push_back(0.0);
      }
  }
  ch.nvars = static_cast<int>(ch.coef.size());
  ch.trace_q1 = Eigen::Map<Eigen::VectorXd>(tr.data(), static_cast<Eigen::Index>(tr.size()));
  return ch;
}

DualChain add_dual_chain(SdpProblem& p, const std::vector<int>& dims) {
  DualChain ch = dual_chain_basis(dims);
  ch.first_var = p.add_vars(ch.nvars);
  p.finalize();
  p.c.segment(ch.first_var, ch.nvars) += ch.trace_q1;
  return ch;
}

SdpProblem dual_comb_conditions(const CombStructure& s, const Mat& a) {
  std::vector<int> dims = s.dims();
  SdpProblem p;
  DualChain ch = add_dual_chain(p, dims);
  const int d = ch.block_dim();
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("dual_comb_conditions: size mismatch");
  int b = p.add_block(d);
  p.blocks[b].F0 = -0.5 * (a + a.adjoint());
  ch.place(p.blocks[b], 0);
  return p;
}

SdpProblem primal_comb_problem(const CombStructure& s, const Mat& a) {
  // minimizes -Tr(a C); the optimum is minus the primal maximum
  std::vector<int> dims = s.dims();
  const int d = s.total_dim();
  double outs = 1.0;
  for (int k = 0; k < s.size(); ++k) outs *= dims[2 * k + 1];
  Mat c0 = Mat::Identity(d, d) / outs;
  CombProjector pr(dims);
  auto basis = pr.hermitian_basis();
  SdpProblem p;
  int b = p.add_block(d);
  p.blocks[b].F0 = c0;
  for (const auto& x : basis) {
    int v = p.add_var(-(a * x).trace().real());
    p.blocks[b].add_dense(v, x, 0, 0, 1e-14);
  }
  p.finalize();
  return p;
}

std::vector<Mat> beta1_zero_conditions(const CombStructure& s) {
  DualChain ch = dual_chain_basis(s.dims());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ch.nvars);
  std::vector<Mat> span;
  for (int v = 0; v < ch.nvars; ++v) {
    y.setZero();
    y(v) = 1.0;
    span.push_back(ch.top(y));
  }
  return span;
}

double beta1_residual(const std::vector<Mat>& span, const Mat& x) {
  const Eigen::Index n = x.size();
  Mat b(n, static_cast<Eigen::Index>(span.size()));
  for (size_t i = 0; i < span.size(); ++i) b.col(i) = Eigen::Map<const Vec>(span[i].data(), n);
  Vec xv = Eigen::Map<const Vec>(x.data(), n);
  Eigen::ColPivHouseholderQR<Mat> qr(b);
  qr.setThreshold(1e-12);
  Vec coef = qr.solve(xv);
  return (b * coef - xv).norm() / std::max(1.0, xv.norm());
}

}  // namespace combqfi
