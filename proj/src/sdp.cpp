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

#include "combqfi/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace combqfi {

LmiBlock::LmiBlock(int size) : n(size), F0(Mat::Zero(size, size)), U(size, 0) {}

int LmiBlock::add_column(const Vec& v) {
  if (v.size() != n) throw std::invalid_argument("add_column: length mismatch");
  U.conservativeResize(n, U.cols() + 1);
  U.col(U.cols() - 1) = v;
  return n + static_cast<int>(U.cols()) - 1;
}

void LmiBlock::add_dense(int var, const Mat& g, int row_off, int col_off, double tol) {
  // g(i,j) at (row_off+i, col_off+j); when the two offsets coincide g is
  // taken hermitian and only the upper triangle is read.
  const bool diag = row_off == col_off;
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      if (diag && i > j) continue;
      cplx v = g(i, j);
      if (std::abs(v) <= tol) continue;
      if (diag && i == j) v = 0.5 * v.real();
      add(var, static_cast<int>(row_off + i), static_cast<int>(col_off + j), v);
    }
}

namespace {

// Expanded per-variable term lists of one block.
struct Compiled {
  int n = 0;
  int w = 0;
  std::vector<int> vars;
  std::vector<int> start;
  std::vector<int> tx, ty;
  std::vector<cplx> ta;
};

Compiled compile(const LmiBlock& b) {
  Compiled c;
  c.n = b.n;
  c.w = static_cast<int>(b.U.cols());
  std::vector<SdpTerm> t = b.terms;
  std::stable_sort(t.begin(), t.end(), [](const SdpTerm& p, const SdpTerm& q) { return p.var < q.var; });
  int cur = -1;
  for (const auto& s : t) {
    if (s.var != cur) {
      cur = s.var;
      c.vars.push_back(cur);
      c.start.push_back(static_cast<int>(c.tx.size()));
    }
    if (s.x == s.y) {
      c.tx.push_back(s.x);
      c.ty.push_back(s.y);
      c.ta.push_back(2.0 * s.a.real());
    } else {
      c.tx.push_back(s.x);
      c.ty.push_back(s.y);
      c.ta.push_back(s.a);
      c.tx.push_back(s.y);
      c.ty.push_back(s.x);
      c.ta.push_back(std::conj(s.a));
    }
  }
  c.start.push_back(static_cast<int>(c.tx.size()));
  return c;
}

// W^dag X W with W = [I, U]
Mat hat(const Mat& x, const Mat& u) {
  const Eigen::Index n = x.rows(), w = u.cols();
  Mat h(n + w, n + w);
  h.topLeftCorner(n, n) = x;
  if (w > 0) {
    Mat xu = x * u;
    h.topRightCorner(n, w) = xu;
    h.bottomLeftCorner(w, n) = u.adjoint() * x;
    h.bottomRightCorner(w, w) = u.adjoint() * xu;
  }
  return h;
}

// W C W^dag
Mat unhat(const Mat& cm, const Mat& u) {
  const Eigen::Index n = u.rows(), w = u.cols();
  Mat r = cm.topLeftCorner(n, n);
  if (w > 0) {
    r += u * cm.bottomLeftCorner(w, n);
    r += cm.topRightCorner(n, w) * u.adjoint();
    r += u * cm.bottomRightCorner(w, w) * u.adjoint();
  }
  return r;
}

Mat linear_part(const Compiled& c, const Mat& u, const Eigen::VectorXd& y) {
  Mat cm = Mat::Zero(c.n + c.w, c.n + c.w);
  for (size_t k = 0; k < c.vars.size(); ++k) {
    const double yi = y(c.vars[k]);
    if (yi == 0.0) continue;
    for (int t = c.start[k]; t < c.start[k + 1]; ++t) cm(c.tx[t], c.ty[t]) += yi * c.ta[t];
  }
  return unhat(cm, u);
}

Eigen::VectorXd adjoint_map(const Compiled& c, const Mat& xhat, int m) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
  for (size_t k = 0; k < c.vars.size(); ++k) {
    cplx s = 0;
    for (int t = c.start[k]; t < c.start[k + 1]; ++t) s += c.ta[t] * xhat(c.ty[t], c.tx[t]);
    r(c.vars[k]) += s.real();
  }
  return r;
}

void add_schur(const Compiled& c, const Mat& zh, const Mat& sh, Eigen::MatrixXd& M) {
  const size_t nv = c.vars.size();
  for (size_t j = 0; j < nv; ++j) {
    const int j0 = c.start[j], j1 = c.start[j + 1];
    for (size_t i = 0; i <= j; ++i) {
      const int i0 = c.start[i], i1 = c.start[i + 1];
      double acc = 0.0;
      for (int t = i0; t < i1; ++t) {
        const cplx at = c.ta[t];
        const int yt = c.ty[t], xt = c.tx[t];
        cplx s = 0;
        for (int q = j0; q < j1; ++q) s += c.ta[q] * zh(yt, c.tx[q]) * sh(c.ty[q], xt);
        acc += (at * s).real();
      }
      M(c.vars[i], c.vars[j]) += acc;
      if (i != j) M(c.vars[j], c.vars[i]) += acc;
    }
  }
}

Mat herm(const Mat& x) { return 0.5 * (x + x.adjoint()); }

// largest a with X + a dX >= 0, given the Cholesky factor of X
double max_step(const Eigen::LLT<Mat>& llt, const Mat& dx) {
  Mat l = llt.matrixL();
  Mat t = l.triangularView<Eigen::Lower>().solve(dx);
  Mat t2 = l.triangularView<Eigen::Lower>().solve(t.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(t2), Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double re_tr(const Mat& a, const Mat& b) {
  // Re Tr(a b) without forming the product
  return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace

Mat LmiBlock::evaluate(const Eigen::VectorXd& y) const {
  Compiled c = compile(*this);
  return F0 + linear_part(c, U, y);
}

Mat LmiBlock::coefficient(int var) const {
  LmiBlock b(n);
  b.U = U;
  for (const auto& t : terms)
    if (t.var == var) b.terms.push_back(t);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(var + 1);
  y(var) = 1.0;
  Compiled c = compile(b);
  return linear_part(c, U, y);
}

int SdpProblem::add_var(double cost) {
  c.conservativeResize(nvars + 1);
  c(nvars) = cost;
  return nvars++;
}

int SdpProblem::add_vars(int k) {
  int first = nvars;
  for (int i = 0; i < k; ++i) add_var(0.0);
  return first;
}

int SdpProblem::add_block(int n) {
  blocks.emplace_back(n);
  return static_cast<int>(blocks.size()) - 1;
}

void SdpProblem::add_equality(const Eigen::VectorXd& row, double rhs) {
  finalize();
  Eigen::Index r = Aeq.rows();
  Aeq.conservativeResize(r + 1, nvars);
  Aeq.row(r).setZero();
  Aeq.row(r).head(row.size()) = row.transpose();
  beq.conservativeResize(r + 1);
  beq(r) = rhs;
}

void SdpProblem::finalize() {
  if (c.size() < nvars) {
    Eigen::Index old = c.size();
    c.conservativeResize(nvars);
    c.tail(nvars - old).setZero();
  }
  if (Aeq.cols() != nvars) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Aeq.rows(), nvars);
    a.leftCols(std::min<Eigen::Index>(Aeq.cols(), nvars)) = Aeq.leftCols(std::min<Eigen::Index>(Aeq.cols(), nvars));
    Aeq = a;
  }
  if (beq.size() != Aeq.rows()) beq = Eigen::VectorXd::Zero(Aeq.rows());
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Unbounded: return "unbounded";
    case SdpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

SdpSolution InteriorPointSolver::solve(const SdpProblem& p0, const SolverSettings& st) const {
  SdpProblem p = p0;
  p.finalize();
  const int m = p.nvars;
  const int me = static_cast<int>(p.Aeq.rows());
  const int nb = static_cast<int>(p.blocks.size());
  SdpSolution sol;
  if (st.tol <= 0) throw std::invalid_argument("solve: tol must be positive");

  std::vector<Compiled> comp;
  int ntot = 0;
  double f0norm = 0.0;
  for (const auto& b : p.blocks) {
    comp.push_back(compile(b));
    ntot += b.n;
    f0norm = std::max(f0norm, b.F0.norm());
  }
  if (ntot == 0) {
    sol.message = "no matrix constraints";
    return sol;
  }
  const double cnorm = p.c.norm();
  const double bnorm = p.beq.norm();

  Eigen::VectorXd y = Eigen::VectorXd::Zero(m), lam = Eigen::VectorXd::Zero(me);
  std::vector<Mat> S(nb), Z(nb);
  double fmax = 0.0;
  for (const auto& c : comp)
    for (size_t t = 0; t < c.ta.size(); ++t) fmax = std::max(fmax, std::abs(c.ta[t]));
  const double s0 = std::max({10.0, std::sqrt(static_cast<double>(ntot)), f0norm});
  const double z0 = std::max({10.0, std::sqrt(static_cast<double>(ntot)),
                              p.c.size() ? p.c.cwiseAbs().maxCoeff() / (1.0 + fmax) * 10.0 : 0.0});
  for (int b = 0; b < nb; ++b) {
    const int n = p.blocks[b].n;
    S[b] = s0 * Mat::Identity(n, n);
    Z[b] = z0 * Mat::Identity(n, n);
  }

  std::ostringstream diag;
  double pobj = 0, dobj = 0, gap = 0, pinf = 0, dinf = 0, einf = 0;
  int it = 0;
  for (; it < st.max_iter; ++it) {
    std::vector<Mat> Rp(nb), Zh(nb);
    Eigen::VectorXd az = Eigen::VectorXd::Zero(m);
    double rp2 = 0.0;
    dobj = 0.0;
    gap = 0.0;
    for (int b = 0; b < nb; ++b) {
      Mat fy = p.blocks[b].F0 + linear_part(comp[b], p.blocks[b].U, y);
      Rp[b] = fy - S[b];
      rp2 = std::max(rp2, Rp[b].norm());
      Zh[b] = hat(Z[b], p.blocks[b].U);
      az += adjoint_map(comp[b], Zh[b], m);
      dobj -= re_tr(Z[b], p.blocks[b].F0);
      gap += re_tr(Z[b], S[b]);
    }
    Eigen::VectorXd rd = p.c - az;
    Eigen::VectorXd re = Eigen::VectorXd::Zero(me);
    if (me > 0) {
      rd -= p.Aeq.transpose() * lam;
      re = p.beq - p.Aeq * y;
      dobj += p.beq.dot(lam);
    }
    pobj = p.c.dot(y);
    const double mu = gap / ntot;
    const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double relgap = std::max(std::abs(gap), std::abs(pobj - dobj)) / denom;
    pinf = rp2 / (1.0 + f0norm);
    dinf = rd.norm() / (1.0 + cnorm);
    einf = me > 0 ? re.norm() / (1.0 + bnorm) : 0.0;
    if (st.verbose)
      std::cerr << "it " << it << " p " << std::setprecision(10) << pobj << " d " << dobj << " gap "
                << relgap << " pinf " << pinf << " dinf " << dinf << " einf " << einf << "\n";
    if (relgap < st.tol && pinf < st.tol && dinf < st.tol && einf < st.tol) {
      sol.status = SdpStatus::Optimal;
      break;
    }
    // certificates of infeasibility, checked on normalized iterates
    double nz = lam.norm();
    for (int b = 0; b < nb; ++b) nz += Z[b].norm();
    if (nz > 1e7 * (1.0 + z0)) {
      double homog = (p.c - rd).norm() / nz;
      if (dobj / nz > 1e-8 && homog < 1e-5) {
        sol.status = SdpStatus::Infeasible;
        sol.message = "dual ray found";
        break;
      }
    }
    double ny = y.norm();
    if (ny > 1e7 && -pobj / ny > 1e-8 && pinf < 1e-6 && einf < 1e-6) {
      sol.status = SdpStatus::Unbounded;
      sol.message = "primal ray found";
      break;
    }

    std::vector<Mat> Sinv(nb), Sh(nb);
    std::vector<Eigen::LLT<Mat>> lS(nb), lZ(nb);
    bool bad = false;
    for (int b = 0; b < nb; ++b) {
      lS[b].compute(S[b]);
      lZ[b].compute(Z[b]);
      if (lS[b].info() != Eigen::Success || lZ[b].info() != Eigen::Success) {
        bad = true;
        break;
      }
      const int n = p.blocks[b].n;
      Sinv[b] = lS[b].solve(Mat::Identity(n, n));
      Sinv[b] = herm(Sinv[b]);
      Sh[b] = hat(Sinv[b], p.blocks[b].U);
    }
    if (bad) {
      diag << "lost positive definiteness at iteration " << it;
      break;
    }

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (int b = 0; b < nb; ++b) add_schur(comp[b], Zh[b], Sh[b], M);
    const double dmax = m > 0 ? M.diagonal().cwiseAbs().maxCoeff() : 1.0;
    Eigen::LLT<Eigen::MatrixXd> lM;
    double jitter = 1e-14 * std::max(dmax, 1e-300);
    for (int tries = 0; tries < 8; ++tries) {
      Eigen::MatrixXd Mr = M;
      Mr.diagonal().array() += jitter;
      lM.compute(Mr);
      if (lM.info() == Eigen::Success) break;
      jitter *= 100.0;
    }
    if (lM.info() != Eigen::Success) {
      diag << "Schur factorization failed at iteration " << it;
      break;
    }
    Eigen::LLT<Eigen::MatrixXd> lK;
    Eigen::MatrixXd MiAt;
    if (me > 0) {
      MiAt = lM.solve(p.Aeq.transpose());
      Eigen::MatrixXd K = p.Aeq * MiAt;
      K.diagonal().array() += 1e-14 * std::max(1.0, K.diagonal().cwiseAbs().maxCoeff());
      lK.compute(K);
      if (lK.info() != Eigen::Success) {
        diag << "equality block factorization failed at iteration " << it;
        break;
      }
    }

    struct Dir {
      Eigen::VectorXd dy, dl;
      std::vector<Mat> dS, dZ;
    };
    auto direction = [&](double mut, const Dir* pred) {
      Dir d;
      Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
      std::vector<Mat> base(nb);
      for (int b = 0; b < nb; ++b) {
        Mat hb = mut * Sinv[b] - Z[b] - Z[b] * Rp[b] * Sinv[b];
        base[b] = mut * Sinv[b] - Z[b];
        if (pred) {
          Mat corr = pred->dZ[b] * pred->dS[b] * Sinv[b];
          hb -= corr;
          base[b] -= herm(corr);
        }
        h += adjoint_map(comp[b], hat(hb, p.blocks[b].U), m);
      }
      Eigen::VectorXd g = h - rd;
      Eigen::VectorXd mig = lM.solve(g);
      if (me > 0) {
        d.dl = lK.solve(re - p.Aeq * mig);
        d.dy = mig + MiAt * d.dl;
      } else {
        d.dl = Eigen::VectorXd::Zero(0);
        d.dy = mig;
      }
      d.dS.resize(nb);
      d.dZ.resize(nb);
      for (int b = 0; b < nb; ++b) {
        d.dS[b] = Rp[b] + linear_part(comp[b], p.blocks[b].U, d.dy);
        d.dS[b] = herm(d.dS[b]);
        d.dZ[b] = herm(base[b] - herm(Z[b] * d.dS[b] * Sinv[b]));
      }
      return d;
    };
    auto steps = [&](const Dir& d, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = ap;
      for (int b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step(lS[b], d.dS[b]));
        ad = std::min(ad, max_step(lZ[b], d.dZ[b]));
      }
    };

    Dir pr = direction(0.0, nullptr);
    double ap, ad;
    steps(pr, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double gaff = 0.0;
    for (int b = 0; b < nb; ++b) gaff += re_tr(S[b] + ap * pr.dS[b], Z[b] + ad * pr.dZ[b]);
    double sigma = std::pow(std::max(0.0, gaff) / std::max(gap, 1e-300), 3.0);
    sigma = std::clamp(sigma, 0.0, 1.0);
    Dir co = direction(sigma * mu, &pr);
    steps(co, ap, ad);
    const double gamma = 0.95;
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (ap < 1e-10 && ad < 1e-10) {
      diag << "step length collapsed at iteration " << it;
      break;
    }
    y += ap * co.dy;
    if (me > 0) lam += ad * co.dl;
    for (int b = 0; b < nb; ++b) {
      S[b] = herm(S[b] + ap * co.dS[b]);
      Z[b] = herm(Z[b] + ad * co.dZ[b]);
    }
  }

  sol.iterations = it;
  sol.y = y;
  sol.lambda = lam;
  sol.S = S;
  sol.Z = Z;
  sol.value = pobj;
  sol.dual_value = dobj;
  double me_min = std::numeric_limits<double>::infinity();
  for (int b = 0; b < nb; ++b) {
    Mat fy = p.blocks[b].F0 + linear_part(comp[b], p.blocks[b].U, y);
    me_min = std::min(me_min, min_eig(fy));
  }
  sol.residuals.psd_min_eig = me_min;
  sol.residuals.primal_eq = me > 0 ? (p.Aeq * y - p.beq).cwiseAbs().maxCoeff() : 0.0;
  sol.residuals.duality_gap = std::abs(pobj - dobj);
  sol.residuals.dual_infeas = dinf;
  // numerical trouble close to the optimum: accept at reduced accuracy
  const double near_tol = std::max(1e-6, 100.0 * st.tol);
  if (sol.status == SdpStatus::NumericalFailure && !diag.str().empty()) {
    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    if (relgap < near_tol && pinf < near_tol && dinf < near_tol && einf < near_tol && me_min > -near_tol) {
      sol.status = SdpStatus::Optimal;
      sol.message = "reduced accuracy: " + diag.str();
    }
  }
  if (sol.status == SdpStatus::NumericalFailure && sol.message.empty()) {
    if (diag.str().empty()) diag << "iteration limit " << st.max_iter;
    diag << " (gap " << std::abs(pobj - dobj) << ", pinf " << pinf << ", dinf " << dinf << ")";
    sol.message = diag.str();
  }
  return sol;
}

SdpSolution solve(const SdpProblem& p, double tol) {
  SolverSettings s;
  s.tol = tol;
  return solve(p, s);
}

SdpSolution solve(const SdpProblem& p, const SolverSettings& s) {
  InteriorPointSolver ipm;
  return ipm.solve(p, s);
}

Mat realify(const Mat& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Mat out = Mat::Zero(2 * r, 2 * c);
  Eigen::MatrixXd re = m.real(), im = m.imag();
  out.topLeftCorner(r, c) = re.cast<cplx>();
  out.topRightCorner(r, c) = (-im).cast<cplx>();
  out.bottomLeftCorner(r, c) = im.cast<cplx>();
  out.bottomRightCorner(r, c) = re.cast<cplx>();
  return out;
}

Mat complex_block(const Mat& rb) {
  const Eigen::Index n = rb.rows() / 2;
  Mat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = cplx(rb(i, j).real(), rb(i + n, j).real());
  return out;
}

SdpProblem embed_real(const SdpProblem& p0) {
  SdpProblem p = p0;
  p.finalize();
  SdpProblem r;
  r.nvars = p.nvars;
  r.c = p.c;
  r.Aeq = p.Aeq;
  r.beq = p.beq;
  for (const auto& b : p.blocks) {
    const int n = b.n, w = static_cast<int>(b.U.cols());
    LmiBlock rb(2 * n);
    rb.F0 = realify(b.F0);
    // dictionary vector x maps to x1 = [re; im] and x2 = [-im; re]
    std::vector<int> first(n + w), second(n + w);
    for (int k = 0; k < n; ++k) {
      first[k] = k;
      second[k] = n + k;
    }
    for (int k = 0; k < w; ++k) {
      Vec u = b.U.col(k);
      Vec v1(2 * n), v2(2 * n);
      v1 << u.real().cast<cplx>(), u.imag().cast<cplx>();
      v2 << (-u.imag()).cast<cplx>(), u.real().cast<cplx>();
      first[n + k] = rb.add_column(v1);
      second[n + k] = rb.add_column(v2);
    }
    for (const auto& t : b.terms) {
      const double ar = t.a.real(), ai = t.a.imag();
      const int x1 = first[t.x], x2 = second[t.x], y1 = first[t.y], y2 = second[t.y];
      // a x y^dag embeds as ar (x1 y1^T + x2 y2^T) + ai (x2 y1^T - x1 y2^T)
      if (ar != 0.0) {
        rb.add(t.var, x1, y1, ar);
        rb.add(t.var, x2, y2, ar);
      }
      if (ai != 0.0) {
        rb.add(t.var, x2, y1, ai);
        rb.add(t.var, x1, y2, -ai);
      }
    }
    r.blocks.push_back(std::move(rb));
  }
  return r;
}

void dump(const SdpProblem& p0, std::ostream& os) {
  SdpProblem p = p0;
  p.finalize();
  os << std::setprecision(17);
  os << "combqfi-sdp 1\n";
  os << "vars " << p.nvars << "\n";
  os << "objective";
  for (int i = 0; i < p.nvars; ++i) os << " " << p.c(i);
  os << "\n";
  os << "equalities " << p.Aeq.rows() << "\n";
  for (Eigen::Index r = 0; r < p.Aeq.rows(); ++r) {
    for (int i = 0; i < p.nvars; ++i)
      if (p.Aeq(r, i) != 0.0) os << "a " << r << " " << i << " " << p.Aeq(r, i) << "\n";
    os << "b " << r << " " << p.beq(r) << "\n";
  }
  os << "blocks " << p.blocks.size() << "\n";
  for (size_t k = 0; k < p.blocks.size(); ++k) {
    const auto& b = p.blocks[k];
    os << "block " << k << " size " << b.n << "\n";
    // dense coefficient triplets (var, row, col, re, im), var -1 is F0
    auto emit = [&](int var, const Mat& f) {
      for (Eigen::Index j = 0; j < f.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
          if (std::abs(f(i, j)) > 0.0)
            os << var << " " << i << " " << j << " " << f(i, j).real() << " " << f(i, j).imag() << "\n";
    };
    emit(-1, b.F0);
    std::vector<int> vars;
    for (const auto& t : b.terms) vars.push_back(t.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int v : vars) emit(v, b.coefficient(v));
  }
}

}  // namespace combqfi
