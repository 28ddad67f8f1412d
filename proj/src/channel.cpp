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

#include "combqfi/channel.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace combqfi {

void KrausSet::validate() const {
  if (kraus.empty()) throw std::invalid_argument("KrausSet: no Kraus operators");
  if (dkraus.size() != kraus.size()) throw std::invalid_argument("KrausSet: derivative count mismatch");
  const int di = din(), dout_ = dout();
  for (size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != dout_ || kraus[k].cols() != di)
      throw std::invalid_argument("KrausSet: Kraus operator " + std::to_string(k) + " has the wrong shape");
    if (dkraus[k].rows() != dout_ || dkraus[k].cols() != di)
      throw std::invalid_argument("KrausSet: derivative " + std::to_string(k) + " has the wrong shape");
  }
}

double KrausSet::tp_error() const {
  const int di = din();
  Mat s = Mat::Zero(di, di);
  for (const auto& k : kraus) s += k.adjoint() * k;
  return (s - Mat::Identity(di, di)).cwiseAbs().maxCoeff();
}

std::vector<Operator> KrausSet::kraus_ops() const {
  std::vector<Operator> r;
  for (const auto& k : kraus) r.emplace_back(k, out_layout, in_layout);
  return r;
}

MixingMatrix::MixingMatrix(Mat h, double tol) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw std::invalid_argument("MixingMatrix: not square");
  if (h_.size() && (h_ - h_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("MixingMatrix: not hermitian");
}

Tooth make_tooth(std::vector<Mat> kraus, std::vector<Mat> dkraus, int dh, int dr) {
  Tooth t;
  t.dh = dh;
  t.dr = dr;
  t.kset.kraus = std::move(kraus);
  t.kset.dkraus = std::move(dkraus);
  t.kset.in_layout = {probe(1, dh), reg(0, dr)};
  t.kset.out_layout = {probe(2, dh), reg(1, dr)};
  t.kset.validate();
  return t;
}

KrausSet apply_mixing(const KrausSet& k, const MixingMatrix& h) {
  if (h.dim() != k.size()) throw std::invalid_argument("apply_mixing: h dimension does not match Kraus count");
  KrausSet r = k;
  for (int a = 0; a < k.size(); ++a)
    for (int b = 0; b < k.size(); ++b)
      if (h.h()(a, b) != 0.0) r.dkraus[a] -= cplx(0, 1) * h.h()(a, b) * k.kraus[b];
  return r;
}

BlockComb apply_mixing(const BlockComb& b, const MixingMatrix& h) {
  if (h.dim() != b.count()) throw std::invalid_argument("apply_mixing: h dimension does not match Kraus count");
  BlockComb r = b;
  r.dK = b.dK - cplx(0, 1) * b.K * h.h().transpose();
  return r;
}

namespace {

Mat reg_embed(const Mat& op, int dh) {
  // 1_H (x) op
  return kron(Mat::Identity(dh, dh), op);
}

struct ToothOps {
  std::vector<Mat> k, dk;
};

ToothOps with_register(const Tooth& t, const std::vector<Mat>& before) {
  ToothOps o;
  if (before.empty()) {
    o.k = t.kset.kraus;
    o.dk = t.kset.dkraus;
    return o;
  }
  for (size_t a = 0; a < t.kset.kraus.size(); ++a)
    for (const auto& b : before) {
      Mat e = reg_embed(b, t.dh);
      o.k.push_back(t.kset.kraus[a] * e);
      o.dk.push_back(t.kset.dkraus[a] * e);
    }
  return o;
}

}  // namespace

BlockComb compose_block(const Tooth& t, int m, const CutStrategy& cut, double prune_tol) {
  if (m < 1) throw std::invalid_argument("compose_block: m must be at least 1");
  const int dh = t.dh, dr = t.dr;
  t.kset.validate();
  if (t.kset.din() != dh * dr || t.kset.dout() != dh * dr)
    throw std::invalid_argument("compose_block: tooth dimensions do not match dh * dr");

  // vectors over (prefix, r); start with the identity on the register
  std::vector<Vec> cur, dcur;
  {
    Vec v = Vec::Zero(dr * dr);
    for (int r = 0; r < dr; ++r) v(r * dr + r) = 1.0;
    cur.push_back(v);
    dcur.push_back(Vec::Zero(dr * dr));
  }
  int prefix = dr;  // product of dims before the open register
  ToothOps first = with_register(t, cut.lead);
  ToothOps mid = with_register(t, cut.between);
  for (int step = 0; step < m; ++step) {
    const ToothOps& ops = step == 0 ? first : mid;
    std::vector<Vec> nxt, dnxt;
    const int np = prefix * dh * dh;
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = 0; b < ops.k.size(); ++b) {
        const Mat& kk = ops.k[b];
        const Mat& dk = ops.dk[b];
        Vec v = Vec::Zero(np * dr), dv = Vec::Zero(np * dr);
        for (int p = 0; p < prefix; ++p)
          for (int hi = 0; hi < dh; ++hi)
            for (int ho = 0; ho < dh; ++ho)
              for (int rp = 0; rp < dr; ++rp) {
                cplx s = 0, ds = 0;
                const int row = ho * dr + rp;
                for (int r = 0; r < dr; ++r) {
                  const int col = hi * dr + r;
                  s += cur[a](p * dr + r) * kk(row, col);
                  ds += dcur[a](p * dr + r) * kk(row, col) + cur[a](p * dr + r) * dk(row, col);
                }
                const int idx = ((p * dh + hi) * dh + ho) * dr + rp;
                v(idx) = s;
                dv(idx) = ds;
              }
        if (prune_tol > 0 && v.norm() <= prune_tol && dv.norm() <= prune_tol) continue;
        nxt.push_back(std::move(v));
        dnxt.push_back(std::move(dv));
      }
    cur.swap(nxt);
    dcur.swap(dnxt);
    prefix = np;
  }
  if (!cut.trail.empty()) {
    std::vector<Vec> nxt, dnxt;
    for (size_t a = 0; a < cur.size(); ++a)
      for (const auto& tr : cut.trail) {
        Vec v = Vec::Zero(prefix * dr), dv = Vec::Zero(prefix * dr);
        for (int p = 0; p < prefix; ++p)
          for (int s = 0; s < dr; ++s)
            for (int r = 0; r < dr; ++r) {
              v(p * dr + s) += tr(s, r) * cur[a](p * dr + r);
              dv(p * dr + s) += tr(s, r) * dcur[a](p * dr + r);
            }
        if (prune_tol > 0 && v.norm() <= prune_tol && dv.norm() <= prune_tol) continue;
        nxt.push_back(std::move(v));
        dnxt.push_back(std::move(dv));
      }
    cur.swap(nxt);
    dcur.swap(dnxt);
  }
  if (cur.empty()) throw std::runtime_error("compose_block: every Kraus vector vanished");

  BlockComb b;
  b.m = m;
  b.layout.push_back(reg(0, dr));
  for (int i = 1; i <= 2 * m; ++i) b.layout.push_back(probe(i, dh));
  b.layout.push_back(reg(m, dr));
  b.out = {probe(2 * m, dh), reg(m, dr)};
  const int dim = prefix * dr;
  b.K.resize(dim, static_cast<Eigen::Index>(cur.size()));
  b.dK.resize(dim, static_cast<Eigen::Index>(cur.size()));
  for (size_t a = 0; a < cur.size(); ++a) {
    b.K.col(a) = cur[a];
    b.dK.col(a) = dcur[a];
  }
  for (int k = 1; k <= m; ++k) {
    CombStructure::Slot s;
    if (k == 1) s.in = {reg(0, dr), probe(1, dh)};
    else s.in = {probe(2 * k - 1, dh)};
    if (k == m) s.out = {probe(2 * m, dh), reg(m, dr)};
    else s.out = {probe(2 * k, dh)};
    b.structure.teeth.push_back(s);
  }
  return b;
}

BlockComb block_from_kraus(const KrausSet& k) {
  k.validate();
  if (k.din() != k.dout()) throw std::invalid_argument("block_from_kraus: needs equal input and output dims");
  Tooth t = make_tooth(k.kraus, k.dkraus, k.din(), 1);
  return compose_block(t, 1);
}

BlockComb close_input(const BlockComb& b, const Mat& sigma) {
  if (b.input_closed || b.layout.empty() || b.layout.front().kind != SpaceKind::Register)
    throw std::invalid_argument("close_input: input register already closed");
  const int dr = b.layout.front().dim;
  if (sigma.rows() != dr || sigma.cols() != dr) throw std::invalid_argument("close_input: sigma has the wrong size");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sigma + sigma.adjoint()));
  const int rest = b.dim() / dr;
  std::vector<Vec> ks, dks;
  for (int k = 0; k < b.count(); ++k)
    for (int i = 0; i < dr; ++i) {
      const double p = es.eigenvalues()(i);
      if (p <= 1e-15) continue;
      Vec u = es.eigenvectors().col(i);
      Vec v = Vec::Zero(rest), dv = Vec::Zero(rest);
      for (int r = 0; r < dr; ++r) {
        v += std::sqrt(p) * u(r) * b.K.col(k).segment(r * rest, rest);
        dv += std::sqrt(p) * u(r) * b.dK.col(k).segment(r * rest, rest);
      }
      ks.push_back(v);
      dks.push_back(dv);
    }
  BlockComb r = b;
  r.layout.erase(r.layout.begin());
  r.K.resize(rest, static_cast<Eigen::Index>(ks.size()));
  r.dK.resize(rest, static_cast<Eigen::Index>(ks.size()));
  for (size_t a = 0; a < ks.size(); ++a) {
    r.K.col(a) = ks[a];
    r.dK.col(a) = dks[a];
  }
  auto& in = r.structure.teeth.front().in;
  in.erase(in.begin());
  r.input_closed = true;
  return r;
}

BlockComb trace_out_register(const BlockComb& b) {
  if (b.output_traced || b.layout.empty() || b.layout.back().kind != SpaceKind::Register)
    throw std::invalid_argument("trace_out_register: output register already traced");
  const int dr = b.layout.back().dim;
  const int rest = b.dim() / dr;
  BlockComb r = b;
  r.layout.pop_back();
  r.out.pop_back();
  r.structure.teeth.back().out.pop_back();
  r.K.resize(rest, b.count() * dr);
  r.dK.resize(rest, b.count() * dr);
  for (int k = 0; k < b.count(); ++k)
    for (int i = 0; i < dr; ++i) {
      for (int x = 0; x < rest; ++x) {
        r.K(x, k * dr + i) = b.K(x * dr + i, k);
        r.dK(x, k * dr + i) = b.dK(x * dr + i, k);
      }
    }
  r.output_traced = true;
  return r;
}

BlockComb canonicalize(const BlockComb& b, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(b.K, Eigen::ComputeFullV);
  const Mat& v = svd.matrixV();
  Mat k = b.K * v, dk = b.dK * v;
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double dscale = std::max(smax, b.dK.norm());
  std::vector<int> keep;
  for (int i = 0; i < k.cols(); ++i) {
    const double s = k.col(i).norm(), ds = dk.col(i).norm();
    if (s > rel_tol * smax || ds > rel_tol * dscale) keep.push_back(i);
  }
  BlockComb r = b;
  r.K.resize(b.dim(), static_cast<Eigen::Index>(keep.size()));
  r.dK.resize(b.dim(), static_cast<Eigen::Index>(keep.size()));
  for (size_t a = 0; a < keep.size(); ++a) {
    r.K.col(a) = k.col(keep[a]);
    r.dK.col(a) = dk.col(keep[a]);
  }
  return r;
}

Operator choi_of(const KrausSet& k) { return choi_from_kraus(k.kraus_ops()); }

Operator choi_of(const BlockComb& b) { return Operator(b.K * b.K.adjoint(), b.layout); }

Operator dchoi_of(const KrausSet& k) {
  Layout l = concat(k.in_layout, k.out_layout);
  const int d = total_dim(l);
  Mat c = Mat::Zero(d, d);
  for (int a = 0; a < k.size(); ++a) {
    Mat v = vectorize(Operator(k.kraus[a], k.out_layout, k.in_layout)).mat;
    Mat dv = vectorize(Operator(k.dkraus[a], k.out_layout, k.in_layout)).mat;
    c += dv * v.adjoint() + v * dv.adjoint();
  }
  return Operator(c, l);
}

Operator dchoi_of(const BlockComb& b) {
  Mat m = b.dK * b.K.adjoint();
  return Operator(m + m.adjoint(), b.layout);
}

std::vector<Mat> stochastic_kraus(const Eigen::MatrixXd& p, double tol) {
  std::vector<Mat> ks;
  for (int r = 0; r < p.cols(); ++r)
    for (int s = 0; s < p.rows(); ++s) {
      if (p(s, r) < -1e-14) throw std::invalid_argument("stochastic_kraus: negative probability");
      if (p(s, r) <= tol) continue;
      Mat k = Mat::Zero(p.rows(), p.cols());
      k(s, r) = std::sqrt(std::max(0.0, p(s, r)));
      ks.push_back(k);
    }
  return ks;
}

}  // namespace combqfi
