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

#include "combqfi/tensor.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace combqfi {

std::string SpaceLabel::name() const {
  std::string p;
  switch (kind) {
    case SpaceKind::Probe: p = "H"; break;
    case SpaceKind::Register: p = "R"; break;
    case SpaceKind::Ancilla: p = "A"; break;
    case SpaceKind::Virtual: p = "V"; break;
    case SpaceKind::Purif: p = "E"; break;
    case SpaceKind::Trivial: return "1";
  }
  return p + std::to_string(index);
}

SpaceLabel probe(int i, int dim) { return {SpaceKind::Probe, i, dim}; }
SpaceLabel reg(int i, int dim) { return {SpaceKind::Register, i, dim}; }
SpaceLabel ancilla(int i, int dim) { return {SpaceKind::Ancilla, i, dim}; }
SpaceLabel virt(int i, int dim) { return {SpaceKind::Virtual, i, dim}; }

int total_dim(const Layout& l) {
  int d = 1;
  for (const auto& s : l) d *= s.dim;
  return d;
}

std::vector<int> dims_of(const Layout& l) {
  std::vector<int> d;
  d.reserve(l.size());
  for (const auto& s : l) d.push_back(s.dim);
  return d;
}

int find_label(const Layout& l, const SpaceLabel& s) {
  for (size_t i = 0; i < l.size(); ++i)
    if (l[i].same(s)) return static_cast<int>(i);
  return -1;
}

Layout concat(const Layout& a, const Layout& b) {
  Layout r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void check_unique(const Layout& l) {
  for (size_t i = 0; i < l.size(); ++i)
    for (size_t j = i + 1; j < l.size(); ++j)
      if (l[i].same(l[j])) throw TensorError("duplicate label " + l[i].name());
}

Operator::Operator(Mat m, Layout r, Layout c) : mat(std::move(m)), rows(std::move(r)), cols(std::move(c)) {
  if (mat.rows() != total_dim(rows) || mat.cols() != total_dim(cols))
    throw TensorError("matrix shape does not match layouts");
}

Operator::Operator(Mat m, Layout square) : Operator(std::move(m), square, square) {}

bool Operator::square_layout() const {
  if (rows.size() != cols.size()) return false;
  for (size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].same(cols[i]) || rows[i].dim != cols[i].dim) return false;
  return true;
}

bool Operator::hermitian(double tol) const {
  if (!square_layout()) return false;
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::psd(double tol) const {
  if (!hermitian(tol)) return false;
  return min_eig(mat) >= -tol;
}

cplx Operator::trace() const {
  if (!square_layout()) throw TensorError("trace of a non-square operator");
  return mat.trace();
}

Operator identity(const Layout& l) {
  int d = total_dim(l);
  return Operator(Mat::Identity(d, d), l);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Operator kron(const Operator& a, const Operator& b) {
  Layout r = concat(a.rows, b.rows), c = concat(a.cols, b.cols);
  check_unique(r);
  check_unique(c);
  return Operator(kron(a.mat, b.mat), r, c);
}

namespace {

// new flat index -> old flat index
std::vector<int> perm_map(const std::vector<int>& dims, const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) throw TensorError("permutation size mismatch");
  std::vector<int> old_stride(n, 1);
  for (int i = n - 2; i >= 0; --i) old_stride[i] = old_stride[i + 1] * dims[i + 1];
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> map(total);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int old = 0;
    for (int p = 0; p < n; ++p) old += digit[p] * old_stride[perm[p]];
    map[idx] = old;
    for (int p = n - 1; p >= 0; --p) {
      if (++digit[p] < dims[perm[p]]) break;
      digit[p] = 0;
    }
  }
  return map;
}

}  // namespace

Mat permute_dims(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = perm_map(dims, perm);
  const int d = static_cast<int>(map.size());
  if (m.rows() != d || m.cols() != d) throw TensorError("permute_dims: shape mismatch");
  Mat r(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) r(i, j) = m(map[i], map[j]);
  return r;
}

Vec permute_dims(const Vec& v, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = perm_map(dims, perm);
  Vec r(map.size());
  for (size_t i = 0; i < map.size(); ++i) r(i) = v(map[i]);
  return r;
}

Mat partial_trace_dims(const Mat& m, const std::vector<int>& dims,
                       const std::vector<int>& traced) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> tr(n, false);
  for (int t : traced) {
    if (t < 0 || t >= n) throw TensorError("partial_trace_dims: bad position");
    tr[t] = true;
  }
  std::vector<int> perm;
  int dk = 1, dt = 1;
  for (int i = 0; i < n; ++i)
    if (!tr[i]) {
      perm.push_back(i);
      dk *= dims[i];
    }
  for (int i = 0; i < n; ++i)
    if (tr[i]) {
      perm.push_back(i);
      dt *= dims[i];
    }
  auto map = perm_map(dims, perm);
  Mat r = Mat::Zero(dk, dk);
  for (int b = 0; b < dk; ++b)
    for (int a = 0; a < dk; ++a) {
      cplx s = 0;
      for (int t = 0; t < dt; ++t) s += m(map[a * dt + t], map[b * dt + t]);
      r(a, b) = s;
    }
  return r;
}

Operator permute(const Operator& x, const Layout& order) {
  if (!x.square_layout()) throw TensorError("permute needs a square layout");
  if (order.size() != x.rows.size()) throw TensorError("permute: layout size mismatch");
  std::vector<int> perm;
  for (const auto& s : order) {
    int p = find_label(x.rows, s);
    if (p < 0) throw TensorError("permute: unknown label " + s.name());
    perm.push_back(p);
  }
  Layout o;
  for (int p : perm) o.push_back(x.rows[p]);
  return Operator(permute_dims(x.mat, dims_of(x.rows), perm), o);
}

Operator partial_trace(const Operator& x, const Layout& over) {
  if (!x.square_layout()) throw TensorError("partial_trace needs a square layout");
  std::vector<int> pos;
  for (const auto& s : over) {
    int p = find_label(x.rows, s);
    if (p < 0) throw TensorError("partial_trace: unknown label " + s.name());
    pos.push_back(p);
  }
  Layout keep;
  for (size_t i = 0; i < x.rows.size(); ++i)
    if (std::find(pos.begin(), pos.end(), static_cast<int>(i)) == pos.end())
      keep.push_back(x.rows[i]);
  return Operator(partial_trace_dims(x.mat, dims_of(x.rows), pos), keep);
}

Operator vectorize(const Operator& k) {
  const int dout = static_cast<int>(k.mat.rows()), din = static_cast<int>(k.mat.cols());
  Mat v(din * dout, 1);
  for (int j = 0; j < din; ++j)
    for (int i = 0; i < dout; ++i) v(j * dout + i, 0) = k.mat(i, j);
  return Operator(v, concat(k.cols, k.rows), Layout{});
}

Operator choi_from_kraus(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw TensorError("empty Kraus list");
  Operator v0 = vectorize(kraus[0]);
  Mat c = Mat::Zero(v0.mat.rows(), v0.mat.rows());
  for (const auto& k : kraus) {
    Operator v = vectorize(k);
    c += v.mat * v.mat.adjoint();
  }
  return Operator(c, v0.rows);
}

Operator apply_kraus(const std::vector<Operator>& kraus, const Operator& rho) {
  if (kraus.empty()) throw TensorError("empty Kraus list");
  Mat r = Mat::Zero(kraus[0].mat.rows(), kraus[0].mat.rows());
  for (const auto& k : kraus) r += k.mat * rho.mat * k.mat.adjoint();
  return Operator(r, kraus[0].rows);
}

Operator link_product(const Operator& a, const Operator& b) {
  if (!a.square_layout() || !b.square_layout())
    throw TensorError("link_product needs square layouts");
  Layout shared, ra, rb;
  for (const auto& s : a.rows) {
    int p = find_label(b.rows, s);
    if (p >= 0) {
      if (b.rows[p].dim != s.dim) throw TensorError("link_product: dimension mismatch on " + s.name());
      shared.push_back(s);
    } else {
      ra.push_back(s);
    }
  }
  for (const auto& s : b.rows)
    if (find_label(a.rows, s) < 0) rb.push_back(s);

  Operator ap = permute(a, concat(ra, shared));
  Operator bp = permute(b, concat(shared, rb));
  const int da = total_dim(ra), db = total_dim(rb), ds = total_dim(shared);
  Mat r = Mat::Zero(da * db, da * db);
  Mat ablk(da, da), bblk(db, db);
  for (int s = 0; s < ds; ++s)
    for (int sp = 0; sp < ds; ++sp) {
      // (A^{T_S})[(a,s),(a',s')] = A[(a,s'),(a',s)]
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) ablk(i, j) = ap.mat(i * ds + sp, j * ds + s);
      bblk = bp.mat.block(sp * db, s * db, db, db);
      r += kron(ablk, bblk);
    }
  Layout out = concat(ra, rb);
  return Operator(r, out);
}

double min_eig(const Mat& m) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eig(const Mat& m) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace combqfi
