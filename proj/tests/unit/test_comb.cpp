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

#include <random>

#include "combqfi/comb.hpp"
#include "doctest.h"

using namespace combqfi;

namespace {

std::mt19937 rng(4242);

Mat random_mat(int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Mat random_herm(int d) {
  Mat g = random_mat(d, d);
  return 0.5 * (g + g.adjoint());
}

// Tooth 1 maps K1 -> K2 (x) A, tooth 2 maps K3 (x) A -> K4.
Mat random_two_tooth_comb(int d1, int d2, int d3, int d4) {
  const int da = d1 * d3 * d4;  // plenty of memory
  auto iso = [](int din, int dout) {
    Mat g = random_mat(dout, din);
    Eigen::HouseholderQR<Mat> qr(g);
    return Mat(qr.householderQ() * Mat::Identity(dout, din));
  };
  Mat v1 = iso(d1, d2 * da);
  // second tooth: channel K3 A -> K4 from a Stinespring isometry
  const int dk = d3 * da;
  Mat w = iso(dk, d4 * dk);
  Mat e = Mat::Zero(d1 * d2 * d3 * d4, d1 * d2 * d3 * d4);
  for (int k = 0; k < dk; ++k) {
    // Kraus K_k : (K3 A) -> K4
    Mat kk(d4, dk);
    for (int o = 0; o < d4; ++o)
      for (int i = 0; i < dk; ++i) kk(o, i) = w(o * dk + k, i);
    // combined vector on K1 K2 K3 K4: sum_a <K4|K_k|K3 a> <K2 a|V1|K1>
    Vec vec = Vec::Zero(d1 * d2 * d3 * d4);
    for (int i1 = 0; i1 < d1; ++i1)
      for (int o2 = 0; o2 < d2; ++o2)
        for (int i3 = 0; i3 < d3; ++i3)
          for (int o4 = 0; o4 < d4; ++o4) {
            cplx s = 0;
            for (int a = 0; a < da; ++a) s += kk(o4, i3 * da + a) * v1(o2 * da + a, i1);
            vec(((i1 * d2 + o2) * d3 + i3) * d4 + o4) = s;
          }
    e += vec * vec.adjoint();
  }
  return e;
}

}  // namespace

TEST_CASE("trace_replace on a product operator") {
  Mat a = random_herm(2), b = random_herm(3);
  Mat x = kron(a, b);
  Mat r = trace_replace(x, {2, 3}, {1});
  Mat oracle = kron(a, Mat::Identity(3, 3)) * (b.trace() / 3.0);
  CHECK((r - oracle).norm() < 1e-12);
  Mat r0 = trace_replace(x, {2, 3}, {0});
  CHECK((r0 - kron(Mat::Identity(2, 2), b) * (a.trace() / 2.0)).norm() < 1e-12);
  CHECK((trace_replace(x, {2, 3}, {}) - x).norm() == 0.0);
}

TEST_CASE("trace_replace is idempotent and trace preserving") {
  Mat x = random_herm(12);
  std::vector<int> dims{2, 3, 2};
  Mat r = trace_replace(x, dims, {0, 2});
  CHECK((trace_replace(r, dims, {0, 2}) - r).norm() < 1e-12);
  CHECK(std::abs(r.trace() - x.trace()) < 1e-12);
}

TEST_CASE("single tooth comb conditions are only normalization") {
  auto s = CombStructure::from_dims({2, 3});
  auto cc = comb_conditions(s);
  // Tr_out E = 1 on a qubit input: 4 real conditions
  CHECK(cc.A.rows() == 4);
  CHECK(cc.A.cols() == 36);
  // the Choi of the identity channel is a valid comb
  Mat v = Mat::Zero(4, 1);
  v(0) = v(3) = 1.0;
  auto s2 = CombStructure::from_dims({2, 2});
  CHECK(is_comb(s2, v * v.adjoint()));
  CHECK(!is_comb(s2, 0.5 * v * v.adjoint()));
}

TEST_CASE("reduced linear system agrees with the residual") {
  auto s = CombStructure::from_dims({2, 2, 2, 1});
  auto cc = comb_conditions(s);
  Mat e = random_two_tooth_comb(2, 2, 2, 1);
  CHECK(cc.residual(e) < 1e-10);
  CHECK((cc.A * hermitian_coords(e) - cc.b).norm() < 1e-9);
  Mat bad = e + 0.1 * random_herm(8);
  CHECK(cc.residual(bad) > 1e-4);
  CHECK((cc.A * hermitian_coords(bad) - cc.b).norm() > 1e-4);
}

TEST_CASE("random two tooth combs satisfy the chain") {
  for (int trial = 0; trial < 3; ++trial) {
    auto s = CombStructure::from_dims({2, 2, 2, 2});
    Mat e = random_two_tooth_comb(2, 2, 2, 2);
    CHECK(is_comb(s, e, 1e-9));
    // C0 = 1 / (d2 d4)
    CHECK(is_comb(s, Mat::Identity(16, 16) / 4.0, 1e-12));
  }
}

TEST_CASE("a non-causal operator is rejected") {
  // identity channel from K3 back to K2 signals backwards
  auto s = CombStructure::from_dims({1, 2, 2, 1});
  Mat v = Mat::Zero(4, 1);
  v(0) = v(3) = 1.0;  // |00> + |11> on K2 K3
  Mat e = v * v.adjoint();
  CHECK(comb_residual(s, e) > 0.1);
}

TEST_CASE("hermitian coordinates round trip") {
  Mat x = random_herm(5);
  CHECK((hermitian_from_coords(hermitian_coords(x), 5) - x).norm() < 1e-12);
}

TEST_CASE("projector is idempotent, self adjoint, and kills valid differences") {
  std::vector<int> dims{2, 2, 2, 2};
  CombProjector p(dims);
  Mat x = random_herm(16), y = random_herm(16);
  Mat px = p.apply(x);
  CHECK((p.apply(px) - px).norm() < 1e-10);
  CHECK(std::abs((p.apply(x) * y).trace() - (x * p.apply(y)).trace()) < 1e-9);
  auto s = CombStructure::from_dims(dims);
  Mat e1 = random_two_tooth_comb(2, 2, 2, 2), e2 = random_two_tooth_comb(2, 2, 2, 2);
  Mat d = e1 - e2;
  CHECK((p.apply(d) - d).norm() < 1e-9);
  auto sp = project_Xm(x, s);
  CHECK(std::abs((sp.x1 * sp.x2).trace()) < 1e-9);
  CHECK(x.squaredNorm() == doctest::Approx(sp.x1.squaredNorm() + sp.x2.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("projector basis spans the affine directions") {
  std::vector<int> dims{2, 2, 2, 2};
  CombProjector p(dims);
  auto basis = p.hermitian_basis();
  auto cc = comb_conditions(CombStructure::from_dims(dims));
  // dim = 256 real coordinates minus independent conditions
  CHECK(static_cast<int>(basis.size()) == 256 - static_cast<int>(cc.A.rows()));
  for (size_t i = 0; i < basis.size(); i += 17) {
    CHECK((p.apply(basis[i]) - basis[i]).norm() < 1e-9);
    CHECK(basis[i].norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("dual chain on a single tooth is the largest eigenvalue of Tr_out") {
  // max Tr(aC) over channels with trivial input: max eig of a
  auto s = CombStructure::from_dims({1, 3});
  Mat a = random_herm(3);
  auto sol = solve(dual_comb_conditions(s, a), 1e-9);
  REQUIRE(sol.ok());
  CHECK(sol.value == doctest::Approx(max_eig(a)).epsilon(1e-7));
}

TEST_CASE("dual chain top obeys the trace chain") {
  std::vector<int> dims{2, 2, 3, 2};
  auto ch = dual_chain_basis(dims);
  Eigen::VectorXd y = Eigen::VectorXd::Random(ch.nvars);
  Mat top = ch.top(y);
  CHECK((top - top.adjoint()).norm() < 1e-12);
  // Q2 (x) 1_4; Tr_{3,4} / d4 gives Q1 (x) 1_2 (x) 1 with Tr Q1 = sum over level 1
  Mat r = partial_trace_dims(top, dims, {2, 3}) / 2.0;
  Mat q1 = partial_trace_dims(r, {2, 2}, {1}) / 2.0;
  CHECK((r - kron(q1, Mat::Identity(2, 2))).norm() < 1e-10);
  double tr = 0;
  for (int v = 0; v < ch.nvars; ++v) tr += ch.trace_q1(v) * y(v);
  CHECK(q1.trace().real() == doctest::Approx(tr).epsilon(1e-10));
}

TEST_CASE("primal and dual comb programs agree") {
  for (const auto& dims : std::vector<std::vector<int>>{{2, 2, 2, 2}, {1, 2, 2, 2}, {2, 1, 2, 2}}) {
    auto s = CombStructure::from_dims(dims);
    const int d = s.total_dim();
    Mat a = random_herm(d);
    auto ds = solve(dual_comb_conditions(s, a), 1e-9);
    REQUIRE(ds.ok());
    auto pp = primal_comb_problem(s, a);
    auto ps = solve(pp, 1e-9);
    REQUIRE(ps.ok());
    double outs = 1.0;
    for (size_t k = 1; k < dims.size(); k += 2) outs *= dims[k];
    double primal = (a.trace().real() / outs) - ps.value;
    CHECK(primal == doctest::Approx(ds.value).epsilon(1e-6));
  }
}

TEST_CASE("dual chain span contains the projector complement") {
  std::vector<int> dims{1, 2, 2, 2};
  auto s = CombStructure::from_dims(dims);
  auto span = beta1_zero_conditions(s);
  CombProjector p(dims);
  for (int t = 0; t < 4; ++t) {
    Mat x = random_herm(8);
    Mat rest = x - p.apply(x);
    CHECK(beta1_residual(span, rest) < 1e-9);
    CHECK(beta1_residual(span, p.apply(x)) > 1e-3);
  }
}
