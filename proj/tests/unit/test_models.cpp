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

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "combqfi/bounds.hpp"
#include "combqfi/models.hpp"
#include "combqfi/qfi.hpp"
#include "doctest.h"

using namespace combqfi;

namespace {

// Superoperator sum_k K (x) conj(K), composition is a matrix product.
Mat superop(const std::vector<Mat>& ks) {
  const Eigen::Index d = ks[0].rows();
  Mat s = Mat::Zero(d * d, d * d);
  for (const auto& k : ks) s += kron(k, k.conjugate());
  return s;
}

Mat choi_small(const std::vector<Mat>& ks) {
  const int d = static_cast<int>(ks[0].cols());
  Mat c = Mat::Zero(d * ks[0].rows(), d * ks[0].rows());
  for (const auto& k : ks) {
    Vec v = Vec::Zero(d * k.rows());
    for (int i = 0; i < d; ++i) v.segment(i * k.rows(), k.rows()) = k.col(i);
    c += v * v.adjoint();
  }
  return c;
}

DephasingSpec spec(double eps, double C, Axis ax, Cut cut, double th = 0.0) {
  DephasingSpec s;
  s.epsilon = eps;
  s.C = C;
  s.axis = ax;
  s.cut = cut;
  s.theta = th;
  return s;
}

}  // namespace

TEST_CASE("memory channel moves populations by the Markov matrix") {
  for (double C : {1.0, -1.0, 0.3}) {
    auto T = markov_T(C);
    Eigen::MatrixXd pm = markov_matrix(C);
    for (int r = 0; r < 2; ++r) {
      Mat in = Mat::Zero(2, 2);
      in(r, r) = 1.0;
      Mat out = Mat::Zero(2, 2);
      for (const auto& k : T) out += k * in * k.adjoint();
      Mat want = Mat::Zero(2, 2);
      for (int s = 0; s < 2; ++s) want(s, s) = pm(s, r);
      CHECK((out - want).norm() < 1e-12);
    }
  }
}

TEST_CASE("split memory channels compose back to T over the C grid") {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  for (int i = 0; i <= 10; ++i) {
    const double C = -1.0 + 0.2 * i;
    auto T = markov_T(C);
    SplitT st = split_T(C);
    CHECK(st.flip_needed == (C < -1e-12));
    CHECK(min_eig(choi_small(T)) > -1e-12);
    CHECK(min_eig(choi_small(st.t)) > -1e-12);
    Mat lead = superop(st.t);
    if (st.flip_needed) lead = superop({x}) * lead;
    CHECK((lead * superop(st.t) - superop(T)).norm() < 1e-12);
    // through the public cut as well
    CutStrategy c = dephasing_cut(spec(0.3, C, Axis::Parallel, Cut::SplitT));
    CHECK((superop(c.lead) * superop(c.trail) - superop(T)).norm() < 1e-12);
  }
  CHECK_THROWS(split_T(1.5));
  CHECK_THROWS(markov_T(-1.2));
}

TEST_CASE("uncorrelated dephasing block equals the single channel") {
  for (Axis ax : {Axis::Parallel, Axis::Perpendicular})
    for (Cut cut : {Cut::SplitT, Cut::AfterSignal}) {
      DephasingModel md(spec(0.4, 0.0, ax, cut, 0.2));
      KrausSet k = *md.uncorrelated();
      BlockComb b = md.full_chain(1);
      CHECK((choi_of(b).mat - choi_of(k).mat).norm() < 1e-10);
      CHECK((dchoi_of(b).mat - dchoi_of(k).mat).norm() < 1e-10);
      BlockComb b2 = md.full_chain(2);
      CHECK((choi_of(b2).mat - kron(choi_of(k).mat, choi_of(k).mat)).norm() < 1e-10);
    }
  CHECK_FALSE(DephasingModel(spec(0.4, 0.3, Axis::Parallel, Cut::SplitT)).uncorrelated().has_value());
}

TEST_CASE("zero rotation angle leaves a pure signal") {
  for (double C : {-0.5, 0.4})
    for (Cut cut : {Cut::SplitT, Cut::AfterSignal}) {
      DephasingModel md(spec(0.0, C, Axis::Perpendicular, cut));
      BlockComb b = md.full_chain(2);
      KrausSet ph = build_phase();
      CHECK((choi_of(b).mat - kron(choi_of(ph).mat, choi_of(ph).mat)).norm() < 1e-10);
      CHECK(b.count() == 1);
    }
}

TEST_CASE("amplitude damping limits and spectrum") {
  CHECK((choi_of(build_amplitude_damping(1.0)).mat - choi_of(build_phase()).mat).norm() < 1e-12);
  CHECK(std::abs(channel_qfi(build_amplitude_damping(0.0))) < 1e-6);
  for (double p : {0.2, 0.5}) {
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(choi_of(build_amplitude_damping(p, 0.3)).mat).eigenvalues();
    std::vector<double> e(ev.data(), ev.data() + 4);
    std::sort(e.begin(), e.end());
    CHECK(std::abs(e[0]) < 1e-12);
    CHECK(std::abs(e[1]) < 1e-12);
    CHECK(e[2] == doctest::Approx(1 - p));
    CHECK(e[3] == doctest::Approx(1 + p));
  }
  CHECK_THROWS(build_amplitude_damping(1.2));
}

TEST_CASE("working point does not matter for parallel dephasing") {
  KrausSet a = *DephasingModel(spec(0.5, 0.0, Axis::Parallel, Cut::SplitT, 0.0)).uncorrelated();
  KrausSet b = *DephasingModel(spec(0.5, 0.0, Axis::Parallel, Cut::SplitT, 0.9)).uncorrelated();
  CHECK(channel_qfi(a) == doctest::Approx(channel_qfi(b)).epsilon(1e-7));
  DephasingModel c0(spec(0.3, 0.4, Axis::Parallel, Cut::SplitT, 0.0));
  DephasingModel c1(spec(0.3, 0.4, Axis::Parallel, Cut::SplitT, 1.3));
  CHECK(exact_comb_qfi(c0, 2).value == doctest::Approx(exact_comb_qfi(c1, 2).value).epsilon(1e-6));
}

TEST_CASE("model factory validates its parameters") {
  ModelParams p;
  CHECK_THROWS_WITH_AS(make_model("nope", p), doctest::Contains("unknown model"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_model("amplitude_damping", p), doctest::Contains("'p'"), std::invalid_argument);
  p.num["p"] = 2.0;
  CHECK_THROWS_WITH_AS(make_model("amplitude_damping", p), doctest::Contains("'p'"), std::invalid_argument);
  ModelParams d;
  CHECK_THROWS_WITH_AS(make_model("dephasing", d), doctest::Contains("eta"), std::invalid_argument);
  d.num["eta"] = 0.9;
  d.num["epsilon"] = 0.1;
  CHECK_THROWS(make_model("dephasing", d));
  d.num.erase("epsilon");
  d.num["C"] = 1.5;
  CHECK_THROWS_WITH_AS(make_model("dephasing", d), doctest::Contains("'C'"), std::invalid_argument);
  d.num["C"] = 0.3;
  d.str["axis"] = "diagonal";
  CHECK_THROWS_WITH_AS(make_model("dephasing", d), doctest::Contains("axis"), std::invalid_argument);
  d.str["axis"] = "perpendicular";
  d.str["cut"] = "after_signal";
  auto m = make_model("dephasing", d);
  CHECK(m->name() == "dephasing");
  CHECK(m->register_dim() == 2);
  CHECK(m->describe().find("perpendicular") != std::string::npos);
  CHECK(make_model("phase", {})->register_dim() == 1);
  CHECK(model_names().size() == 3);
}
