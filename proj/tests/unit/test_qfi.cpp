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

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "combqfi/models.hpp"
#include "combqfi/qfi.hpp"
#include "doctest.h"

using namespace combqfi;

namespace {

std::mt19937 rng(2024);

Mat random_mat(int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Vec random_state(int d) {
  Vec v = random_mat(d, 1).col(0);
  return v / v.norm();
}

Mat pauli(int k) {
  Mat p = Mat::Zero(2, 2);
  if (k == 1) p << 0, 1, 1, 0;
  if (k == 2) p << 0, cplx(0, -1), cplx(0, 1), 0;
  if (k == 3) p << 1, 0, 0, -1;
  return p;
}

// Oracle: solve rho L + L rho = 2 drho as a linear system on vec(L), full rank rho only.
double qfi_lyapunov(const Mat& rho, const Mat& drho) {
  const int d = static_cast<int>(rho.rows());
  Mat id = Mat::Identity(d, d);
  Mat a = kron(id, rho) + kron(rho.transpose(), id);
  Vec b = Eigen::Map<const Vec>(Mat(2.0 * drho).data(), d * d);
  Vec l = a.partialPivLu().solve(b);
  Mat lm = Eigen::Map<Mat>(l.data(), d, d);
  return (rho * lm * lm).trace().real();
}

std::vector<Mat> random_channel(int d, int nk) {
  Mat g = random_mat(d * nk, d);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat v = qr.householderQ() * Mat::Identity(d * nk, d);
  std::vector<Mat> ks;
  for (int k = 0; k < nk; ++k) ks.push_back(v.middleRows(k * d, d));
  return ks;
}

StatePair push(const std::vector<Mat>& ks, const StatePair& s) {
  StatePair o{Mat::Zero(ks[0].rows(), ks[0].rows()), Mat::Zero(ks[0].rows(), ks[0].rows())};
  for (const auto& k : ks) {
    o.rho += k * s.rho * k.adjoint();
    o.drho += k * s.drho * k.adjoint();
  }
  return o;
}

// QFI of (1 (x) Lambda) on a pure probe-ancilla input.
double assisted_qfi(const KrausSet& k, const Vec& psi) {
  const int d = k.din();
  StatePair s{Mat::Zero(d * d, d * d), Mat::Zero(d * d, d * d)};
  for (int a = 0; a < k.size(); ++a) {
    Mat ka = kron(k.kraus[a], Mat::Identity(d, d));
    Mat dka = kron(k.dkraus[a], Mat::Identity(d, d));
    Vec o = ka * psi, dout = dka * psi;
    s.rho += o * o.adjoint();
    s.drho += dout * o.adjoint() + o * dout.adjoint();
  }
  return qfi_mixed(s);
}

}  // namespace

TEST_CASE("parameter independent state has zero QFI") {
  StatePair s{Mat::Identity(2, 2) / 2.0, Mat::Zero(2, 2)};
  CHECK(qfi_mixed(s) == doctest::Approx(0.0));
}

TEST_CASE("rotating Bloch vector gives eta squared") {
  for (double eta : {0.3, 0.7, 0.95})
    for (double th : {0.0, 0.4, 2.0}) {
      Mat rho = 0.5 * (Mat::Identity(2, 2) + eta * (std::cos(th) * pauli(1) + std::sin(th) * pauli(2)));
      Mat drho = 0.5 * eta * (-std::sin(th) * pauli(1) + std::cos(th) * pauli(2));
      CHECK(qfi_mixed({rho, drho}) == doctest::Approx(eta * eta).epsilon(1e-12));
      CHECK(qfi_mixed({rho, drho}) == doctest::Approx(qfi_lyapunov(rho, drho)).epsilon(1e-10));
    }
}

TEST_CASE("full rank random states match the Lyapunov oracle") {
  for (int t = 0; t < 5; ++t) {
    Mat g = random_mat(3, 3);
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    Mat h = random_mat(3, 3);
    h = (0.5 * (h + h.adjoint())).eval();
    Mat drho = cplx(0, -1) * (h * rho - rho * h);
    CHECK(qfi_mixed({rho, drho}) == doctest::Approx(qfi_lyapunov(rho, drho)).epsilon(1e-8));
  }
}

TEST_CASE("pure and mixed formulas agree") {
  for (int t = 0; t < 5; ++t) {
    Vec psi = random_state(4);
    Vec dpsi = random_mat(4, 1).col(0);
    // keep the state normalized to first order
    dpsi -= cplx(psi.dot(dpsi).real(), 0) * psi;
    Mat rho = psi * psi.adjoint();
    Mat drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
    CHECK(qfi_mixed({rho, drho}) == doctest::Approx(qfi_pure(psi, dpsi)).epsilon(1e-10));
  }
}

TEST_CASE("pure state QFI examples") {
  for (double th : {0.0, 1.1}) {
    Vec psi(2), dpsi(2);
    psi << 1.0, std::exp(cplx(0, th));
    psi /= std::sqrt(2.0);
    dpsi << 0.0, cplx(0, 1) * std::exp(cplx(0, th));
    dpsi /= std::sqrt(2.0);
    CHECK(qfi_pure(psi, dpsi) == doctest::Approx(1.0));
  }
  Vec psi = random_state(3);
  CHECK(qfi_pure(psi, Vec::Zero(3)) == doctest::Approx(0.0));
  CHECK(std::abs(qfi_pure(psi, cplx(0, 0.37) * psi)) < 1e-12);
}

TEST_CASE("non-hermitian input is rejected") {
  Mat rho = Mat::Identity(2, 2) / 2.0;
  Mat bad = random_mat(2, 2);
  CHECK_THROWS(qfi_mixed({rho, bad}));
  CHECK_THROWS(qfi_mixed({bad, Mat::Zero(2, 2)}));
}

TEST_CASE("fixed channels do not increase QFI") {
  for (int t = 0; t < 10; ++t) {
    Mat g = random_mat(3, 3);
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    Mat h = random_mat(3, 3);
    h = (0.5 * (h + h.adjoint())).eval();
    StatePair s{rho, cplx(0, -1) * (h * rho - rho * h)};
    StatePair o = push(random_channel(3, 2), s);
    CHECK(qfi_mixed(o) <= qfi_mixed(s) + 1e-8);
  }
}

TEST_CASE("channel QFI of the phase channel") {
  CHECK(channel_qfi(build_phase()) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(channel_qfi(build_phase(0.8)) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("channel QFI of parallel dephasing against input search") {
  for (double eta : {0.6, 0.9}) {
    DephasingSpec s;
    s.epsilon = std::acos(eta);
    KrausSet k = *DephasingModel(s).uncorrelated();
    const double f = channel_qfi(k);
    CHECK(f == doctest::Approx(eta * eta).epsilon(1e-7));
    // random search plus hill climbing over probe-ancilla inputs
    double best = 0.0;
    Vec bp = random_state(4);
    for (int t = 0; t < 300; ++t) {
      Vec psi = random_state(4);
      double q = assisted_qfi(k, psi);
      CHECK(q <= f + 1e-8);
      if (q > best) {
        best = q;
        bp = psi;
      }
    }
    double step = 0.3;
    for (int t = 0; t < 4000 && step > 1e-7; ++t) {
      Vec psi = bp + step * random_mat(4, 1).col(0);
      psi /= psi.norm();
      double q = assisted_qfi(k, psi);
      if (q > best) {
        best = q;
        bp = psi;
      } else if (t % 40 == 39) {
        step *= 0.7;
      }
    }
    CHECK(best <= f + 1e-8);
    CHECK(best == doctest::Approx(f).epsilon(1e-5));
  }
}

TEST_CASE("completely depolarizing channel carries no information") {
  KrausSet k;
  for (int i = 0; i < 4; ++i) {
    Mat p = i == 0 ? Mat(Mat::Identity(2, 2)) : pauli(i);
    k.kraus.push_back(0.5 * p * signal(0.0));
    k.dkraus.push_back(0.5 * p * dsignal(0.0));
  }
  k.in_layout = {probe(1, 2)};
  k.out_layout = {probe(2, 2)};
  CHECK(std::abs(channel_qfi(k)) < 1e-6);
}

TEST_CASE("channel QFI ignores unitary remixing of the Kraus set") {
  KrausSet k = build_amplitude_damping(0.6, 0.2);
  const double f = channel_qfi(k);
  Mat g = random_mat(2, 2);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat u = qr.householderQ();
  KrausSet r = k;
  for (int a = 0; a < 2; ++a) {
    r.kraus[a].setZero();
    r.dkraus[a].setZero();
    for (int b = 0; b < 2; ++b) {
      r.kraus[a] += u(a, b) * k.kraus[b];
      r.dkraus[a] += u(a, b) * k.dkraus[b];
    }
  }
  CHECK(channel_qfi(r) == doctest::Approx(f).epsilon(1e-7));
}

TEST_CASE("non trace preserving Kraus sets are rejected") {
  KrausSet k = build_phase();
  k.kraus[0] *= 0.9;
  CHECK_THROWS(channel_qfi(k));
}
