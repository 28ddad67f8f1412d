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

#include "combqfi/tensor.hpp"
#include "doctest.h"

using namespace combqfi;

namespace {

std::mt19937 rng(12345);

Mat random_mat(int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Mat random_psd(int d) {
  Mat g = random_mat(d, d);
  return g * g.adjoint();
}

}  // namespace

TEST_CASE("kron basics") {
  Mat i2 = Mat::Identity(2, 2);
  CHECK((kron(i2, i2) - Mat::Identity(4, 4)).norm() < 1e-15);
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  Mat e = Mat::Zero(4, 4);
  e.diagonal() << 1, 1, -1, -1;
  CHECK((kron(z, i2) - e).norm() < 1e-15);

  Mat a = random_mat(2, 2), b = random_mat(2, 2);
  Mat k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) CHECK(std::abs(k(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) < 1e-14);
}

TEST_CASE("kron of operators concatenates layouts") {
  Operator a(random_mat(2, 2), {probe(1, 2)});
  Operator b(random_mat(3, 3), {reg(0, 3)});
  Operator k = kron(a, b);
  CHECK(k.rows.size() == 2);
  CHECK(k.rows[1].same(reg(0, 3)));
  CHECK_THROWS_AS(kron(a, a), TensorError);
}

TEST_CASE("partial trace") {
  Layout la{probe(1, 2)}, lb{probe(2, 3)};
  Operator a(random_psd(2), la), b(random_psd(3), lb);
  Operator ab = kron(a, b);
  Operator r = partial_trace(ab, lb);
  CHECK((r.mat - a.mat * b.mat.trace()).norm() < 1e-12);

  Vec phi = Vec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  Operator bell(phi * phi.adjoint(), {probe(1, 2), probe(2, 2)});
  Operator red = partial_trace(bell, {probe(2, 2)});
  CHECK((red.mat - 0.5 * Mat::Identity(2, 2)).norm() < 1e-14);

  Layout l3{probe(1, 2), reg(0, 3), ancilla(0, 2)};
  Operator x(random_psd(12), l3);
  Operator t1 = partial_trace(partial_trace(x, {probe(1, 2)}), {ancilla(0, 2)});
  Operator t2 = partial_trace(partial_trace(x, {ancilla(0, 2)}), {probe(1, 2)});
  Operator t3 = partial_trace(x, {ancilla(0, 2), probe(1, 2)});
  CHECK((t1.mat - t2.mat).norm() < 1e-12);
  CHECK((t1.mat - t3.mat).norm() < 1e-12);
  CHECK(std::abs(partial_trace(x, {reg(0, 3)}).trace() - x.trace()) < 1e-10);
  CHECK_THROWS_AS(partial_trace(x, {probe(7, 2)}), TensorError);
}

TEST_CASE("unknown label error names the label") {
  Operator x(random_psd(2), {probe(1, 2)});
  try {
    partial_trace(x, {reg(4, 2)});
    FAIL("no throw");
  } catch (const TensorError& e) {
    CHECK(std::string(e.what()).find("R4") != std::string::npos);
  }
}

TEST_CASE("permute round trip") {
  Layout l3{probe(1, 2), reg(0, 3), ancilla(0, 2)};
  Operator x(random_psd(12), l3);
  Operator y = permute(x, {ancilla(0, 2), probe(1, 2), reg(0, 3)});
  Operator z = permute(y, l3);
  CHECK((z.mat - x.mat).norm() < 1e-14);
  CHECK(std::abs(y.trace() - x.trace()) < 1e-12);
}

TEST_CASE("vectorize convention") {
  Operator id(Mat::Identity(2, 2), {probe(2, 2)}, {probe(1, 2)});
  Operator v = vectorize(id);
  Vec e(4);
  e << 1, 0, 0, 1;
  CHECK((v.mat.col(0) - e).norm() < 1e-15);
  CHECK(v.rows[0].same(probe(1, 2)));

  Mat k01 = Mat::Zero(2, 2);
  k01(0, 1) = 1.0;
  Operator v2 = vectorize(Operator(k01, {probe(2, 2)}, {probe(1, 2)}));
  // |1>_in |0>_out
  CHECK(std::abs(v2.mat(2, 0) - 1.0) < 1e-15);
  CHECK(v2.mat.norm() - 1.0 < 1e-15);
}

TEST_CASE("Choi from Kraus equals channel on half of max entangled state") {
  const double eps = 0.4;
  Mat rz = Mat::Zero(2, 2);
  rz(0, 0) = std::exp(cplx(0, -eps / 2));
  rz(1, 1) = std::exp(cplx(0, eps / 2));
  std::vector<Operator> ks{Operator(rz / std::sqrt(2.0), {probe(2, 2)}, {probe(1, 2)}),
                           Operator(rz.adjoint() / std::sqrt(2.0), {probe(2, 2)}, {probe(1, 2)})};
  Operator c = choi_from_kraus(ks);
  Mat oracle = Mat::Zero(4, 4);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      Mat ejl = Mat::Zero(2, 2);
      ejl(j, l) = 1.0;
      Mat out = Mat::Zero(2, 2);
      for (const auto& k : ks) out += k.mat * ejl * k.mat.adjoint();
      Mat ej = Mat::Zero(2, 2);
      ej(j, l) = 1.0;
      oracle += kron(ej, out);
    }
  CHECK((c.mat - oracle).norm() < 1e-14);
}

TEST_CASE("link product") {
  Layout in{probe(1, 2)}, out{probe(2, 2)};
  Operator rho(random_psd(2), in);
  rho.mat /= rho.mat.trace();
  Operator idch = choi_from_kraus({Operator(Mat::Identity(2, 2), out, in)});
  Operator r = link_product(rho, idch);
  CHECK((r.mat - rho.mat).norm() < 1e-13);
  CHECK(r.rows[0].same(probe(2, 2)));

  // channel composition
  Layout mid{probe(3, 3)};
  std::vector<Operator> k1, k2;
  for (int t = 0; t < 2; ++t) k1.emplace_back(random_mat(3, 2), mid, in);
  for (int t = 0; t < 3; ++t) k2.emplace_back(random_mat(2, 3), out, mid);
  Operator c1 = choi_from_kraus(k1), c2 = choi_from_kraus(k2);
  std::vector<Operator> k12;
  for (const auto& b : k2)
    for (const auto& a : k1) k12.emplace_back(b.mat * a.mat, out, in);
  Operator c12 = choi_from_kraus(k12);
  Operator l = link_product(c1, c2);
  CHECK((l.mat - c12.mat).norm() < 1e-10 * c12.mat.norm());

  // disjoint spaces give the tensor product
  Operator x(random_psd(2), in), y(random_psd(3), mid);
  CHECK((link_product(x, y).mat - kron(x, y).mat).norm() < 1e-12);

  // link with a Choi reproduces the Kraus action
  Operator lr = link_product(rho, c1);
  CHECK((lr.mat - apply_kraus(k1, rho).mat).norm() < 1e-10);
}

TEST_CASE("link product commutes up to reordering") {
  for (int t = 0; t < 20; ++t) {
    Layout la{probe(1, 2), probe(2, 2)}, lb{probe(2, 2), probe(3, 3)};
    Operator a(random_psd(4), la), b(random_psd(6), lb);
    Operator ab = link_product(a, b), ba = link_product(b, a);
    Operator bap = permute(ba, ab.rows);
    CHECK((ab.mat - bap.mat).norm() < 1e-10 * (1.0 + ab.mat.norm()));
  }
}

TEST_CASE("link product dimension mismatch") {
  Operator a(random_psd(2), {probe(1, 2)}), b(random_psd(3), {probe(1, 3)});
  CHECK_THROWS_AS(link_product(a, b), TensorError);
}

TEST_CASE("operator queries") {
  Operator x(random_psd(3), {probe(1, 3)});
  CHECK(x.hermitian());
  CHECK(x.psd());
  Operator y(-x.mat, x.rows);
  CHECK_FALSE(y.psd());
}
