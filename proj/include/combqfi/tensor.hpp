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

#ifndef COMBQFI_TENSOR_HPP
#define COMBQFI_TENSOR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace combqfi {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

class TensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpaceKind { Probe, Register, Ancilla, Virtual, Purif, Trivial };

struct SpaceLabel {
  SpaceKind kind = SpaceKind::Trivial;
  int index = 0;
  int dim = 1;

  std::string name() const;
  // identity ignores dim; a dim clash is reported where it matters
  bool same(const SpaceLabel& o) const { return kind == o.kind && index == o.index; }
};

SpaceLabel probe(int i, int dim);
SpaceLabel reg(int i, int dim);
SpaceLabel ancilla(int i, int dim);
SpaceLabel virt(int i, int dim = 2);

using Layout = std::vector<SpaceLabel>;

int total_dim(const Layout& l);
std::vector<int> dims_of(const Layout& l);
int find_label(const Layout& l, const SpaceLabel& s);  // -1 when absent
Layout concat(const Layout& a, const Layout& b);
void check_unique(const Layout& l);

struct Operator {
  Mat mat;
  Layout rows;
  Layout cols;

  Operator() = default;
  Operator(Mat m, Layout r, Layout c);
  Operator(Mat m, Layout square);

  bool square_layout() const;
  bool hermitian(double tol = 1e-9) const;
  bool psd(double tol = 1e-9) const;
  cplx trace() const;
};

Operator identity(const Layout& l);

// Kronecker product, first factor most significant.
Mat kron(const Mat& a, const Mat& b);
Operator kron(const Operator& a, const Operator& b);

// Raw helpers on explicit subsystem dims. perm[p] is the old position moved
// to new position p.
Mat permute_dims(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm);
Vec permute_dims(const Vec& v, const std::vector<int>& dims, const std::vector<int>& perm);
Mat partial_trace_dims(const Mat& m, const std::vector<int>& dims,
                       const std::vector<int>& traced);

Operator permute(const Operator& x, const Layout& order);
Operator partial_trace(const Operator& x, const Layout& over);

// |K> = sum_ij K_ij |j>_in |i>_out, returned as a column on (in, out).
Operator vectorize(const Operator& k);
Operator choi_from_kraus(const std::vector<Operator>& kraus);
Operator apply_kraus(const std::vector<Operator>& kraus, const Operator& rho);

// Contracts the labels shared by a and b. Result layout: a's remaining labels
// followed by b's remaining labels.
Operator link_product(const Operator& a, const Operator& b);

// Smallest eigenvalue of the hermitian part.
double min_eig(const Mat& m);
double max_eig(const Mat& m);
double op_norm(const Mat& m);

}  // namespace combqfi

#endif
