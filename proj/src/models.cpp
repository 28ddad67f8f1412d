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

#include "combqfi/models.hpp"

#include <cmath>
#include <sstream>

namespace combqfi {

namespace {

Mat pauli_x() {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

Mat pauli_z() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

Mat proj(int i) {
  Mat p = Mat::Zero(2, 2);
  p(i, i) = 1.0;
  return p;
}

BlockComb finish(BlockComb b, const Mat& sigma, Boundary bd) {
  if (bd.first) b = close_input(b, sigma);
  if (bd.last) b = trace_out_register(b);
  return canonicalize(b);
}

double get(const ModelParams& p, const std::string& key, double def, bool required) {
  auto it = p.num.find(key);
  if (it == p.num.end()) {
    if (required) throw std::invalid_argument("model: missing parameter '" + key + "'");
    return def;
  }
  return it->second;
}

}  // namespace

Mat rotation(double phi, Axis axis) {
  // cos(phi/2) 1 - i sin(phi/2) n.sigma
  Mat n = axis == Axis::Parallel ? pauli_z() : pauli_x();
  return std::cos(phi / 2) * Mat::Identity(2, 2) - cplx(0, std::sin(phi / 2)) * n;
}

Mat signal(double theta) { return rotation(theta, Axis::Parallel); }

Mat dsignal(double theta) { return cplx(0, -0.5) * pauli_z() * signal(theta); }

Eigen::MatrixXd markov_matrix(double C) {
  if (std::abs(C) > 1.0 + 1e-12) throw std::invalid_argument("markov_matrix: |C| > 1");
  Eigen::MatrixXd p(2, 2);
  p << (1 + C) / 2, (1 - C) / 2, (1 - C) / 2, (1 + C) / 2;
  return p;
}

std::vector<Mat> markov_T(double C) { return stochastic_kraus(markov_matrix(C)); }

SplitT split_T(double C) {
  if (std::abs(C) > 1.0 + 1e-12) throw std::invalid_argument("split_T: |C| > 1");
  SplitT s;
  s.t = stochastic_kraus(markov_matrix(std::sqrt(std::min(1.0, std::abs(C)))));
  s.flip_needed = C < 0;
  return s;
}

Tooth dephasing_signal_tooth(const DephasingSpec& d) {
  if (d.epsilon < 0 || d.epsilon > M_PI / 2 + 1e-12)
    throw std::invalid_argument("dephasing: epsilon must lie in [0, pi/2]");
  if (std::abs(d.C) > 1.0 + 1e-12) throw std::invalid_argument("dephasing: |C| must not exceed 1");
  Mat rp = rotation(d.epsilon, d.axis), rm = rotation(-d.epsilon, d.axis);
  Mat v = kron(signal(d.theta) * rp, proj(0)) + kron(signal(d.theta) * rm, proj(1));
  Mat dv = kron(dsignal(d.theta) * rp, proj(0)) + kron(dsignal(d.theta) * rm, proj(1));
  return make_tooth({v}, {dv}, 2, 2);
}

Tooth build_dephasing_tooth(const DephasingSpec& d) {
  Tooth s = dephasing_signal_tooth(d);
  std::vector<Mat> k, dk;
  for (const auto& t : markov_T(d.C)) {
    Mat e = kron(Mat::Identity(2, 2), t);
    k.push_back(s.kset.kraus[0] * e);
    dk.push_back(s.kset.dkraus[0] * e);
  }
  return make_tooth(k, dk, 2, 2);
}

CutStrategy dephasing_cut(const DephasingSpec& d) {
  CutStrategy c;
  if (d.cut == Cut::AfterSignal) {
    c.name = "after_signal";
    c.lead = markov_T(d.C);
    c.between = c.lead;
    return c;
  }
  c.name = "split_t";
  SplitT st = split_T(d.C);
  c.trail = st.t;
  c.lead = st.t;
  if (st.flip_needed)
    for (auto& k : c.lead) k = pauli_x() * k;
  c.between = markov_T(d.C);
  return c;
}

DephasingModel::DephasingModel(DephasingSpec s) : s_(s) { dephasing_signal_tooth(s_); }

std::string DephasingModel::describe() const {
  std::ostringstream os;
  os << "dephasing axis=" << (s_.axis == Axis::Parallel ? "parallel" : "perpendicular")
     << " cut=" << (s_.cut == Cut::SplitT ? "split_t" : "after_signal") << " eps=" << s_.epsilon
     << " C=" << s_.C << " theta=" << s_.theta;
  return os.str();
}

BlockComb DephasingModel::block(int m, Boundary bd) const {
  return finish(compose_block(dephasing_signal_tooth(s_), m, dephasing_cut(s_)), sigma_in(), bd);
}

std::optional<KrausSet> DephasingModel::uncorrelated() const {
  if (std::abs(s_.C) > 1e-15) return std::nullopt;
  KrausSet k;
  for (double sgn : {1.0, -1.0}) {
    Mat r = rotation(sgn * s_.epsilon, s_.axis) / std::sqrt(2.0);
    k.kraus.push_back(signal(s_.theta) * r);
    k.dkraus.push_back(dsignal(s_.theta) * r);
  }
  k.in_layout = {probe(1, 2)};
  k.out_layout = {probe(2, 2)};
  return k;
}

KrausSet build_amplitude_damping(double p, double theta) {
  if (p < 0 || p > 1) throw std::invalid_argument("amplitude_damping: p must lie in [0, 1]");
  Mat k1 = Mat::Zero(2, 2), k2 = Mat::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(p);
  k2(0, 1) = std::sqrt(1 - p);
  KrausSet k;
  k.kraus = {k1 * signal(theta), k2 * signal(theta)};
  k.dkraus = {k1 * dsignal(theta), k2 * dsignal(theta)};
  k.in_layout = {probe(1, 2)};
  k.out_layout = {probe(2, 2)};
  return k;
}

KrausSet build_phase(double theta) {
  KrausSet k;
  k.kraus = {signal(theta)};
  k.dkraus = {dsignal(theta)};
  k.in_layout = {probe(1, 2)};
  k.out_layout = {probe(2, 2)};
  return k;
}

KrausModel::KrausModel(std::string name, KrausSet k, std::string text)
    : name_(std::move(name)), k_(std::move(k)), text_(std::move(text)) {
  k_.validate();
  if (!k_.trace_preserving()) throw std::invalid_argument("model " + name_ + ": Kraus set is not trace preserving");
}

BlockComb KrausModel::block(int m, Boundary) const {
  // no memory: both register ends are trivial and always closed
  Tooth t = make_tooth(k_.kraus, k_.dkraus, k_.din(), 1);
  return finish(compose_block(t, m), sigma_in(), Boundary::both());
}

std::unique_ptr<Model> make_amplitude_damping(double p, double theta) {
  std::ostringstream os;
  os << "amplitude_damping p=" << p << " theta=" << theta;
  return std::make_unique<KrausModel>("amplitude_damping", build_amplitude_damping(p, theta), os.str());
}

std::unique_ptr<Model> make_phase(double theta) {
  std::ostringstream os;
  os << "phase theta=" << theta;
  return std::make_unique<KrausModel>("phase", build_phase(theta), os.str());
}

std::vector<std::string> model_names() { return {"amplitude_damping", "dephasing", "phase"}; }

std::unique_ptr<Model> make_model(const std::string& name, const ModelParams& p) {
  const double theta = get(p, "theta", 0.0, false);
  if (name == "phase") return make_phase(theta);
  if (name == "amplitude_damping") {
    const double pp = get(p, "p", 0.0, true);
    if (pp < 0 || pp > 1) throw std::invalid_argument("model: parameter 'p' must lie in [0, 1]");
    return make_amplitude_damping(pp, theta);
  }
  if (name == "dephasing") {
    DephasingSpec s;
    s.theta = theta;
    const bool has_eta = p.num.count("eta") > 0, has_eps = p.num.count("epsilon") > 0;
    if (has_eta == has_eps) throw std::invalid_argument("model: give exactly one of 'eta' and 'epsilon'");
    if (has_eta) {
      const double eta = p.num.at("eta");
      if (eta < 0 || eta > 1) throw std::invalid_argument("model: parameter 'eta' must lie in [0, 1]");
      s.epsilon = std::acos(eta);
    } else {
      s.epsilon = p.num.at("epsilon");
      if (s.epsilon < 0 || s.epsilon > M_PI / 2) throw std::invalid_argument("model: parameter 'epsilon' must lie in [0, pi/2]");
    }
    s.C = get(p, "C", 0.0, false);
    if (std::abs(s.C) > 1) throw std::invalid_argument("model: parameter 'C' must lie in [-1, 1]");
    auto ax = p.str.find("axis");
    if (ax != p.str.end()) {
      if (ax->second == "parallel") s.axis = Axis::Parallel;
      else if (ax->second == "perpendicular") s.axis = Axis::Perpendicular;
      else throw std::invalid_argument("model: field 'axis' must be parallel or perpendicular");
    }
    auto cu = p.str.find("cut");
    if (cu != p.str.end()) {
      if (cu->second == "split_t") s.cut = Cut::SplitT;
      else if (cu->second == "after_signal") s.cut = Cut::AfterSignal;
      else throw std::invalid_argument("model: field 'cut' must be split_t or after_signal");
    }
    return std::make_unique<DephasingModel>(s);
  }
  throw std::invalid_argument("model: unknown model '" + name + "'");
}

}  // namespace combqfi
