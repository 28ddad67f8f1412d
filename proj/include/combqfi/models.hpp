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

#ifndef COMBQFI_MODELS_HPP
#define COMBQFI_MODELS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "combqfi/channel.hpp"

namespace combqfi {

// Which register ends of a block are closed: First feeds sigma_in into R_0,
// Last traces R_N.
struct Boundary {
  bool first = false;
  bool last = false;
  static Boundary middle() { return {false, false}; }
  static Boundary first_only() { return {true, false}; }
  static Boundary last_only() { return {false, true}; }
  static Boundary both() { return {true, true}; }
};

enum class Axis { Parallel, Perpendicular };
enum class Cut { SplitT, AfterSignal };

struct DephasingSpec {
  double epsilon = 0.0;  // eta = cos epsilon
  double C = 0.0;
  Axis axis = Axis::Parallel;
  Cut cut = Cut::SplitT;
  double theta = 0.0;
};

// exp(-i phi n.sigma / 2) with n = z or x
Mat rotation(double phi, Axis axis);
Mat signal(double theta);   // exp(-i theta sigma_z / 2)
Mat dsignal(double theta);  // its derivative

// Register channel T of the Markov chain, basis index 0 = |+>.
std::vector<Mat> markov_T(double C);
struct SplitT {
  std::vector<Mat> t;
  bool flip_needed = false;
};
SplitT split_T(double C);
Eigen::MatrixXd markov_matrix(double C);  // (1 + s r C) / 2

Tooth build_dephasing_tooth(const DephasingSpec& d);  // V (1 (x) T_sr)
Tooth dephasing_signal_tooth(const DephasingSpec& d);  // V alone
CutStrategy dephasing_cut(const DephasingSpec& d);
KrausSet build_amplitude_damping(double p, double theta = 0.0);
KrausSet build_phase(double theta = 0.0);

class Model {
 public:
  virtual ~Model() = default;
  virtual std::string name() const = 0;
  virtual std::string describe() const = 0;
  virtual int register_dim() const = 0;
  virtual Mat sigma_in() const = 0;
  // m composed uses with the requested ends closed, in canonical Kraus form
  virtual BlockComb block(int m, Boundary bd) const = 0;
  // single-use channel when there is no memory
  virtual std::optional<KrausSet> uncorrelated() const = 0;
  BlockComb full_chain(int n) const { return block(n, Boundary::both()); }
};

class DephasingModel : public Model {
 public:
  explicit DephasingModel(DephasingSpec s);
  std::string name() const override { return "dephasing"; }
  std::string describe() const override;
  int register_dim() const override { return 2; }
  Mat sigma_in() const override { return Mat::Identity(2, 2) / 2.0; }
  BlockComb block(int m, Boundary bd) const override;
  std::optional<KrausSet> uncorrelated() const override;
  const DephasingSpec& spec() const { return s_; }

 private:
  DephasingSpec s_;
};

// Memoryless channel given by a Kraus set.
class KrausModel : public Model {
 public:
  KrausModel(std::string name, KrausSet k, std::string text);
  std::string name() const override { return name_; }
  std::string describe() const override { return text_; }
  int register_dim() const override { return 1; }
  Mat sigma_in() const override { return Mat::Identity(1, 1); }
  BlockComb block(int m, Boundary bd) const override;
  std::optional<KrausSet> uncorrelated() const override { return k_; }

 private:
  std::string name_;
  KrausSet k_;
  std::string text_;
};

std::unique_ptr<Model> make_amplitude_damping(double p, double theta = 0.0);
std::unique_ptr<Model> make_phase(double theta = 0.0);

// Registry keyed by name. Numeric parameters by key, plus "axis" and "cut"
// strings for dephasing. Throws std::invalid_argument naming the field.
struct ModelParams {
  std::map<std::string, double> num;
  std::map<std::string, std::string> str;
};
std::unique_ptr<Model> make_model(const std::string& name, const ModelParams& p);
std::vector<std::string> model_names();

}  // namespace combqfi

#endif
