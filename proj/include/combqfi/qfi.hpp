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

#ifndef COMBQFI_QFI_HPP
#define COMBQFI_QFI_HPP

#include "combqfi/channel.hpp"
#include "combqfi/tensor.hpp"

namespace combqfi {

struct StatePair {
  Mat rho;
  Mat drho;
};

// Tr(rho L^2) with the SLD taken on the support; pairs of eigenvalues with
// sum below kernel_tol are dropped.
double qfi_mixed(const StatePair& s, double kernel_tol = 1e-12);
double qfi_pure(const Vec& psi, const Vec& dpsi);

// 4 min_h |alpha(h)| over Kraus remixings; solved as an SDP.
double channel_qfi(const KrausSet& k, double tol = 1e-9);

}  // namespace combqfi

#endif
