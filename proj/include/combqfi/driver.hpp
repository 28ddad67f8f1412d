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

#ifndef COMBQFI_DRIVER_HPP
#define COMBQFI_DRIVER_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "combqfi/bounds.hpp"

namespace combqfi {

inline constexpr int kConfigSchema = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string label;  // free text carried into the report
  std::string model;
  ModelParams params;
  int m = 1;
  int n_max = 1;
  std::optional<std::string> cut;
  std::set<std::string> compute;  // iterative asymptotic exact_smallN old_bound classify
  double solver_tol = 1e-8;
  double working_point = 0.0;
  int exact_nmax = 3;  // exact_smallN stops here
  std::string output_path;  // CSV; empty writes nothing
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& c);
std::vector<std::string> compute_keys();

// One SDP solve as it appears in the report.
struct SolveRecord {
  std::string method;
  int n = 0;  // N reached, or 0 for asymptotic solves
  StepResult step;
};

struct ReportRow {
  int n = 0;
  std::optional<double> bound_new;
  std::optional<double> bound_old;
  std::optional<double> exact;
  std::string flags;
};

struct RunReport {
  RunConfig config;
  std::string model_text;
  std::vector<ReportRow> rows;
  std::optional<AsymptoticResult> ss;
  std::optional<AsymptoticResult> hs;
  std::optional<Classification> classification;
  std::vector<SolveRecord> solves;
  double seconds = 0.0;
  double max_residual() const;
};

// Throws ConfigError or SolverError.
RunReport run(const RunConfig& c);

void write_csv(const RunReport& r, std::ostream& os);
nlohmann::json summary_json(const RunReport& r);
// CSV to config.output_path and the summary next to it.
void write_outputs(const RunReport& r);

// Exit codes of a run.
enum ExitCode { kOk = 0, kConfigFailure = 1, kSolverFailure = 2 };

struct SweepItem {
  std::optional<RunReport> report;
  int code = kOk;
  std::string error;
};

// Runs configs on a pool of threads; item i belongs to configs[i]. A pool
// size of 0 means sweep_threads().
std::vector<SweepItem> sweep(const std::vector<RunConfig>& configs, int threads = 0);
// Same for unparsed entries, so a bad entry only fails its own item.
std::vector<SweepItem> sweep(const std::vector<nlohmann::json>& runs, int threads = 0);
// {"schema": 1, "base": {...}, "runs": [{...}, ...]}; each run is merged
// over base.
std::vector<nlohmann::json> load_sweep(const std::string& path);
std::vector<nlohmann::json> expand_sweep(const nlohmann::json& j);
// COMBQFI_THREADS when set and positive, else the hardware count.
int sweep_threads();

}  // namespace combqfi

#endif
