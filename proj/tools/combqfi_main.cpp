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

#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"

#include "combqfi/driver.hpp"

using namespace combqfi;
using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string out;
  double tol = 0.0;
  int m = 0;
  int nmax = 0;
};

void add_flags(CLI::App* sc, Flags& f) {
  sc->add_option("--config", f.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sc->add_option("--out", f.out, "CSV output path (overrides output_path)");
  sc->add_option("--tol", f.tol, "solver tolerance (overrides solver_tol)")->check(CLI::PositiveNumber);
  sc->add_option("--m", f.m, "block size (overrides m)")->check(CLI::PositiveNumber);
  sc->add_option("--nmax", f.nmax, "largest N (overrides N_max)")->check(CLI::PositiveNumber);
}

void apply_flags(RunConfig& c, const Flags& f) {
  if (!f.out.empty()) c.output_path = f.out;
  if (f.tol > 0) c.solver_tol = f.tol;
  if (f.m > 0) c.m = f.m;
  if (f.nmax > 0) c.n_max = f.nmax;
}

void print_report(const RunReport& r) {
  std::cout << "# " << r.model_text << "  m=" << r.config.m << '\n';
  bool any = false;
  for (const auto& row : r.rows) any = any || row.bound_new || row.bound_old || row.exact;
  if (any) write_csv(r, std::cout);
  json s = summary_json(r);
  s.erase("solves");
  std::cout << "# summary " << s.dump() << '\n';
}

int single(const std::string& cmd, const Flags& f) {
  RunConfig c;
  try {
    c = load_config(f.config);
    apply_flags(c, f);
    if (cmd == "iterate") {
      std::set<std::string> keep;
      for (const auto& k : c.compute)
        if (k == "iterative" || k == "old_bound" || k == "exact_smallN") keep.insert(k);
      keep.insert("iterative");
      c.compute = keep;
    } else if (cmd == "asymptotic") {
      c.compute = {"asymptotic"};
    } else if (cmd == "exact") {
      c.compute = {"exact_smallN"};
    } else if (cmd == "classify") {
      c.compute = {"classify"};
    }
    validate(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  }
  try {
    RunReport r = run(c);
    print_report(r);
    write_outputs(r);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

int do_sweep(const Flags& f) {
  std::vector<json> runs;
  try {
    runs = load_sweep(f.config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  }
  // command line flags apply to every run
  for (auto& r : runs) {
    if (f.tol > 0) r["solver_tol"] = f.tol;
    if (f.m > 0) r["m"] = f.m;
    if (f.nmax > 0) r["N_max"] = f.nmax;
  }
  std::vector<SweepItem> items = sweep(runs);
  json all = json::array();
  int code = kOk;
  for (size_t i = 0; i < items.size(); ++i) {
    const SweepItem& it = items[i];
    if (it.report) {
      try {
        write_outputs(*it.report);
      } catch (const ConfigError& e) {
        std::cerr << "run " << i << ": " << e.what() << '\n';
      }
      json s = summary_json(*it.report);
      s.erase("solves");
      s["index"] = i;
      s["status"] = "ok";
      std::cout << "run " << i << ' ' << s.dump() << '\n';
      all.push_back(s);
    } else {
      std::cerr << "run " << i << " failed: " << it.error << '\n';
      all.push_back(json{{"index", i}, {"status", "error"}, {"code", it.code}, {"error", it.error}});
      code = std::max(code, it.code);
    }
  }
  if (!f.out.empty()) {
    std::ofstream o(f.out);
    o << std::setw(2) << all << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on adaptive quantum Fisher information for channels with memory"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, std::string> help{
      {"iterate", "iterative bounds for N = 1..N_max (plus old_bound and exact_smallN when configured)"},
      {"asymptotic", "asymptotic SS and HS coefficients for blocks of m uses"},
      {"exact", "exact comb QFI for small N"},
      {"classify", "decide SS or HS scaling and report the coefficient"},
      {"sweep", "run a list of configs concurrently (threads from COMBQFI_THREADS)"}};
  for (const auto& name : {"iterate", "asymptotic", "exact", "classify", "sweep"}) add_flags(app.add_subcommand(name, help[name]), f);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigFailure;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "sweep") return do_sweep(f);
  return single(cmd, f);
}
