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

#include "combqfi/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace combqfi {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys{"schema", "label", "model", "m", "N_max", "cut", "compute",
                                     "solver_tol", "working_point", "exact_nmax", "output_path"};

template <class T>
T field(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' must be " + what);
  }
}

int int_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("config field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::unique_ptr<Model> build_model(const RunConfig& c) {
  ModelParams p = c.params;
  p.num["theta"] = c.working_point;
  if (c.cut) {
    if (c.model != "dephasing") throw ConfigError("config field 'cut' only applies to the dephasing model");
    p.str["cut"] = *c.cut;
  }
  try {
    return make_model(c.model, p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json step_json(const SolveRecord& s) {
  const StepResult& r = s.step;
  return json{{"method", s.method},
              {"N", s.n},
              {"value", r.value},
              {"status", to_string(r.status)},
              {"iterations", r.iterations},
              {"seconds", r.seconds},
              {"residuals",
               {{"primal_eq", r.residuals.primal_eq},
                {"psd_min_eig", r.residuals.psd_min_eig},
                {"duality_gap", r.residuals.duality_gap},
                {"dual_infeas", r.residuals.dual_infeas}}}};
}

}  // namespace

std::vector<std::string> compute_keys() { return {"iterative", "asymptotic", "exact_smallN", "old_bound", "classify"}; }

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("schema")) throw ConfigError("config field 'schema' is missing");
  if (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != kConfigSchema)
    throw ConfigError("config field 'schema' must be " + std::to_string(kConfigSchema));
  for (const auto& [k, v] : j.items())
    if (!kTopKeys.count(k)) throw ConfigError("config field '" + k + "' is not recognized");
  RunConfig c;
  if (j.contains("label")) c.label = field<std::string>(j, "label", "a string");
  if (!j.contains("model")) throw ConfigError("config field 'model' is missing");
  const json& mj = j.at("model");
  if (!mj.is_object()) throw ConfigError("config field 'model' must be an object");
  c.model = field<std::string>(mj, "name", "a string");
  for (const auto& [k, v] : mj.items()) {
    if (k == "name") continue;
    if (v.is_number()) c.params.num[k] = v.get<double>();
    else if (v.is_string()) c.params.str[k] = v.get<std::string>();
    else throw ConfigError("config field 'model." + k + "' must be a number or a string");
  }
  if (j.contains("m")) c.m = int_field(j, "m");
  if (!j.contains("N_max")) throw ConfigError("config field 'N_max' is missing");
  c.n_max = int_field(j, "N_max");
  if (j.contains("cut")) c.cut = field<std::string>(j, "cut", "a string");
  if (j.contains("compute")) {
    const json& cj = j.at("compute");
    if (!cj.is_array()) throw ConfigError("config field 'compute' must be a list");
    for (const auto& v : cj) {
      if (!v.is_string()) throw ConfigError("config field 'compute' must hold strings");
      c.compute.insert(v.get<std::string>());
    }
  } else {
    c.compute = {"iterative"};
  }
  if (j.contains("solver_tol")) c.solver_tol = field<double>(j, "solver_tol", "a number");
  if (j.contains("working_point")) c.working_point = field<double>(j, "working_point", "a number");
  if (j.contains("exact_nmax")) c.exact_nmax = int_field(j, "exact_nmax");
  if (j.contains("output_path")) c.output_path = field<std::string>(j, "output_path", "a string");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

void validate(const RunConfig& c) {
  if (c.m < 1) throw ConfigError("config field 'm' must be at least 1");
  if (c.n_max < 1) throw ConfigError("config field 'N_max' must be at least 1");
  if (!(c.solver_tol > 0)) throw ConfigError("config field 'solver_tol' must be positive");
  if (c.exact_nmax < 1) throw ConfigError("config field 'exact_nmax' must be at least 1");
  if (c.compute.empty()) throw ConfigError("config field 'compute' must not be empty");
  auto keys = compute_keys();
  for (const auto& k : c.compute)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ConfigError("config field 'compute' has unknown entry '" + k + "'");
  auto md = build_model(c);
  if (c.compute.count("old_bound") && !md->uncorrelated())
    throw ConfigError("config field 'compute': old_bound needs a model without memory");
}

double RunReport::max_residual() const {
  double r = 0.0;
  for (const auto& s : solves) r = std::max(r, s.step.max_residual());
  return r;
}

RunReport run(const RunConfig& c) {
  validate(c);
  auto t0 = std::chrono::steady_clock::now();
  auto md = build_model(c);
  RunReport rep;
  rep.config = c;
  rep.model_text = md->describe();
  BoundOptions o;
  o.tol = c.solver_tol;
  rep.rows.resize(c.n_max);
  for (int n = 1; n <= c.n_max; ++n) rep.rows[n - 1].n = n;
  auto flag = [](ReportRow& row, const char* f) {
    if (!row.flags.empty()) row.flags += '+';
    row.flags += f;
  };

  if (c.compute.count("iterative")) {
    std::vector<int> ns;
    for (int n = 1; n <= c.n_max; ++n) ns.push_back(n);
    BoundSeries s = iterative_bound(*md, c.m, ns, o);
    for (const auto& [n, st] : s.steps) rep.solves.push_back({"iterative", n, st});
    for (auto& row : rep.rows) {
      row.bound_new = s.values.at(row.n);
      flag(row, "new");
      if (row.n % c.m != 0) flag(row, "partial");
    }
  }
  if (c.compute.count("old_bound")) {
    BoundSeries s = old_bound_series(*md->uncorrelated(), c.n_max, o);
    for (const auto& [n, st] : s.steps) rep.solves.push_back({"old_bound", n, st});
    for (auto& row : rep.rows) {
      row.bound_old = s.values.at(row.n);
      flag(row, "old");
    }
  }
  if (c.compute.count("exact_smallN")) {
    for (int n = 1; n <= std::min(c.n_max, c.exact_nmax); ++n) {
      StepResult st = exact_comb_qfi(*md, n, o);
      rep.solves.push_back({"exact", n, st});
      rep.rows[n - 1].exact = st.value;
      flag(rep.rows[n - 1], "exact");
    }
  }
  if (c.compute.count("asymptotic") || c.compute.count("classify")) {
    BlockComb b = md->block(c.m, Boundary::middle());
    AsymptoticResult ss = asymptotic_ss(b, o);
    rep.ss = ss;
    if (ss.feasible) rep.solves.push_back({"asymptotic_ss", 0, ss.step});
    if (!ss.feasible || c.compute.count("asymptotic")) {
      AsymptoticResult hs = asymptotic_hs(b, o);
      rep.hs = hs;
      rep.solves.push_back({"asymptotic_hs", 0, hs.step});
    }
    if (c.compute.count("classify")) {
      Classification cl;
      cl.beta1_residual = ss.beta1_residual;
      if (ss.feasible) {
        cl.asymptote = {ScalingKind::SS, ss.coefficient};
        cl.step = ss.step;
      } else {
        cl.asymptote = {ScalingKind::HS, rep.hs->coefficient};
        cl.step = rep.hs->step;
      }
      cl.h = cl.step.h;
      rep.classification = cl;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void write_csv(const RunReport& r, std::ostream& os) {
  os << "N,bound_new,bound_old,exact,method_flags\n";
  auto cell = [&](const std::optional<double>& v) {
    if (v) os << fmt(*v);
  };
  for (const auto& row : r.rows) {
    os << row.n << ',';
    cell(row.bound_new);
    os << ',';
    cell(row.bound_old);
    os << ',';
    cell(row.exact);
    os << ',' << row.flags << '\n';
  }
}

json summary_json(const RunReport& r) {
  json j;
  j["schema"] = kConfigSchema;
  j["label"] = r.config.label;
  j["model"] = r.model_text;
  j["m"] = r.config.m;
  j["N_max"] = r.config.n_max;
  j["solver_tol"] = r.config.solver_tol;
  j["compute"] = r.config.compute;
  if (r.classification) {
    j["scaling_kind"] = to_string(r.classification->asymptote.kind);
    j["asymptotic_coefficient"] = r.classification->asymptote.coefficient;
  } else if (r.ss && r.ss->feasible) {
    j["scaling_kind"] = "SS";
    j["asymptotic_coefficient"] = r.ss->coefficient;
  } else if (r.hs) {
    j["scaling_kind"] = "HS";
    j["asymptotic_coefficient"] = r.hs->coefficient;
  } else {
    j["scaling_kind"] = nullptr;
    j["asymptotic_coefficient"] = nullptr;
  }
  if (r.ss) {
    j["beta1_residual"] = r.ss->beta1_residual;
    j["ss_feasible"] = r.ss->feasible;
    j["ss_coefficient"] = r.ss->feasible ? json(r.ss->coefficient) : json(nullptr);
  }
  if (r.hs) j["hs_coefficient"] = r.hs->coefficient;
  j["residual_max"] = r.max_residual();
  j["seconds"] = r.seconds;
  j["solves"] = json::array();
  for (const auto& s : r.solves) j["solves"].push_back(step_json(s));
  return j;
}

void write_outputs(const RunReport& r) {
  if (r.config.output_path.empty()) return;
  std::filesystem::path p(r.config.output_path);
  std::ofstream csv(p);
  if (!csv) throw ConfigError("cannot write config field 'output_path' " + p.string());
  write_csv(r, csv);
  std::filesystem::path sp = p;
  sp.replace_extension(".summary.json");
  std::ofstream sj(sp);
  sj << std::setw(2) << summary_json(r) << '\n';
}

int sweep_threads() {
  if (const char* e = std::getenv("COMBQFI_THREADS")) {
    const int n = std::atoi(e);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <class F>
std::vector<SweepItem> pool(size_t count, int threads, F work) {
  std::vector<SweepItem> out(count);
  if (count == 0) return out;
  if (threads <= 0) threads = sweep_threads();
  threads = std::min<int>(threads, static_cast<int>(count));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      SweepItem& it = out[i];
      try {
        it.report = work(i);
      } catch (const ConfigError& e) {
        it.code = kConfigFailure;
        it.error = e.what();
      } catch (const std::invalid_argument& e) {
        it.code = kConfigFailure;
        it.error = e.what();
      } catch (const std::exception& e) {
        it.code = kSolverFailure;
        it.error = e.what();
      }
    }
  };
  std::vector<std::thread> ts;
  for (int t = 1; t < threads; ++t) ts.emplace_back(worker);
  worker();
  for (auto& t : ts) t.join();
  return out;
}

}  // namespace

std::vector<SweepItem> sweep(const std::vector<RunConfig>& configs, int threads) {
  return pool(configs.size(), threads, [&](size_t i) { return run(configs[i]); });
}

std::vector<SweepItem> sweep(const std::vector<json>& runs, int threads) {
  return pool(runs.size(), threads, [&](size_t i) { return run(parse_config(runs[i])); });
}

std::vector<json> expand_sweep(const json& j) {
  if (!j.is_object() || !j.contains("runs") || !j.at("runs").is_array())
    throw ConfigError("sweep config needs a 'runs' list");
  if (!j.contains("schema") || j.at("schema") != kConfigSchema)
    throw ConfigError("sweep config field 'schema' must be " + std::to_string(kConfigSchema));
  json base = j.value("base", json::object());
  base["schema"] = kConfigSchema;
  std::vector<json> out;
  for (const auto& r : j.at("runs")) {
    json e = base;
    e.merge_patch(r);
    out.push_back(e);
  }
  return out;
}

std::vector<json> load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("sweep file " + path + " is not valid JSON: " + e.what());
  }
  return expand_sweep(j);
}

}  // namespace combqfi
