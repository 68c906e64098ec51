// Copyright 2026 The drpd Authors
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

#include "commands.h"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "drpd/engine.h"
#include "drpd/io.h"
#include "drpd/metrics.h"
#include "drpd/reference.h"
#include "json.hpp"

namespace drpd::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& j) {
  write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

// NaN is not valid JSON; store it as null.
json number_json(double v) { return std::isfinite(v) ? json(v) : json(); }

json reference_json(const ReferenceSolution& ref, const std::string& key) {
  json j;
  j["f_star"] = ref.f_star;
  j["x_star"] = vector_json(ref.x_star);
  j["method"] = ref.method;
  j["residual"] = ref.residual;
  j["converged"] = ref.converged;
  j["iterations"] = ref.iterations;
  j["cache_key"] = key;
  return j;
}

std::optional<ReferenceSolution> load_reference(const fs::path& path, int d) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    ReferenceSolution ref;
    ref.f_star = j.at("f_star").get<double>();
    const auto xs = j.at("x_star").get<std::vector<double>>();
    if (static_cast<int>(xs.size()) != d) return std::nullopt;
    ref.x_star = Eigen::Map<const Vector>(xs.data(), d);
    ref.method = j.at("method").get<std::string>();
    ref.residual = j.at("residual").get<double>();
    ref.converged = j.at("converged").get<bool>();
    ref.iterations = j.at("iterations").get<long>();
    return ref;
  } catch (const json::exception&) {
    return std::nullopt;  // stale or damaged cache entry, recompute
  }
}

ReferenceSolution obtain_reference(const ExperimentConfig& cfg,
                                   const ProblemSpec& p, std::ostream& log) {
  const std::string key = reference_cache_key(cfg);
  const fs::path cache = resolve_output_dir(".drpd_cache") / ("reference_" + key + ".json");
  if (auto cached = load_reference(cache, p.d)) {
    log << "reference: cached f* = " << format_double(cached->f_star) << '\n';
    return *cached;
  }
  ReferenceSolution ref =
      reference_optimum(p, cfg.reference.iterations, cfg.reference.seed);
  log << "reference: f* = " << format_double(ref.f_star)
      << ", certified residual " << format_double(ref.residual) << '\n';
  if (!ref.converged) {
    log << "warning: reference solver residual " << format_double(ref.residual)
        << " is above tolerance " << format_double(kDefaultReferenceTolerance)
        << '\n';
  }
  write_json(cache, reference_json(ref, key));
  return ref;
}

json monitors_json(const MonitorReport& m) {
  json j;
  j["enabled"] = m.enabled;
  for (const BoundCheck* c : m.checks()) {
    j[c->name] = {{"checks", c->checks},
                  {"violations", c->violations},
                  {"worst_margin", number_json(c->worst_margin)},
                  {"t_at_worst", c->t_at_worst}};
  }
  return j;
}

struct RateSummary {
  std::optional<RateFit> eps;
  std::optional<RateFit> violation;
  std::optional<RateFit> gap;
};

std::optional<RateFit> try_fit(const Trace& trace, const std::string& column) {
  try {
    return rate_fit(trace, column, 100, trace.config.iterations);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

json fit_json(const std::optional<RateFit>& f) {
  if (!f) return json();
  return {{"exponent", f->exponent}, {"r2", f->r2}, {"points", f->points}};
}

void write_trace_outputs(const fs::path& dir, const Trace& trace) {
  write_file(dir / "trace.csv",
             [&](std::ostream& out) { write_trace_csv(out, trace); });
  for (const auto& column : trace_columns()) {
    if (column == "t") continue;
    write_file(dir / "series" / (column + ".csv"), [&](std::ostream& out) {
      write_metric_series(out, trace, column);
    });
  }
  if (!trace.final_states.empty() && trace.final_states.front().has_average()) {
    write_file(dir / "xhat.csv", [&](std::ostream& out) {
      write_averages_csv(out, trace.final_states);
    });
  }
}

json manifest_json(const ExperimentConfig& cfg, const std::string& command) {
  json j;
  j["tool"] = "drpd";
  j["version"] = DRPD_VERSION;
  j["command"] = command;
  json config = json::object();
  for (const auto& [k, v] : cfg.to_map()) config[k] = v;
  j["config"] = config;
  return j;
}

struct RunOutcome {
  int code = kExitOk;
  std::optional<IterationRecord> last;
  RateSummary rates;
  std::string message;
};

RunOutcome execute_run(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path dir = resolve_output_dir(cfg.output_dir);
  const GraphTopology graph = build_graph(cfg);
  const ConsensusMatrix w = build_weights(cfg, graph);
  const SyntheticDataset data = build_dataset(cfg);
  const ProblemSpec p = build_problem(cfg, data);
  try {
    cfg.run.validate(p.radius);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const ReferenceSolution ref = obtain_reference(cfg, p, log);

  json manifest = manifest_json(cfg, "run");
  manifest["graph"] = {{"n", graph.num_nodes()},
                       {"edges", graph.num_edges()},
                       {"sigma2", w.sigma2()}};
  manifest["problem"] = {{"d", p.d}, {"m", p.m}, {"n", p.n},
                         {"lipschitz", p.lipschitz}, {"radius", p.radius}};
  manifest["step_scale"] = cfg.run.resolved_step_scale(p.radius);
  write_json(dir / "manifest.json", manifest);
  write_json(dir / "reference.json", reference_json(ref, reference_cache_key(cfg)));

  RunOutcome outcome;
  Trace trace;
  try {
    trace = run(p, w, cfg.run, &ref);
  } catch (const DivergenceError& e) {
    write_trace_outputs(dir, e.partial_trace());
    outcome.code = kExitDiverged;
    outcome.message = e.what();
    log << "error: run diverged: " << e.what() << " (partial trace in "
        << dir.string() << ")\n";
    return outcome;
  }
  write_trace_outputs(dir, trace);

  outcome.last = trace.records.back();
  outcome.rates.eps = try_fit(trace, "eps_G");
  outcome.rates.violation = try_fit(trace, "violation_sq");
  outcome.rates.gap = try_fit(trace, "max_gap");

  json summary;
  const IterationRecord& last = *outcome.last;
  summary["t"] = last.t;
  for (const auto& column : trace_columns()) {
    if (column != "t") summary[column] = number_json(record_column(last, column));
  }
  summary["eps_absolute"] = last.eps_absolute;
  summary["rate_fit"] = {{"eps_G", fit_json(outcome.rates.eps)},
                         {"violation_sq", fit_json(outcome.rates.violation)},
                         {"max_gap", fit_json(outcome.rates.gap)}};
  summary["monitors"] = monitors_json(trace.monitors);
  write_json(dir / "summary.json", summary);

  if (trace.monitors.enabled && !trace.monitors.all_ok()) {
    for (const BoundCheck* c : trace.monitors.checks()) {
      if (!c->ok()) {
        log << "warning: bound " << c->name << " violated " << c->violations
            << " times, worst margin " << format_double(c->worst_margin)
            << " at t=" << c->t_at_worst << '\n';
      }
    }
  }
  log << "run: T=" << last.t << " eps_G=" << format_double(last.eps)
      << " delta_G=" << format_double(last.delta)
      << " violation=" << format_double(last.violation_sq) << " -> "
      << dir.string() << '\n';
  return outcome;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string fit_text(const std::optional<RateFit>& f) {
  return f ? format_double(f->exponent) : "nan";
}

}  // namespace

ExperimentConfig resolve_config(const CommonOptions& opts) {
  ExperimentConfig cfg =
      opts.config_path ? load_config(*opts.config_path) : ExperimentConfig{};
  for (const auto& s : opts.sets) {
    // A --set value may itself be a comma list for sweeps; that is handled
    // by the sweep command, not here.
    const auto [key, value] = split_assignment(s);
    cfg.set(key, value);
  }
  if (opts.out) cfg.set("output_dir", *opts.out);
  if (opts.threads) cfg.run.threads = *opts.threads;
  if (opts.record_every) cfg.run.record_every = *opts.record_every;
  cfg.validate();
  return cfg;
}

int cmd_generate_graph(const ExperimentConfig& cfg, std::ostream& log) {
  const fs::path dir = resolve_output_dir(cfg.output_dir);
  const GraphTopology g = build_graph(cfg);
  const ConsensusMatrix w = build_weights(cfg, g);
  write_file(dir / "graph.edges",
             [&](std::ostream& out) { write_edge_list(out, g); });
  write_file(dir / "weights.csv",
             [&](std::ostream& out) { write_matrix_csv(out, w.entries()); });

  const double n = g.num_nodes();
  const double mixing = w.sigma2() < 1.0 ? 1.0 / (1.0 - w.sigma2())
                                         : std::numeric_limits<double>::infinity();
  json report;
  report["n"] = g.num_nodes();
  report["edges"] = g.num_edges();
  report["weights"] = cfg.weights;
  report["sigma2"] = w.sigma2();
  report["spectral_gap"] = w.spectral_gap();
  report["inverse_gap"] = number_json(mixing);
  report["bound_71n2"] = 71.0 * n * n;
  report["bound_margin"] = number_json(71.0 * n * n - mixing);
  write_json(dir / "spectral.json", report);
  write_json(dir / "manifest.json", manifest_json(cfg, "generate-graph"));
  log << "graph: n=" << g.num_nodes() << " edges=" << g.num_edges()
      << " sigma2=" << format_double(w.sigma2())
      << " gap=" << format_double(w.spectral_gap()) << " -> " << dir.string()
      << '\n';
  return kExitOk;
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
  return execute_run(cfg, log).code;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> params = {"eta",   "n",       "T",
                                                  "graph", "variant", "r"};
  return params;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg,
                                   const std::string& parameter,
                                   const std::string& value) {
  ExperimentConfig leg = cfg;
  if (parameter == "eta") {
    leg.set("run.eta", value);
  } else if (parameter == "n") {
    leg.set("problem.n", value);
  } else if (parameter == "T") {
    leg.set("run.T", value);
  } else if (parameter == "graph") {
    leg.set("graph.family", value);
  } else if (parameter == "variant") {
    leg.set("run.variant", value);
  } else if (parameter == "r") {
    ExperimentConfig probe;
    probe.set("run.eta", value);  // parses r as a number
    const double r = probe.run.eta;
    if (!(r > 0.0 && r < 0.5)) throw ConfigError("sweep r must lie in (0, 1/2)");
    leg.run.eta = std::pow(static_cast<double>(std::max(leg.run.iterations, 1L)), -r);
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
  leg.output_dir = (fs::path(cfg.output_dir) / (parameter + "_" + value)).string();
  return leg;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& parameter,
              const std::vector<std::string>& raw_values, std::ostream& log) {
  std::vector<std::string> values;
  for (const auto& v : raw_values) {
    for (auto& item : split_list(v)) values.push_back(std::move(item));
  }
  if (values.empty()) throw ConfigError("sweep: empty value list");
  bool known = false;
  for (const auto& p : sweep_parameters()) known = known || p == parameter;
  if (!known) throw ConfigError("unknown sweep parameter '" + parameter + "'");

  // Build every leg first so a bad value fails before any run starts.
  std::vector<ExperimentConfig> legs;
  for (const auto& v : values) legs.push_back(apply_sweep_value(cfg, parameter, v));

  const fs::path dir = resolve_output_dir(cfg.output_dir);
  write_json(dir / "manifest.json", [&] {
    json j = manifest_json(cfg, "sweep");
    j["sweep"] = {{"parameter", parameter}, {"values", values}};
    return j;
  }());

  std::ostringstream summary;
  summary << "parameter,value,status,eta,T,eps_G,delta_G,violation_sq,max_gap,"
             "rate_eps_G,rate_violation_sq,message\n";
  int worst = kExitOk;
  for (size_t i = 0; i < legs.size(); ++i) {
    const ExperimentConfig& leg = legs[i];
    RunOutcome outcome;
    try {
      outcome = execute_run(leg, log);
    } catch (const ConfigError& e) {
      outcome.code = kExitConfig;
      outcome.message = e.what();
    } catch (const Error& e) {
      outcome.code = kExitDiverged;
      outcome.message = e.what();
    }
    if (outcome.code != kExitOk) {
      log << "sweep: leg " << parameter << "=" << values[i]
          << " failed: " << outcome.message << '\n';
    }
    worst = std::max(worst, outcome.code);
    std::string message = outcome.message;
    for (char& c : message) {
      if (c == ',' || c == '\n') c = ';';
    }
    const auto col = [&](double IterationRecord::*field) {
      return outcome.last ? format_double((*outcome.last).*field) : "nan";
    };
    summary << parameter << ',' << values[i] << ','
            << (outcome.code == kExitOk ? "ok" : "failed") << ','
            << format_double(leg.run.eta) << ',' << leg.run.iterations << ','
            << col(&IterationRecord::eps) << ',' << col(&IterationRecord::delta)
            << ',' << col(&IterationRecord::violation_sq) << ','
            << col(&IterationRecord::max_gap) << ','
            << fit_text(outcome.rates.eps) << ','
            << fit_text(outcome.rates.violation) << ',' << message << '\n';
  }
  write_file(dir / "summary.csv",
             [&](std::ostream& out) { out << summary.str(); });
  log << "sweep: " << legs.size() << " legs -> " << (dir / "summary.csv").string()
      << '\n';
  return worst;
}

}  // namespace drpd::cli
