// Copyright 2026 The voi-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end. Exit status: 0 success, 1 usage error, 2 invalid
// input, 3 solver failure, 4 verification counterexample.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "voi/io.hpp"
#include "voi/put.hpp"
#include "voi/verify.hpp"
#include "voi/voi.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kSolver = 3, kCounterexample = 4 };

using voi::io::Json;

struct Args {
  std::string model;
  std::string loss;
  std::string eve_loss;
  bool maximal_gain = false;
  std::vector<std::string> measures;
  std::optional<double> budget;
  std::size_t grid = 11;
  std::optional<std::size_t> resolution;
  std::uint64_t seed = 42;
  std::string out;
  std::string format;
  std::string suite = "all";
  std::optional<std::size_t> trials;
  std::size_t samples = 1'000'000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Table display: magnitudes below 1e-12 are rounding noise and print as 0.
std::string display_number(double v) { return voi::format_number(std::abs(v) < 1e-12 ? 0.0 : v); }

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    voi::io::write_text(a.out, text);
  }
}

std::string format_or(const Args& a, const std::string& fallback) {
  const std::string f = a.format.empty() ? fallback : a.format;
  if (f != "csv" && f != "json" && f != "text") throw UsageError("--format must be csv, json or text");
  return f;
}

voi::io::ModelFile load_model(const Args& a) {
  if (a.model.empty()) throw UsageError("--model is required");
  return voi::io::parse_model_file(voi::io::load_json(a.model));
}

voi::LossSpec load_loss(const std::string& path, const voi::Alphabet& x, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  return voi::io::parse_loss(voi::io::load_json(path), x);
}

voi::LeakageMeasure single_measure(const Args& a) {
  if (a.measures.size() != 1) throw UsageError("exactly one --measure is required");
  return voi::io::parse_measure_spec(a.measures.front());
}

double require_budget(const Args& a) {
  if (!a.budget) throw UsageError("--budget is required");
  return *a.budget;
}

voi::VoiOptions voi_options(const Args& a) {
  voi::VoiOptions o;
  o.resolution = a.resolution;
  return o;
}

int run_leakage(const Args& a) {
  const auto model = load_model(a).model();
  std::vector<voi::LeakageMeasure> measures;
  if (a.measures.empty()) {
    measures = voi::audit_measure_set();
  } else {
    for (const auto& s : a.measures) measures.push_back(voi::io::parse_measure_spec(s));
  }
  const bool numeric = model.prior.alphabet.values().has_value();
  const auto fmt = format_or(a, "text");
  Json rows = Json::array();
  std::string text;
  for (const auto& m : measures) {
    Json row = {{"measure", m.name()}, {"units", voi::measure_units(m)}};
    std::string value = "n/a (needs numeric X)";
    if (!voi::requires_numeric_x(m.kind) || numeric) {
      const auto r = voi::evaluate_leakage(m, model);
      row["value"] = voi::io::number(r.value);
      row["upper_bound_K"] = voi::io::number(r.upper_bound_K);
      row["method"] = voi::to_string(r.method);
      value = display_number(r.value);
    } else {
      row["value"] = nullptr;
    }
    rows.push_back(row);
    text += m.name() + std::string(m.name().size() < 36 ? 36 - m.name().size() : 1, ' ') + value + "\n";
  }
  emit(a, fmt == "json" ? voi::io::dump(Json{{"model", a.model}, {"leakage", rows}}) : text);
  return kOk;
}

int run_gain(const Args& a) {
  const auto model = load_model(a).model();
  const auto loss = load_loss(a.loss, model.prior.alphabet, "--loss");
  const double prior = voi::prior_bayes_risk(loss, model.prior);
  const double post = voi::min_bayes_risk(loss, model);
  const auto lg = voi::logarithmic_gain(loss, model);
  const double avg = voi::average_gain(loss, model);
  const double mx = voi::maximal_gain(loss, model);
  if (format_or(a, "text") == "json") {
    emit(a, voi::io::dump(Json{{"loss", loss.name()},
                               {"prior_bayes_risk", voi::io::number(prior)},
                               {"bayes_risk", voi::io::number(post)},
                               {"average_gain", voi::io::number(avg)},
                               {"logarithmic_gain", voi::io::number(lg.value)},
                               {"maximal_gain", voi::io::number(mx)}}));
  } else {
    emit(a, "prior_bayes_risk  " + voi::format_number(prior) + "\nbayes_risk        " + voi::format_number(post) +
                "\naverage_gain      " + voi::format_number(avg) + "\nlogarithmic_gain  " +
                voi::format_number(lg.value) + "\nmaximal_gain      " + voi::format_number(mx) + "\n");
  }
  return kOk;
}

int run_voi_point(const Args& a) {
  const auto prior = load_model(a).prior;
  const auto loss = load_loss(a.loss, prior.alphabet, "--loss");
  const auto m = single_measure(a);
  const auto p = voi::fundamental_voi(loss, prior, m, require_budget(a), voi_options(a));
  if (format_or(a, "text") == "json") {
    emit(a, voi::io::dump(voi::io::to_json(p)));
  } else {
    emit(a, "R                " + voi::format_number(p.budget) + "\nu_value          " +
                voi::format_number(p.u_value) + "\nv_value          " + voi::format_number(p.v_value) +
                "\nprior_risk       " + voi::format_number(p.prior_risk) + "\nmethod           " +
                voi::to_string(p.solver.method) + "\nfeasible_margin  " + voi::format_number(p.feasible_margin()) +
                "\nslack            " + voi::format_number(p.solver.slack) + "\n");
  }
  return kOk;
}

int run_voi_curve(const Args& a) {
  const auto prior = load_model(a).prior;
  const auto loss = load_loss(a.loss, prior.alphabet, "--loss");
  const auto m = single_measure(a);
  if (a.grid < 2) throw UsageError("--grid needs at least 2 points");
  const auto curve = voi::voi_curve(loss, prior, m, voi::budget_grid(m, prior, a.grid), voi_options(a));
  emit(a, format_or(a, "csv") == "json" ? voi::io::dump(voi::io::to_json(curve)) : voi::io::curve_csv(curve));
  return kOk;
}

voi::PutScenario scenario_from(const Args& a) {
  voi::PutScenario s;
  s.prior = load_model(a).prior;
  s.bob_loss = load_loss(a.loss, s.prior.alphabet, "--loss");
  if (!a.eve_loss.empty()) {
    if (!a.measures.empty()) throw UsageError("give either --measure or --eve-loss");
    s.gain_privacy = voi::GainPrivacy{load_loss(a.eve_loss, s.prior.alphabet, "--eve-loss"), a.maximal_gain};
  } else {
    s.measure = single_measure(a);
  }
  s.budget = require_budget(a);
  s.seed = a.seed;
  s.sample_count = a.samples;
  return s;
}

int run_design(const Args& a) {
  const auto s = scenario_from(a);
  const auto r = voi::design_mechanism(s, voi_options(a));
  emit(a, voi::io::dump(voi::io::to_json(r)));
  return kOk;
}

int run_simulate(const Args& a) {
  const auto s = scenario_from(a);
  const auto r = voi::design_mechanism(s, voi_options(a));
  const auto sim = voi::simulate_pipeline(r, s);
  emit(a, voi::io::dump(voi::io::to_json(sim)));
  if (!sim.within_band) {
    std::cerr << "simulation outside the 4-sigma band (z = " << voi::format_number(sim.z_score) << ")\n";
    return kCounterexample;
  }
  return kOk;
}

struct SuiteOutcome {
  Json report;
  std::string text;
  bool failed = false;
};

void add_properties(SuiteOutcome& o, Json& props, const std::vector<const voi::verify::PropertyResult*>& list) {
  for (const auto* p : list) {
    props.push_back(voi::verify::to_json(*p));
    o.failed = o.failed || !p->passed();
    o.text += std::string(p->passed() ? "PASS  " : "FAIL  ") + p->name + "  trials=" + std::to_string(p->trials) +
              " failures=" + std::to_string(p->failures) + " worst_margin=" + voi::format_number(p->worst_margin) +
              "\n";
  }
}

SuiteOutcome run_suite(const std::string& name, std::optional<std::size_t> trials, std::uint64_t seed) {
  namespace V = voi::verify;
  SuiteOutcome o;
  auto n = [&](std::size_t d) { return trials.value_or(d); };
  Json props = Json::array();
  if (name == "table1") {
    const auto m = V::axiom_matrix(n(500), seed);
    o.report = V::to_json(m);
    o.text = V::render_matrix(m);
    o.failed = !m.matches();
    return o;
  }
  if (name == "identities") {
    const auto r = V::identity_suite(n(100), seed);
    std::vector<const V::PropertyResult*> list;
    for (const auto& p : r) list.push_back(&p);
    add_properties(o, props, list);
  } else if (name == "limit") {
    const auto r = V::limit_suite(n(200), seed);
    add_properties(o, props, {&r.converse, &r.achievability});
  } else if (name == "upper-bound") {
    const auto r = V::upper_bound_suite(n(20), seed);
    add_properties(o, props, {&r.dominates, &r.zero_at_zero});
  } else if (name == "curve-shape") {
    const auto r = V::curve_shape_suite(n(18), seed);
    add_properties(o, props, {&r.monotone, &r.concave, &r.quasi_concave, &r.scaling});
  } else if (name == "sufficiency") {
    const auto r = V::sufficiency_suite(n(100), seed);
    add_properties(o, props, {&r.shannon_equal, &r.never_exceeds, &r.deviation, &r.merges});
  } else {
    throw UsageError("unknown suite '" + name + "'");
  }
  o.report = {{"suite", name}, {"seed", seed}, {"properties", props}};
  return o;
}

int run_verify(const Args& a) {
  static const std::vector<std::string> all = {"table1", "identities", "limit", "upper-bound", "curve-shape", "sufficiency"};
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = all;
  } else {
    suites = {a.suite};
  }
  Json reports = Json::array();
  bool failed = false;
  for (const auto& s : suites) {
    auto o = run_suite(s, a.trials, a.seed);
    std::cout << "== " << s << "\n" << o.text;
    reports.push_back(o.report);
    failed = failed || o.failed;
  }
  const Json doc = {{"seed", a.seed}, {"suites", reports}, {"passed", !failed}};
  if (!a.out.empty()) voi::io::write_text(a.out, voi::io::dump(doc));
  if (failed) {
    const std::string path = a.out.empty() ? "voi-verify-" + a.suite + "-" + std::to_string(a.seed) + ".json" : a.out;
    if (a.out.empty()) voi::io::write_text(path, voi::io::dump(doc));
    std::cerr << "counterexample found; report written to " << path << "\n";
    return kCounterexample;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value of information under leakage constraints"};
  app.require_subcommand(1);
  Args a;
  auto model = [&](CLI::App* s) { s->add_option("--model", a.model, "model JSON file"); };
  auto loss = [&](CLI::App* s) { s->add_option("--loss", a.loss, "loss JSON file"); };
  auto measure = [&](CLI::App* s) {
    s->add_option("--measure", a.measures, "measure: JSON or kind[:order|:generator], e.g. sibson:2");
  };
  auto budget = [&](CLI::App* s) { s->add_option("--budget", a.budget, "leakage budget R")->check(CLI::NonNegativeNumber); };
  auto common = [&](CLI::App* s) {
    s->add_option("--out", a.out, "output file (stdout when absent)");
    s->add_option("--format", a.format, "csv, json or text");
  };
  auto solver = [&](CLI::App* s) { s->add_option("--resolution", a.resolution, "grid resolution for grid solvers"); };
  auto privacy = [&](CLI::App* s) {
    s->add_option("--eve-loss", a.eve_loss, "Eve's loss JSON; privacy as her gain instead of a leakage measure");
    s->add_flag("--maximal-gain", a.maximal_gain, "use Eve's maximal gain rather than her average gain");
  };

  auto* leak = app.add_subcommand("leakage", "table of leakage measures for a model");
  model(leak);
  measure(leak);
  common(leak);
  auto* gain = app.add_subcommand("gain", "average, logarithmic and maximal gains for a loss");
  model(gain);
  loss(gain);
  common(gain);
  auto* point = app.add_subcommand("voi-point", "V(R) at one budget");
  model(point);
  loss(point);
  measure(point);
  budget(point);
  solver(point);
  common(point);
  auto* curve = app.add_subcommand("voi-curve", "V(R) over an evenly spaced budget grid on [0, K(X)]");
  model(curve);
  loss(curve);
  measure(curve);
  curve->add_option("--grid", a.grid, "number of budget points");
  solver(curve);
  common(curve);
  auto* design = app.add_subcommand("design-mechanism", "optimal disclosure mechanism as a JSON report");
  model(design);
  loss(design);
  measure(design);
  privacy(design);
  budget(design);
  solver(design);
  common(design);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of the designed mechanism");
  model(sim);
  loss(sim);
  measure(sim);
  privacy(sim);
  budget(sim);
  solver(sim);
  common(sim);
  sim->add_option("--seed", a.seed, "random seed");
  sim->add_option("--samples", a.samples, "number of samples")->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify", "seeded property suites");
  verify->add_option("--suite", a.suite, "table1, identities, limit, upper-bound, curve-shape, sufficiency or all")
      ->check(CLI::IsMember({"table1", "identities", "limit", "upper-bound", "curve-shape", "sufficiency", "all"}));
  verify->add_option("--trials", a.trials, "trials per property (suite default when absent)");
  verify->add_option("--seed", a.seed, "random seed");
  verify->add_option("--out", a.out, "report JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*leak) return run_leakage(a);
    if (*gain) return run_gain(a);
    if (*point) return run_voi_point(a);
    if (*curve) return run_voi_curve(a);
    if (*design) return run_design(a);
    if (*sim) return run_simulate(a);
    if (*verify) return run_verify(a);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const voi::ValidationError& e) {
    std::cerr << "invalid input:\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  [" << d.invariant << "] " << d.location << ": " << d.message << "\n";
    return kInvalid;
  } catch (const voi::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kUsage;
}
