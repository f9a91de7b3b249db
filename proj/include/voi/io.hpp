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
// JSON and CSV serialization for models, losses, measures, curves, statistic
// maps and mechanism reports.
#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "voi/decision.hpp"
#include "voi/errors.hpp"
#include "voi/leakage.hpp"
#include "voi/probability.hpp"
#include "voi/put.hpp"
#include "voi/sufficiency.hpp"
#include "voi/voi.hpp"

namespace voi::io {

using Json = nlohmann::ordered_json;

// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
inline Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline Json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : Json(nullptr);
}

namespace detail {

inline const Json& member(const Json& j, const std::string& key, const std::string& loc) {
  if (!j.is_object()) throw ValidationError("json_type", loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError("json_missing", loc + "." + key, "required field missing");
  return *it;
}

inline double to_double(const Json& j, const std::string& loc) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInf;
  }
  throw ValidationError("json_type", loc, "expected a number");
}

inline std::vector<double> to_doubles(const Json& j, const std::string& loc) {
  if (!j.is_array()) throw ValidationError("json_type", loc, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_double(j[i], loc + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<double>> to_matrix(const Json& j, const std::string& loc) {
  if (!j.is_array()) throw ValidationError("json_type", loc, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_doubles(j[i], loc + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> to_strings(const Json& j, const std::string& loc) {
  if (!j.is_array()) throw ValidationError("json_type", loc, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ValidationError("json_type", loc + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::string to_string_field(const Json& j, const std::string& loc) {
  if (!j.is_string()) throw ValidationError("json_type", loc, "expected a string");
  return j.get<std::string>();
}

inline Alphabet to_alphabet(const Json& j, const std::string& loc) {
  if (!j.is_object()) throw ValidationError("json_type", loc, "expected an object");
  std::optional<std::vector<double>> values;
  if (j.contains("values")) values = to_doubles(j["values"], loc + ".values");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = to_strings(j["labels"], loc + ".labels");
  } else if (values) {
    labels = Alphabet::numeric(*values).labels();
  } else {
    throw ValidationError("json_missing", loc + ".labels", "labels or values required");
  }
  Alphabet a(std::move(labels), std::move(values));
  if (auto d = validate_alphabet(a, loc); !d.empty()) throw ValidationError(d);
  return a;
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("json_parse", origin, e.what());
  }
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("file_readable", path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

// A prior with an optional channel; commands that only need p_X accept
// model files without "channel".
struct ModelFile {
  FiniteDistribution prior;
  std::optional<Channel> channel;

  JointModel model() const {
    if (!channel) throw ValidationError("json_missing", "model.channel", "this command needs a channel");
    return {prior, *channel};
  }
};

inline ModelFile parse_model_file(const Json& j) {
  ModelFile f;
  f.prior.alphabet = detail::to_alphabet(detail::member(j, "x", "model"), "model.x");
  f.prior.probs = detail::to_doubles(detail::member(j, "p_x", "model"), "model.p_x");
  if (j.contains("channel")) {
    const auto& c = j["channel"];
    const auto out = detail::to_strings(detail::member(c, "output_labels", "model.channel"),
                                        "model.channel.output_labels");
    Alphabet y(out);
    if (auto d = validate_alphabet(y, "model.channel.output_labels"); !d.empty()) throw ValidationError(d);
    const auto rows = detail::to_matrix(detail::member(c, "rows", "model.channel"), "model.channel.rows");
    f.channel = Channel::from_rows(f.prior.alphabet, y, rows);
    require_valid(JointModel{f.prior, *f.channel});
  } else {
    require_valid(f.prior, "model.p_x");
  }
  return f;
}

inline JointModel parse_model(const Json& j) { return parse_model_file(j).model(); }

inline Json to_json(const Alphabet& a) {
  Json j;
  j["labels"] = a.labels();
  if (a.values()) {
    Json v = Json::array();
    for (double x : *a.values()) v.push_back(number(x));
    j["values"] = v;
  }
  return j;
}

inline Json channel_rows(const Channel& c) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < c.rows(); ++x) {
    Json r = Json::array();
    for (double p : c.row(x)) r.push_back(number(p));
    rows.push_back(r);
  }
  return rows;
}

inline Json to_json(const Channel& c) {
  Json j;
  j["input_labels"] = c.input.labels();
  j["output_labels"] = c.output.labels();
  j["rows"] = channel_rows(c);
  return j;
}

inline Json to_json(const JointModel& m) {
  Json j;
  j["x"] = to_json(m.prior.alphabet);
  Json p = Json::array();
  for (double v : m.prior.probs) p.push_back(number(v));
  j["p_x"] = p;
  j["channel"] = {{"output_labels", m.channel.output.labels()}, {"rows", channel_rows(m.channel)}};
  return j;
}

// Loss JSON: {"kind":"classical_matrix","matrix":[[...]],"actions":[...]},
// {"kind":"zero_one"}, {"kind":"alpha_loss","order":2} or
// {"kind":"squared","actions":[numbers]?}.
inline LossSpec parse_loss(const Json& j, const Alphabet& x) {
  const auto kind = detail::to_string_field(detail::member(j, "kind", "loss"), "loss.kind");
  LossSpec loss;
  if (kind == "classical_matrix") {
    const auto m = detail::to_matrix(detail::member(j, "matrix", "loss"), "loss.matrix");
    std::vector<std::string> labels;
    if (j.contains("actions")) {
      labels = detail::to_strings(j["actions"], "loss.actions");
    } else {
      labels = Alphabet::indexed(m.empty() ? 0 : m.front().size(), "a").labels();
    }
    loss = LossSpec::classical(m, Alphabet(labels));
  } else if (kind == "zero_one") {
    loss = LossSpec::zero_one(x);
  } else if (kind == "alpha_loss") {
    loss = LossSpec::alpha(detail::to_double(detail::member(j, "order", "loss"), "loss.order"));
  } else if (kind == "squared") {
    if (j.contains("actions")) {
      loss = LossSpec::squared(detail::to_doubles(j["actions"], "loss.actions"));
    } else {
      loss = LossSpec::squared();
    }
  } else {
    throw ValidationError("loss_kind", "loss.kind", "unknown loss kind '" + kind + "'");
  }
  require_valid(loss, x);
  return loss;
}

inline Json to_json(const LossSpec& loss) {
  Json j;
  j["kind"] = to_string(loss.kind);
  if (loss.kind == LossKind::classical_matrix) {
    j["matrix"] = loss.matrix;
    if (loss.actions) j["actions"] = loss.actions->labels();
  }
  if (loss.action_values) j["actions"] = *loss.action_values;
  if (loss.order) j["order"] = number(*loss.order);
  return j;
}

namespace detail {

inline std::optional<LeakageKind> measure_kind_alias(const std::string& s) {
  if (auto k = parse_leakage_kind(s)) return k;
  static const std::pair<const char*, LeakageKind> aliases[] = {
      {"shannon", LeakageKind::shannon_mi},
      {"mi", LeakageKind::shannon_mi},
      {"arimoto", LeakageKind::arimoto_mi},
      {"sibson", LeakageKind::sibson_mi},
      {"csiszar", LeakageKind::csiszar_mi},
      {"maximal", LeakageKind::maximal_leakage},
      {"maxl", LeakageKind::maximal_leakage},
      {"alpha", LeakageKind::alpha_leakage},
      {"maximal_alpha", LeakageKind::maximal_alpha_leakage},
      {"mmse", LeakageKind::mmse_leakage},
      {"ms", LeakageKind::ms_leakage},
      {"variance", LeakageKind::variance_leakage},
      {"maximal_cost", LeakageKind::maximal_cost_leakage},
  };
  for (const auto& [name, kind] : aliases) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

inline double parse_order_text(const std::string& s, const std::string& loc) {
  if (s == "inf" || s == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("order_range", loc, "cannot read order '" + s + "'");
}

}  // namespace detail

// Measure JSON: {"kind":"...","order":2?,"generator":"kl"?,"variance_formula":"paper"?}.
inline LeakageMeasure parse_measure(const Json& j) {
  const auto kind_text = detail::to_string_field(detail::member(j, "kind", "measure"), "measure.kind");
  const auto kind = detail::measure_kind_alias(kind_text);
  if (!kind) throw ValidationError("measure_kind", "measure.kind", "unknown measure '" + kind_text + "'");
  LeakageMeasure m{*kind};
  if (j.contains("order")) m.order = detail::to_double(j["order"], "measure.order");
  if (j.contains("generator")) {
    const auto g = detail::to_string_field(j["generator"], "measure.generator");
    m.generator = parse_generator(g);
    if (!m.generator) throw ValidationError("generator", "measure.generator", "unknown generator '" + g + "'");
  }
  if (j.contains("variance_formula")) {
    const auto f = detail::to_string_field(j["variance_formula"], "measure.variance_formula");
    if (f == "paper") {
      m.variance_formula = VarianceFormula::paper;
    } else if (f == "squared") {
      m.variance_formula = VarianceFormula::squared;
    } else {
      throw ValidationError("variance_formula", "measure.variance_formula", "expected paper or squared");
    }
  }
  require_valid(m);
  return m;
}

// A JSON descriptor or the shorthand "kind", "kind:order", "kind:generator"
// or "variance:paper", e.g. "sibson:2" or "f_information:tv".
inline LeakageMeasure parse_measure_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_measure(parse_json_text(spec, "measure"));
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto kind = detail::measure_kind_alias(head);
  if (!kind) throw ValidationError("measure_kind", "measure", "unknown measure '" + head + "'");
  LeakageMeasure m{*kind};
  if (colon != std::string::npos) {
    const auto arg = spec.substr(colon + 1);
    if (is_generator_parameterized(*kind)) {
      m.generator = parse_generator(arg);
      if (!m.generator) throw ValidationError("generator", "measure", "unknown generator '" + arg + "'");
    } else if (*kind == LeakageKind::variance_leakage) {
      if (arg == "paper") {
        m.variance_formula = VarianceFormula::paper;
      } else if (arg != "squared") {
        throw ValidationError("variance_formula", "measure", "expected paper or squared");
      }
    } else {
      m.order = detail::parse_order_text(arg, "measure");
    }
  }
  require_valid(m);
  return m;
}

inline Json to_json(const LeakageMeasure& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  if (m.order) j["order"] = number(*m.order);
  if (m.generator) j["generator"] = to_string(*m.generator);
  if (m.kind == LeakageKind::variance_leakage) j["variance_formula"] = to_string(m.variance_formula);
  return j;
}

// %.12g in the C locale.
inline std::string csv_number(double v) { return format_number(v); }

inline std::string curve_csv(const VoiCurve& curve) {
  std::string out = "R,u_value,v_value,method,feasible_margin\n";
  for (const auto& p : curve.points) {
    out += csv_number(p.budget) + "," + csv_number(p.u_value) + "," + csv_number(p.v_value) + "," +
           to_string(p.solver.method) + "," + csv_number(p.feasible_margin()) + "\n";
  }
  return out;
}

inline Json to_json(const StatisticMap& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["merge_epsilon"] = number(s.merge_epsilon);
  Json classes = Json::array();
  for (std::size_t c = 0; c < s.size(); ++c) {
    Json members = Json::array();
    for (std::size_t a : s.classes[c]) members.push_back(s.source.label(a));
    Json rep = Json::array();
    for (double v : s.representatives[c]) rep.push_back(number(v));
    classes.push_back({{"label", s.class_label(c)},
                       {"actions", members},
                       {"representative", rep},
                       {"reachable", !(s.unreachable_class && *s.unreachable_class == c)}});
  }
  j["classes"] = classes;
  return j;
}

inline Json to_json(const SolveReport& r) {
  return {{"method", to_string(r.method)},
          {"objective", number(r.objective)},
          {"leakage_at_solution", number(r.leakage_at_solution)},
          {"budget", number(r.budget)},
          {"feasible", r.feasible},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"resolution", r.resolution},
          {"slack", number(r.slack)},
          {"lambda", number(r.lambda)}};
}

inline Json to_json(const VoiPoint& p) {
  Json j = {{"R", number(p.budget)},
            {"u_value", number(p.u_value)},
            {"v_value", number(p.v_value)},
            {"prior_risk", number(p.prior_risk)},
            {"feasible_margin", number(p.feasible_margin())},
            {"solver", to_json(p.solver)},
            {"action_channel", to_json(p.solver.channel)}};
  if (p.statistic) j["statistic"] = to_json(*p.statistic);
  if (p.achieving_mechanism) j["mechanism"] = to_json(*p.achieving_mechanism);
  return j;
}

inline Json to_json(const CurveChecks& c) {
  return {{"monotone", c.monotone},
          {"worst_monotone_margin", number(c.worst_monotone_margin)},
          {"concave", c.concave ? Json(*c.concave) : Json(nullptr)},
          {"worst_second_difference", number(c.worst_second_difference)},
          {"quasi_concave", c.quasi_concave ? Json(*c.quasi_concave) : Json(nullptr)},
          {"worst_quasi_margin", number(c.worst_quasi_margin)}};
}

inline Json to_json(const VoiCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) points.push_back(to_json(p));
  return {{"loss", curve.loss_name},
          {"measure", curve.measure_name},
          {"units", curve.units},
          {"checks", to_json(curve.checks)},
          {"points", points}};
}

inline Json to_json(const DecisionRule& rule) {
  Json rows = Json::array();
  for (std::size_t y = 0; y < rule.rows.size(); ++y) {
    const auto& r = rule.rows[y];
    Json row = {{"y", rule.y.label(y)}, {"reachable", static_cast<bool>(rule.reachable[y])},
                {"posterior_risk", number(r.value)}};
    if (r.action) row["action"] = rule.actions.label(*r.action);
    if (r.action_value) row["action_value"] = number(*r.action_value);
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const MechanismReport& r) {
  Json audit = Json::array();
  for (const auto& e : r.leakage_audit) audit.push_back({{"measure", e.measure}, {"value", optional_number(e.value)}});
  return {{"privacy", r.privacy_name},
          {"budget", number(r.budget)},
          {"effective_budget", number(r.effective_budget)},
          {"privacy_value", number(r.privacy_value)},
          {"prior_risk", number(r.prior_risk)},
          {"u_value", number(r.u_value)},
          {"v_value", number(r.v_value)},
          {"achieved_gain", number(r.achieved_gain)},
          {"solver", to_json(r.solver)},
          {"action_channel", to_json(r.action_channel)},
          {"statistic", to_json(r.statistic)},
          {"disclosure_channel", to_json(r.disclosure_channel)},
          {"bob_rule", to_json(r.bob_rule)},
          {"leakage_audit", audit}};
}

inline Json to_json(const SimulationSummary& s) {
  return {{"samples", s.samples},
          {"seed", s.seed},
          {"empirical_loss", number(s.empirical_loss)},
          {"standard_error", number(s.standard_error)},
          {"analytic_loss", number(s.analytic_loss)},
          {"u_value", number(s.u_value)},
          {"z_score", number(s.z_score)},
          {"within_band", s.within_band}};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("file_writable", path, "cannot open file for writing");
  out << text;
  if (!out) throw ValidationError("file_writable", path, "write failed");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace voi::io
