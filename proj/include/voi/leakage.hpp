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
// Information-leakage measures as functionals of (p_X, p_{Y|X}). All values
// are in nats except the mmse family, which is in squared units of X.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voi/errors.hpp"
#include "voi/probability.hpp"
#include "voi/simplex.hpp"

namespace voi {

enum class LeakageKind {
  shannon_mi,
  arimoto_mi,
  sibson_mi,
  csiszar_mi,
  f_information,
  f_leakage,
  maximal_leakage,
  alpha_leakage,
  maximal_alpha_leakage,
  mmse_leakage,
  ms_leakage,
  variance_leakage,
  maximal_cost_leakage,
};

// Built-in convex generators f with f(1) = 0.
enum class FGenerator {
  kl,               // t log t
  total_variation,  // |t - 1| / 2
  chi_squared,      // (t - 1)^2
  hellinger,        // (sqrt(t) - 1)^2
};

// -log(1 - rho_m) (the default), or -log(1 - rho_m^2), which is
// what sup over U of the mean-square log leakage evaluates to.
enum class VarianceFormula { paper, squared };

enum class LeakageMethod { closed_form, inner_minimization, svd, grid };

inline const char* to_string(LeakageKind kind) {
  switch (kind) {
    case LeakageKind::shannon_mi: return "shannon_mi";
    case LeakageKind::arimoto_mi: return "arimoto_mi";
    case LeakageKind::sibson_mi: return "sibson_mi";
    case LeakageKind::csiszar_mi: return "csiszar_mi";
    case LeakageKind::f_information: return "f_information";
    case LeakageKind::f_leakage: return "f_leakage";
    case LeakageKind::maximal_leakage: return "maximal_leakage";
    case LeakageKind::alpha_leakage: return "alpha_leakage";
    case LeakageKind::maximal_alpha_leakage: return "maximal_alpha_leakage";
    case LeakageKind::mmse_leakage: return "mmse_leakage";
    case LeakageKind::ms_leakage: return "ms_leakage";
    case LeakageKind::variance_leakage: return "variance_leakage";
    case LeakageKind::maximal_cost_leakage: return "maximal_cost_leakage";
  }
  return "?";
}

inline const char* to_string(FGenerator g) {
  switch (g) {
    case FGenerator::kl: return "kl";
    case FGenerator::total_variation: return "total_variation";
    case FGenerator::chi_squared: return "chi_squared";
    case FGenerator::hellinger: return "hellinger";
  }
  return "?";
}

inline const char* to_string(VarianceFormula f) {
  return f == VarianceFormula::paper ? "paper" : "squared";
}

inline const char* to_string(LeakageMethod m) {
  switch (m) {
    case LeakageMethod::closed_form: return "closed_form";
    case LeakageMethod::inner_minimization: return "inner_minimization";
    case LeakageMethod::svd: return "svd";
    case LeakageMethod::grid: return "grid";
  }
  return "?";
}

inline std::optional<LeakageKind> parse_leakage_kind(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(LeakageKind::maximal_cost_leakage); ++k) {
    auto kind = static_cast<LeakageKind>(k);
    if (s == to_string(kind)) return kind;
  }
  return std::nullopt;
}

inline std::optional<FGenerator> parse_generator(const std::string& s) {
  for (auto g : {FGenerator::kl, FGenerator::total_variation, FGenerator::chi_squared,
                 FGenerator::hellinger}) {
    if (s == to_string(g)) return g;
  }
  if (s == "tv") return FGenerator::total_variation;
  if (s == "chi2") return FGenerator::chi_squared;
  return std::nullopt;
}

inline bool is_order_parameterized(LeakageKind k) {
  return k == LeakageKind::arimoto_mi || k == LeakageKind::sibson_mi ||
         k == LeakageKind::csiszar_mi || k == LeakageKind::alpha_leakage ||
         k == LeakageKind::maximal_alpha_leakage;
}

inline bool is_generator_parameterized(LeakageKind k) {
  return k == LeakageKind::f_information || k == LeakageKind::f_leakage;
}

inline bool requires_numeric_x(LeakageKind k) {
  return k == LeakageKind::mmse_leakage || k == LeakageKind::ms_leakage;
}

struct LeakageMeasure {
  LeakageKind kind = LeakageKind::shannon_mi;
  std::optional<double> order;
  std::optional<FGenerator> generator;
  VarianceFormula variance_formula = VarianceFormula::squared;

  static LeakageMeasure shannon() { return {LeakageKind::shannon_mi}; }
  static LeakageMeasure arimoto(double a) { return {LeakageKind::arimoto_mi, a}; }
  static LeakageMeasure sibson(double a) { return {LeakageKind::sibson_mi, a}; }
  static LeakageMeasure csiszar(double a) { return {LeakageKind::csiszar_mi, a}; }
  static LeakageMeasure f_information(FGenerator g) {
    return {LeakageKind::f_information, std::nullopt, g};
  }
  static LeakageMeasure f_leakage(FGenerator g) {
    return {LeakageKind::f_leakage, std::nullopt, g};
  }
  static LeakageMeasure maximal() { return {LeakageKind::maximal_leakage}; }
  static LeakageMeasure alpha(double a) { return {LeakageKind::alpha_leakage, a}; }
  static LeakageMeasure maximal_alpha(double a) {
    return {LeakageKind::maximal_alpha_leakage, a};
  }
  static LeakageMeasure mmse() { return {LeakageKind::mmse_leakage}; }
  static LeakageMeasure mean_square() { return {LeakageKind::ms_leakage}; }
  static LeakageMeasure variance(VarianceFormula f = VarianceFormula::squared) {
    return {LeakageKind::variance_leakage, std::nullopt, std::nullopt, f};
  }
  static LeakageMeasure maximal_cost() { return {LeakageKind::maximal_cost_leakage}; }

  std::string name() const {
    std::string out = to_string(kind);
    if (order) out += "(" + format_number(*order) + ")";
    if (generator) out += "(" + std::string(to_string(*generator)) + ")";
    if (kind == LeakageKind::variance_leakage) {
      out += "(" + std::string(to_string(variance_formula)) + ")";
    }
    return out;
  }

  bool operator==(const LeakageMeasure&) const = default;
};

inline Diagnostics validate_measure(const LeakageMeasure& m) {
  Diagnostics out;
  const bool wants_order = is_order_parameterized(m.kind);
  if (wants_order && !m.order) {
    out.push_back({"order_required", "measure", m.name() + " needs an order"});
  }
  if (!wants_order && m.order) {
    out.push_back({"order_forbidden", "measure", m.name() + " takes no order"});
  }
  if (m.order && !(*m.order > 0.0)) {
    out.push_back({"order_range", "measure.order", "order must lie in (0, inf]"});
  }
  if (m.kind == LeakageKind::csiszar_mi && m.order && std::isinf(*m.order)) {
    out.push_back({"order_range", "measure.order", "Csiszar order must be finite"});
  }
  if (m.kind == LeakageKind::maximal_alpha_leakage && m.order && *m.order < 1.0) {
    out.push_back({"order_range", "measure.order",
                   "maximal alpha-leakage is supported for order >= 1 only"});
  }
  const bool wants_generator = is_generator_parameterized(m.kind);
  if (wants_generator && !m.generator) {
    out.push_back({"generator_required", "measure", m.name() + " needs a generator"});
  }
  if (!wants_generator && m.generator) {
    out.push_back({"generator_forbidden", "measure", m.name() + " takes no generator"});
  }
  return out;
}

// Zero exactly at independent joints (third column of the leakage table).
inline bool has_independence_property(const LeakageMeasure& m) {
  switch (m.kind) {
    case LeakageKind::mmse_leakage:
    case LeakageKind::ms_leakage:
      return false;
    case LeakageKind::arimoto_mi:
    case LeakageKind::alpha_leakage:
      return !(m.order && std::isinf(*m.order));
    default:
      return true;
  }
}

// Convex in p_{A|X} for fixed p_X.
inline bool is_convex_in_channel(const LeakageMeasure& m) {
  const double a = m.order.value_or(1.0);
  switch (m.kind) {
    case LeakageKind::shannon_mi:
    case LeakageKind::f_information:
    case LeakageKind::f_leakage:
      return true;
    case LeakageKind::sibson_mi:
    case LeakageKind::csiszar_mi:
      return a <= 1.0;
    case LeakageKind::arimoto_mi:
    case LeakageKind::alpha_leakage:
    case LeakageKind::maximal_alpha_leakage:
      return a == 1.0;
    default:
      return false;
  }
}

// Quasi-convex in p_{A|X} (includes the convex kinds).
inline bool is_quasi_convex_in_channel(const LeakageMeasure& m) {
  switch (m.kind) {
    case LeakageKind::arimoto_mi:
    case LeakageKind::sibson_mi:
    case LeakageKind::alpha_leakage:
    case LeakageKind::maximal_alpha_leakage:
      return true;
    default:
      return is_convex_in_channel(m);
  }
}

struct LeakageOptions {
  // Grid resolution for the supremum over input distributions in maximal
  // alpha-leakage of order in (1, inf).
  std::size_t maximal_alpha_resolution = 60;
  SimplexMinimizerOptions inner;
  // Below this output size a non-converged inner minimization is retried on
  // a quantized grid of q_Y.
  std::size_t grid_fallback_max_outputs = 4;
  std::size_t grid_fallback_resolution = 200;
};

struct LeakageResult {
  double value = 0.0;
  double upper_bound_K = kInf;
  LeakageMethod method = LeakageMethod::closed_form;
  int iterations = 0;
  double tolerance = 0.0;
  bool converged = true;
  bool grid_limited = false;
  bool degenerate = false;

  bool is_infinite() const { return std::isinf(value); }
};

namespace detail {

inline double clamp_nonnegative(double v, double tol = 1e-10) {
  return (v < 0.0 && v >= -tol) ? 0.0 : v;
}

inline bool is_one(double a) { return a == 1.0; }

}  // namespace detail

// ---- entropies -----------------------------------------------------------

inline double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

// H_alpha(p) = alpha/(1-alpha) log ||p||_alpha, with the Shannon entropy at
// alpha = 1 and -log max p at alpha = inf.
inline double renyi_entropy(std::span<const double> p, double order) {
  if (!(order > 0.0)) {
    throw ValidationError("order_range", "renyi_entropy", "order must lie in (0, inf]");
  }
  if (detail::is_one(order)) return shannon_entropy(p);
  if (std::isinf(order)) return -std::log(*std::max_element(p.begin(), p.end()));
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s += std::pow(v, order);
  }
  return std::log(s) / (1.0 - order);
}

inline double renyi_entropy(const FiniteDistribution& dist, double order) {
  require_valid(dist, "distribution");
  return renyi_entropy(dist.probs, order);
}

// Arimoto conditional entropy H^A_alpha(X|Y).
inline double arimoto_conditional_entropy_unchecked(const JointModel& model, double order) {
  const std::size_t nx = model.x_size();
  const std::size_t ny = model.y_size();
  if (detail::is_one(order)) {
    const auto py = output_probs(model);
    double h = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) {
        const double j = model.joint(x, y);
        if (j > 0.0) h -= j * std::log(j / py[y]);
      }
    }
    return h;
  }
  if (std::isinf(order)) {
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double m = 0.0;
      for (std::size_t x = 0; x < nx; ++x) m = std::max(m, model.joint(x, y));
      s += m;
    }
    return -std::log(s);
  }
  double s = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    double inner = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      const double j = model.joint(x, y);
      if (j > 0.0) inner += std::pow(j, order);
    }
    if (inner > 0.0) s += std::pow(inner, 1.0 / order);
  }
  return order / (1.0 - order) * std::log(s);
}

inline double arimoto_conditional_entropy(const JointModel& model, double order) {
  require_valid(model);
  if (!(order > 0.0)) {
    throw ValidationError("order_range", "arimoto_conditional_entropy",
                          "order must lie in (0, inf]");
  }
  return arimoto_conditional_entropy_unchecked(model, order);
}

// ---- divergences ---------------------------------------------------------

inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

// D_alpha(p || q) = 1/(alpha-1) log sum p^alpha q^(1-alpha).
inline double renyi_divergence(std::span<const double> p, std::span<const double> q,
                               double order) {
  if (detail::is_one(order)) return kl_divergence(p, q);
  if (std::isinf(order)) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return kInf;
      m = std::max(m, p[i] / q[i]);
    }
    return std::log(m);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (order > 1.0) return kInf;
      continue;
    }
    s += std::pow(p[i], order) * std::pow(q[i], 1.0 - order);
  }
  if (s <= 0.0) return kInf;  // disjoint supports with order < 1
  return std::log(s) / (order - 1.0);
}

inline double f_generator(FGenerator g, double t) {
  switch (g) {
    case FGenerator::kl: return t > 0.0 ? t * std::log(t) : 0.0;
    case FGenerator::total_variation: return 0.5 * std::abs(t - 1.0);
    case FGenerator::chi_squared: return (t - 1.0) * (t - 1.0);
    case FGenerator::hellinger: {
      const double r = std::sqrt(t) - 1.0;
      return r * r;
    }
  }
  return 0.0;
}

// q f(p/q), extended to q = 0 by its limit p * lim f(t)/t.
inline double f_perspective(FGenerator g, double p, double q) {
  if (q > 0.0) {
    switch (g) {
      case FGenerator::kl: return p > 0.0 ? p * std::log(p / q) : 0.0;
      case FGenerator::total_variation: return 0.5 * std::abs(p - q);
      case FGenerator::chi_squared: return (p - q) * (p - q) / q;
      case FGenerator::hellinger: {
        const double r = std::sqrt(p) - std::sqrt(q);
        return r * r;
      }
    }
  }
  if (p <= 0.0) return 0.0;
  switch (g) {
    case FGenerator::kl:
    case FGenerator::chi_squared:
      return kInf;
    case FGenerator::total_variation: return 0.5 * p;
    case FGenerator::hellinger: return p;
  }
  return 0.0;
}

inline double f_divergence(std::span<const double> p, std::span<const double> q,
                           FGenerator g) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += f_perspective(g, p[i], q[i]);
  return d;
}

// ---- closed-form measures ------------------------------------------------

inline double shannon_mi_unchecked(const JointModel& model) {
  const auto py = output_probs(model);
  double i = 0.0;
  for (std::size_t x = 0; x < model.x_size(); ++x) {
    const double px = model.prior.probs[x];
    if (px <= 0.0) continue;
    for (std::size_t y = 0; y < model.y_size(); ++y) {
      const double w = model.channel(x, y);
      if (w > 0.0) i += px * w * std::log(w / py[y]);
    }
  }
  return detail::clamp_nonnegative(i);
}

inline double arimoto_mi_unchecked(const JointModel& model, double order) {
  if (detail::is_one(order)) return shannon_mi_unchecked(model);
  return detail::clamp_nonnegative(renyi_entropy(model.prior.probs, order) -
                                   arimoto_conditional_entropy_unchecked(model, order));
}

// log sum_y max_{x in supp} p(y|x).
inline double maximal_leakage_unchecked(const JointModel& model) {
  double s = 0.0;
  for (std::size_t y = 0; y < model.y_size(); ++y) {
    double m = 0.0;
    for (std::size_t x = 0; x < model.x_size(); ++x) {
      if (model.prior.probs[x] > kSupportEpsilon) m = std::max(m, model.channel(x, y));
    }
    s += m;
  }
  return detail::clamp_nonnegative(std::log(s));
}

// alpha/(alpha-1) log sum_y (sum_x p(x) p(y|x)^alpha)^(1/alpha).
inline double sibson_mi_unchecked(const JointModel& model, double order) {
  if (detail::is_one(order)) return shannon_mi_unchecked(model);
  if (std::isinf(order)) return maximal_leakage_unchecked(model);
  double s = 0.0;
  for (std::size_t y = 0; y < model.y_size(); ++y) {
    double inner = 0.0;
    for (std::size_t x = 0; x < model.x_size(); ++x) {
      const double w = model.channel(x, y);
      if (w > 0.0) inner += model.prior.probs[x] * std::pow(w, order);
    }
    if (inner > 0.0) s += std::pow(inner, 1.0 / order);
  }
  return detail::clamp_nonnegative(order / (order - 1.0) * std::log(s));
}

inline double f_information_unchecked(const JointModel& model, FGenerator g) {
  const auto py = output_probs(model);
  double d = 0.0;
  for (std::size_t x = 0; x < model.x_size(); ++x) {
    const double px = model.prior.probs[x];
    if (px <= 0.0) continue;
    for (std::size_t y = 0; y < model.y_size(); ++y) {
      d += f_perspective(g, px * model.channel(x, y), px * py[y]);
    }
  }
  return detail::clamp_nonnegative(d);
}

// -log sum_y min_{x in supp} p(y|x); infinite when the sum vanishes.
inline double maximal_cost_leakage_unchecked(const JointModel& model) {
  double s = 0.0;
  for (std::size_t y = 0; y < model.y_size(); ++y) {
    double m = kInf;
    for (std::size_t x = 0; x < model.x_size(); ++x) {
      if (model.prior.probs[x] > kSupportEpsilon) m = std::min(m, model.channel(x, y));
    }
    if (std::isfinite(m)) s += m;
  }
  if (s <= 0.0) return kInf;
  return detail::clamp_nonnegative(-std::log(s));
}

inline void require_numeric_x(const JointModel& model, const char* what) {
  if (!model.prior.alphabet.has_values()) {
    throw ValidationError("numeric_x", what, "X alphabet needs numeric values");
  }
}

struct VarianceDecomposition {
  double variance = 0.0;                     // V(X)
  double expected_posterior_variance = 0.0;  // E_Y[V(X|Y)]
  double variance_of_posterior_mean = 0.0;   // V(E[X|Y])
};

inline VarianceDecomposition variance_decomposition(const JointModel& model) {
  const auto& values = *model.prior.alphabet.values();
  const auto& px = model.prior.probs;
  double mean = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) mean += px[x] * values[x];
  VarianceDecomposition out;
  for (std::size_t x = 0; x < px.size(); ++x) {
    out.variance += px[x] * (values[x] - mean) * (values[x] - mean);
  }
  const auto post = posteriors_unchecked(model);
  for (std::size_t y = 0; y < post.size(); ++y) {
    if (!post.reachable(y)) continue;
    const auto& row = post.rows[y];
    double m = 0.0;
    for (std::size_t x = 0; x < row.size(); ++x) m += row[x] * values[x];
    double v = 0.0;
    for (std::size_t x = 0; x < row.size(); ++x) v += row[x] * (values[x] - m) * (values[x] - m);
    out.expected_posterior_variance += post.output_probs[y] * v;
    out.variance_of_posterior_mean += post.output_probs[y] * (m - mean) * (m - mean);
  }
  return out;
}

// V(X) - E_Y[V(X|Y)].
inline double mmse_leakage(const JointModel& model) {
  require_valid(model);
  require_numeric_x(model, "mmse_leakage");
  const auto d = variance_decomposition(model);
  return detail::clamp_nonnegative(d.variance - d.expected_posterior_variance);
}

// log(V(X) / E_Y[V(X|Y)]); zero when V(X) = 0, infinite when Y determines X.
inline double ms_leakage(const JointModel& model) {
  require_valid(model);
  require_numeric_x(model, "ms_leakage");
  const auto d = variance_decomposition(model);
  if (d.variance <= 0.0) return 0.0;
  if (d.expected_posterior_variance <= 1e-15 * d.variance) return kInf;
  return detail::clamp_nonnegative(std::log(d.variance / d.expected_posterior_variance));
}

struct CorrelationResult {
  double value = 0.0;
  bool degenerate = false;
};

// Hirschfeld-Gebelein-Renyi maximal correlation: the second singular value
// of Q(x,y) = p(x,y) / sqrt(p(x) p(y)) restricted to the supports.
inline CorrelationResult maximal_correlation_unchecked(const JointModel& model) {
  const auto py = output_probs(model);
  std::vector<std::size_t> xs, ys;
  for (std::size_t x = 0; x < model.x_size(); ++x) {
    if (model.prior.probs[x] > kSupportEpsilon) xs.push_back(x);
  }
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > kSupportEpsilon) ys.push_back(y);
  }
  if (xs.size() < 2 || ys.size() < 2) return {0.0, true};
  Eigen::MatrixXd q(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      q(i, j) = model.joint(xs[i], ys[j]) /
                std::sqrt(model.prior.probs[xs[i]] * py[ys[j]]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  const auto& s = svd.singularValues();
  return {std::clamp(s(1), 0.0, 1.0), false};
}

inline CorrelationResult maximal_correlation(const JointModel& model) {
  require_valid(model);
  return maximal_correlation_unchecked(model);
}

inline double variance_leakage_unchecked(const JointModel& model, VarianceFormula f) {
  const double rho = maximal_correlation_unchecked(model).value;
  const double base = f == VarianceFormula::paper ? rho : rho * rho;
  if (base >= 1.0) return kInf;
  return detail::clamp_nonnegative(-std::log1p(-base));
}

// ---- inner minimizations over q_Y ----------------------------------------

struct InnerObjective {
  enum class Kind { csiszar, f_leakage };
  Kind kind = Kind::csiszar;
  double order = 1.0;
  FGenerator generator = FGenerator::kl;

  static InnerObjective csiszar(double order) { return {Kind::csiszar, order}; }
  static InnerObjective f_leakage(FGenerator g) { return {Kind::f_leakage, 1.0, g}; }
};

struct InnerMinimum {
  std::vector<double> q;
  double value = 0.0;
  int iterations = 0;
  double gap = 0.0;
  bool converged = true;
  LeakageMethod method = LeakageMethod::inner_minimization;
};

namespace detail {

// sum_x p(x) D_alpha(p(.|x) || q).
inline double csiszar_objective(const JointModel& m, double order, std::span<const double> q) {
  double v = 0.0;
  for (std::size_t x = 0; x < m.x_size(); ++x) {
    const double px = m.prior.probs[x];
    if (px <= 0.0) continue;
    v += px * renyi_divergence(m.channel.row(x), q, order);
  }
  return v;
}

inline void csiszar_gradient(const JointModel& m, double order, std::span<const double> q,
                             std::span<double> g) {
  std::fill(g.begin(), g.end(), 0.0);
  const std::size_t ny = q.size();
  for (std::size_t x = 0; x < m.x_size(); ++x) {
    const double px = m.prior.probs[x];
    if (px <= 0.0) continue;
    auto row = m.channel.row(x);
    if (is_one(order)) {
      for (std::size_t y = 0; y < ny; ++y) {
        if (row[y] > 0.0) g[y] -= px * row[y] / q[y];
      }
      continue;
    }
    double z = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      if (row[y] > 0.0) z += std::pow(row[y], order) * std::pow(q[y], 1.0 - order);
    }
    for (std::size_t y = 0; y < ny; ++y) {
      if (row[y] > 0.0) g[y] -= px * std::pow(row[y], order) * std::pow(q[y], -order) / z;
    }
  }
}

// D_f(p_XY || p_X q_Y).
inline double f_leakage_objective(const JointModel& m, FGenerator gen, std::span<const double> q) {
  double v = 0.0;
  for (std::size_t x = 0; x < m.x_size(); ++x) {
    const double px = m.prior.probs[x];
    if (px <= 0.0) continue;
    auto row = m.channel.row(x);
    for (std::size_t y = 0; y < q.size(); ++y) v += px * f_perspective(gen, row[y], q[y]);
  }
  return v;
}

// d/dq(y) of q f(p/q) is f(t) - t f'(t) with t = p/q.
inline void f_leakage_gradient(const JointModel& m, FGenerator gen, std::span<const double> q,
                               std::span<double> g) {
  std::fill(g.begin(), g.end(), 0.0);
  for (std::size_t x = 0; x < m.x_size(); ++x) {
    const double px = m.prior.probs[x];
    if (px <= 0.0) continue;
    auto row = m.channel.row(x);
    for (std::size_t y = 0; y < q.size(); ++y) {
      const double t = row[y] / q[y];
      double h = 0.0;
      switch (gen) {
        case FGenerator::kl: h = -t; break;
        case FGenerator::chi_squared: h = 1.0 - t * t; break;
        case FGenerator::hellinger: h = 1.0 - std::sqrt(t); break;
        case FGenerator::total_variation: h = t > 1.0 ? -0.5 : 0.5; break;
      }
      g[y] += px * h;
    }
  }
}

// Total-variation f-leakage is separable and piecewise linear in q:
// min sum_y h_y(q_y), h_y(c) = 1/2 sum_x p(x)|p(y|x) - c|, sum q = 1. Greedy
// allocation of mass to the cheapest slope segment is exact for separable
// convex objectives under a single sum constraint.
inline InnerMinimum tv_leakage_exact(const JointModel& m) {
  struct Segment {
    double slope;
    double length;
    std::size_t y;
  };
  const std::size_t ny = m.y_size();
  std::vector<Segment> segments;
  for (std::size_t y = 0; y < ny; ++y) {
    std::vector<std::pair<double, double>> points;  // (p(y|x), p(x))
    for (std::size_t x = 0; x < m.x_size(); ++x) {
      if (m.prior.probs[x] > 0.0) points.emplace_back(m.channel(x, y), m.prior.probs[x]);
    }
    std::sort(points.begin(), points.end());
    double below = 0.0;  // mass with p(y|x) <= c
    double total = 0.0;
    for (auto& [v, w] : points) total += w;
    double c = 0.0;
    std::size_t k = 0;
    while (k < points.size() && points[k].first <= c) below += points[k++].second;
    while (c < 1.0) {
      const double next = k < points.size() ? std::min(points[k].first, 1.0) : 1.0;
      const double slope = 0.5 * (below - (total - below));
      if (next > c) segments.push_back({slope, next - c, y});
      c = next;
      while (k < points.size() && points[k].first <= c) below += points[k++].second;
      if (k >= points.size() && c >= 1.0) break;
    }
  }
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) { return a.slope < b.slope; });
  InnerMinimum out;
  out.q.assign(ny, 0.0);
  double remaining = 1.0;
  for (const auto& s : segments) {
    if (remaining <= 0.0) break;
    const double take = std::min(s.length, remaining);
    out.q[s.y] += take;
    remaining -= take;
  }
  out.value = clamp_nonnegative(f_leakage_objective(m, FGenerator::total_variation, out.q));
  out.method = LeakageMethod::closed_form;
  return out;
}

inline InnerMinimum grid_inner_minimum(const JointModel& m, const InnerObjective& obj,
                                       std::size_t resolution) {
  InnerMinimum best;
  best.value = kInf;
  best.method = LeakageMethod::grid;
  for (const auto& q : SimplexGrid(m.y_size(), resolution)) {
    const double v = obj.kind == InnerObjective::Kind::csiszar
                         ? csiszar_objective(m, obj.order, q)
                         : f_leakage_objective(m, obj.generator, q);
    if (v < best.value) {
      best.value = v;
      best.q = q;
    }
  }
  return best;
}

}  // namespace detail

inline InnerMinimum inner_min_unchecked(const JointModel& full, const InnerObjective& obj,
                                        const LeakageOptions& options = {}) {
  if (obj.kind == InnerObjective::Kind::f_leakage &&
      obj.generator == FGenerator::total_variation) {
    return detail::tv_leakage_exact(full);
  }
  // Outputs with p_Y(y) = 0 get q(y) = 0 at the optimum: the Renyi sums
  // ignore them, and for f-leakage shifting their mass to a used output
  // saves f(0) per unit while costing at most f(t) - t f'(t) <= f(0).
  // Solving on the support keeps the minimizer off the simplex boundary.
  const auto py = output_probs(full);
  std::vector<std::size_t> used;
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] > 0.0) used.push_back(y);
  }
  if (used.size() < py.size()) {
    std::vector<std::string> labels;
    for (std::size_t y : used) labels.push_back(full.channel.output.label(y));
    JointModel reduced{full.prior, Channel{full.channel.input, Alphabet(labels), {}}};
    for (std::size_t x = 0; x < full.x_size(); ++x) {
      for (std::size_t y : used) reduced.channel.entries.push_back(full.channel(x, y));
    }
    auto out = inner_min_unchecked(reduced, obj, options);
    std::vector<double> q(py.size(), 0.0);
    for (std::size_t k = 0; k < used.size(); ++k) q[used[k]] = out.q[k];
    out.q = std::move(q);
    return out;
  }
  const JointModel& model = full;
  auto value = [&](std::span<const double> q) {
    return obj.kind == InnerObjective::Kind::csiszar
               ? detail::csiszar_objective(model, obj.order, q)
               : detail::f_leakage_objective(model, obj.generator, q);
  };
  auto gradient = [&](std::span<const double> q, std::span<double> g) {
    if (obj.kind == InnerObjective::Kind::csiszar) {
      detail::csiszar_gradient(model, obj.order, q, g);
    } else {
      detail::f_leakage_gradient(model, obj.generator, q, g);
    }
  };
  auto res = minimize_on_simplex(value, gradient, output_probs(model), options.inner);
  InnerMinimum out{std::move(res.point), res.value, res.iterations, res.gap, res.converged,
                   LeakageMethod::inner_minimization};
  if (!out.converged && model.y_size() <= options.grid_fallback_max_outputs) {
    auto grid = detail::grid_inner_minimum(model, obj, options.grid_fallback_resolution);
    if (grid.value < out.value) {
      grid.iterations = out.iterations;
      grid.converged = true;
      out = std::move(grid);
    }
  }
  out.value = detail::clamp_nonnegative(out.value);
  return out;
}

// Minimizing q_Y and attained value of the Csiszar or f-leakage objective.
inline InnerMinimum inner_min_reference(const JointModel& model, const InnerObjective& obj,
                                        const LeakageOptions& options = {}) {
  require_valid(model);
  if (obj.kind == InnerObjective::Kind::csiszar && !(obj.order > 0.0 && std::isfinite(obj.order))) {
    throw ValidationError("order_range", "inner_min_reference",
                          "Csiszar order must lie in (0, inf)");
  }
  return inner_min_unchecked(model, obj, options);
}

// ---- dispatch ------------------------------------------------------------

// Value only; the model is assumed valid and the measure checked.
inline LeakageResult leakage_value_unchecked(const LeakageMeasure& m, const JointModel& model,
                                             const LeakageOptions& options = {}) {
  LeakageResult r;
  const double a = m.order.value_or(1.0);
  switch (m.kind) {
    case LeakageKind::shannon_mi:
      r.value = shannon_mi_unchecked(model);
      break;
    case LeakageKind::arimoto_mi:
    case LeakageKind::alpha_leakage:
      r.value = arimoto_mi_unchecked(model, a);
      break;
    case LeakageKind::sibson_mi:
      r.value = sibson_mi_unchecked(model, a);
      break;
    case LeakageKind::maximal_leakage:
      r.value = maximal_leakage_unchecked(model);
      break;
    case LeakageKind::csiszar_mi: {
      if (detail::is_one(a)) {
        r.value = shannon_mi_unchecked(model);
        break;
      }
      auto inner = inner_min_unchecked(model, InnerObjective::csiszar(a), options);
      r.value = inner.value;
      r.method = inner.method;
      r.iterations = inner.iterations;
      r.tolerance = inner.gap;
      r.converged = inner.converged;
      break;
    }
    case LeakageKind::f_information:
      r.value = f_information_unchecked(model, *m.generator);
      break;
    case LeakageKind::f_leakage: {
      // min_q D(p_XY || p_X q) = I(X; Y) + min_q D(p_Y || q) = I(X; Y).
      if (*m.generator == FGenerator::kl) {
        r.value = shannon_mi_unchecked(model);
        break;
      }
      auto inner = inner_min_unchecked(model, InnerObjective::f_leakage(*m.generator), options);
      r.value = inner.value;
      r.method = inner.method;
      r.iterations = inner.iterations;
      r.tolerance = inner.gap;
      r.converged = inner.converged;
      break;
    }
    case LeakageKind::maximal_alpha_leakage: {
      if (detail::is_one(a)) {
        r.value = shannon_mi_unchecked(model);
      } else if (std::isinf(a)) {
        r.value = maximal_leakage_unchecked(model);
      } else {
        // sup over input distributions on supp(p_X) of Sibson's MI.
        std::vector<std::size_t> supp = model.prior.support();
        JointModel tilted = model;
        double best = 0.0;
        for (const auto& w : SimplexGrid(supp.size(), options.maximal_alpha_resolution)) {
          std::fill(tilted.prior.probs.begin(), tilted.prior.probs.end(), 0.0);
          for (std::size_t i = 0; i < supp.size(); ++i) tilted.prior.probs[supp[i]] = w[i];
          best = std::max(best, sibson_mi_unchecked(tilted, a));
        }
        r.value = best;
        r.method = LeakageMethod::grid;
        r.grid_limited = true;
      }
      break;
    }
    case LeakageKind::mmse_leakage: {
      require_numeric_x(model, "mmse_leakage");
      const auto d = variance_decomposition(model);
      r.value = detail::clamp_nonnegative(d.variance - d.expected_posterior_variance);
      break;
    }
    case LeakageKind::ms_leakage: {
      require_numeric_x(model, "ms_leakage");
      const auto d = variance_decomposition(model);
      if (d.variance <= 0.0) {
        r.value = 0.0;
      } else if (d.expected_posterior_variance <= 1e-15 * d.variance) {
        r.value = kInf;
      } else {
        r.value = detail::clamp_nonnegative(std::log(d.variance / d.expected_posterior_variance));
      }
      break;
    }
    case LeakageKind::variance_leakage: {
      const auto rho = maximal_correlation_unchecked(model);
      r.degenerate = rho.degenerate;
      r.value = variance_leakage_unchecked(model, m.variance_formula);
      r.method = LeakageMethod::svd;
      break;
    }
    case LeakageKind::maximal_cost_leakage:
      r.value = maximal_cost_leakage_unchecked(model);
      break;
  }
  return r;
}

inline void require_valid(const LeakageMeasure& m) {
  if (auto d = validate_measure(m); !d.empty()) throw ValidationError(std::move(d));
}

// Scalar value, for optimizer inner loops.
inline double leakage_value(const LeakageMeasure& m, const JointModel& model,
                            const LeakageOptions& options = {}) {
  return leakage_value_unchecked(m, model, options).value;
}

// K(X): the measure at the identity channel. Any measure obeying the data
// processing inequality is bounded by it, since X - X - Y is Markov.
inline double upper_bound_K(const LeakageMeasure& m, const FiniteDistribution& prior,
                            const LeakageOptions& options = {}) {
  require_valid(m);
  require_valid(prior, "prior");
  JointModel id{prior, Channel::identity(prior.alphabet)};
  return leakage_value_unchecked(m, id, options).value;
}

inline LeakageResult evaluate_leakage(const LeakageMeasure& m, const JointModel& model,
                                      const LeakageOptions& options = {}) {
  require_valid(m);
  require_valid(model);
  if (requires_numeric_x(m.kind)) require_numeric_x(model, m.name().c_str());
  auto r = leakage_value_unchecked(m, model, options);
  if (!r.converged) {
    throw SolverError(m.name() + ": inner minimization did not converge (gap " +
                      format_number(r.tolerance) + ")");
  }
  r.upper_bound_K = upper_bound_K(m, model.prior, options);
  return r;
}

// Individual entry points that validate their input.
inline double shannon_mi(const JointModel& model) {
  require_valid(model);
  return shannon_mi_unchecked(model);
}
inline double arimoto_mi(const JointModel& model, double order) {
  return evaluate_leakage(LeakageMeasure::arimoto(order), model).value;
}
inline double sibson_mi(const JointModel& model, double order) {
  return evaluate_leakage(LeakageMeasure::sibson(order), model).value;
}
inline double maximal_leakage(const JointModel& model) {
  require_valid(model);
  return maximal_leakage_unchecked(model);
}
inline double maximal_cost_leakage(const JointModel& model) {
  require_valid(model);
  return maximal_cost_leakage_unchecked(model);
}
inline double variance_leakage(const JointModel& model,
                               VarianceFormula f = VarianceFormula::squared) {
  require_valid(model);
  return variance_leakage_unchecked(model, f);
}
inline LeakageResult maximal_alpha_leakage(const JointModel& model, double order,
                                           std::size_t resolution) {
  LeakageOptions options;
  options.maximal_alpha_resolution = resolution;
  return evaluate_leakage(LeakageMeasure::maximal_alpha(order), model, options);
}

}  // namespace voi
