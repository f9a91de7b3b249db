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
// Losses, Bayes decision rules and risks, and the average, logarithmic and
// maximal gains of observing Y.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voi/errors.hpp"
#include "voi/probability.hpp"
#include "voi/simplex.hpp"

namespace voi {

enum class LossKind { classical_matrix, squared, alpha_loss, custom_standard };

inline const char* to_string(LossKind k) {
  switch (k) {
    case LossKind::classical_matrix: return "classical_matrix";
    case LossKind::squared: return "squared";
    case LossKind::alpha_loss: return "alpha_loss";
    case LossKind::custom_standard: return "custom_standard";
  }
  return "?";
}

// l~(x, a, p): loss of action a under truth x when the rule picked a with
// probability p.
using StandardLossFn = std::function<double(std::size_t x, std::size_t a, double p)>;

struct LossSpec {
  LossKind kind = LossKind::classical_matrix;
  // classical_matrix: row-major |X| x |A| table.
  std::vector<std::vector<double>> matrix;
  // classical_matrix and custom_standard: the action labels. squared with
  // explicit action values: labels of those values.
  std::optional<Alphabet> actions;
  // squared: candidate action values. Absent means the action is any real
  // number, so the posterior mean is always available.
  std::optional<std::vector<double>> action_values;
  std::optional<double> order;
  StandardLossFn standard_fn;

  static LossSpec classical(std::vector<std::vector<double>> matrix, Alphabet actions) {
    LossSpec l;
    l.kind = LossKind::classical_matrix;
    l.matrix = std::move(matrix);
    l.actions = std::move(actions);
    return l;
  }

  // l(x, a) = 1 - 1{x = a} over A = X.
  static LossSpec zero_one(const Alphabet& x) {
    std::vector<std::vector<double>> m(x.size(), std::vector<double>(x.size(), 1.0));
    for (std::size_t i = 0; i < x.size(); ++i) m[i][i] = 0.0;
    return classical(std::move(m), Alphabet(x.labels()));
  }

  static LossSpec squared(std::optional<std::vector<double>> action_values = std::nullopt) {
    LossSpec l;
    l.kind = LossKind::squared;
    if (action_values) {
      l.actions = Alphabet::numeric(*action_values);
      l.action_values = std::move(action_values);
    }
    return l;
  }

  static LossSpec alpha(double order) {
    LossSpec l;
    l.kind = LossKind::alpha_loss;
    l.order = order;
    return l;
  }

  static LossSpec custom(Alphabet actions, StandardLossFn fn) {
    LossSpec l;
    l.kind = LossKind::custom_standard;
    l.actions = std::move(actions);
    l.standard_fn = std::move(fn);
    return l;
  }

  // Finite action set with a fixed loss table (possibly derived from X values).
  bool is_classical() const {
    return kind == LossKind::classical_matrix || (kind == LossKind::squared && action_values);
  }

  std::string name() const {
    std::string out = to_string(kind);
    if (order) out += "(" + format_number(*order) + ")";
    return out;
  }
};

inline Diagnostics validate_loss(const LossSpec& loss, const Alphabet& x) {
  Diagnostics out;
  switch (loss.kind) {
    case LossKind::classical_matrix: {
      if (!loss.actions) {
        out.push_back({"actions_required", "loss.actions", "matrix loss needs an action alphabet"});
        break;
      }
      auto d = validate_alphabet(*loss.actions, "loss.actions");
      out.insert(out.end(), d.begin(), d.end());
      if (loss.matrix.size() != x.size()) {
        out.push_back({"matrix_shape", "loss.matrix",
                       "expected " + std::to_string(x.size()) + " rows, got " +
                           std::to_string(loss.matrix.size())});
        break;
      }
      for (std::size_t i = 0; i < loss.matrix.size(); ++i) {
        const std::string loc = "loss.matrix[" + std::to_string(i) + "]";
        if (loss.matrix[i].size() != loss.actions->size()) {
          out.push_back({"matrix_shape", loc,
                         "expected " + std::to_string(loss.actions->size()) + " entries"});
          continue;
        }
        for (double v : loss.matrix[i]) {
          if (!std::isfinite(v) || v < 0.0) {
            out.push_back({"nonnegative_loss", loc, "loss entries must be finite and >= 0"});
            break;
          }
        }
      }
      break;
    }
    case LossKind::squared:
      if (!x.has_values()) {
        out.push_back({"numeric_x", "loss", "squared loss needs numeric X values"});
      }
      if (loss.action_values) {
        if (loss.action_values->empty()) {
          out.push_back({"actions_required", "loss.actions", "empty action value list"});
        }
        for (double v : *loss.action_values) {
          if (!std::isfinite(v)) {
            out.push_back({"finite_values", "loss.actions", "action values must be finite"});
            break;
          }
        }
      }
      break;
    case LossKind::alpha_loss:
      if (!loss.order || !(*loss.order > 0.0)) {
        out.push_back({"order_range", "loss.order", "alpha-loss order must lie in (0, inf]"});
      }
      break;
    case LossKind::custom_standard:
      if (!loss.actions || loss.actions->empty()) {
        out.push_back({"actions_required", "loss.actions", "custom loss needs actions"});
      }
      if (!loss.standard_fn) {
        out.push_back({"standard_fn", "loss", "custom loss needs a loss function"});
      }
      break;
  }
  return out;
}

inline void require_valid(const LossSpec& loss, const Alphabet& x) {
  if (auto d = validate_loss(loss, x); !d.empty()) throw ValidationError(std::move(d));
}

// The action alphabet; alpha-loss guesses X itself, as does squared loss
// without explicit actions (one action per X value).
inline Alphabet action_alphabet(const LossSpec& loss, const Alphabet& x) {
  if (loss.actions) return *loss.actions;
  return Alphabet(x.labels(), x.values());
}

// Dense |X| x |A| loss table for classical losses, used by the optimizers.
// Squared loss without explicit actions uses the X values as its actions.
struct LossMatrix {
  Alphabet actions;
  std::size_t nx = 0;
  std::size_t na = 0;
  std::vector<double> entries;

  double operator()(std::size_t x, std::size_t a) const { return entries[x * na + a]; }
};

inline LossMatrix loss_matrix(const LossSpec& loss, const Alphabet& x) {
  require_valid(loss, x);
  LossMatrix m;
  m.nx = x.size();
  if (loss.kind == LossKind::classical_matrix) {
    m.actions = *loss.actions;
    m.na = m.actions.size();
    for (const auto& row : loss.matrix) m.entries.insert(m.entries.end(), row.begin(), row.end());
    return m;
  }
  if (loss.kind == LossKind::squared) {
    const auto values = loss.action_values ? *loss.action_values : *x.values();
    m.actions = action_alphabet(loss, x);
    m.na = values.size();
    for (std::size_t i = 0; i < m.nx; ++i) {
      for (double a : values) m.entries.push_back((x.value(i) - a) * (x.value(i) - a));
    }
    return m;
  }
  throw ValidationError("classical_loss", "loss",
                        loss.name() + " is not a classical loss; a loss table is required");
}

// E[l(X, A)] for X ~ prior and A ~ channel(.|X).
inline double expected_loss(const LossMatrix& m, std::span<const double> prior,
                            const Channel& channel) {
  double r = 0.0;
  for (std::size_t x = 0; x < m.nx; ++x) {
    if (prior[x] <= 0.0) continue;
    double row = 0.0;
    for (std::size_t a = 0; a < m.na; ++a) row += channel(x, a) * m(x, a);
    r += prior[x] * row;
  }
  return r;
}

struct PosteriorRisk {
  double value = 0.0;
  // Optimal rule row over the action alphabet. Empty for squared loss with
  // continuous actions, where `action_value` holds the posterior mean.
  std::vector<double> rule_row;
  std::optional<std::size_t> action;
  std::optional<double> action_value;
  bool converged = true;
};

namespace detail {

inline std::size_t argmin_lowest(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return best;
}

inline PosteriorRisk deterministic_risk(const LossMatrix& m, std::span<const double> posterior) {
  std::vector<double> risk(m.na, 0.0);
  for (std::size_t a = 0; a < m.na; ++a) {
    for (std::size_t x = 0; x < m.nx; ++x) {
      if (posterior[x] > 0.0) risk[a] += posterior[x] * m(x, a);
    }
  }
  PosteriorRisk out;
  const std::size_t a = argmin_lowest(risk);
  out.value = risk[a];
  out.action = a;
  out.rule_row.assign(m.na, 0.0);
  out.rule_row[a] = 1.0;
  return out;
}

// Expected loss sum_x p(x) sum_a q(a) l~(x, a, q(a)) of a randomized rule row.
inline double standard_rule_risk(const StandardLossFn& fn, std::span<const double> posterior,
                                 std::span<const double> q) {
  double r = 0.0;
  for (std::size_t x = 0; x < posterior.size(); ++x) {
    if (posterior[x] <= 0.0) continue;
    double inner = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q[a] > 0.0) inner += q[a] * fn(x, a, q[a]);
    }
    r += posterior[x] * inner;
  }
  return r;
}

struct CustomRiskOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

inline PosteriorRisk custom_risk(const StandardLossFn& fn, std::size_t na,
                                 std::span<const double> posterior,
                                 const CustomRiskOptions& options = {}) {
  auto value = [&](std::span<const double> q) { return standard_rule_risk(fn, posterior, q); };
  // The risk is separable in q(a); differentiate each term numerically.
  auto gradient = [&](std::span<const double> q, std::span<double> g) {
    for (std::size_t a = 0; a < q.size(); ++a) {
      auto term = [&](double t) {
        if (t <= 0.0) return 0.0;
        double s = 0.0;
        for (std::size_t x = 0; x < posterior.size(); ++x) {
          if (posterior[x] > 0.0) s += posterior[x] * t * fn(x, a, t);
        }
        return s;
      };
      const double h = 1e-7 * std::max(q[a], 1e-6);
      g[a] = (term(q[a] + h) - term(q[a] - h)) / (2.0 * h);
    }
  };
  SimplexMinimizerOptions o;
  o.gap_tolerance = options.tolerance;
  o.max_iterations = options.max_iterations;
  auto res = minimize_on_simplex(value, gradient,
                                 std::vector<double>(na, 1.0 / static_cast<double>(na)), o);
  PosteriorRisk out;
  out.value = res.value;
  out.rule_row = res.point;
  out.converged = res.converged;
  // Vertices are not reachable by multiplicative updates; compare explicitly.
  std::vector<double> vertex(na, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    vertex[a] = 1.0;
    const double v = value(vertex);
    if (v <= out.value) {
      out.value = v;
      out.rule_row = vertex;
      out.action = a;
      out.converged = true;
    }
    vertex[a] = 0.0;
  }
  return out;
}

}  // namespace detail

// (alpha/(alpha-1)) (1 - ||p||_alpha), the minimal alpha-loss risk; H(p) at
// alpha = 1 and 1 - max p at alpha = inf.
inline PosteriorRisk alpha_loss_posterior_risk(double order, std::span<const double> p) {
  PosteriorRisk out;
  const std::size_t n = p.size();
  if (std::isinf(order)) {
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(p.begin(), p.end()) - p.begin());
    out.value = 1.0 - p[best];
    out.action = best;
    out.rule_row.assign(n, 0.0);
    out.rule_row[best] = 1.0;
    return out;
  }
  if (order == 1.0) {
    double h = 0.0;
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
    }
    out.value = h;
    out.rule_row.assign(p.begin(), p.end());
    return out;
  }
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s += std::pow(v, order);
  }
  out.value = order / (order - 1.0) * (1.0 - std::pow(s, 1.0 / order));
  out.rule_row.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.rule_row[i] = p[i] > 0.0 ? std::pow(p[i], order) / s : 0.0;
  return out;
}

// Risk of an arbitrary randomized rule row under a posterior.
inline double rule_row_risk(const LossSpec& loss, const Alphabet& x,
                            std::span<const double> posterior, std::span<const double> row) {
  switch (loss.kind) {
    case LossKind::classical_matrix:
    case LossKind::squared: {
      const auto m = loss_matrix(loss, x);
      double r = 0.0;
      for (std::size_t a = 0; a < m.na; ++a) {
        for (std::size_t i = 0; i < m.nx; ++i) r += row[a] * posterior[i] * m(i, a);
      }
      return r;
    }
    case LossKind::alpha_loss: {
      const double al = *loss.order;
      double r = 0.0;
      for (std::size_t i = 0; i < posterior.size(); ++i) {
        if (posterior[i] <= 0.0) continue;
        if (al == 1.0) {
          r += row[i] > 0.0 ? -posterior[i] * std::log(row[i]) : kInf;
        } else if (std::isinf(al)) {
          r += posterior[i] * (1.0 - row[i]);
        } else {
          r += posterior[i] * al / (al - 1.0) * (1.0 - std::pow(row[i], (al - 1.0) / al));
        }
      }
      return r;
    }
    case LossKind::custom_standard:
      return detail::standard_rule_risk(loss.standard_fn, posterior, row);
  }
  return 0.0;
}

// A loss bound to an X alphabet, with its table precomputed when classical.
// Ties go to the lowest action index.
class RiskEvaluator {
 public:
  RiskEvaluator(LossSpec loss, Alphabet x) : loss_(std::move(loss)), x_(std::move(x)) {
    require_valid(loss_, x_);
    if (loss_.is_classical()) table_ = loss_matrix(loss_, x_);
  }

  const LossSpec& loss() const { return loss_; }
  const Alphabet& x() const { return x_; }

  PosteriorRisk posterior_risk(std::span<const double> posterior) const {
    if (table_) return detail::deterministic_risk(*table_, posterior);
    switch (loss_.kind) {
      case LossKind::squared: {
        double mean = 0.0;
        for (std::size_t i = 0; i < posterior.size(); ++i) mean += posterior[i] * x_.value(i);
        double var = 0.0;
        for (std::size_t i = 0; i < posterior.size(); ++i) {
          var += posterior[i] * (x_.value(i) - mean) * (x_.value(i) - mean);
        }
        PosteriorRisk out;
        out.value = var;
        out.action_value = mean;
        return out;
      }
      case LossKind::alpha_loss:
        return alpha_loss_posterior_risk(*loss_.order, posterior);
      case LossKind::custom_standard: {
        auto r = detail::custom_risk(loss_.standard_fn, loss_.actions->size(), posterior);
        if (!r.converged) throw SolverError("custom loss: inner minimization did not converge");
        return r;
      }
      case LossKind::classical_matrix:
        break;
    }
    return {};
  }

  double posterior_value(std::span<const double> posterior) const {
    if (table_) {
      const auto& m = *table_;
      double best = kInf;
      for (std::size_t a = 0; a < m.na; ++a) {
        double r = 0.0;
        for (std::size_t i = 0; i < m.nx; ++i) {
          if (posterior[i] > 0.0) r += posterior[i] * m(i, a);
        }
        best = std::min(best, r);
      }
      return best;
    }
    return posterior_risk(posterior).value;
  }

  double prior_risk(std::span<const double> prior) const { return posterior_value(prior); }

  double bayes_risk(const JointModel& model) const {
    const auto post = posteriors_unchecked(model);
    double r = 0.0;
    for (std::size_t y = 0; y < post.size(); ++y) {
      if (post.reachable(y)) r += post.output_probs[y] * posterior_value(post.rows[y]);
    }
    return r;
  }

  // Smallest posterior risk over reachable outputs.
  double best_case_risk(const JointModel& model) const {
    const auto post = posteriors_unchecked(model);
    double best = kInf;
    for (std::size_t y = 0; y < post.size(); ++y) {
      if (post.reachable(y)) best = std::min(best, posterior_value(post.rows[y]));
    }
    return best;
  }

  double average_gain(const JointModel& model) const {
    const double g = prior_risk(model.prior.probs) - bayes_risk(model);
    return (g < 0.0 && g > -1e-10) ? 0.0 : g;
  }

  double maximal_gain(const JointModel& model) const {
    const double g = prior_risk(model.prior.probs) - best_case_risk(model);
    return (g < 0.0 && g > -1e-10) ? 0.0 : g;
  }

 private:
  LossSpec loss_;
  Alphabet x_;
  std::optional<LossMatrix> table_;
};

inline PosteriorRisk min_posterior_risk_unchecked(const LossSpec& loss, const Alphabet& x,
                                                  std::span<const double> posterior) {
  return RiskEvaluator(loss, x).posterior_risk(posterior);
}

inline PosteriorRisk min_posterior_risk(const LossSpec& loss, const FiniteDistribution& posterior) {
  require_valid(posterior, "posterior");
  require_valid(loss, posterior.alphabet);
  return min_posterior_risk_unchecked(loss, posterior.alphabet, posterior.probs);
}

// inf over single actions of E_X[l(X, a)].
inline double prior_bayes_risk(const LossSpec& loss, const FiniteDistribution& prior) {
  return min_posterior_risk(loss, prior).value;
}

inline double min_bayes_risk_unchecked(const LossSpec& loss, const JointModel& model) {
  return RiskEvaluator(loss, model.prior.alphabet).bayes_risk(model);
}

// E_Y of the minimal posterior risk.
inline double min_bayes_risk(const LossSpec& loss, const JointModel& model) {
  require_valid(model);
  require_valid(loss, model.prior.alphabet);
  return min_bayes_risk_unchecked(loss, model);
}

// Bayes rule per output symbol. Unreachable outputs are marked and carry the
// prior-optimal row.
struct DecisionRule {
  Alphabet y;
  Alphabet actions;
  std::vector<PosteriorRisk> rows;
  std::vector<bool> reachable;

  bool deterministic() const {
    return std::all_of(rows.begin(), rows.end(), [](const PosteriorRisk& r) {
      return r.action.has_value() || r.action_value.has_value();
    });
  }
};

inline DecisionRule bayes_rule(const LossSpec& loss, const JointModel& model) {
  require_valid(model);
  require_valid(loss, model.prior.alphabet);
  const auto post = posteriors_unchecked(model);
  const auto fallback =
      min_posterior_risk_unchecked(loss, model.prior.alphabet, model.prior.probs);
  DecisionRule rule{model.channel.output, action_alphabet(loss, model.prior.alphabet), {}, {}};
  for (std::size_t y = 0; y < post.size(); ++y) {
    rule.reachable.push_back(post.reachable(y));
    rule.rows.push_back(post.reachable(y)
                            ? min_posterior_risk_unchecked(loss, model.prior.alphabet, post.rows[y])
                            : fallback);
  }
  return rule;
}

struct GainValue {
  double value = 0.0;
  bool infinite = false;
};

inline double average_gain_unchecked(const LossSpec& loss, const JointModel& model) {
  return RiskEvaluator(loss, model.prior.alphabet).average_gain(model);
}

// Prior Bayes risk minus the Bayes risk after observing Y.
inline double average_gain(const LossSpec& loss, const JointModel& model) {
  require_valid(model);
  require_valid(loss, model.prior.alphabet);
  return average_gain_unchecked(loss, model);
}

inline GainValue logarithmic_gain_unchecked(const LossSpec& loss, const JointModel& model) {
  const RiskEvaluator eval(loss, model.prior.alphabet);
  const double prior = eval.prior_risk(model.prior.probs);
  if (prior <= 0.0) return {0.0, false};
  const double post = eval.bayes_risk(model);
  if (post <= 1e-15 * prior) return {kInf, true};
  const double g = std::log(prior / post);
  return {(g < 0.0 && g > -1e-10) ? 0.0 : g, false};
}

// log(prior Bayes risk / Bayes risk after Y); infinite when Y makes the
// risk vanish.
inline GainValue logarithmic_gain(const LossSpec& loss, const JointModel& model) {
  require_valid(model);
  require_valid(loss, model.prior.alphabet);
  return logarithmic_gain_unchecked(loss, model);
}

inline double maximal_gain_unchecked(const LossSpec& loss, const JointModel& model) {
  return RiskEvaluator(loss, model.prior.alphabet).maximal_gain(model);
}

// Prior Bayes risk minus the smallest posterior Bayes risk over reachable y.
inline double maximal_gain(const LossSpec& loss, const JointModel& model) {
  require_valid(model);
  require_valid(loss, model.prior.alphabet);
  return maximal_gain_unchecked(loss, model);
}

}  // namespace voi
