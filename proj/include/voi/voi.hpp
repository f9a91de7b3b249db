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
// Value of information under a leakage budget: the fundamental limit V(R),
// the alphabet-constrained V(R; Y), the standard-loss upper bound, the
// logarithmic variant, curves and numeric checks of their structure.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voi/decision.hpp"
#include "voi/errors.hpp"
#include "voi/leakage.hpp"
#include "voi/optimizers.hpp"
#include "voi/probability.hpp"
#include "voi/sufficiency.hpp"

namespace voi {

struct VoiOptions {
  // Grid resolution; the per-shape default when absent.
  std::optional<std::size_t> resolution;
  double merge_epsilon = kDefaultMergeEpsilon;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool refine = true;
  // Polish grid solutions of convex kinds with projected descent.
  bool use_descent = true;
  bool attach_mechanism = true;
};

struct VoiPoint {
  double budget = 0.0;
  double u_value = 0.0;
  double v_value = 0.0;
  double prior_risk = 0.0;
  SolveReport solver;
  std::optional<StatisticMap> statistic;
  std::optional<Channel> achieving_mechanism;

  // R minus the leakage at the solution.
  double feasible_margin() const { return budget - solver.leakage_at_solution; }
};

struct CurveChecks {
  bool monotone = true;
  double worst_monotone_margin = 0.0;
  // Checked only when the measure is convex in the channel.
  std::optional<bool> concave;
  double worst_second_difference = 0.0;
  // Checked only when the measure is quasi-convex but not convex.
  std::optional<bool> quasi_concave;
  double worst_quasi_margin = 0.0;
};

struct VoiCurve {
  std::vector<VoiPoint> points;
  std::string loss_name;
  std::string measure_name;
  std::string units;
  CurveChecks checks;
};

// inf_a E[l(X, a)], the risk without observation.
inline double prior_risk(const LossSpec& loss, const FiniteDistribution& prior) {
  return RiskEvaluator(loss, prior.alphabet).prior_risk(prior.probs);
}

// The finite-action classical form of a loss: squared loss without an action
// set becomes the table over the X values, which is what the optimizers use.
inline LossSpec as_classical(const LossSpec& loss, const Alphabet& x) {
  const auto m = loss_matrix(loss, x);
  std::vector<std::vector<double>> rows(m.nx, std::vector<double>(m.na));
  for (std::size_t i = 0; i < m.nx; ++i) {
    for (std::size_t a = 0; a < m.na; ++a) rows[i][a] = m(i, a);
  }
  return LossSpec::classical(rows, m.actions);
}

inline std::string measure_units(const LeakageMeasure& m) {
  switch (m.kind) {
    case LeakageKind::mmse_leakage:
      return "squared value units";
    case LeakageKind::variance_leakage:
      return "dimensionless";
    case LeakageKind::f_information:
    case LeakageKind::f_leakage:
      return m.generator == FGenerator::kl ? "nats" : "divergence units";
    default:
      return "nats";
  }
}

namespace detail {

inline void check_budget_range(double budget, double k, const char* where) {
  if (!(budget >= 0.0) || budget > k * (1.0 + 1e-9) + 1e-12) {
    throw ValidationError("budget_range", where,
                          "budget " + format_number(budget) + " outside [0, K(X)] = [0, " +
                              format_number(k) + "]");
  }
}

inline std::size_t resolution_for(const VoiOptions& o, std::size_t nx, std::size_t na) {
  return o.resolution ? *o.resolution : default_resolution(nx, na);
}

// Solves U(R) with the best engine for the constraint.
inline SolveReport solve_u(const LossSpec& loss, const FiniteDistribution& prior,
                           const PrivacyConstraint& c, double budget, const VoiOptions& o) {
  const auto m = loss_matrix(loss, prior.alphabet);
  if (c.measure && c.measure->kind == LeakageKind::shannon_mi) {
    return lagrangian_solve(loss, prior, budget);
  }
  GridOptions g;
  g.cap = o.cap;
  g.refine = o.refine;
  auto best = grid_oracle(loss, prior, c, budget, resolution_for(o, m.nx, m.na), g);
  if (c.convex && o.use_descent && best.feasible) {
    DescentOptions d;
    d.start = best.channel;
    auto polished = projected_descent(loss, prior, c, budget, d);
    if (polished.feasible && polished.objective < best.objective) {
      polished.resolution = best.resolution;
      polished.slack = 1e-6;
      best = std::move(polished);
    }
  }
  return best;
}

}  // namespace detail

// V(R) = inf_a E[l(X, a)] - U(R), U(R) the constrained minimum of E[l(X, A)]
// over channels X -> A. Attaches the disclosure channel built from the
// posterior statistic of the minimizer.
inline VoiPoint fundamental_voi(const LossSpec& loss, const FiniteDistribution& prior,
                                const PrivacyConstraint& constraint, double budget,
                                const VoiOptions& options = {}) {
  require_valid(prior, "prior");
  detail::check_budget_range(budget, constraint.upper_bound, "fundamental_voi");
  VoiPoint p;
  p.budget = budget;
  p.solver = detail::solve_u(loss, prior, constraint, budget, options);
  if (!p.solver.feasible) {
    throw SolverError("no feasible channel found for budget " + format_number(budget));
  }
  const auto m = loss_matrix(loss, prior.alphabet);
  p.prior_risk = expected_loss(m, prior.probs, anchor_channel(m, prior));
  p.u_value = p.solver.objective;
  p.v_value = p.prior_risk - p.u_value;
  if (options.attach_mechanism) {
    p.statistic = posterior_statistic(prior, p.solver.channel, options.merge_epsilon);
    p.achieving_mechanism = build_disclosure_channel(prior, p.solver.channel, *p.statistic);
  }
  return p;
}

inline VoiPoint fundamental_voi(const LossSpec& loss, const FiniteDistribution& prior,
                                const LeakageMeasure& measure, double budget,
                                const VoiOptions& options = {}) {
  return fundamental_voi(loss, prior, leakage_constraint(measure, prior), budget, options);
}

// V(R; Y) = sup over channels X -> Y with leakage <= R of the average gain,
// by exhaustive search over grid channels, refined by bisecting toward the
// budget along segments to higher-gain infeasible grid channels.
inline VoiPoint alphabet_constrained_voi(const LossSpec& loss, const FiniteDistribution& prior,
                                         const PrivacyConstraint& constraint, double budget,
                                         const Alphabet& y, std::size_t resolution,
                                         const VoiOptions& options = {}) {
  require_valid(prior, "prior");
  if (!(budget >= 0.0)) throw ValidationError("budget_range", "alphabet_constrained_voi", "budget must be >= 0");
  const RiskEvaluator eval(loss, prior.alphabet);
  const std::size_t nx = prior.alphabet.size(), ny = y.size();
  const SimplexGrid row_grid(ny, resolution, options.cap);
  const std::uint64_t count = saturating_pow(row_grid.size(), nx);
  if (count > options.cap) {
    std::size_t r = resolution;
    while (r > 1 && saturating_pow(simplex_grid_count(ny, r), nx) > options.cap) --r;
    throw CapExceeded(count, options.cap, "largest resolution within the cap is " + std::to_string(r));
  }
  const auto rows = row_grid.materialize();
  const std::size_t g = rows.size();
  JointModel work{prior, Channel{prior.alphabet, y, std::vector<double>(nx * ny)}};
  auto load = [&](std::uint64_t index) {
    for (std::size_t x = nx; x-- > 0;) {
      const auto& row = rows[static_cast<std::size_t>(index % g)];
      std::copy(row.begin(), row.end(), work.channel.entries.begin() + static_cast<std::ptrdiff_t>(x * ny));
      index /= g;
    }
  };
  std::vector<std::pair<double, std::uint64_t>> order(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    load(i);
    order[static_cast<std::size_t>(i)] = {-eval.average_gain(work), i};
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::optional<std::size_t> found;
  int evaluations = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    load(order[k].second);
    ++evaluations;
    if (constraint.evaluate(work) <= budget + kFeasibilityTolerance) {
      found = k;
      break;
    }
  }
  if (!found) throw SolverError("no feasible grid channel for budget " + format_number(budget));
  load(order[*found].second);
  Channel best = work.channel;
  double best_gain = -order[*found].first;
  if (options.refine && *found > 0) {
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < std::min<std::size_t>(4, *found); ++k) candidates.push_back(k);
    for (std::size_t k = *found > 8 ? *found - 8 : 0; k < *found; ++k) {
      if (std::find(candidates.begin(), candidates.end(), k) == candidates.end()) candidates.push_back(k);
    }
    const Channel base = best;
    for (std::size_t k : candidates) {
      load(order[k].second);
      const Channel other = work.channel;
      const double t = mix_to_budget(prior, base, other, constraint, budget);
      if (t <= 0.0) continue;
      work.channel = detail::mix(base, other, t);
      const double gain = eval.average_gain(work);
      if (gain > best_gain && constraint.evaluate(work) <= budget + kFeasibilityTolerance) {
        best_gain = gain;
        best = work.channel;
      }
    }
  }
  VoiPoint p;
  p.budget = budget;
  p.prior_risk = eval.prior_risk(prior.probs);
  p.v_value = best_gain;
  p.u_value = p.prior_risk - best_gain;
  p.solver.leakage_at_solution = constraint.evaluate(JointModel{prior, best});
  p.solver.channel = std::move(best);
  p.solver.objective = p.u_value;
  p.solver.budget = budget;
  p.solver.method = SolveMethod::grid;
  p.solver.feasible = true;
  p.solver.iterations = evaluations;
  p.solver.resolution = resolution;
  p.solver.slack = 2.0 * p.prior_risk / static_cast<double>(resolution);
  p.achieving_mechanism = p.solver.channel;
  return p;
}

inline VoiPoint alphabet_constrained_voi(const LossSpec& loss, const FiniteDistribution& prior,
                                         const LeakageMeasure& measure, double budget,
                                         const Alphabet& y, std::size_t resolution,
                                         const VoiOptions& options = {}) {
  return alphabet_constrained_voi(loss, prior, leakage_constraint(measure, prior), budget, y,
                                  resolution, options);
}

// Upper bound for standard losses: the prior term minus the joint infimum of
// E[L(X, delta(Y, .))] over (p_{Y|X}, delta) with leakage of the composed
// channel X -> A at most R. Nested grid over channels and randomized rules;
// each outer channel also tries its exact Bayes rule.
inline double standard_loss_upper_bound(const LossSpec& loss, const FiniteDistribution& prior,
                                        const PrivacyConstraint& constraint, double budget,
                                        const Alphabet& y, std::size_t resolution,
                                        const VoiOptions& options = {}) {
  require_valid(prior, "prior");
  if (!(budget >= 0.0)) throw ValidationError("budget_range", "standard_loss_upper_bound", "budget must be >= 0");
  const RiskEvaluator eval(loss, prior.alphabet);
  const Alphabet actions = action_alphabet(loss, prior.alphabet);
  const std::size_t nx = prior.alphabet.size(), ny = y.size(), na = actions.size();
  const SimplexGrid y_grid(ny, resolution, options.cap);
  const SimplexGrid a_grid(na, resolution, options.cap);
  const std::uint64_t outer = saturating_pow(y_grid.size(), nx);
  const std::uint64_t inner = saturating_pow(a_grid.size(), ny);
  const std::uint64_t total = outer > options.cap / std::max<std::uint64_t>(inner, 1) ? options.cap + 1 : outer * inner;
  if (total > options.cap) {
    std::size_t r = resolution;
    while (r > 1 && saturating_pow(simplex_grid_count(ny, r), nx) * saturating_pow(simplex_grid_count(na, r), ny) > options.cap) --r;
    throw CapExceeded(total, options.cap, "largest resolution within the cap is " + std::to_string(r));
  }
  const auto y_rows = y_grid.materialize();
  const auto a_rows = a_grid.materialize();
  Channel w{prior.alphabet, y, std::vector<double>(nx * ny)};
  Channel rule{y, actions, std::vector<double>(ny * na)};
  const double prior_term = eval.prior_risk(prior.probs);
  double best = kInf;
  auto composed_leak = [&]() {
    return constraint.evaluate(JointModel{prior, compose_channels(w, rule)});
  };
  auto rule_risk = [&](const Posteriors& post) {
    double r = 0.0;
    for (std::size_t k = 0; k < ny; ++k) {
      if (!post.reachable(k)) continue;
      r += post.output_probs[k] * rule_row_risk(loss, prior.alphabet, post.rows[k], rule.row(k));
    }
    return r;
  };
  for (std::uint64_t i = 0; i < outer; ++i) {
    std::uint64_t index = i;
    for (std::size_t x = nx; x-- > 0;) {
      const auto& row = y_rows[static_cast<std::size_t>(index % y_rows.size())];
      std::copy(row.begin(), row.end(), w.entries.begin() + static_cast<std::ptrdiff_t>(x * ny));
      index /= y_rows.size();
    }
    const auto post = posteriors_unchecked(JointModel{prior, w});
    // Exact Bayes rule: the unconstrained inner minimum for this channel.
    double bayes = 0.0;
    for (std::size_t k = 0; k < ny; ++k) {
      const auto pr = eval.posterior_risk(post.reachable(k) ? std::span<const double>(post.rows[k])
                                                            : std::span<const double>(prior.probs));
      std::vector<double> row = pr.rule_row;
      if (row.empty()) {
        row.assign(na, 0.0);
        row[pr.action.value_or(0)] = 1.0;
      }
      std::copy(row.begin(), row.end(), rule.entries.begin() + static_cast<std::ptrdiff_t>(k * na));
      if (post.reachable(k)) bayes += post.output_probs[k] * pr.value;
    }
    if (bayes >= best) continue;
    if (composed_leak() <= budget + kFeasibilityTolerance) {
      best = bayes;
      continue;
    }
    for (std::uint64_t j = 0; j < inner; ++j) {
      std::uint64_t jdx = j;
      for (std::size_t k = ny; k-- > 0;) {
        const auto& row = a_rows[static_cast<std::size_t>(jdx % a_rows.size())];
        std::copy(row.begin(), row.end(), rule.entries.begin() + static_cast<std::ptrdiff_t>(k * na));
        jdx /= a_rows.size();
      }
      const double r = rule_risk(post);
      if (r >= best) continue;
      if (composed_leak() <= budget + kFeasibilityTolerance) best = r;
    }
  }
  return prior_term - best;
}

inline double standard_loss_upper_bound(const LossSpec& loss, const FiniteDistribution& prior,
                                        const LeakageMeasure& measure, double budget,
                                        const Alphabet& y, std::size_t resolution,
                                        const VoiOptions& options = {}) {
  return standard_loss_upper_bound(loss, prior, leakage_constraint(measure, prior), budget, y,
                                   resolution, options);
}

struct LogVoi {
  double value = 0.0;
  bool infinite = false;
  VoiPoint point;
};

// log inf_a E[l(X, a)] - log U(R), from the same minimizer as V(R).
inline LogVoi logarithmic_voi(const LossSpec& loss, const FiniteDistribution& prior,
                              const LeakageMeasure& measure, double budget,
                              const VoiOptions& options = {}) {
  LogVoi out;
  out.point = fundamental_voi(loss, prior, measure, budget, options);
  if (!(out.point.prior_risk > 0.0)) {
    throw ValidationError("prior_risk_positive", "logarithmic_voi",
                          "the prior Bayes risk is 0, so the logarithmic value is undefined");
  }
  if (out.point.u_value <= 1e-15 * out.point.prior_risk) {
    out.infinite = true;
    out.value = kInf;
    return out;
  }
  out.value = std::log(out.point.prior_risk) - std::log(out.point.u_value);
  return out;
}

// Monotonicity, second-difference concavity (convex kinds) and triple
// quasi-concavity (quasi-convex kinds) of a curve.
inline CurveChecks check_curve(const std::vector<VoiPoint>& points, bool convex, bool quasi_convex,
                               double tolerance = 1e-6) {
  CurveChecks c;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double drop = points[i - 1].v_value - points[i].v_value;
    c.worst_monotone_margin = std::max(c.worst_monotone_margin, drop);
  }
  c.monotone = c.worst_monotone_margin <= 1e-8 + tolerance;
  if (convex) {
    c.concave = true;
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
      const double r0 = points[i - 1].budget, r1 = points[i].budget, r2 = points[i + 1].budget;
      if (!(r2 > r0)) continue;
      const double t = (r1 - r0) / (r2 - r0);
      const double chord = (1 - t) * points[i - 1].v_value + t * points[i + 1].v_value;
      c.worst_second_difference = std::max(c.worst_second_difference, chord - points[i].v_value);
    }
    c.concave = c.worst_second_difference <= tolerance;
  } else if (quasi_convex) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        for (std::size_t k = j + 1; k < points.size(); ++k) {
          const double low = std::min(points[i].v_value, points[k].v_value);
          c.worst_quasi_margin = std::max(c.worst_quasi_margin, low - points[j].v_value);
        }
      }
    }
    c.quasi_concave = c.worst_quasi_margin <= tolerance;
  }
  return c;
}

inline VoiCurve voi_curve(const LossSpec& loss, const FiniteDistribution& prior,
                          const LeakageMeasure& measure, std::vector<double> r_grid,
                          const VoiOptions& options = {}) {
  std::sort(r_grid.begin(), r_grid.end());
  const auto constraint = leakage_constraint(measure, prior);
  VoiCurve curve;
  curve.loss_name = loss.name();
  curve.measure_name = measure.name();
  curve.units = measure_units(measure);
  double tolerance = 1e-6;
  for (double r : r_grid) {
    curve.points.push_back(fundamental_voi(loss, prior, constraint, r, options));
    tolerance = std::max(tolerance, curve.points.back().solver.slack);
  }
  curve.checks = check_curve(curve.points, constraint.convex, constraint.quasi_convex, tolerance);
  return curve;
}

// Evenly spaced budgets from 0 to K(X).
inline std::vector<double> budget_grid(const LeakageMeasure& measure, const FiniteDistribution& prior,
                                       std::size_t points) {
  const double k = upper_bound_K(measure, prior);
  std::vector<double> out;
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(points == 1 ? 0.0 : k * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return out;
}

struct Theorem1Report {
  double fundamental = 0.0;
  double fundamental_slack = 0.0;
  // max over sampled alphabets of V(R; Y) - V(R); must stay below tolerance.
  double converse_margin = -kInf;
  double converse_tolerance = 0.0;
  std::size_t alphabets_checked = 0;
  // V(R) - gain of the constructed mechanism; must stay below tolerance.
  double achievability_margin = 0.0;
  double achievability_tolerance = 0.0;
  double achieved_gain = 0.0;
  double achieved_leakage = 0.0;
  bool converse_holds = true;
  bool achievability_holds = true;
  bool holds() const { return converse_holds && achievability_holds; }
};

// Grid resolution keeping channels X -> Y within the given count.
inline std::size_t resolution_within(std::size_t nx, std::size_t ny, std::uint64_t budget_count) {
  std::size_t r = 1;
  while (saturating_pow(simplex_grid_count(ny, r + 1), nx) <= budget_count && r < 200) ++r;
  return r;
}

// Converse: sampled output alphabets never beat V(R). Achievability: the
// disclosure channel over t(A) gains at least V(R) within tolerance.
inline Theorem1Report verify_theorem1(const LossSpec& loss, const FiniteDistribution& prior,
                                      const LeakageMeasure& measure, double budget, Rng& rng,
                                      const VoiOptions& options = {},
                                      std::uint64_t alphabet_grid_budget = 5000) {
  const auto classical = as_classical(loss, prior.alphabet);
  const auto constraint = leakage_constraint(measure, prior);
  Theorem1Report rep;
  const auto v = fundamental_voi(classical, prior, constraint, budget, options);
  rep.fundamental = v.v_value;
  rep.fundamental_slack = v.solver.slack;
  rep.converse_tolerance = v.solver.slack + 1e-8;
  rep.achievability_tolerance = v.solver.slack + options.merge_epsilon + 1e-6;
  const std::size_t t_size = v.statistic->size();
  const std::size_t max_y = t_size + 2;
  const std::size_t nx = prior.alphabet.size();
  for (std::size_t ny = 1; ny <= max_y; ++ny) {
    if (rng.uniform() < 0.5 && ny != 1 && ny != t_size) continue;
    const auto y = Alphabet::indexed(ny, "y");
    const auto r = resolution_within(nx, ny, alphabet_grid_budget);
    const auto p = alphabet_constrained_voi(classical, prior, constraint, budget, y, r, options);
    rep.converse_margin = std::max(rep.converse_margin, p.v_value - v.v_value);
    ++rep.alphabets_checked;
  }
  rep.converse_holds = rep.converse_margin <= rep.converse_tolerance;
  const JointModel disclosure{prior, *v.achieving_mechanism};
  rep.achieved_gain = RiskEvaluator(classical, prior.alphabet).average_gain(disclosure);
  rep.achieved_leakage = constraint.evaluate(disclosure);
  rep.achievability_margin = v.v_value - rep.achieved_gain;
  rep.achievability_holds = rep.achievability_margin <= rep.achievability_tolerance &&
                            rep.achieved_leakage <= budget + 1e-6;
  return rep;
}

struct ScalingCheck {
  double budget = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool holds = true;
};

struct ScalingReport {
  bool premise_verified = false;
  double premise_worst_ratio = 0.0;
  std::size_t premise_samples = 0;
  double c = 0.0;
  // V_2(R) <= V_1(cR) and V_2(R / c) <= V_1(R) at each grid budget.
  std::vector<ScalingCheck> checks;
  bool holds() const {
    for (const auto& k : checks) {
      if (!k.holds) return false;
    }
    return premise_verified;
  }
};

// Largest observed L1 / L2 over random channels for this prior.
inline double sample_leakage_ratio(const LeakageMeasure& m1, const LeakageMeasure& m2,
                                   const FiniteDistribution& prior, Rng& rng, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto c = random_channel(rng, prior.alphabet, Alphabet::indexed(2 + rng.below(2), "y"));
    const JointModel model{prior, c};
    const double l1 = leakage_value(m1, model), l2 = leakage_value(m2, model);
    if (l2 > 1e-9) worst = std::max(worst, l1 / l2);
  }
  return worst;
}

inline ScalingReport scaling_comparison(const LeakageMeasure& m1, const LeakageMeasure& m2, double c,
                                        const LossSpec& loss, const FiniteDistribution& prior,
                                        const std::vector<double>& r_grid, Rng& rng,
                                        std::size_t premise_samples = 300,
                                        const VoiOptions& options = {}) {
  if (!(c > 0.0)) throw ValidationError("scaling_constant", "scaling_comparison", "c must be positive");
  ScalingReport rep;
  rep.c = c;
  rep.premise_samples = premise_samples;
  rep.premise_worst_ratio = sample_leakage_ratio(m1, m2, prior, rng, premise_samples);
  rep.premise_verified = rep.premise_worst_ratio <= c * (1.0 + 1e-9);
  if (!rep.premise_verified) return rep;
  const auto c1 = leakage_constraint(m1, prior), c2 = leakage_constraint(m2, prior);
  auto v = [&](const PrivacyConstraint& k, double r) {
    return fundamental_voi(loss, prior, k, std::min(r, k.upper_bound), options);
  };
  for (double r : r_grid) {
    const auto a = v(c2, r), b = v(c1, c * r);
    rep.checks.push_back({r, a.v_value, b.v_value, a.solver.slack + b.solver.slack + 1e-8,
                          a.v_value <= b.v_value + a.solver.slack + b.solver.slack + 1e-8});
    const auto d = v(c2, r / c), e = v(c1, r);
    rep.checks.push_back({r / c, d.v_value, e.v_value, d.solver.slack + e.solver.slack + 1e-8,
                          d.v_value <= e.v_value + d.solver.slack + e.solver.slack + 1e-8});
  }
  return rep;
}

}  // namespace voi
