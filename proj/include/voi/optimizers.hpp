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
// Engines for U(R) = inf over p_{A|X} with leakage <= R of E[l(X, A)]:
// an exhaustive quantized oracle, Blahut-Arimoto Lagrangian relaxation for
// Shannon MI, and penalized projected descent for convex leakages.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voi/decision.hpp"
#include "voi/errors.hpp"
#include "voi/leakage.hpp"
#include "voi/probability.hpp"
#include "voi/simplex.hpp"

namespace voi {

// A candidate counts as feasible when its leakage is at most R plus this.
inline constexpr double kFeasibilityTolerance = 1e-12;

enum class SolveMethod { grid, lagrangian_ba, projected_descent, unconstrained };

inline const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::grid: return "grid";
    case SolveMethod::lagrangian_ba: return "lagrangian_ba";
    case SolveMethod::projected_descent: return "projected_descent";
    case SolveMethod::unconstrained: return "unconstrained";
  }
  return "?";
}

struct SolveReport {
  Channel channel;
  double objective = 0.0;
  double leakage_at_solution = 0.0;
  double budget = 0.0;
  SolveMethod method = SolveMethod::grid;
  bool feasible = false;
  bool converged = true;
  int iterations = 0;
  std::size_t resolution = 0;
  // One-sided bound on how far `objective` may sit above the true U(R).
  double slack = 0.0;
  double lambda = 0.0;
};

// A channel functional playing the role of the leakage in the constraint.
struct PrivacyConstraint {
  std::string name;
  std::function<double(const JointModel&)> evaluate;
  bool convex = false;
  bool quasi_convex = false;
  // Zero exactly on independent channels.
  bool independence = true;
  double upper_bound = kInf;
  std::optional<LeakageMeasure> measure;
};

inline PrivacyConstraint leakage_constraint(const LeakageMeasure& m, const FiniteDistribution& prior,
                                            const LeakageOptions& options = {}) {
  require_valid(m);
  PrivacyConstraint c;
  c.name = m.name();
  c.evaluate = [m, options](const JointModel& model) {
    return leakage_value_unchecked(m, model, options).value;
  };
  c.convex = is_convex_in_channel(m);
  c.quasi_convex = is_quasi_convex_in_channel(m);
  c.independence = has_independence_property(m);
  c.upper_bound = upper_bound_K(m, prior, options);
  c.measure = m;
  return c;
}

// Eve's average or maximal gain under her loss, used as the leakage.
inline PrivacyConstraint gain_constraint(const LossSpec& eve_loss, bool maximal,
                                         const FiniteDistribution& prior) {
  auto eval = std::make_shared<RiskEvaluator>(eve_loss, prior.alphabet);
  PrivacyConstraint c;
  c.name = std::string(maximal ? "maximal_gain" : "average_gain") + "[" + eve_loss.name() + "]";
  c.evaluate = [eval, maximal](const JointModel& model) {
    return maximal ? eval->maximal_gain(model) : eval->average_gain(model);
  };
  c.upper_bound = eval->prior_risk(prior.probs);
  return c;
}

inline std::vector<double> default_lambda_grid() {
  std::vector<double> out;
  for (int i = 0; i < 40; ++i) out.push_back(1e-3 * std::pow(1e6, i / 39.0));
  return out;
}

// Default resolution per shape: 50 for 2x2, 20 for 2x3, 8 for 3x3, otherwise
// the largest resolution with at most 1e5 channels.
inline std::size_t default_resolution(std::size_t nx, std::size_t na) {
  if (nx == 2 && na == 2) return 50;
  if (nx == 2 && na == 3) return 20;
  if (nx == 3 && na == 3) return 8;
  std::size_t r = 1;
  while (saturating_pow(simplex_grid_count(na, r + 1), nx) <= 100'000) ++r;
  return r;
}

namespace detail {

inline Channel mix(const Channel& a, const Channel& b, double t) {
  Channel out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    out.entries[i] = (1.0 - t) * a.entries[i] + t * b.entries[i];
  }
  return out;
}

inline double max_loss(const LossMatrix& m) {
  return *std::max_element(m.entries.begin(), m.entries.end());
}

inline double evaluate_on(const PrivacyConstraint& c, const FiniteDistribution& prior,
                          const Channel& channel) {
  return c.evaluate(JointModel{prior, channel});
}

}  // namespace detail

// Deterministic channel x -> argmin_a l(x, a): the unconstrained minimizer.
inline Channel unconstrained_optimum(const LossMatrix& m, const FiniteDistribution& prior) {
  std::vector<std::size_t> targets(m.nx);
  for (std::size_t x = 0; x < m.nx; ++x) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < m.na; ++a) {
      if (m(x, a) < m(x, best)) best = a;
    }
    targets[x] = best;
  }
  return Channel::deterministic(prior.alphabet, m.actions, targets);
}

// Constant channel at the prior Bayes action; zero leakage for every
// independence-respecting measure and objective equal to the prior risk.
inline Channel anchor_channel(const LossMatrix& m, const FiniteDistribution& prior) {
  std::size_t best = 0;
  double best_risk = kInf;
  for (std::size_t a = 0; a < m.na; ++a) {
    double r = 0.0;
    for (std::size_t x = 0; x < m.nx; ++x) r += prior.probs[x] * m(x, a);
    if (r < best_risk) {
      best_risk = r;
      best = a;
    }
  }
  std::vector<std::size_t> targets(m.nx, best);
  return Channel::deterministic(prior.alphabet, m.actions, targets);
}

// Largest t in [0, 1] (to bisection precision) such that the mixture
// (1 - t) feasible + t other satisfies the budget; `feasible` must satisfy it.
inline double mix_to_budget(const FiniteDistribution& prior, const Channel& feasible,
                            const Channel& other, const PrivacyConstraint& c, double budget,
                            int steps = 60) {
  if (detail::evaluate_on(c, prior, other) <= budget + kFeasibilityTolerance) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (detail::evaluate_on(c, prior, detail::mix(feasible, other, mid)) <=
        budget + kFeasibilityTolerance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

namespace detail {

inline void check_budget(double budget, const char* where) {
  if (!(budget >= 0.0) || std::isnan(budget)) {
    throw ValidationError("budget_range", where, "budget must be >= 0");
  }
}

inline SolveReport make_report(const LossMatrix& m, const FiniteDistribution& prior,
                               const PrivacyConstraint& c, Channel channel, double budget,
                               SolveMethod method) {
  SolveReport r;
  r.objective = expected_loss(m, prior.probs, channel);
  r.leakage_at_solution = evaluate_on(c, prior, channel);
  r.budget = budget;
  r.method = method;
  r.feasible = r.leakage_at_solution <= budget + kFeasibilityTolerance;
  r.channel = std::move(channel);
  return r;
}

}  // namespace detail

struct GridOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  // Bisect toward the budget boundary from the best grid channel along
  // segments to cheaper infeasible grid channels.
  bool refine = false;
  std::size_t refine_candidates = 8;
};

// Exhaustive search over channels whose rows lie on the resolution grid of
// the action simplex. Among feasible channels the smallest objective wins,
// ties going to the lexicographically smallest flattened channel. When none
// is feasible the minimum-leakage channel is returned with feasible = false.
inline SolveReport grid_oracle(const LossSpec& loss, const FiniteDistribution& prior,
                               const PrivacyConstraint& constraint, double budget,
                               std::size_t resolution, const GridOptions& options = {}) {
  require_valid(prior, "prior");
  detail::check_budget(budget, "grid_oracle");
  const auto m = loss_matrix(loss, prior.alphabet);
  const std::size_t nx = m.nx, na = m.na;
  const SimplexGrid row_grid(na, resolution, options.cap);
  const std::uint64_t count = saturating_pow(row_grid.size(), nx);
  if (count > options.cap) {
    std::size_t r = resolution;
    while (r > 1 && saturating_pow(simplex_grid_count(na, r), nx) > options.cap) --r;
    throw CapExceeded(count, options.cap,
                      "largest resolution within the cap is " + std::to_string(r));
  }
  const auto rows = row_grid.materialize();
  const std::size_t g = rows.size();
  std::vector<std::vector<double>> row_cost(nx, std::vector<double>(g, 0.0));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t k = 0; k < g; ++k) {
      for (std::size_t a = 0; a < na; ++a) row_cost[x][k] += rows[k][a] * m(x, a);
    }
  }
  JointModel work{prior, Channel{prior.alphabet, m.actions, std::vector<double>(nx * na)}};
  auto load = [&](std::uint64_t index) {
    // Row 0 is the most significant digit, so index order is lexicographic.
    for (std::size_t x = nx; x-- > 0;) {
      const auto& row = rows[static_cast<std::size_t>(index % g)];
      std::copy(row.begin(), row.end(), work.channel.entries.begin() + static_cast<std::ptrdiff_t>(x * na));
      index /= g;
    }
  };
  auto objective_of = [&](std::uint64_t index) {
    double v = 0.0;
    for (std::size_t x = nx; x-- > 0;) {
      v += prior.probs[x] * row_cost[x][static_cast<std::size_t>(index % g)];
      index /= g;
    }
    return v;
  };

  std::vector<std::pair<double, std::uint64_t>> order(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = {objective_of(i), i};
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::optional<std::size_t> found;
  double min_leak = kInf;
  std::uint64_t min_leak_index = 0;
  int evaluations = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    load(order[k].second);
    const double leak = constraint.evaluate(work);
    ++evaluations;
    if (leak < min_leak) {
      min_leak = leak;
      min_leak_index = order[k].second;
    }
    if (leak <= budget + kFeasibilityTolerance) {
      found = k;
      break;
    }
  }
  SolveReport report;
  if (!found) {
    load(min_leak_index);
    report = detail::make_report(m, prior, constraint, work.channel, budget, SolveMethod::grid);
  } else {
    load(order[*found].second);
    report = detail::make_report(m, prior, constraint, work.channel, budget, SolveMethod::grid);
    if (options.refine && *found > 0) {
      std::vector<std::size_t> candidates;
      for (std::size_t k = 0; k < std::min<std::size_t>(4, *found); ++k) candidates.push_back(k);
      const std::size_t from = *found > options.refine_candidates ? *found - options.refine_candidates : 0;
      for (std::size_t k = from; k < *found; ++k) {
        if (std::find(candidates.begin(), candidates.end(), k) == candidates.end()) candidates.push_back(k);
      }
      const Channel base = report.channel;
      for (std::size_t k : candidates) {
        load(order[k].second);
        const Channel other = work.channel;
        const double t = mix_to_budget(prior, base, other, constraint, budget);
        if (t <= 0.0) continue;
        auto mixed = detail::mix(base, other, t);
        const double obj = expected_loss(m, prior.probs, mixed);
        if (obj < report.objective) {
          const double leak = detail::evaluate_on(constraint, prior, mixed);
          if (leak <= budget + kFeasibilityTolerance) {
            report.channel = std::move(mixed);
            report.objective = obj;
            report.leakage_at_solution = leak;
          }
        }
      }
    }
  }
  report.iterations = evaluations;
  report.resolution = resolution;
  report.slack = 2.0 * detail::max_loss(m) / static_cast<double>(resolution);
  return report;
}

inline SolveReport grid_oracle(const LossSpec& loss, const FiniteDistribution& prior,
                               const LeakageMeasure& measure, double budget,
                               std::size_t resolution, const GridOptions& options = {}) {
  return grid_oracle(loss, prior, leakage_constraint(measure, prior), budget, resolution, options);
}

struct LagrangianOptions {
  // Stop once the Blahut upper and lower bounds on min E[l] + lambda I agree
  // to within this.
  double tolerance = 1e-13;
  int max_iterations = 200000;
};

// Minimizes E[l] + lambda I(X; A) by alternating minimization:
// q(a) <- sum_x p(x) p(a|x) and p(a|x) proportional to q(a) exp(-l(x, a)/lambda).
inline SolveReport blahut_arimoto(const LossMatrix& m, const FiniteDistribution& prior,
                                  double lambda, const LagrangianOptions& options = {}) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda_range", "lagrangian_sweep", "lambda must be positive and finite");
  }
  const std::size_t nx = m.nx, na = m.na;
  std::vector<double> log_q(na, -std::log(static_cast<double>(na)));
  std::vector<double> log_z(nx), c(na);
  Channel channel{prior.alphabet, m.actions, std::vector<double>(nx * na)};
  SolveReport r;
  r.method = SolveMethod::lagrangian_ba;
  r.lambda = lambda;
  r.converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    for (std::size_t x = 0; x < nx; ++x) {
      double mx = -kInf;
      for (std::size_t a = 0; a < na; ++a) mx = std::max(mx, log_q[a] - m(x, a) / lambda);
      double s = 0.0;
      for (std::size_t a = 0; a < na; ++a) s += std::exp(log_q[a] - m(x, a) / lambda - mx);
      log_z[x] = mx + std::log(s);
      for (std::size_t a = 0; a < na; ++a) {
        channel.at(x, a) = std::exp(log_q[a] - m(x, a) / lambda - log_z[x]);
      }
    }
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (prior.probs[x] <= 0.0) continue;
      for (std::size_t a = 0; a < na; ++a) {
        c[a] += prior.probs[x] * std::exp(-m(x, a) / lambda - log_z[x]);
      }
    }
    // Upper bound: the Lagrangian at the current channel. Lower bound:
    // -lambda sum_x p(x) log Z_x - lambda log max_a c_a.
    const JointModel model{prior, channel};
    const double upper = expected_loss(m, prior.probs, channel) + lambda * shannon_mi_unchecked(model);
    double lower = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (prior.probs[x] > 0.0) lower -= lambda * prior.probs[x] * log_z[x];
    }
    lower -= lambda * std::log(*std::max_element(c.begin(), c.end()));
    for (std::size_t a = 0; a < na; ++a) {
      log_q[a] = c[a] > 0.0 ? log_q[a] + std::log(c[a]) : -kInf;
    }
    if (upper - lower <= options.tolerance * (1.0 + std::abs(upper))) {
      r.converged = true;
      break;
    }
  }
  r.iterations = it;
  r.objective = expected_loss(m, prior.probs, channel);
  r.leakage_at_solution = shannon_mi_unchecked(JointModel{prior, channel});
  r.budget = r.leakage_at_solution;
  r.feasible = true;
  r.slack = options.tolerance;
  r.channel = std::move(channel);
  return r;
}

struct SweepPoint {
  double lambda = 0.0;
  SolveReport report;
};

inline std::vector<SweepPoint> lagrangian_sweep(const LossSpec& loss, const FiniteDistribution& prior,
                                                const std::vector<double>& lambdas = default_lambda_grid(),
                                                const LagrangianOptions& options = {}) {
  require_valid(prior, "prior");
  const auto m = loss_matrix(loss, prior.alphabet);
  std::vector<SweepPoint> out;
  for (double lambda : lambdas) out.push_back({lambda, blahut_arimoto(m, prior, lambda, options)});
  return out;
}

// Rate at an arbitrary lambda from a sweep: linear in log lambda between
// sweep points, made non-increasing in lambda by a running minimum.
inline double interpolate_rate(const std::vector<SweepPoint>& sweep, double lambda) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : sweep) pts.emplace_back(std::log(p.lambda), p.report.leakage_at_solution);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) pts[i].second = std::min(pts[i].second, pts[i - 1].second);
  const double l = std::log(lambda);
  if (l <= pts.front().first) return pts.front().second;
  if (l >= pts.back().first) return pts.back().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (l <= pts[i].first) {
      const double t = (l - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
      return (1 - t) * pts[i - 1].second + t * pts[i].second;
    }
  }
  return pts.back().second;
}

// U(R) for Shannon MI: bisection on log lambda for the rate R, then a
// mixture of the bracketing channels to meet the budget exactly.
inline SolveReport lagrangian_solve(const LossSpec& loss, const FiniteDistribution& prior,
                                    double budget, const LagrangianOptions& options = {}) {
  require_valid(prior, "prior");
  detail::check_budget(budget, "lagrangian_solve");
  const auto m = loss_matrix(loss, prior.alphabet);
  const auto shannon = leakage_constraint(LeakageMeasure::shannon(), prior);
  auto direct = unconstrained_optimum(m, prior);
  if (detail::evaluate_on(shannon, prior, direct) <= budget + kFeasibilityTolerance) {
    auto r = detail::make_report(m, prior, shannon, std::move(direct), budget, SolveMethod::unconstrained);
    return r;
  }
  const auto anchor = anchor_channel(m, prior);
  if (budget <= kFeasibilityTolerance) {
    auto r = detail::make_report(m, prior, shannon, anchor, budget, SolveMethod::lagrangian_ba);
    return r;
  }
  const double scale = std::max(detail::max_loss(m), 1e-300);
  double lo = std::log(1e-4 * scale), hi = std::log(1e4 * scale);
  SolveReport infeasible = blahut_arimoto(m, prior, std::exp(lo), options);
  Channel infeasible_channel = direct;
  if (infeasible.leakage_at_solution > budget) infeasible_channel = infeasible.channel;
  SolveReport feasible = blahut_arimoto(m, prior, std::exp(hi), options);
  Channel feasible_channel = feasible.leakage_at_solution <= budget ? feasible.channel : anchor;
  int iterations = infeasible.iterations + feasible.iterations;
  if (infeasible.leakage_at_solution <= budget) {
    feasible_channel = infeasible.channel;
  } else {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      auto r = blahut_arimoto(m, prior, std::exp(mid), options);
      iterations += r.iterations;
      if (r.leakage_at_solution <= budget) {
        hi = mid;
        feasible_channel = r.channel;
        feasible = std::move(r);
      } else {
        lo = mid;
        infeasible_channel = r.channel;
      }
    }
  }
  const double t = mix_to_budget(prior, feasible_channel, infeasible_channel, shannon, budget);
  auto r = detail::make_report(m, prior, shannon, detail::mix(feasible_channel, infeasible_channel, t),
                               budget, SolveMethod::lagrangian_ba);
  r.iterations = iterations;
  r.lambda = std::exp(hi);
  r.slack = 1e-9;
  return r;
}

struct DescentOptions {
  std::optional<Channel> start;
  double initial_penalty = 10.0;
  double max_penalty = 1e10;
  double violation_tolerance = 1e-6;
  int outer_iterations = 40;
  int inner_iterations = 400;
  double gradient_step = 1e-6;
};

// Minimizes E[l] + (rho / 2) max(0, L - R + mu / rho)^2 by projected gradient
// with per-row simplex projection, Barzilai-Borwein steps and numeric tangent
// gradients of L. The multiplier mu is updated after each inner solve and rho
// escalates while the violation shrinks too slowly. A final mixture with the
// zero-leakage anchor restores exact feasibility.
inline SolveReport projected_descent(const LossSpec& loss, const FiniteDistribution& prior,
                                     const PrivacyConstraint& constraint, double budget,
                                     const DescentOptions& options = {}) {
  require_valid(prior, "prior");
  detail::check_budget(budget, "projected_descent");
  if (!constraint.convex) {
    throw ValidationError("convex_measure", "projected_descent",
                          constraint.name + " is not convex in the channel; use the grid oracle");
  }
  const auto m = loss_matrix(loss, prior.alphabet);
  const std::size_t nx = m.nx, na = m.na, n = nx * na;
  auto direct = unconstrained_optimum(m, prior);
  if (detail::evaluate_on(constraint, prior, direct) <= budget + kFeasibilityTolerance) {
    return detail::make_report(m, prior, constraint, std::move(direct), budget, SolveMethod::unconstrained);
  }
  const auto anchor = anchor_channel(m, prior);
  Channel start = options.start ? *options.start
                                : detail::mix(anchor, direct, mix_to_budget(prior, anchor, direct, constraint, budget));
  JointModel work{prior, start};
  auto leakage = [&]() { return constraint.evaluate(work); };
  double rho = options.initial_penalty, mu = 0.0;
  auto merit = [&](double leak) {
    const double over = std::max(0.0, leak - budget + mu / rho);
    return expected_loss(m, prior.probs, work.channel) + 0.5 * rho * over * over;
  };
  const double h = options.gradient_step;
  auto gradient = [&](double leak, std::vector<double>& grad) {
    const double weight = rho * std::max(0.0, leak - budget + mu / rho);
    const auto current = work.channel.entries;
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t row = x * na;
      std::size_t b = 0;
      for (std::size_t a = 1; a < na; ++a) {
        if (current[row + a] > current[row + b]) b = a;
      }
      for (std::size_t a = 0; a < na; ++a) {
        double g = prior.probs[x] * m(x, a);
        if (weight > 0.0 && a != b && prior.probs[x] > 0.0) {
          // Directional derivative of L along e_a - e_b within row x; the
          // simplex projection is invariant to a per-row constant shift.
          auto shift = [&](double d) {
            work.channel.entries[row + a] = current[row + a] + d;
            work.channel.entries[row + b] = current[row + b] - d;
            const double v = leakage();
            work.channel.entries[row + a] = current[row + a];
            work.channel.entries[row + b] = current[row + b];
            return v;
          };
          const double dl = current[row + a] >= h ? (shift(h) - shift(-h)) / (2 * h) : (shift(h) - leak) / h;
          g += weight * dl;
        }
        grad[row + a] = g;
      }
      grad[row + b] = prior.probs[x] * m(x, b);
    }
  };
  std::vector<double> grad(n), prev_grad(n), prev_point(n), trial(n);
  int iterations = 0;
  double last_violation = kInf;
  for (int outer = 0; outer < options.outer_iterations; ++outer) {
    double step = 1.0;
    double leak = leakage();
    gradient(leak, grad);
    for (int it = 0; it < options.inner_iterations; ++it, ++iterations) {
      const double value = merit(leak);
      const auto current = work.channel.entries;
      bool accepted = false;
      double moved = 0.0;
      for (int halvings = 0; halvings < 60; ++halvings) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = current[i] - step * grad[i];
        for (std::size_t x = 0; x < nx; ++x) project_to_simplex(std::span<double>(trial.data() + x * na, na));
        work.channel.entries = trial;
        const double trial_leak = leakage();
        double decrease = 0.0;
        moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          decrease += grad[i] * (current[i] - trial[i]);
          moved = std::max(moved, std::abs(current[i] - trial[i]));
        }
        if (merit(trial_leak) <= value - 1e-4 * decrease) {
          accepted = true;
          leak = trial_leak;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        work.channel.entries = current;
        break;
      }
      if (moved < 1e-13) break;
      prev_grad = grad;
      prev_point = current;
      gradient(leak, grad);
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double si = work.channel.entries[i] - prev_point[i], yi = grad[i] - prev_grad[i];
        ss += si * si;
        sy += si * yi;
      }
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(step * 4.0, 1e10);
    }
    const double violation = std::max(0.0, leak - budget);
    mu = std::max(0.0, mu + rho * (leak - budget));
    if (violation <= options.violation_tolerance && outer > 0) {
      // Converged in the multiplier as well when the step in mu is tiny.
      if (rho * std::abs(leak - budget) <= 1e-9 || violation <= kFeasibilityTolerance) break;
    }
    if (violation > 0.25 * last_violation && rho < options.max_penalty) rho = std::min(rho * 10.0, options.max_penalty);
    last_violation = violation;
  }
  Channel candidate = work.channel;
  if (detail::evaluate_on(constraint, prior, candidate) > budget + kFeasibilityTolerance) {
    candidate = detail::mix(anchor, candidate, mix_to_budget(prior, anchor, candidate, constraint, budget));
  }
  auto result = detail::make_report(m, prior, constraint, std::move(candidate), budget,
                                    SolveMethod::projected_descent);
  auto fallback = detail::make_report(m, prior, constraint, start, budget, SolveMethod::projected_descent);
  if (fallback.feasible && (!result.feasible || fallback.objective < result.objective)) result = fallback;
  result.iterations = iterations;
  result.slack = 1e-6;
  return result;
}

inline SolveReport projected_descent(const LossSpec& loss, const FiniteDistribution& prior,
                                     const LeakageMeasure& measure, double budget,
                                     const DescentOptions& options = {}) {
  return projected_descent(loss, prior, leakage_constraint(measure, prior), budget, options);
}

}  // namespace voi
