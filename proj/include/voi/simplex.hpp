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
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

namespace voi {

// Euclidean projection of v onto the probability simplex (sort-based).
inline void project_to_simplex(std::span<double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) theta = t;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
}

struct SimplexMinimizerOptions {
  // Stop once the Frank-Wolfe gap (an upper bound on the suboptimality of a
  // convex objective) falls below this.
  double gap_tolerance = 1e-12;
  // Or once accepted steps stop improving the value by more than this
  // (relative), provided the gap is below stall_gap_tolerance.
  double value_tolerance = 1e-15;
  double stall_gap_tolerance = 1e-7;
  int max_iterations = 20000;
};

struct SimplexMinimum {
  std::vector<double> point;
  double value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// Newton step in the tangent space of the simplex, pivoting on the largest
// coordinate; the Hessian is a forward difference of the analytic gradient.
// Returns false when no usable descent direction comes out.
inline bool newton_direction(
    const std::function<void(std::span<const double>, std::span<double>)>& gradient,
    const std::vector<double>& q, const std::vector<double>& g, std::vector<double>& direction) {
  const std::size_t n = q.size();
  const std::size_t pivot =
      static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != pivot) free.push_back(i);
  }
  const std::size_t m = free.size();
  Eigen::VectorXd r(m);
  for (std::size_t i = 0; i < m; ++i) r(i) = g[free[i]] - g[pivot];
  Eigen::MatrixXd h(m, m);
  std::vector<double> shifted(q), g2(n);
  for (std::size_t j = 0; j < m; ++j) {
    const double step = 1e-7 * std::max(q[free[j]], 1e-9);
    shifted[free[j]] += step;
    shifted[pivot] -= step;
    gradient(shifted, g2);
    for (std::size_t i = 0; i < m; ++i) h(i, j) = ((g2[free[i]] - g2[pivot]) - r(i)) / step;
    shifted[free[j]] = q[free[j]];
    shifted[pivot] = q[pivot];
  }
  h = 0.5 * (h + h.transpose());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  Eigen::VectorXd d = ldlt.solve(-r);
  if (!d.allFinite() || r.dot(d) >= 0.0) return false;
  direction.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    direction[free[i]] = d(i);
    direction[pivot] -= d(i);
  }
  return true;
}

}  // namespace detail

// Minimizes a smooth convex function on the probability simplex. Each
// iteration tries a safeguarded Newton step in the tangent space and falls
// back to an exponentiated-gradient step (q <- q * exp(-eta * g),
// renormalized, eta halved until the value does not increase). Convergence
// is certified by the Frank-Wolfe gap.
inline SimplexMinimum minimize_on_simplex(
    const std::function<double(std::span<const double>)>& value,
    const std::function<void(std::span<const double>, std::span<double>)>& gradient,
    std::vector<double> start, const SimplexMinimizerOptions& options = {}) {
  const std::size_t n = start.size();
  SimplexMinimum out;
  if (n == 1) {
    out.point = {1.0};
    out.value = value(out.point);
    out.converged = true;
    return out;
  }
  // Multiplicative updates cannot leave a face, so start in the interior.
  bool interior = std::all_of(start.begin(), start.end(), [](double q) { return q > 0.0; });
  if (!interior) {
    for (auto& q : start) q = 0.999 * q + 0.001 / static_cast<double>(n);
  }
  std::vector<double> q = std::move(start);
  std::vector<double> g(n), trial(n), direction;
  double f = value(q);
  double eta = 1.0;
  int stalls = 0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    gradient(q, g);
    const double g_min = *std::min_element(g.begin(), g.end());
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += q[i] * (g[i] - g_min);
    out.gap = gap;
    if (gap <= options.gap_tolerance) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double f_trial = f;
    if (n <= 32 && detail::newton_direction(gradient, q, g, direction)) {
      // Largest step keeping every coordinate positive, capped at 1.
      double t = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (direction[i] < 0.0) t = std::min(t, -0.99 * q[i] / direction[i]);
      }
      for (int halvings = 0; halvings < 40 && !accepted; ++halvings, t *= 0.5) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = std::max(q[i] + t * direction[i], 0.0);
          total += trial[i];
        }
        for (auto& v : trial) v /= total;
        f_trial = value(trial);
        accepted = f_trial <= f;
      }
    }
    if (!accepted) {
      for (int halvings = 0; halvings < 80; ++halvings) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = q[i] * std::exp(-eta * (g[i] - g_min));
          total += trial[i];
        }
        for (auto& t : trial) t /= total;
        f_trial = value(trial);
        if (f_trial <= f) {
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      eta *= 2.0;
    }
    if (!accepted) {
      // No descent direction at machine precision.
      out.converged = gap <= options.stall_gap_tolerance;
      break;
    }
    const double improvement = f - f_trial;
    q.swap(trial);
    f = f_trial;
    if (improvement <= options.value_tolerance * (1.0 + std::abs(f))) {
      if (++stalls >= 25) {
        out.converged = gap <= options.stall_gap_tolerance;
        break;
      }
    } else {
      stalls = 0;
    }
  }
  out.point = std::move(q);
  out.value = f;
  out.iterations = it;
  return out;
}

}  // namespace voi
