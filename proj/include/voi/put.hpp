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
// Privacy-utility mechanism design: Alice solves for the optimal action
// channel, discloses its sufficient statistic, Bob acts on the disclosure
// with his Bayes rule, and a seeded simulation checks the analytic risk.
#pragma once

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
#include "voi/voi.hpp"

namespace voi {

// Eve's average or maximal gain under her loss, used as the privacy measure.
struct GainPrivacy {
  LossSpec eve_loss;
  bool maximal = false;
};

struct PutScenario {
  FiniteDistribution prior;
  LossSpec bob_loss;
  std::optional<LeakageMeasure> measure;
  std::optional<GainPrivacy> gain_privacy;
  double budget = 0.0;
  std::uint64_t seed = 42;
  std::size_t sample_count = 100000;
};

struct AuditEntry {
  std::string measure;
  // Absent when the measure does not apply, e.g. mmse on labeled X.
  std::optional<double> value;
};

struct MechanismReport {
  std::string privacy_name;
  double budget = 0.0;
  double effective_budget = 0.0;
  Channel action_channel;
  StatisticMap statistic;
  Channel disclosure_channel;
  DecisionRule bob_rule;
  double prior_risk = 0.0;
  double u_value = 0.0;
  double v_value = 0.0;
  // prior risk minus Bob's Bayes risk on the disclosure.
  double achieved_gain = 0.0;
  double privacy_value = 0.0;
  SolveReport solver;
  std::vector<AuditEntry> leakage_audit;
};

// Every measure kind at representative parameters.
inline std::vector<LeakageMeasure> audit_measure_set() {
  using M = LeakageMeasure;
  return {M::shannon(),
          M::arimoto(0.5),
          M::arimoto(2),
          M::arimoto(kInf),
          M::sibson(0.5),
          M::sibson(2),
          M::csiszar(0.5),
          M::csiszar(2),
          M::f_information(FGenerator::total_variation),
          M::f_information(FGenerator::chi_squared),
          M::f_information(FGenerator::hellinger),
          M::f_leakage(FGenerator::kl),
          M::f_leakage(FGenerator::total_variation),
          M::maximal(),
          M::alpha(2),
          M::maximal_alpha(2),
          M::mmse(),
          M::mean_square(),
          M::variance(),
          M::maximal_cost()};
}

inline std::vector<AuditEntry> audit_leakage(const JointModel& model) {
  std::vector<AuditEntry> out;
  for (const auto& m : audit_measure_set()) {
    AuditEntry e{m.name(), std::nullopt};
    if (!requires_numeric_x(m.kind) || model.prior.alphabet.values()) e.value = leakage_value(m, model);
    out.push_back(std::move(e));
  }
  return out;
}

namespace detail {

inline PrivacyConstraint scenario_constraint(const PutScenario& s) {
  if (s.measure && s.gain_privacy) {
    throw ValidationError("privacy_choice", "scenario", "give either a leakage measure or a gain privacy, not both");
  }
  if (s.measure) return leakage_constraint(*s.measure, s.prior);
  if (s.gain_privacy) {
    require_valid(s.gain_privacy->eve_loss, s.prior.alphabet);
    return gain_constraint(s.gain_privacy->eve_loss, s.gain_privacy->maximal, s.prior);
  }
  throw ValidationError("privacy_choice", "scenario", "a privacy measure is required");
}

}  // namespace detail

// Step 1: p*_{A|X} from the optimizers. Steps 2 and 3: t(A) and the
// disclosure channel p*_{Y|X}. Budgets above K(X) are vacuous and solved at
// K(X). Every measure is audited at the disclosure channel.
inline MechanismReport design_mechanism(const PutScenario& scenario, const VoiOptions& options = {}) {
  require_valid(scenario.prior, "prior");
  if (!(scenario.budget >= 0.0)) {
    throw ValidationError("budget_range", "scenario", "budget must be >= 0");
  }
  if (scenario.sample_count < 1) {
    throw ValidationError("sample_count", "scenario", "sample_count must be at least 1");
  }
  const auto bob = as_classical(scenario.bob_loss, scenario.prior.alphabet);
  const auto constraint = detail::scenario_constraint(scenario);
  MechanismReport r;
  r.privacy_name = constraint.name;
  r.budget = scenario.budget;
  r.effective_budget = std::min(scenario.budget, constraint.upper_bound);
  const auto point = fundamental_voi(bob, scenario.prior, constraint, r.effective_budget, options);
  r.solver = point.solver;
  r.action_channel = point.solver.channel;
  r.statistic = *point.statistic;
  r.disclosure_channel = *point.achieving_mechanism;
  r.prior_risk = point.prior_risk;
  r.u_value = point.u_value;
  r.v_value = point.v_value;
  const JointModel disclosure{scenario.prior, r.disclosure_channel};
  r.privacy_value = constraint.evaluate(disclosure);
  if (r.privacy_value > scenario.budget + 1e-6) {
    throw SolverError("disclosure channel violates the budget: " + format_number(r.privacy_value) + " > " +
                      format_number(scenario.budget));
  }
  r.bob_rule = bayes_rule(bob, disclosure);
  r.achieved_gain = RiskEvaluator(bob, scenario.prior.alphabet).average_gain(disclosure);
  r.leakage_audit = audit_leakage(disclosure);
  return r;
}

// Privacy measured by Eve's average or maximal gain under her own loss.
inline MechanismReport gain_based_privacy(PutScenario scenario, const LossSpec& eve_loss, bool maximal,
                                          const VoiOptions& options = {}) {
  scenario.measure.reset();
  scenario.gain_privacy = GainPrivacy{eve_loss, maximal};
  return design_mechanism(scenario, options);
}

struct SimulationSummary {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double empirical_loss = 0.0;
  double standard_error = 0.0;
  // Bob's Bayes risk on the disclosure channel.
  double analytic_loss = 0.0;
  double u_value = 0.0;
  double z_score = 0.0;
  bool within_band = true;
};

// Draws X from the prior, A from p*_{A|X}, publishes Y = t(A) and lets Bob
// act with his Bayes rule; compares the mean loss with the analytic risk.
inline SimulationSummary simulate_pipeline(const MechanismReport& report, const PutScenario& scenario) {
  const auto bob = as_classical(scenario.bob_loss, scenario.prior.alphabet);
  const auto m = loss_matrix(bob, scenario.prior.alphabet);
  // Output index of each statistic class on the disclosure channel.
  std::vector<std::size_t> column(report.statistic.size(), 0);
  for (std::size_t c = 0, k = 0; c < report.statistic.size(); ++c) {
    if (k < report.disclosure_channel.cols() &&
        report.disclosure_channel.output.label(k) == report.statistic.class_label(c)) {
      column[c] = k++;
    }
  }
  std::vector<std::size_t> action(report.bob_rule.rows.size(), 0);
  for (std::size_t y = 0; y < action.size(); ++y) action[y] = report.bob_rule.rows[y].action.value_or(0);
  Rng rng(scenario.seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < scenario.sample_count; ++i) {
    const std::size_t x = rng.categorical(scenario.prior.probs);
    const std::size_t a = rng.categorical(report.action_channel.row(x));
    const std::size_t y = column[report.statistic.class_of[a]];
    const double l = m(x, action[y]);
    sum += l;
    sum_sq += l * l;
  }
  SimulationSummary s;
  s.samples = scenario.sample_count;
  s.seed = scenario.seed;
  const double n = static_cast<double>(scenario.sample_count);
  s.empirical_loss = sum / n;
  const double var = scenario.sample_count > 1 ? std::max(0.0, (sum_sq - n * s.empirical_loss * s.empirical_loss) / (n - 1)) : 0.0;
  s.standard_error = std::sqrt(var / n);
  s.analytic_loss = report.prior_risk - report.achieved_gain;
  s.u_value = report.u_value;
  const double diff = std::abs(s.empirical_loss - s.analytic_loss);
  s.z_score = s.standard_error > 0.0 ? diff / s.standard_error : (diff <= 1e-12 ? 0.0 : kInf);
  s.within_band = diff <= 4.0 * s.standard_error + 1e-12;
  return s;
}

}  // namespace voi
