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
#include <gtest/gtest.h>

#include <cmath>

#include "voi/decision.hpp"
#include "voi/leakage.hpp"

namespace {

using voi::Alphabet;
using voi::Channel;
using voi::FiniteDistribution;
using voi::JointModel;
using voi::LossSpec;

JointModel make(std::vector<double> prior, std::vector<std::vector<double>> rows,
                std::optional<std::vector<double>> values = std::nullopt) {
  Alphabet x = values ? Alphabet::numeric(*values) : Alphabet::indexed(prior.size(), "x");
  auto c = Channel::from_rows(x, Alphabet::indexed(rows.front().size(), "y"), rows);
  return {{x, std::move(prior)}, std::move(c)};
}

JointModel uniform_bsc(double flip) { return make({0.5, 0.5}, {{1 - flip, flip}, {flip, 1 - flip}}); }

LossSpec random_matrix_loss(voi::Rng& rng, std::size_t nx, std::size_t na) {
  std::vector<std::vector<double>> m(nx, std::vector<double>(na));
  for (auto& row : m) {
    for (auto& v : row) v = rng.uniform();
  }
  return LossSpec::classical(m, Alphabet::indexed(na, "a"));
}

TEST(MinPosteriorRisk, ZeroOneIsMap) {
  auto x = Alphabet::indexed(2, "x");
  auto r = voi::min_posterior_risk(LossSpec::zero_one(x), FiniteDistribution{x, {0.9, 0.1}});
  EXPECT_NEAR(r.value, 0.1, 1e-15);
  EXPECT_EQ(r.action, 0u);
}

TEST(MinPosteriorRisk, SquaredWithActionSet) {
  auto x = Alphabet::numeric({-1.0, 1.0});
  auto r = voi::min_posterior_risk(LossSpec::squared(std::vector<double>{-1, 0, 1}),
                                   FiniteDistribution{x, {0.5, 0.5}});
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_EQ(r.action, 1u);
  // Continuous actions: the posterior mean.
  auto c = voi::min_posterior_risk(LossSpec::squared(), FiniteDistribution{x, {0.25, 0.75}});
  EXPECT_NEAR(*c.action_value, 0.5, 1e-15);
  EXPECT_NEAR(c.value, 0.25 * 2.25 + 0.75 * 0.25, 1e-15);
}

TEST(MinPosteriorRisk, TiesGoToLowestIndex) {
  auto x = Alphabet::indexed(2, "x");
  auto r = voi::min_posterior_risk(LossSpec::zero_one(x), FiniteDistribution{x, {0.5, 0.5}});
  EXPECT_EQ(r.action, 0u);
}

TEST(MinPosteriorRisk, AlphaLossTiltedRule) {
  auto x = Alphabet::indexed(3, "x");
  FiniteDistribution p{x, {0.5, 0.3, 0.2}};
  for (double a : {0.5, 2.0, 4.0}) {
    auto r = voi::min_posterior_risk(LossSpec::alpha(a), p);
    double s = 0.0;
    for (double v : p.probs) s += std::pow(v, a);
    EXPECT_NEAR(r.value, a / (a - 1) * (1 - std::pow(s, 1 / a)), 1e-14);
    EXPECT_NEAR(voi::rule_row_risk(LossSpec::alpha(a), x, p.probs, r.rule_row), r.value, 1e-12);
    // Any other rule row does no better.
    voi::Rng rng(1);
    for (int k = 0; k < 50; ++k) {
      auto row = voi::random_simplex_point(rng, 3);
      EXPECT_GE(voi::rule_row_risk(LossSpec::alpha(a), x, p.probs, row), r.value - 1e-12);
    }
  }
  auto one = voi::min_posterior_risk(LossSpec::alpha(1.0), p);
  EXPECT_NEAR(one.value, -(0.5 * std::log(0.5) + 0.3 * std::log(0.3) + 0.2 * std::log(0.2)), 1e-14);
  auto inf = voi::min_posterior_risk(LossSpec::alpha(voi::kInf), p);
  EXPECT_NEAR(inf.value, 0.5, 1e-15);
  EXPECT_EQ(inf.action, 0u);
}

TEST(MinPosteriorRisk, CustomStandardMatchesAlphaClosedForm) {
  auto x = Alphabet::indexed(3, "x");
  for (double a : {2.0, 3.0}) {
    auto custom = LossSpec::custom(Alphabet(x.labels()), [a](std::size_t xi, std::size_t ai, double p) {
      return a / (a - 1) * (1 - (ai == xi ? std::pow(p, -1 / a) : 0.0));
    });
    voi::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
      FiniteDistribution p{x, voi::random_simplex_point(rng, 3)};
      EXPECT_NEAR(voi::min_posterior_risk(custom, p).value,
                  voi::min_posterior_risk(LossSpec::alpha(a), p).value, 1e-8);
    }
  }
}

TEST(MinPosteriorRisk, RandomizedEqualsDeterministicForClassicalLosses) {
  voi::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto loss = random_matrix_loss(rng, 3, 4);
    auto as_custom = LossSpec::custom(*loss.actions, [&loss](std::size_t xi, std::size_t ai, double) {
      return loss.matrix[xi][ai];
    });
    FiniteDistribution p{Alphabet::indexed(3, "x"), voi::random_simplex_point(rng, 3)};
    EXPECT_NEAR(voi::min_posterior_risk(as_custom, p).value, voi::min_posterior_risk(loss, p).value, 1e-10);
  }
}

TEST(MinBayesRisk, ZeroOneExamples) {
  auto x = Alphabet::indexed(2, "x");
  auto loss = LossSpec::zero_one(x);
  EXPECT_NEAR(voi::min_bayes_risk(loss, make({0.5, 0.5}, {{1, 0}, {0, 1}})), 0.0, 1e-15);
  EXPECT_NEAR(voi::min_bayes_risk(loss, make({0.7, 0.3}, {{0.4, 0.6}, {0.4, 0.6}})), 0.3, 1e-15);
  EXPECT_NEAR(voi::min_bayes_risk(loss, uniform_bsc(0.1)), 0.1, 1e-15);
}

TEST(MinBayesRisk, RejectsMismatchedLoss) {
  auto loss = LossSpec::zero_one(Alphabet::indexed(3, "x"));
  EXPECT_THROW(voi::min_bayes_risk(loss, uniform_bsc(0.1)), voi::ValidationError);
  EXPECT_THROW(voi::min_bayes_risk(LossSpec::squared(), uniform_bsc(0.1)), voi::ValidationError);
  EXPECT_THROW(voi::min_bayes_risk(LossSpec::alpha(0.0), uniform_bsc(0.1)), voi::ValidationError);
}

TEST(AverageGain, SquaredLossIsMmseLeakage) {
  voi::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 3, 2 + trial % 4);
    EXPECT_NEAR(voi::average_gain(LossSpec::squared(), m), voi::mmse_leakage(m), 1e-10);
  }
}

TEST(AverageGain, AlphaOneIsShannon) {
  voi::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 3, 2 + trial % 4);
    EXPECT_NEAR(voi::average_gain(LossSpec::alpha(1.0), m), voi::shannon_mi(m), 1e-8);
  }
}

TEST(AverageGain, AlphaTwoHandFormula) {
  // (a/(a-1)) (exp((1-a)/a H_a^A(X|Y)) - exp((1-a)/a H_a(X))) with a = 2:
  // H_2(X) = log 2 and H_2^A(X|Y) = -2 log(2 sqrt(0.45^2 + 0.05^2)).
  const double a = 2.0;
  const double h_x = std::log(2.0);
  const double h_xy = -2.0 * std::log(2.0 * std::sqrt(0.45 * 0.45 + 0.05 * 0.05));
  const double expected = a / (a - 1) * (std::exp((1 - a) / a * h_xy) - std::exp((1 - a) / a * h_x));
  EXPECT_NEAR(voi::average_gain(LossSpec::alpha(2.0), uniform_bsc(0.1)), expected, 1e-12);
}

TEST(LogarithmicGain, Examples) {
  auto x = Alphabet::indexed(2, "x");
  EXPECT_EQ(voi::logarithmic_gain(LossSpec::zero_one(x), make({0.7, 0.3}, {{0.4, 0.6}, {0.4, 0.6}})).value, 0.0);
  auto inf = voi::logarithmic_gain(LossSpec::zero_one(x), make({0.5, 0.5}, {{1, 0}, {0, 1}}));
  EXPECT_TRUE(inf.infinite);
  EXPECT_TRUE(std::isinf(inf.value));
  voi::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 3, 2 + trial % 4);
    EXPECT_NEAR(voi::logarithmic_gain(LossSpec::squared(), m).value, voi::ms_leakage(m), 1e-10);
  }
}

TEST(MaximalGain, Examples) {
  auto x = Alphabet::indexed(2, "x");
  EXPECT_NEAR(voi::maximal_gain(LossSpec::zero_one(x), make({0.7, 0.3}, {{0.4, 0.6}, {0.4, 0.6}})), 0.0, 1e-15);
  EXPECT_NEAR(voi::maximal_gain(LossSpec::zero_one(x), uniform_bsc(0.1)), 0.4, 1e-15);
}

TEST(Gains, OrderingNonNegativityAndDpi) {
  voi::Rng rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t nx = 2 + trial % 2;
    auto xy = voi::random_model(rng, nx, 2 + (trial / 2) % 3);
    LossSpec loss = trial % 3 == 0   ? random_matrix_loss(rng, nx, 3)
                    : trial % 3 == 1 ? LossSpec::alpha(trial % 2 ? 2.0 : 0.5)
                                     : LossSpec::squared();
    JointModel xz{xy.prior, voi::compose_channels(
                                xy.channel, voi::random_channel(rng, xy.channel.output, Alphabet::indexed(2, "z")))};
    const double avg = voi::average_gain(loss, xy);
    const double max = voi::maximal_gain(loss, xy);
    EXPECT_GE(avg, -1e-10);
    EXPECT_GE(max, avg - 1e-12);
    EXPECT_LE(voi::average_gain(loss, xz), avg + 1e-8);
    EXPECT_LE(voi::maximal_gain(loss, xz), max + 1e-8);
  }
}

TEST(BayesRule, IndependentChannelUsesOneRow) {
  voi::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    m.channel = Channel::constant(m.prior.alphabet, voi::random_distribution(rng, m.channel.output));
    for (const auto& loss : {LossSpec::alpha(2.0), LossSpec::zero_one(m.prior.alphabet)}) {
      auto rule = voi::bayes_rule(loss, m);
      for (std::size_t y = 1; y < rule.rows.size(); ++y) {
        for (std::size_t a = 0; a < rule.rows[0].rule_row.size(); ++a) {
          EXPECT_NEAR(rule.rows[y].rule_row[a], rule.rows[0].rule_row[a], 1e-12);
        }
      }
    }
  }
}

TEST(BayesRule, DeterministicForClassicalLoss) {
  auto m = uniform_bsc(0.1);
  auto rule = voi::bayes_rule(LossSpec::zero_one(m.prior.alphabet), m);
  EXPECT_TRUE(rule.deterministic());
  EXPECT_EQ(rule.rows[0].action, 0u);
  EXPECT_EQ(rule.rows[1].action, 1u);
}

TEST(LossMatrix, SquaredDefaultsToXValues) {
  auto x = Alphabet::numeric({0.0, 1.0, 3.0});
  auto m = voi::loss_matrix(LossSpec::squared(), x);
  EXPECT_EQ(m.na, 3u);
  EXPECT_DOUBLE_EQ(m(2, 0), 9.0);
  EXPECT_THROW(voi::loss_matrix(LossSpec::alpha(2.0), x), voi::ValidationError);
}

}  // namespace
