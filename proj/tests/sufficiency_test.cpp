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
#include "voi/sufficiency.hpp"

namespace {

using voi::Alphabet;
using voi::Channel;
using voi::FiniteDistribution;
using voi::JointModel;
using voi::LeakageMeasure;

Channel rows_channel(std::vector<std::vector<double>> rows) {
  return Channel::from_rows(Alphabet::indexed(rows.size(), "x"),
                            Alphabet::indexed(rows.front().size(), "a"), rows);
}

FiniteDistribution uniform(std::size_t n) { return FiniteDistribution::uniform(Alphabet::indexed(n, "x")); }

// Splits action `a` of the channel into two actions with the same posterior.
Channel duplicate_action(const Channel& c, std::size_t a, double share) {
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < c.rows(); ++x) {
    auto r = c.row(x);
    std::vector<double> row(r.begin(), r.end());
    row.push_back(row[a] * (1 - share));
    row[a] *= share;
    rows.push_back(row);
  }
  return Channel::from_rows(c.input, Alphabet::indexed(c.cols() + 1, "a"), rows);
}

std::vector<LeakageMeasure> audit_measures() {
  using M = LeakageMeasure;
  return {M::shannon(),      M::arimoto(2),        M::arimoto(voi::kInf), M::sibson(0.5),
          M::sibson(2),      M::csiszar(2),        M::f_information(voi::FGenerator::total_variation),
          M::f_leakage(voi::FGenerator::chi_squared), M::maximal(), M::alpha(3),
          M::maximal_alpha(2), M::variance(),      M::maximal_cost()};
}

TEST(PosteriorStatistic, IdenticalRowsMerge) {
  auto c = rows_channel({{0.3, 0.3, 0.4}, {0.1, 0.1, 0.8}});
  auto s = voi::posterior_statistic(uniform(2), c);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.classes[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.class_label(0), "a0+a1");
}

TEST(PosteriorStatistic, IdentityKindKeepsEveryAction) {
  auto c = rows_channel({{0.3, 0.3, 0.4}, {0.1, 0.1, 0.8}});
  auto s = voi::posterior_statistic(uniform(2), c, 0.0, voi::StatisticKind::identity);
  EXPECT_EQ(s.size(), 3u);
  auto d = voi::build_disclosure_channel(uniform(2), c, s);
  EXPECT_EQ(d.entries, c.entries);
  EXPECT_EQ(voi::check_sufficiency(uniform(2), c, s).max_deviation, 0.0);
}

TEST(PosteriorStatistic, HandPosteriorExample) {
  // Actions with posteriors [0.9, 0.1], [0.9, 0.1], [0.2, 0.8] under a uniform
  // prior: p(a|x) = 2 p(x|a) p(a), with p(a) = (k, m, n) / 2 solving the
  // column constraints.
  const double n = 1.0 / 0.875, k = 0.5, m = 0.75 * n - k;
  auto c = rows_channel({{0.9 * k, 0.9 * m, 0.2 * n}, {0.1 * k, 0.1 * m, 0.8 * n}});
  auto s = voi::posterior_statistic(uniform(2), c);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.representatives[0][0], 0.9, 1e-12);
  EXPECT_NEAR(s.representatives[1][1], 0.8, 1e-12);
  auto d = voi::build_disclosure_channel(uniform(2), c, s);
  ASSERT_EQ(d.cols(), 2u);
  EXPECT_NEAR(d(0, 0), 0.9 * (k + m), 1e-15);
  EXPECT_NEAR(d(1, 1), 0.8 * n, 1e-15);
}

TEST(PosteriorStatistic, UnreachableActionsFlagged) {
  auto c = rows_channel({{0.5, 0.5, 0.0}, {0.2, 0.8, 0.0}});
  auto s = voi::posterior_statistic(uniform(2), c);
  ASSERT_TRUE(s.unreachable_class.has_value());
  EXPECT_EQ(s.class_label(*s.unreachable_class), "<unreachable>");
  auto d = voi::build_disclosure_channel(uniform(2), c, s);
  EXPECT_EQ(d.cols(), 2u);
  // Reachable only through a zero-prior input: kept as an output.
  FiniteDistribution p{Alphabet::indexed(2, "x"), {1.0, 0.0}};
  auto c2 = rows_channel({{0.5, 0.5, 0.0}, {0.0, 0.0, 1.0}});
  auto s2 = voi::posterior_statistic(p, c2);
  EXPECT_EQ(voi::build_disclosure_channel(p, c2, s2).cols(), 2u);
}

TEST(PosteriorStatistic, NegativeEpsilonRejected) {
  auto c = rows_channel({{0.5, 0.5}, {0.2, 0.8}});
  EXPECT_THROW(voi::posterior_statistic(uniform(2), c, -1.0), voi::ValidationError);
}

TEST(LikelihoodRatio, BscActionsDistinct) {
  auto s = voi::likelihood_ratio_statistic(uniform(2), Channel::bsc(0.1));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.representatives[0][0], 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(s.representatives[1][0], 9.0, 1e-12);
}

TEST(LikelihoodRatio, CommonSupportViolationNamesEntry) {
  auto c = rows_channel({{0.5, 0.5, 0.0}, {0.2, 0.4, 0.4}});
  try {
    voi::likelihood_ratio_statistic(uniform(2), c);
    FAIL() << "expected refusal";
  } catch (const voi::ValidationError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].invariant, "common_support");
    EXPECT_EQ(e.diagnostics()[0].location, "channel(x0, a2)");
  }
}

TEST(LikelihoodRatio, PartitionMatchesPosteriorStatistic) {
  // Minimal sufficiency: on common-support families the ratio partition is
  // the coarsest sufficient one, so it equals the posterior partition.
  voi::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nx = 2 + rng.below(2), na = 2 + rng.below(3);
    auto model = voi::random_model(rng, nx, na);
    auto c = model.channel;
    if (rng.uniform() < 0.7) c = duplicate_action(c, rng.below(na), 0.3 + 0.4 * rng.uniform());
    auto lr = voi::likelihood_ratio_statistic(model.prior, c, 0.0);
    auto ps = voi::posterior_statistic(model.prior, c, 0.0);
    EXPECT_EQ(lr.classes, ps.classes) << "trial " << trial;
    if (voi::check_sufficiency(model.prior, c, lr).sufficient) {
      EXPECT_TRUE(voi::check_sufficiency(model.prior, c, ps).sufficient);
    }
  }
}

TEST(CheckSufficiency, LossyMergeDeviation) {
  // Equal-mass actions with posteriors 0.65 and 0.35 for x0 merge under
  // epsilon 0.5; the merged posterior is the midpoint, so the deviation is 0.15.
  auto c = Channel::bsc(0.35);
  auto s = voi::posterior_statistic(uniform(2), c, 0.5);
  ASSERT_EQ(s.size(), 1u);
  auto r = voi::check_sufficiency(uniform(2), c, s);
  EXPECT_NEAR(r.max_deviation, 0.15, 1e-12);
  EXPECT_TRUE(r.sufficient);
  // Same deviation against a statistic declared with a tighter epsilon.
  auto tight = s;
  tight.merge_epsilon = 0.1;
  auto r2 = voi::check_sufficiency(uniform(2), c, tight);
  EXPECT_NEAR(r2.max_deviation, 0.15, 1e-12);
  EXPECT_FALSE(r2.sufficient);
}

TEST(CheckSufficiency, ZeroEpsilonDuplicatesExact) {
  voi::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto model = voi::random_model(rng, 2 + rng.below(2), 2 + rng.below(2));
    auto c = duplicate_action(model.channel, rng.below(model.channel.cols()), rng.uniform());
    auto s = voi::posterior_statistic(model.prior, c, 0.0);
    EXPECT_EQ(s.size(), model.channel.cols());
    auto r = voi::check_sufficiency(model.prior, c, s);
    EXPECT_LE(r.max_deviation, 1e-15);
    EXPECT_TRUE(r.sufficient);
    // An even split scales both likelihood rows by a power of two, so the
    // duplicated posteriors are bit-identical and the deviation exactly 0.
    auto half = duplicate_action(model.channel, 0, 0.5);
    auto sh = voi::posterior_statistic(model.prior, half, 0.0);
    EXPECT_EQ(voi::check_sufficiency(model.prior, half, sh).max_deviation, 0.0);
  }
}

TEST(SufficiencyProperty, LeakageAndGainPreserved) {
  voi::Rng rng(23);
  const auto measures = audit_measures();
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t nx = 2 + rng.below(2);
    auto model = voi::random_model(rng, nx, 2 + rng.below(2));
    auto c = duplicate_action(model.channel, 0, 0.5 + 0.3 * rng.uniform());
    auto s = voi::posterior_statistic(model.prior, c, 0.0);
    auto d = voi::build_disclosure_channel(model.prior, c, s);
    for (std::size_t x = 0; x < d.rows(); ++x) {
      double sum = 0.0;
      for (double v : d.row(x)) sum += v;
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    const JointModel full{model.prior, c}, reduced{model.prior, d};
    for (const auto& m : measures) {
      const double lf = voi::leakage_value(m, full), lr = voi::leakage_value(m, reduced);
      EXPECT_LE(lr, lf + 1e-8) << m.name() << " trial " << trial;
      if (m.kind == voi::LeakageKind::shannon_mi) {
        EXPECT_NEAR(lr, lf, 1e-8);
      }
    }
    auto loss = voi::LossSpec::zero_one(model.prior.alphabet);
    EXPECT_NEAR(voi::average_gain(loss, full), voi::average_gain(loss, reduced), 1e-12);
  }
}

}  // namespace
