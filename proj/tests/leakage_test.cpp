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
#include <numeric>

#include "voi/leakage.hpp"

namespace {

using voi::Alphabet;
using voi::Channel;
using voi::FGenerator;
using voi::JointModel;
using voi::LeakageKind;
using voi::LeakageMeasure;

JointModel make(std::vector<double> prior, std::vector<std::vector<double>> rows,
                std::optional<std::vector<double>> values = std::nullopt) {
  Alphabet x = values ? Alphabet::numeric(*values) : Alphabet::indexed(prior.size(), "x");
  auto c = Channel::from_rows(x, Alphabet::indexed(rows.front().size(), "y"), rows);
  return {{x, std::move(prior)}, std::move(c)};
}

JointModel uniform_bsc(double flip) { return make({0.5, 0.5}, {{1 - flip, flip}, {flip, 1 - flip}}); }

double hb(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

std::vector<LeakageMeasure> all_measures() {
  std::vector<LeakageMeasure> out{LeakageMeasure::shannon(), LeakageMeasure::maximal(),
                                  LeakageMeasure::mmse(), LeakageMeasure::mean_square(),
                                  LeakageMeasure::variance(),
                                  LeakageMeasure::variance(voi::VarianceFormula::paper),
                                  LeakageMeasure::maximal_cost()};
  for (double a : {0.5, 2.0, 5.0, voi::kInf}) {
    out.push_back(LeakageMeasure::arimoto(a));
    out.push_back(LeakageMeasure::sibson(a));
    out.push_back(LeakageMeasure::alpha(a));
    if (std::isfinite(a)) out.push_back(LeakageMeasure::csiszar(a));
    if (a >= 1.0) out.push_back(LeakageMeasure::maximal_alpha(a));
  }
  for (auto g : {FGenerator::kl, FGenerator::total_variation, FGenerator::chi_squared,
                 FGenerator::hellinger}) {
    out.push_back(LeakageMeasure::f_information(g));
    out.push_back(LeakageMeasure::f_leakage(g));
  }
  return out;
}

voi::LeakageOptions fast_options() {
  voi::LeakageOptions o;
  o.maximal_alpha_resolution = 40;
  return o;
}

TEST(Entropy, RenyiExamples) {
  for (int m : {2, 3, 5}) {
    std::vector<double> u(m, 1.0 / m);
    for (double a : {0.5, 1.0, 2.0, 7.0, voi::kInf}) EXPECT_NEAR(voi::renyi_entropy(u, a), std::log(m), 1e-12);
  }
  std::vector<double> point{0.0, 1.0, 0.0};
  for (double a : {0.5, 1.0, 2.0, voi::kInf}) EXPECT_NEAR(voi::renyi_entropy(point, a), 0.0, 1e-15);
  std::vector<double> p{0.9, 0.1};
  EXPECT_NEAR(voi::renyi_entropy(p, 2.0), -std::log(0.82), 1e-12);
  EXPECT_NEAR(-std::log(0.82), 0.198451, 1e-6);
}

TEST(Entropy, ArimotoConditionalExamples) {
  auto id = make({0.3, 0.7}, {{1, 0}, {0, 1}});
  for (double a : {0.5, 1.0, 2.0, voi::kInf}) {
    EXPECT_NEAR(voi::arimoto_conditional_entropy(id, a), 0.0, 1e-12);
  }
  auto indep = make({0.3, 0.7}, {{0.4, 0.6}, {0.4, 0.6}});
  EXPECT_NEAR(voi::arimoto_conditional_entropy(indep, 1.0), hb(0.3), 1e-12);
  EXPECT_NEAR(voi::arimoto_conditional_entropy(uniform_bsc(0.1), voi::kInf), std::log(10.0 / 9.0),
              1e-12);
}

TEST(EvaluateLeakage, ShannonExamples) {
  EXPECT_NEAR(voi::shannon_mi(make({0.5, 0.5}, {{1, 0}, {0, 1}})), std::log(2.0), 1e-14);
  const double expected = std::log(2.0) - hb(0.1);
  EXPECT_NEAR(expected, 0.368064, 1e-6);
  EXPECT_NEAR(voi::evaluate_leakage(LeakageMeasure::shannon(), uniform_bsc(0.1)).value, expected,
              1e-12);
}

TEST(EvaluateLeakage, MaximalLeakageClosedForm) {
  auto r = voi::evaluate_leakage(LeakageMeasure::maximal(), uniform_bsc(0.1));
  EXPECT_NEAR(r.value, std::log(1.8), 1e-12);
  EXPECT_NEAR(r.value, 0.587787, 1e-6);
  EXPECT_NEAR(r.upper_bound_K, std::log(2.0), 1e-12);
}

TEST(EvaluateLeakage, EveryMeasureVanishesOnConstantChannels) {
  voi::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 2, 2 + trial % 3);
    auto out = voi::random_distribution(rng, m.channel.output);
    m.channel = Channel::constant(m.prior.alphabet, out);
    for (const auto& measure : all_measures()) {
      EXPECT_NEAR(voi::evaluate_leakage(measure, m, fast_options()).value, 0.0, 1e-9)
          << measure.name();
    }
  }
}

TEST(EvaluateLeakage, ParameterValidation) {
  auto m = uniform_bsc(0.2);
  EXPECT_THROW(voi::evaluate_leakage({LeakageKind::sibson_mi}, m), voi::ValidationError);
  EXPECT_THROW(voi::evaluate_leakage({LeakageKind::f_leakage}, m), voi::ValidationError);
  EXPECT_THROW(voi::evaluate_leakage(LeakageMeasure::sibson(-1.0), m), voi::ValidationError);
  EXPECT_THROW(voi::evaluate_leakage(LeakageMeasure::maximal_alpha(0.5), m), voi::ValidationError);
  EXPECT_THROW(voi::evaluate_leakage(LeakageMeasure::mmse(), m), voi::ValidationError);
  LeakageMeasure extra = LeakageMeasure::shannon();
  extra.order = 2.0;
  EXPECT_THROW(voi::evaluate_leakage(extra, m), voi::ValidationError);
}

TEST(InnerMin, IndependentChannelGivesMarginal) {
  auto m = make({0.2, 0.8}, {{0.3, 0.5, 0.2}, {0.3, 0.5, 0.2}});
  for (auto obj : {voi::InnerObjective::csiszar(0.5), voi::InnerObjective::csiszar(3.0),
                   voi::InnerObjective::f_leakage(FGenerator::chi_squared),
                   voi::InnerObjective::f_leakage(FGenerator::hellinger)}) {
    auto r = voi::inner_min_reference(m, obj);
    EXPECT_NEAR(r.value, 0.0, 1e-12);
    EXPECT_NEAR(r.q[0], 0.3, 1e-6);
    EXPECT_NEAR(r.q[1], 0.5, 1e-6);
  }
}

TEST(InnerMin, CsiszarOrderOneIsShannon) {
  voi::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    auto r = voi::inner_min_reference(m, voi::InnerObjective::csiszar(1.0));
    EXPECT_NEAR(r.value, voi::shannon_mi(m), 1e-8);
  }
}

TEST(InnerMin, MatchesQuantizedGridAndSanityBound) {
  voi::Rng rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    const auto py = voi::output_probs(m);
    for (auto obj : {voi::InnerObjective::csiszar(0.5), voi::InnerObjective::csiszar(2.0),
                     voi::InnerObjective::f_leakage(FGenerator::chi_squared),
                     voi::InnerObjective::f_leakage(FGenerator::hellinger)}) {
      auto objective = [&](const std::vector<double>& q) {
        double v = 0.0;
        for (std::size_t x = 0; x < 3; ++x) {
          auto row = m.channel.row(x);
          if (obj.kind == voi::InnerObjective::Kind::csiszar) {
            const double a = obj.order;
            double s = 0.0;
            for (std::size_t y = 0; y < 3; ++y) {
              if (q[y] > 0) s += std::pow(row[y], a) * std::pow(q[y], 1 - a);
              else if (a > 1 && row[y] > 0) return voi::kInf;
            }
            v += m.prior.probs[x] * std::log(s) / (a - 1);
          } else {
            for (std::size_t y = 0; y < 3; ++y) {
              const double p = row[y];
              double term = 0.0;
              switch (obj.generator) {
                case FGenerator::total_variation: term = 0.5 * std::abs(p - q[y]); break;
                case FGenerator::chi_squared:
                  term = q[y] > 0 ? (p - q[y]) * (p - q[y]) / q[y] : (p > 0 ? voi::kInf : 0.0);
                  break;
                case FGenerator::hellinger: term = std::pow(std::sqrt(p) - std::sqrt(q[y]), 2); break;
                default: break;
              }
              v += m.prior.probs[x] * term;
            }
          }
        }
        return v;
      };
      // Coarse grid at resolution 200, then a 1e-4 lattice around its best point.
      double grid_min = voi::kInf;
      std::vector<double> center;
      for (const auto& q : voi::enumerate_simplex_grid(3, 200)) {
        const double v = objective(q);
        if (v < grid_min) {
          grid_min = v;
          center = q;
        }
      }
      double fine_min = grid_min;
      for (int i = -100; i <= 100; ++i) {
        for (int j = -100; j <= 100; ++j) {
          std::vector<double> q{center[0] + i * 1e-4, center[1] + j * 1e-4, 0.0};
          q[2] = 1.0 - q[0] - q[1];
          if (q[0] < 0 || q[1] < 0 || q[2] < 0) continue;
          fine_min = std::min(fine_min, objective(q));
        }
      }
      auto r = voi::inner_min_reference(m, obj);
      EXPECT_NEAR(r.value, fine_min, 2e-5);
      EXPECT_LE(r.value, fine_min + 1e-12);
      EXPECT_LE(r.value, objective(py) + 1e-12);
    }
  }
}

TEST(InnerMin, TotalVariationMatchesBreakpointEnumeration) {
  // The objective is separable and piecewise linear in q, so some minimizer
  // has every coordinate but one at a breakpoint {0, 1, p(y|x)}.
  voi::Rng rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 3, 2 + trial % 3);
    const std::size_t ny = m.y_size();
    auto objective = [&](const std::vector<double>& q) {
      double v = 0.0;
      for (std::size_t x = 0; x < m.x_size(); ++x) {
        for (std::size_t y = 0; y < ny; ++y) v += m.prior.probs[x] * 0.5 * std::abs(m.channel(x, y) - q[y]);
      }
      return v;
    };
    std::vector<std::vector<double>> breaks(ny);
    for (std::size_t y = 0; y < ny; ++y) {
      breaks[y] = {0.0, 1.0};
      for (std::size_t x = 0; x < m.x_size(); ++x) breaks[y].push_back(m.channel(x, y));
    }
    double best = voi::kInf;
    for (std::size_t free = 0; free < ny; ++free) {
      std::vector<std::size_t> idx(ny, 0);
      while (true) {
        std::vector<double> q(ny, 0.0);
        double rest = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
          if (y != free) rest += q[y] = breaks[y][idx[y]];
        }
        q[free] = 1.0 - rest;
        if (q[free] >= 0.0) best = std::min(best, objective(q));
        std::size_t k = 0;
        for (; k < ny; ++k) {
          if (k == free) continue;
          if (++idx[k] < breaks[k].size()) break;
          idx[k] = 0;
        }
        if (k == ny) break;
      }
    }
    auto r = voi::inner_min_reference(m, voi::InnerObjective::f_leakage(FGenerator::total_variation));
    EXPECT_NEAR(r.value, best, 1e-12);
    EXPECT_NEAR(std::accumulate(r.q.begin(), r.q.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(InnerMin, FLeakageClosedFormsForSmoothGenerators) {
  voi::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 3, 2 + trial % 4);
    std::vector<double> a(m.y_size(), 0.0), b(m.y_size(), 0.0);
    for (std::size_t x = 0; x < m.x_size(); ++x) {
      for (std::size_t y = 0; y < m.y_size(); ++y) {
        a[y] += m.prior.probs[x] * m.channel(x, y) * m.channel(x, y);
        b[y] += m.prior.probs[x] * std::sqrt(m.channel(x, y));
      }
    }
    double sa = 0.0, sb = 0.0;
    for (std::size_t y = 0; y < m.y_size(); ++y) {
      sa += std::sqrt(a[y]);
      sb += b[y] * b[y];
    }
    EXPECT_NEAR(voi::evaluate_leakage(LeakageMeasure::f_leakage(FGenerator::chi_squared), m).value,
                sa * sa - 1.0, 1e-9);
    EXPECT_NEAR(voi::evaluate_leakage(LeakageMeasure::f_leakage(FGenerator::hellinger), m).value,
                2.0 - 2.0 * std::sqrt(sb), 1e-9);
    // The KL shortcut agrees with the numerical inner minimum.
    EXPECT_NEAR(voi::inner_min_reference(m, voi::InnerObjective::f_leakage(FGenerator::kl)).value,
                voi::evaluate_leakage(LeakageMeasure::f_leakage(FGenerator::kl), m).value, 1e-9);
  }
}

TEST(MaximalCorrelation, Examples) {
  auto id = voi::maximal_correlation(make({0.5, 0.5}, {{1, 0}, {0, 1}}));
  EXPECT_NEAR(id.value, 1.0, 1e-12);
  auto indep = voi::maximal_correlation(make({0.5, 0.5}, {{0.3, 0.7}, {0.3, 0.7}}));
  EXPECT_NEAR(indep.value, 0.0, 1e-12);
  EXPECT_NEAR(voi::maximal_correlation(uniform_bsc(0.1)).value, 0.8, 1e-12);
  auto degenerate = voi::maximal_correlation(make({1.0, 0.0}, {{0.3, 0.7}, {0.5, 0.5}}));
  EXPECT_TRUE(degenerate.degenerate);
  EXPECT_EQ(degenerate.value, 0.0);
}

TEST(MaximalCorrelation, BinaryInputOracle) {
  // For binary X every f(X) is affine in X, so rho^2 = V(E[X|Y]) / V(X).
  voi::Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = voi::random_model(rng, 2, 2 + trial % 4);
    auto d = voi::variance_decomposition(m);
    EXPECT_NEAR(std::pow(voi::maximal_correlation(m).value, 2), d.variance_of_posterior_mean / d.variance,
                1e-10);
  }
}

TEST(VarianceLeakage, SquaredFormulaIsSupOfMeanSquareLeakage) {
  // sup over U - X - Y of log V(U)/E V(U|Y), with U = f(X) searched on a grid
  // of real-valued f; the optimum sits at the top singular vector.
  voi::Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    double best = 0.0;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        JointModel u = m;
        u.prior.alphabet = Alphabet(m.prior.alphabet.labels(), std::vector<double>{0.0, i / 10.0, j / 10.0});
        u.channel.input = u.prior.alphabet;
        const double v = voi::ms_leakage(u);
        if (std::isfinite(v)) best = std::max(best, v);
      }
    }
    const double squared = voi::variance_leakage(m, voi::VarianceFormula::squared);
    const double paper = voi::variance_leakage(m, voi::VarianceFormula::paper);
    EXPECT_LE(best, squared + 1e-10);
    EXPECT_GT(best, squared - 0.02 * squared - 1e-6);
    EXPECT_GT(paper, squared);
  }
}

TEST(Mmse, Examples) {
  auto id = make({0.5, 0.5}, {{1, 0}, {0, 1}}, std::vector<double>{-1, 1});
  EXPECT_NEAR(voi::mmse_leakage(id), 1.0, 1e-15);
  auto indep = make({0.5, 0.5}, {{0.2, 0.8}, {0.2, 0.8}}, std::vector<double>{-1, 1});
  EXPECT_NEAR(voi::mmse_leakage(indep), 0.0, 1e-15);
  // X uniform on {-1, 0, 1} with Y = |X|: E[X|Y] = 0 for both outputs.
  auto witness = make({1.0 / 3, 1.0 / 3, 1.0 / 3}, {{0, 1}, {1, 0}, {0, 1}}, std::vector<double>{-1, 0, 1});
  EXPECT_LT(voi::mmse_leakage(witness), 1e-10);
  EXPECT_GT(voi::dependence_tv(witness), 0.1);
  EXPECT_GT(voi::shannon_mi(witness), 0.1);
  EXPECT_THROW(voi::mmse_leakage(uniform_bsc(0.1)), voi::ValidationError);
}

TEST(Mmse, LawOfTotalVariance) {
  voi::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 4, 2 + trial % 3);
    EXPECT_NEAR(voi::mmse_leakage(m), voi::variance_decomposition(m).variance_of_posterior_mean, 1e-10);
    EXPECT_GE(voi::ms_leakage(m), 0.0);
  }
}

TEST(MaximalCost, Examples) {
  EXPECT_NEAR(voi::maximal_cost_leakage(uniform_bsc(0.1)), std::log(5.0), 1e-12);
  EXPECT_NEAR(std::log(5.0), 1.609438, 1e-6);
  EXPECT_NEAR(voi::maximal_cost_leakage(make({0.4, 0.6}, {{0.1, 0.9}, {0.1, 0.9}})), 0.0, 1e-15);
  EXPECT_TRUE(std::isinf(voi::maximal_cost_leakage(make({0.4, 0.6}, {{1, 0}, {0, 1}}))));
}

TEST(MaximalAlpha, Examples) {
  auto m = uniform_bsc(0.1);
  EXPECT_NEAR(voi::maximal_alpha_leakage(m, voi::kInf, 10).value, std::log(1.8), 1e-12);
  EXPECT_NEAR(voi::maximal_alpha_leakage(m, 1.0, 10).value, voi::shannon_mi(m), 1e-14);
  auto r = voi::maximal_alpha_leakage(m, 2.0, 50);
  EXPECT_TRUE(r.grid_limited);
  EXPECT_GE(r.value, voi::sibson_mi(m, 2.0) - 1e-14);
  EXPECT_LE(r.value, std::log(1.8) + 1e-12);
  auto indep = make({0.3, 0.7}, {{0.2, 0.8}, {0.2, 0.8}});
  for (double a : {1.0, 3.0, voi::kInf}) EXPECT_NEAR(voi::maximal_alpha_leakage(indep, a, 20).value, 0.0, 1e-12);
}

TEST(Properties, NonNegativityAndUpperBound) {
  voi::Rng rng(101);
  const auto measures = all_measures();
  for (int trial = 0; trial < 500; ++trial) {
    auto m = voi::random_model(rng, 2 + trial % 2, 2 + (trial / 2) % 2);
    const auto& measure = measures[trial % measures.size()];
    auto r = voi::evaluate_leakage(measure, m, fast_options());
    EXPECT_GE(r.value, 0.0) << measure.name();
    if (std::isfinite(r.upper_bound_K)) {
      EXPECT_LE(r.value, r.upper_bound_K + 1e-8) << measure.name();
    }
  }
}

TEST(Properties, DataProcessingOnRandomMarkovTriples) {
  voi::Rng rng(103);
  const auto measures = all_measures();
  for (int trial = 0; trial < 500; ++trial) {
    auto xy = voi::random_model(rng, 2 + trial % 2, 2 + (trial / 2) % 2);
    auto z = Alphabet::indexed(2 + (trial / 4) % 2, "z");
    JointModel xz{xy.prior, voi::compose_channels(xy.channel, voi::random_channel(rng, xy.channel.output, z))};
    for (std::size_t k = trial % 3; k < measures.size(); k += 3) {
      const auto& measure = measures[k];
      const double a = voi::evaluate_leakage(measure, xy, fast_options()).value;
      const double b = voi::evaluate_leakage(measure, xz, fast_options()).value;
      if (std::isinf(a)) continue;
      EXPECT_LE(b, a + 1e-8) << measure.name();
    }
  }
}

TEST(Properties, IndependenceColumn) {
  voi::Rng rng(107);
  for (const auto& measure : all_measures()) {
    if (!voi::has_independence_property(measure)) continue;
    for (int trial = 0; trial < 20; ++trial) {
      auto m = voi::random_model(rng, 2 + trial % 2, 2 + trial % 3);
      if (voi::dependence_tv(m) < 1e-3) continue;
      EXPECT_GT(voi::evaluate_leakage(measure, m, fast_options()).value, 1e-8) << measure.name();
    }
  }
  EXPECT_FALSE(voi::has_independence_property(LeakageMeasure::mmse()));
  EXPECT_FALSE(voi::has_independence_property(LeakageMeasure::arimoto(voi::kInf)));
  EXPECT_TRUE(voi::has_independence_property(LeakageMeasure::sibson(voi::kInf)));
}

TEST(Properties, IdentityWeb) {
  voi::Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    const double i = voi::shannon_mi(m);
    EXPECT_NEAR(voi::arimoto_mi(m, 1.0), i, 1e-8);
    EXPECT_NEAR(voi::sibson_mi(m, 1.0), i, 1e-8);
    EXPECT_NEAR(voi::evaluate_leakage(LeakageMeasure::csiszar(1.0), m).value, i, 1e-8);
    EXPECT_NEAR(voi::evaluate_leakage(LeakageMeasure::f_information(FGenerator::kl), m).value, i, 1e-8);
    for (double a : {0.5, 2.0, 5.0}) {
      const double arimoto = voi::arimoto_mi(m, a);
      EXPECT_EQ(arimoto, voi::evaluate_leakage(LeakageMeasure::alpha(a), m).value);
      // a/(a-1) log [ sum_y (sum_x p(x,y)^a)^(1/a) / (sum_x p(x)^a)^(1/a) ]
      double num = 0.0, den = 0.0;
      for (std::size_t y = 0; y < 3; ++y) {
        double s = 0.0;
        for (std::size_t x = 0; x < 3; ++x) s += std::pow(m.joint(x, y), a);
        num += std::pow(s, 1 / a);
      }
      for (double p : m.prior.probs) den += std::pow(p, a);
      EXPECT_NEAR(arimoto, a / (a - 1) * std::log(num / std::pow(den, 1 / a)), 1e-10);
    }
  }
}

TEST(Properties, SibsonClosedFormMatchesInnerGrid) {
  voi::Rng rng(113);
  for (int trial = 0; trial < 5; ++trial) {
    auto m = voi::random_model(rng, 3, 3);
    for (double a : {0.5, 2.0, 4.0}) {
      double best = voi::kInf;
      for (const auto& q : voi::enumerate_simplex_grid(3, 200)) {
        double s = 0.0;
        bool inf = false;
        for (std::size_t x = 0; x < 3; ++x) {
          for (std::size_t y = 0; y < 3; ++y) {
            if (q[y] > 0) s += m.prior.probs[x] * std::pow(m.channel(x, y), a) * std::pow(q[y], 1 - a);
            else if (a > 1) { inf = true; }
          }
        }
        if (!inf) best = std::min(best, std::log(s) / (a - 1));
      }
      const double closed = voi::sibson_mi(m, a);
      EXPECT_LE(closed, best + 1e-12);
      EXPECT_NEAR(closed, best, 1e-3);
    }
  }
}

TEST(Properties, MeasureMetadata) {
  EXPECT_EQ(LeakageMeasure::sibson(2.0).name(), "sibson_mi(2)");
  EXPECT_EQ(LeakageMeasure::f_leakage(FGenerator::hellinger).name(), "f_leakage(hellinger)");
  for (auto g : {FGenerator::kl, FGenerator::total_variation, FGenerator::chi_squared, FGenerator::hellinger}) {
    EXPECT_EQ(voi::f_generator(g, 1.0), 0.0);
  }
  EXPECT_TRUE(voi::is_convex_in_channel(LeakageMeasure::sibson(0.5)));
  EXPECT_FALSE(voi::is_convex_in_channel(LeakageMeasure::sibson(2.0)));
  EXPECT_TRUE(voi::is_quasi_convex_in_channel(LeakageMeasure::arimoto(3.0)));
}

}  // namespace
