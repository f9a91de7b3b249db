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
// Seeded property suites: the leakage-axiom matrix, identities between
// measures, the fundamental-limit converse and achievability, the
// standard-loss upper bound, curve shape and scaling, and sufficiency of the
// posterior statistic.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "voi/decision.hpp"
#include "voi/errors.hpp"
#include "voi/io.hpp"
#include "voi/leakage.hpp"
#include "voi/probability.hpp"
#include "voi/simplex.hpp"
#include "voi/sufficiency.hpp"
#include "voi/voi.hpp"

namespace voi::verify {

using io::Json;

// One checked property. margin is lhs - rhs of the inequality being tested,
// so a trial fails when its margin exceeds the tolerance.
struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_margin = -kInf;
  double tolerance = 0.0;
  std::optional<Json> counterexample;

  bool passed() const { return failures == 0; }

  void record(double margin, const std::function<Json()>& describe) {
    ++trials;
    if (std::isnan(margin)) margin = kInf;
    worst_margin = std::max(worst_margin, margin);
    if (margin > tolerance) {
      ++failures;
      if (!counterexample) counterexample = describe();
    }
  }
};

inline Json to_json(const PropertyResult& p) {
  Json j = {{"name", p.name},
            {"trials", p.trials},
            {"failures", p.failures},
            {"worst_margin", io::number(p.worst_margin)},
            {"tolerance", io::number(p.tolerance)}};
  if (p.counterexample) j["counterexample"] = *p.counterexample;
  return j;
}

// Independent stream for sub-task `index` of a run seeded with `seed`:
// splitmix64(seed + 0x9E3779B97F4A7C15 * (index + 1)).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Leakage axiom matrix: non-negativity, data processing, independence.

inline constexpr double kAxiomTolerance = 1e-8;
// A joint counts as dependent for the independence column when its total
// variation from p_X p_Y is at least this.
inline constexpr double kDependenceThreshold = 1e-2;
// Leakage values below this count as zero for counterexample searches. It
// sits at rounding level: strongly skewed priors give genuine values near
// 1e-10 for high-order measures.
inline constexpr double kZeroLeakage = 1e-12;

struct AxiomRow {
  std::string name;
  std::vector<LeakageMeasure> instances;
  std::array<bool, 3> claimed{true, true, true};
};

inline std::vector<AxiomRow> axiom_rows() {
  using M = LeakageMeasure;
  using G = FGenerator;
  return {
      {"mutual information", {M::shannon()}, {true, true, true}},
      {"Arimoto MI (alpha)", {M::arimoto(0.5), M::arimoto(2), M::arimoto(5)}, {true, true, true}},
      {"Arimoto MI (inf)", {M::arimoto(kInf)}, {true, true, false}},
      {"Sibson MI (alpha)", {M::sibson(0.5), M::sibson(2), M::sibson(5)}, {true, true, true}},
      {"Sibson MI (inf)", {M::sibson(kInf)}, {true, true, true}},
      {"Csiszar MI (alpha)", {M::csiszar(0.5), M::csiszar(2)}, {true, true, true}},
      {"f-information",
       {M::f_information(G::kl), M::f_information(G::total_variation), M::f_information(G::chi_squared),
        M::f_information(G::hellinger)},
       {true, true, true}},
      {"f-leakage",
       {M::f_leakage(G::kl), M::f_leakage(G::total_variation), M::f_leakage(G::chi_squared),
        M::f_leakage(G::hellinger)},
       {true, true, true}},
      {"maximal leakage", {M::maximal()}, {true, true, true}},
      {"alpha-leakage", {M::alpha(2), M::alpha(5)}, {true, true, true}},
      {"maximal alpha-leakage", {M::maximal_alpha(2), M::maximal_alpha(5)}, {true, true, true}},
      {"mmse-leakage", {M::mmse()}, {true, true, false}},
  };
}

struct AxiomCell {
  bool claimed = true;
  bool observed = true;
  std::vector<PropertyResult> properties;
};

struct AxiomRowReport {
  std::string name;
  std::array<AxiomCell, 3> cells;
  bool matches() const {
    return std::all_of(cells.begin(), cells.end(), [](const AxiomCell& c) { return c.claimed == c.observed; });
  }
};

struct AxiomMatrix {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomRowReport> rows;
  bool matches() const {
    return std::all_of(rows.begin(), rows.end(), [](const AxiomRowReport& r) { return r.matches(); });
  }
  // A claimed property was violated.
  bool counterexample_found() const {
    for (const auto& r : rows) {
      for (const auto& c : r.cells) {
        if (c.claimed && !c.observed) return true;
      }
    }
    return false;
  }
};

// X uniform on {-1, 0, +1} and Y = |X|: mean independent, not independent.
inline JointModel mmse_witness_model() {
  const auto x = Alphabet::numeric({-1.0, 0.0, 1.0});
  const auto y = Alphabet::numeric({0.0, 1.0});
  return {FiniteDistribution::uniform(x), Channel::from_rows(x, y, {{0, 1}, {1, 0}, {0, 1}})};
}

namespace detail {

inline Json model_json(const JointModel& m) { return io::to_json(m); }

// A random joint with 2 to 4 symbols on each side; X carries values 0, 1, ...
inline JointModel axiom_model(Rng& rng) {
  return random_model(rng, 2 + rng.below(3), 2 + rng.below(3));
}

inline JointModel independent_model(Rng& rng, const JointModel& like) {
  const auto out = random_distribution(rng, like.channel.output);
  return {like.prior, Channel::constant(like.prior.alphabet, out)};
}

// Dependent-but-zero joints for the independence column: every 2 x 2 model
// on a 0.1 grid, plus the symmetric three-point model observed through |X|.
inline std::vector<JointModel> independence_witness_candidates() {
  std::vector<JointModel> out;
  const Alphabet x2(Alphabet::indexed(2, "x").labels(), std::vector<double>{0.0, 1.0});
  const Alphabet y2 = Alphabet::indexed(2, "y");
  for (int p = 1; p <= 9; ++p) {
    for (int a = 0; a <= 10; ++a) {
      for (int b = 0; b <= 10; ++b) {
        const double pa = a / 10.0, pb = b / 10.0;
        out.push_back({FiniteDistribution{x2, {p / 10.0, 1.0 - p / 10.0}},
                       Channel::from_rows(x2, y2, {{pa, 1.0 - pa}, {pb, 1.0 - pb}})});
      }
    }
  }
  out.push_back(mmse_witness_model());
  return out;
}

}  // namespace detail

inline AxiomMatrix axiom_matrix(std::size_t trials, std::uint64_t seed) {
  AxiomMatrix out;
  out.trials = trials;
  out.seed = seed;
  const auto witnesses = detail::independence_witness_candidates();
  const auto rows = axiom_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    AxiomRowReport rep;
    rep.name = rows[r].name;
    for (std::size_t col = 0; col < 3; ++col) rep.cells[col].claimed = rows[r].claimed[col];
    for (std::size_t i = 0; i < rows[r].instances.size(); ++i) {
      const auto& m = rows[r].instances[i];
      Rng rng(derive_seed(seed, r * 16 + i));
      PropertyResult nonneg{m.name() + ": non-negativity"}, dpi{m.name() + ": data processing"},
          indep{m.name() + ": zero at independence"}, dep{m.name() + ": positive under dependence"},
          search{m.name() + ": dependent-but-zero witness search"};
      nonneg.tolerance = dpi.tolerance = indep.tolerance = kAxiomTolerance;
      // Margin kZeroLeakage - L: positive when a dependent joint leaks nothing.
      dep.tolerance = search.tolerance = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto model = detail::axiom_model(rng);
        const double lxy = leakage_value(m, model);
        nonneg.record(-lxy, [&] { return Json{{"model", detail::model_json(model)}, {"value", io::number(lxy)}}; });
        // Z = g(Y) through a random channel Y -> Z.
        const auto g = random_channel(rng, model.channel.output, Alphabet::indexed(2 + rng.below(3), "z"));
        const JointModel xz{model.prior, compose_channels(model.channel, g)};
        const double lxz = leakage_value(m, xz);
        dpi.record(lxz - lxy, [&] {
          return Json{{"model", detail::model_json(model)}, {"post_processing", io::to_json(g)},
                      {"leakage_xy", io::number(lxy)}, {"leakage_xz", io::number(lxz)}};
        });
        const auto ind = detail::independent_model(rng, model);
        const double l0 = leakage_value(m, ind);
        indep.record(std::abs(l0), [&] {
          return Json{{"model", detail::model_json(ind)}, {"value", io::number(l0)}, {"dependence_tv", 0.0}};
        });
        const double tv = dependence_tv(model);
        if (tv >= kDependenceThreshold) {
          dep.record(kZeroLeakage - lxy, [&] {
            return Json{{"model", detail::model_json(model)}, {"value", io::number(lxy)},
                        {"dependence_tv", io::number(tv)}};
          });
        }
      }
      for (const auto& w : witnesses) {
        if (requires_numeric_x(m.kind) && !w.prior.alphabet.values()) continue;
        const double tv = dependence_tv(w);
        if (tv < kDependenceThreshold) continue;
        const double l = leakage_value(m, w);
        search.record(kZeroLeakage - l, [&] {
          return Json{{"model", detail::model_json(w)}, {"value", io::number(l)}, {"dependence_tv", io::number(tv)}};
        });
      }
      rep.cells[0].properties.push_back(std::move(nonneg));
      rep.cells[1].properties.push_back(std::move(dpi));
      rep.cells[2].properties.push_back(std::move(indep));
      rep.cells[2].properties.push_back(std::move(dep));
      rep.cells[2].properties.push_back(std::move(search));
    }
    for (auto& cell : rep.cells) {
      cell.observed = std::all_of(cell.properties.begin(), cell.properties.end(),
                                  [](const PropertyResult& p) { return p.passed(); });
    }
    out.rows.push_back(std::move(rep));
  }
  return out;
}

inline std::string render_matrix(const AxiomMatrix& m) {
  std::string out;
  const std::string head = "measure";
  std::size_t width = head.size();
  for (const auto& r : m.rows) width = std::max(width, r.name.size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  out += pad(head) + "1) non-negativity  2) data processing  3) independence  claimed\n";
  for (const auto& r : m.rows) {
    out += pad(r.name);
    const int widths[3] = {19, 20, 17};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& cell = r.cells[c];
      std::string mark = cell.observed ? "✓" : "✗";
      if (cell.observed != cell.claimed) mark += " (expected " + std::string(cell.claimed ? "✓" : "✗") + ")";
      // The check glyphs are one column wide but three bytes long.
      out += mark + std::string(static_cast<std::size_t>(widths[c]) - (mark.size() - 2), ' ');
    }
    out += r.matches() ? "match\n" : "MISMATCH\n";
  }
  return out;
}

inline Json to_json(const AxiomMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
      Json props = Json::array();
      for (const auto& p : c.properties) props.push_back(to_json(p));
      cells.push_back({{"claimed", c.claimed}, {"observed", c.observed}, {"properties", props}});
    }
    rows.push_back({{"name", r.name}, {"matches", r.matches()}, {"columns", cells}});
  }
  return {{"suite", "table1"}, {"trials", m.trials}, {"seed", m.seed}, {"matches", m.matches()}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Identities between measures.

namespace detail {

// alpha-leakage from its definition for alpha in (1, inf): the optimal
// guessing distributions are found numerically on the simplex.
inline double alpha_leakage_by_definition(const JointModel& model, double order) {
  const double beta = std::isinf(order) ? 1.0 : (order - 1.0) / order;
  auto best_guess = [&](const std::vector<double>& w) {
    if (beta == 1.0) return *std::max_element(w.begin(), w.end());
    auto value = [&](std::span<const double> q) {
      double s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 0.0) s -= w[i] * std::pow(q[i], beta);
      }
      return s;
    };
    auto gradient = [&](std::span<const double> q, std::span<double> g) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        g[i] = w[i] > 0.0 ? -beta * w[i] * std::pow(std::max(q[i], 1e-300), beta - 1.0) : 0.0;
      }
    };
    SimplexMinimizerOptions o;
    o.gap_tolerance = 1e-15;
    o.value_tolerance = 1e-17;
    std::vector<double> start(w.size(), 1.0 / static_cast<double>(w.size()));
    return -minimize_on_simplex(value, gradient, start, o).value;
  };
  double num = 0.0;
  for (std::size_t y = 0; y < model.y_size(); ++y) {
    std::vector<double> w(model.x_size());
    for (std::size_t x = 0; x < model.x_size(); ++x) w[x] = model.joint(x, y);
    if (std::any_of(w.begin(), w.end(), [](double v) { return v > 0.0; })) num += best_guess(w);
  }
  const double den = best_guess(model.prior.probs);
  const double scale = std::isinf(order) ? 1.0 : order / (order - 1.0);
  return scale * std::log(num / den);
}

// Limit at order 1 of f(1 + h) from samples at h, 2h, 4h (one-sided
// Richardson extrapolation, error O(h^3)).
inline double one_sided_limit(const std::function<double(double)>& f, double h) {
  const double a = f(1.0 + h), b = f(1.0 + 2 * h), c = f(1.0 + 4 * h);
  return (8.0 * a - 6.0 * b + c) / 3.0;
}

// Limit at order 1 from both sides (error O(h^4)).
inline double two_sided_limit(const std::function<double(double)>& f, double h) {
  auto s = [&](double k) { return 0.5 * (f(1.0 + k) + f(1.0 - k)); };
  return (4.0 * s(h) - s(2 * h)) / 3.0;
}

}  // namespace detail

inline std::vector<PropertyResult> identity_suite(std::size_t trials, std::uint64_t seed) {
  using M = LeakageMeasure;
  std::vector<PropertyResult> props;
  auto add = [&](const std::string& name) -> PropertyResult& {
    props.push_back({name});
    props.back().tolerance = kAxiomTolerance;
    return props.back();
  };
  add("I = I_1^A (order 1 and limit)");
  add("I = I_1^S (order 1 and limit)");
  add("I = I_1^C (order 1 and limit)");
  add("I = I_f with f(t) = t log t");
  add("I_1^A = alpha-leakage (limit of the definition)");
  add("I_2^A = alpha-leakage (definition)");
  add("I_5^A = alpha-leakage (definition)");
  add("I_inf^A = alpha-leakage (definition)");
  add("maximal leakage = I_inf^S");
  Rng rng(derive_seed(seed, 0));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto model = random_model(rng, 3, 3);
    const double mi = shannon_mi(model);
    auto describe = [&](double other) {
      return [&, other] { return Json{{"model", io::to_json(model)}, {"shannon", io::number(mi)}, {"other", io::number(other)}}; };
    };
    auto check = [&](std::size_t k, double lhs, double rhs) { props[k].record(std::abs(lhs - rhs), describe(rhs)); };
    // Both the value at order 1 and the limit of the general formula.
    auto check_order_one = [&](std::size_t k, const std::function<double(double)>& f, double at_one) {
      const double limit = detail::two_sided_limit(f, 1e-3);
      const double worst = std::abs(at_one - mi) > std::abs(limit - mi) ? at_one : limit;
      check(k, mi, worst);
    };
    check_order_one(0, [&](double a) { return arimoto_mi_unchecked(model, a); },
                    leakage_value(M::arimoto(1), model));
    check_order_one(1, [&](double a) { return sibson_mi_unchecked(model, a); },
                    leakage_value(M::sibson(1), model));
    check_order_one(2, [&](double a) { return leakage_value(M::csiszar(a), model); },
                    leakage_value(M::csiszar(1), model));
    check(3, mi, leakage_value(M::f_information(FGenerator::kl), model));
    check(4, mi, detail::one_sided_limit([&](double a) { return detail::alpha_leakage_by_definition(model, a); }, 1e-3));
    check(5, leakage_value(M::arimoto(2), model), detail::alpha_leakage_by_definition(model, 2));
    check(6, leakage_value(M::arimoto(5), model), detail::alpha_leakage_by_definition(model, 5));
    check(7, leakage_value(M::arimoto(kInf), model), detail::alpha_leakage_by_definition(model, kInf));
    check(8, leakage_value(M::maximal(), model), leakage_value(M::sibson(kInf), model));
  }
  return props;
}

// ---------------------------------------------------------------------------
// Fundamental limit: converse and achievability on random instances.

struct LimitTrial {
  LossSpec loss;
  FiniteDistribution prior;
  LeakageMeasure measure;
  double budget = 0.0;
  Theorem1Report report;
};

// Measures cycled through by the fundamental-limit suite.
inline std::vector<LeakageMeasure> limit_measures() {
  using M = LeakageMeasure;
  return {M::shannon(),  M::sibson(0.5), M::f_information(FGenerator::total_variation),
          M::arimoto(2), M::maximal(),   M::f_information(FGenerator::chi_squared),
          M::sibson(2),  M::alpha(2),    M::f_leakage(FGenerator::kl),
          M::csiszar(2)};
}

// A random classical loss on 2 inputs and 2 or 3 actions in which action x
// is the cheapest under input x, so observing X has value.
inline LossSpec random_decisive_loss(Rng& rng, std::size_t nx, std::size_t na) {
  std::vector<std::vector<double>> m(nx, std::vector<double>(na));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t a = 0; a < na; ++a) m[x][a] = x == a ? 0.2 * rng.uniform() : 0.3 + 0.7 * rng.uniform();
  }
  return LossSpec::classical(m, Alphabet::indexed(na, "a"));
}

inline Json to_json(const Theorem1Report& r) {
  return {{"fundamental", io::number(r.fundamental)},
          {"fundamental_slack", io::number(r.fundamental_slack)},
          {"converse_margin", io::number(r.converse_margin)},
          {"converse_tolerance", io::number(r.converse_tolerance)},
          {"alphabets_checked", r.alphabets_checked},
          {"achievability_margin", io::number(r.achievability_margin)},
          {"achievability_tolerance", io::number(r.achievability_tolerance)},
          {"achieved_gain", io::number(r.achieved_gain)},
          {"achieved_leakage", io::number(r.achieved_leakage)}};
}

struct LimitSuite {
  PropertyResult converse{"converse: V(R; Y) <= V(R)"};
  PropertyResult achievability{"achievability: gain of t(A) >= V(R)"};
  std::vector<LimitTrial> trials;
};

inline LimitSuite limit_suite(std::size_t trials, std::uint64_t seed,
                                    std::uint64_t alphabet_grid_budget = 5000) {
  LimitSuite s;
  // Margins are normalized by the trial's own tolerance budget.
  s.converse.tolerance = 0.0;
  s.achievability.tolerance = 0.0;
  const auto measures = limit_measures();
  Rng rng(derive_seed(seed, 1));
  for (std::size_t t = 0; t < trials; ++t) {
    LimitTrial tr;
    tr.prior = random_distribution(rng, Alphabet::indexed(2, "x"));
    tr.loss = random_decisive_loss(rng, 2, 2 + rng.below(2));
    tr.measure = measures[t % measures.size()];
    tr.budget = upper_bound_K(tr.measure, tr.prior) * rng.uniform();
    tr.report = verify_theorem1(tr.loss, tr.prior, tr.measure, tr.budget, rng, {}, alphabet_grid_budget);
    auto describe = [&] {
      return Json{{"loss", io::to_json(tr.loss)},
                  {"p_x", tr.prior.probs},
                  {"measure", io::to_json(tr.measure)},
                  {"budget", io::number(tr.budget)},
                  {"report", to_json(tr.report)}};
    };
    s.converse.record(tr.report.converse_margin - tr.report.converse_tolerance, describe);
    double ach = tr.report.achievability_margin - tr.report.achievability_tolerance;
    if (tr.report.achieved_leakage > tr.budget + 1e-6) ach = std::max(ach, tr.report.achieved_leakage - tr.budget);
    s.achievability.record(ach, describe);
    s.trials.push_back(std::move(tr));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Standard-loss upper bound on alpha-loss instances.

struct UpperBoundSuite {
  PropertyResult dominates{"upper bound >= V(R; Y)"};
  PropertyResult zero_at_zero{"upper bound at R = 0 is 0"};
};

inline UpperBoundSuite upper_bound_suite(std::size_t trials, std::uint64_t seed, std::size_t resolution = 10) {
  UpperBoundSuite s;
  s.dominates.tolerance = 1e-9;
  s.zero_at_zero.tolerance = 1e-9;
  Rng rng(derive_seed(seed, 2));
  const auto m = LeakageMeasure::shannon();
  const auto y = Alphabet::indexed(2, "y");
  VoiOptions plain;
  plain.refine = false;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto prior = random_distribution(rng, Alphabet::indexed(2, "x"));
    const double order = t % 2 == 0 ? 1.0 : 2.0;
    const auto loss = LossSpec::alpha(order);
    const double r = shannon_entropy(prior.probs) * rng.uniform();
    const double bound = standard_loss_upper_bound(loss, prior, m, r, y, resolution);
    const auto v = alphabet_constrained_voi(loss, prior, m, r, y, resolution, plain);
    auto describe = [&](double b, double other) {
      return [&, b, other] {
        return Json{{"p_x", prior.probs}, {"order", order}, {"budget", io::number(r)},
                    {"upper_bound", io::number(b)}, {"v", io::number(other)}};
      };
    };
    s.dominates.record(v.v_value - bound, describe(bound, v.v_value));
    const double zero = standard_loss_upper_bound(loss, prior, m, 0.0, y, resolution);
    s.zero_at_zero.record(std::abs(zero), describe(zero, 0.0));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Curve shape and leakage scaling.

struct CurveShapeSuite {
  PropertyResult monotone{"V(R) non-decreasing"};
  PropertyResult concave{"V(R) concave for convex measures"};
  PropertyResult quasi_concave{"V(R) quasi-concave for quasi-convex measures"};
  PropertyResult scaling{"L1 <= c L2 implies V_2(R) <= V_1(cR)"};
  std::size_t premises_verified = 0;
};

inline std::vector<LeakageMeasure> curve_shape_measures() {
  using M = LeakageMeasure;
  return {M::shannon(),    M::f_information(FGenerator::chi_squared), M::f_leakage(FGenerator::hellinger),
          M::sibson(0.5),  M::csiszar(0.5),                           M::arimoto(2),
          M::sibson(2),    M::maximal(),                              M::alpha(5)};
}

inline CurveShapeSuite curve_shape_suite(std::size_t trials, std::uint64_t seed, std::size_t grid_points = 6) {
  CurveShapeSuite s;
  const auto measures = curve_shape_measures();
  Rng rng(derive_seed(seed, 3));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto prior = random_distribution(rng, Alphabet::indexed(2, "x"));
    const auto loss = random_decisive_loss(rng, 2, 2);
    const auto& m = measures[t % measures.size()];
    const auto curve = voi_curve(loss, prior, m, budget_grid(m, prior, grid_points));
    // check_curve already folds each point's solver slack into its tolerance.
    auto describe = [&] {
      Json pts = Json::array();
      for (const auto& p : curve.points) pts.push_back({io::number(p.budget), io::number(p.v_value)});
      return Json{{"loss", io::to_json(loss)}, {"p_x", prior.probs}, {"measure", io::to_json(m)}, {"curve", pts}};
    };
    double tol = 1e-6;
    for (const auto& p : curve.points) tol = std::max(tol, p.solver.slack);
    s.monotone.record(curve.checks.worst_monotone_margin - (1e-8 + tol), describe);
    if (curve.checks.concave) s.concave.record(curve.checks.worst_second_difference - tol, describe);
    if (curve.checks.quasi_concave) s.quasi_concave.record(curve.checks.worst_quasi_margin - tol, describe);
  }
  // Scaling: I <= maximal leakage (c = 1) and I <= c * TV-information with c
  // estimated on a sample; premises are checked before the conclusion.
  Rng srng(derive_seed(seed, 4));
  const std::size_t scaling_trials = std::max<std::size_t>(1, trials / 4);
  for (std::size_t t = 0; t < scaling_trials; ++t) {
    const auto prior = random_distribution(srng, Alphabet::indexed(2, "x"));
    const auto loss = random_decisive_loss(srng, 2, 2);
    const auto tv = LeakageMeasure::f_information(FGenerator::total_variation);
    const bool use_tv = t % 2 == 1;
    const auto m2 = use_tv ? tv : LeakageMeasure::maximal();
    const double c = use_tv ? 1.1 * sample_leakage_ratio(LeakageMeasure::shannon(), tv, prior, srng, 200) : 1.0;
    const auto rep = scaling_comparison(LeakageMeasure::shannon(), m2, c, loss, prior, budget_grid(m2, prior, 4),
                                        srng, 200);
    if (!rep.premise_verified) continue;
    ++s.premises_verified;
    for (const auto& k : rep.checks) {
      s.scaling.record(k.lhs - k.rhs - k.tolerance, [&] {
        return Json{{"loss", io::to_json(loss)}, {"p_x", prior.probs}, {"m2", io::to_json(m2)}, {"c", c},
                    {"budget", io::number(k.budget)}, {"lhs", io::number(k.lhs)}, {"rhs", io::number(k.rhs)}};
      });
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Sufficiency of the posterior statistic.

struct SufficiencySuite {
  PropertyResult shannon_equal{"I(X; t(A)) = I(X; A)"};
  PropertyResult never_exceeds{"L(X -> t(A)) <= L(X -> A), every measure"};
  PropertyResult deviation{"check_sufficiency deviation is 0"};
  PropertyResult merges{"duplicated posteriors share a class"};
};

// A channel X -> A whose extra actions copy the posterior of an existing
// one: column a is split in two with a random proportion.
inline Channel channel_with_duplicates(Rng& rng, const Alphabet& x, std::size_t base, std::size_t copies) {
  auto c = random_channel(rng, x, Alphabet::indexed(base, "a"));
  std::vector<std::vector<double>> cols(base, std::vector<double>(x.size()));
  for (std::size_t a = 0; a < base; ++a) {
    for (std::size_t i = 0; i < x.size(); ++i) cols[a][i] = c(i, a);
  }
  for (std::size_t k = 0; k < copies; ++k) {
    const std::size_t a = rng.below(cols.size());
    const double share = 0.1 + 0.8 * rng.uniform();
    std::vector<double> split(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      split[i] = cols[a][i] * share;
      cols[a][i] -= split[i];
    }
    cols.push_back(split);
  }
  std::vector<std::vector<double>> rows(x.size(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t a = 0; a < cols.size(); ++a) rows[i][a] = cols[a][i];
  }
  return Channel::from_rows(x, Alphabet::indexed(cols.size(), "a"), rows);
}

inline SufficiencySuite sufficiency_suite(std::size_t trials, std::uint64_t seed) {
  SufficiencySuite s;
  s.shannon_equal.tolerance = 1e-8;
  s.never_exceeds.tolerance = 1e-8;
  // Posteriors of merged actions agree up to the rounding floor.
  s.deviation.tolerance = kMergeRoundingFloor;
  s.merges.tolerance = 0.0;
  Rng rng(derive_seed(seed, 5));
  const auto measures = audit_measure_set();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t nx = 2 + rng.below(2), base = 2 + rng.below(2), copies = 1 + rng.below(2);
    std::vector<double> values(nx);
    for (std::size_t i = 0; i < nx; ++i) values[i] = static_cast<double>(i);
    const Alphabet x(Alphabet::indexed(nx, "x").labels(), values);
    const auto prior = random_distribution(rng, x);
    const auto channel = channel_with_duplicates(rng, x, base, copies);
    const auto stat = posterior_statistic(prior, channel, 0.0);
    const auto disclosure = build_disclosure_channel(prior, channel, stat);
    const JointModel xa{prior, channel}, xt{prior, disclosure};
    auto describe = [&] {
      return Json{{"model", io::to_json(xa)}, {"statistic", io::to_json(stat)}};
    };
    s.shannon_equal.record(std::abs(shannon_mi(xt) - shannon_mi(xa)), describe);
    double worst = -kInf;
    for (const auto& m : measures) worst = std::max(worst, leakage_value(m, xt) - leakage_value(m, xa));
    s.never_exceeds.record(worst, describe);
    const auto rep = check_sufficiency(prior, channel, stat);
    s.deviation.record(rep.max_deviation, describe);
    const double extra = static_cast<double>(stat.size()) - static_cast<double>(base);
    s.merges.record(extra, describe);
  }
  return s;
}

}  // namespace voi::verify
