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
// Sufficient statistics of an action A for X: the posterior-vector statistic
// t(A), the likelihood-ratio statistic s(A), and the disclosure channel
// p*_{Y|X} obtained by publishing t(A).
#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "voi/errors.hpp"
#include "voi/probability.hpp"

namespace voi {

inline constexpr double kDefaultMergeEpsilon = 1e-9;
// Distances at or below this count as rounding noise even when
// merge_epsilon is 0.
inline constexpr double kMergeRoundingFloor = 16 * DBL_EPSILON;

enum class StatisticKind { posterior, likelihood_ratio, identity };

inline const char* to_string(StatisticKind k) {
  switch (k) {
    case StatisticKind::posterior: return "posterior";
    case StatisticKind::likelihood_ratio: return "likelihood_ratio";
    case StatisticKind::identity: return "identity";
  }
  return "?";
}

// A partition of the action alphabet. Classes are ordered by their first
// member; the class of unreachable actions (p_A(a) = 0), if any, comes last.
struct StatisticMap {
  Alphabet source;
  StatisticKind kind = StatisticKind::posterior;
  double merge_epsilon = 0.0;
  std::vector<std::vector<std::size_t>> classes;
  // Posterior p_{X|Y}(.|class) for posterior/identity kinds, the ratio vector
  // for likelihood_ratio. Empty for the unreachable class.
  std::vector<std::vector<double>> representatives;
  std::vector<std::size_t> class_of;
  std::optional<std::size_t> unreachable_class;

  std::size_t size() const { return classes.size(); }

  std::string class_label(std::size_t c) const {
    if (unreachable_class && *unreachable_class == c) return "<unreachable>";
    std::string out;
    for (std::size_t a : classes[c]) {
      if (!out.empty()) out += "+";
      out += source.label(a);
    }
    return out;
  }

  Alphabet class_alphabet() const {
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < classes.size(); ++c) labels.push_back(class_label(c));
    return Alphabet(std::move(labels));
  }
};

namespace detail {

inline double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Single-linkage clustering of `items` (indices into vectors) in input order.
template <typename Close>
std::vector<std::vector<std::size_t>> single_linkage(const std::vector<std::size_t>& items,
                                                     Close close) {
  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (close(items[i], items[j])) {
        const std::size_t ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(items.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(items[i]);
  }
  return out;
}

// Mass-weighted average of member posteriors written as an offset from the
// first member, so a class of identical posteriors reproduces it exactly.
inline std::vector<double> merged_posterior(const std::vector<std::size_t>& members,
                                            const Posteriors& post) {
  const auto& first = post.rows[members.front()];
  std::vector<double> out = first;
  double total = 0.0;
  for (std::size_t a : members) total += post.output_probs[a];
  for (std::size_t i = 0; i < out.size(); ++i) {
    double shift = 0.0;
    for (std::size_t a : members) shift += post.output_probs[a] * (post.rows[a][i] - first[i]);
    out[i] += shift / total;
  }
  return out;
}

inline void finish_statistic(StatisticMap& s, const Posteriors& post,
                             const std::vector<std::size_t>& unreachable) {
  if (!unreachable.empty()) {
    s.unreachable_class = s.classes.size();
    s.classes.push_back(unreachable);
  }
  s.class_of.assign(s.source.size(), 0);
  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    for (std::size_t a : s.classes[c]) s.class_of[a] = c;
  }
  if (s.kind != StatisticKind::likelihood_ratio) {
    for (std::size_t c = 0; c < s.classes.size(); ++c) {
      s.representatives.push_back(s.unreachable_class == c ? std::vector<double>{}
                                                             : merged_posterior(s.classes[c], post));
    }
  }
}

}  // namespace detail

// t(A): actions grouped by their posterior p_{X|A}(.|a), single linkage under
// the sup norm with threshold merge_epsilon. The identity kind keeps every
// action in its own class.
inline StatisticMap posterior_statistic(const FiniteDistribution& prior, const Channel& channel,
                                        double merge_epsilon = kDefaultMergeEpsilon,
                                        StatisticKind kind = StatisticKind::posterior) {
  const JointModel model{prior, channel};
  require_valid(model);
  if (!(merge_epsilon >= 0.0)) {
    throw ValidationError("merge_epsilon", "posterior_statistic", "merge_epsilon must be >= 0");
  }
  if (kind == StatisticKind::likelihood_ratio) {
    throw ValidationError("statistic_kind", "posterior_statistic",
                          "use likelihood_ratio_statistic for ratio statistics");
  }
  const auto post = posteriors_unchecked(model);
  StatisticMap s{channel.output, kind, merge_epsilon, {}, {}, {}, std::nullopt};
  std::vector<std::size_t> reachable, unreachable;
  for (std::size_t a = 0; a < post.size(); ++a) (post.reachable(a) ? reachable : unreachable).push_back(a);
  if (kind == StatisticKind::identity) {
    for (std::size_t a = 0; a < post.size(); ++a) s.classes.push_back({a});
    s.class_of.resize(post.size());
    std::iota(s.class_of.begin(), s.class_of.end(), 0);
    for (std::size_t a = 0; a < post.size(); ++a) {
      s.representatives.push_back(post.reachable(a) ? post.rows[a] : std::vector<double>{});
    }
    return s;
  }
  s.classes = detail::single_linkage(reachable, [&](std::size_t a, std::size_t b) {
    return detail::sup_distance(post.rows[a], post.rows[b]) <= merge_epsilon + kMergeRoundingFloor;
  });
  detail::finish_statistic(s, post, unreachable);
  return s;
}

// s(A) = (p(a|x) / p(a|x_1))_x over supp(p_X), x_1 its first symbol. Requires
// every reachable action to have positive likelihood under every x in the
// support. Ratios are compared with relative tolerance merge_epsilon, and the
// resulting partition is checked against the posterior-ratio statistic e(A).
inline StatisticMap likelihood_ratio_statistic(const FiniteDistribution& prior,
                                               const Channel& channel,
                                               double merge_epsilon = kDefaultMergeEpsilon) {
  const JointModel model{prior, channel};
  require_valid(model);
  const auto supp = prior.support();
  Diagnostics violations;
  for (std::size_t a = 0; a < channel.cols(); ++a) {
    bool any = false, all = true;
    std::size_t zero_x = 0;
    for (std::size_t x : supp) {
      if (channel(x, a) > 0.0) {
        any = true;
      } else if (all) {
        all = false;
        zero_x = x;
      }
    }
    if (any && !all) {
      violations.push_back({"common_support",
                            "channel(" + prior.alphabet.label(zero_x) + ", " +
                                channel.output.label(a) + ")",
                            "likelihood is zero for " + prior.alphabet.label(zero_x) +
                                " but positive for another input"});
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const auto post = posteriors_unchecked(model);
  std::vector<std::size_t> reachable, unreachable;
  for (std::size_t a = 0; a < post.size(); ++a) (post.reachable(a) ? reachable : unreachable).push_back(a);
  const std::size_t base = supp.front();
  auto ratios = [&](std::size_t a, bool posterior_ratio) {
    std::vector<double> r;
    for (std::size_t x : supp) {
      if (x == base) continue;
      r.push_back(posterior_ratio ? post.rows[a][x] / post.rows[a][base]
                                  : channel(x, a) / channel(base, a));
    }
    return r;
  };
  auto close = [&](bool posterior_ratio) {
    return [&, posterior_ratio](std::size_t a, std::size_t b) {
      const auto ra = ratios(a, posterior_ratio), rb = ratios(b, posterior_ratio);
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const double scale = std::max({1.0, std::abs(ra[i]), std::abs(rb[i])});
        if (std::abs(ra[i] - rb[i]) > (merge_epsilon + kMergeRoundingFloor) * scale) return false;
      }
      return true;
    };
  };
  StatisticMap s{channel.output, StatisticKind::likelihood_ratio, merge_epsilon, {}, {}, {}, std::nullopt};
  s.classes = detail::single_linkage(reachable, close(false));
  if (detail::single_linkage(reachable, close(true)) != s.classes) {
    throw SolverError("likelihood-ratio and posterior-ratio partitions disagree");
  }
  for (const auto& c : s.classes) s.representatives.push_back(ratios(c.front(), false));
  detail::finish_statistic(s, post, unreachable);
  return s;
}

// p*_{Y|X}(y|x) = sum over a in class y of p_{A|X}(a|x). The unreachable class
// becomes an output only if some row puts mass on it.
inline Channel build_disclosure_channel(const FiniteDistribution& prior, const Channel& channel,
                                        const StatisticMap& statistic) {
  require_valid(JointModel{prior, channel});
  if (!statistic.source.same_symbols(channel.output) ||
      statistic.class_of.size() != channel.cols()) {
    throw ValidationError("statistic_match", "build_disclosure_channel",
                          "statistic was not built from this channel's action alphabet");
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < statistic.size(); ++c) {
    bool mass = true;
    if (statistic.unreachable_class == c) {
      mass = false;
      for (std::size_t x = 0; x < channel.rows(); ++x) {
        for (std::size_t a : statistic.classes[c]) mass = mass || channel(x, a) > 0.0;
      }
    }
    if (mass) keep.push_back(c);
  }
  std::vector<std::string> labels;
  for (std::size_t c : keep) labels.push_back(statistic.class_label(c));
  Channel out{channel.input, Alphabet(std::move(labels)),
              std::vector<double>(channel.rows() * keep.size(), 0.0)};
  for (std::size_t x = 0; x < channel.rows(); ++x) {
    for (std::size_t k = 0; k < keep.size(); ++k) {
      double s = 0.0;
      for (std::size_t a : statistic.classes[keep[k]]) s += channel(x, a);
      out.at(x, k) = s;
    }
  }
  return out;
}

struct SufficiencyReport {
  bool sufficient = true;
  double max_deviation = 0.0;
  double threshold = 0.0;
};

// max over reachable a and x of |p_{X|A}(x|a) - p_{X|Y}(x|t(a))|.
inline SufficiencyReport check_sufficiency(const FiniteDistribution& prior, const Channel& channel,
                                           const StatisticMap& statistic) {
  const JointModel model{prior, channel};
  require_valid(model);
  if (statistic.class_of.size() != channel.cols()) {
    throw ValidationError("statistic_match", "check_sufficiency",
                          "statistic was not built from this channel's action alphabet");
  }
  const auto post = posteriors_unchecked(model);
  SufficiencyReport r;
  for (std::size_t c = 0; c < statistic.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t a : statistic.classes[c]) {
      if (post.reachable(a)) members.push_back(a);
    }
    if (members.empty()) continue;
    const auto merged = detail::merged_posterior(members, post);
    for (std::size_t a : members) r.max_deviation = std::max(r.max_deviation, detail::sup_distance(post.rows[a], merged));
  }
  r.threshold = statistic.merge_epsilon * (1.0 + 1e-6) + kMergeRoundingFloor;
  r.sufficient = r.max_deviation <= r.threshold;
  return r;
}

}  // namespace voi
