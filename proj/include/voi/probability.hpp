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
// Finite probability primitives: labeled alphabets, distributions,
// row-stochastic channels, joint models, posteriors, Markov composition,
// quantized simplex enumeration and seeded random models.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "voi/errors.hpp"

namespace voi {

// Probabilities at or below this are treated as outside the support.
inline constexpr double kSupportEpsilon = 1e-12;
// Allowed deviation of a probability vector's sum from one.
inline constexpr double kSumTolerance = 1e-12;
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Alphabet {
 public:
  Alphabet() = default;

  // Unchecked; use validate_alphabet() or make() for checked construction.
  explicit Alphabet(std::vector<std::string> labels,
                    std::optional<std::vector<double>> values = std::nullopt)
      : labels_(std::move(labels)), values_(std::move(values)) {}

  static Alphabet make(std::vector<std::string> labels,
                       std::optional<std::vector<double>> values = std::nullopt);

  // Labels "<prefix>0", "<prefix>1", ...
  static Alphabet indexed(std::size_t n, const std::string& prefix = "s") {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return Alphabet(std::move(labels));
  }

  // Labels are the formatted values.
  static Alphabet numeric(std::vector<double> values) {
    std::vector<std::string> labels;
    labels.reserve(values.size());
    for (double v : values) labels.push_back(format_number(v));
    return make(std::move(labels), std::move(values));
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool has_values() const { return values_.has_value(); }
  const std::optional<std::vector<double>>& values() const { return values_; }
  double value(std::size_t i) const { return values_.value().at(i); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  // Symbol identity is carried by labels; numeric values are annotations.
  bool same_symbols(const Alphabet& other) const { return labels_ == other.labels_; }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> labels_;
  std::optional<std::vector<double>> values_;
};

inline Diagnostics validate_alphabet(const Alphabet& alphabet,
                                     const std::string& location) {
  Diagnostics out;
  if (alphabet.empty()) {
    out.push_back({"nonempty_alphabet", location, "alphabet has no symbols"});
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!seen.insert(alphabet.label(i)).second) {
      out.push_back({"unique_labels", location + ".labels[" + std::to_string(i) + "]",
                     "duplicate label '" + alphabet.label(i) + "'"});
    }
  }
  if (alphabet.has_values()) {
    const auto& values = *alphabet.values();
    if (values.size() != alphabet.size()) {
      out.push_back({"values_length", location + ".values",
                     "numeric values length " + std::to_string(values.size()) +
                         " differs from label count " +
                         std::to_string(alphabet.size())});
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        out.push_back({"finite_values", location + ".values[" + std::to_string(i) + "]",
                       "numeric value is not finite"});
      }
    }
  }
  return out;
}

inline Alphabet Alphabet::make(std::vector<std::string> labels,
                               std::optional<std::vector<double>> values) {
  Alphabet a(std::move(labels), std::move(values));
  if (auto d = validate_alphabet(a, "alphabet"); !d.empty()) throw ValidationError(d);
  return a;
}

struct FiniteDistribution {
  Alphabet alphabet;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] > kSupportEpsilon) out.push_back(i);
    }
    return out;
  }

  static FiniteDistribution uniform(Alphabet alphabet) {
    const auto n = alphabet.size();
    return {std::move(alphabet), std::vector<double>(n, 1.0 / static_cast<double>(n))};
  }
};

// Row-stochastic conditional distribution, stored row-major (input x output).
struct Channel {
  Alphabet input;
  Alphabet output;
  std::vector<double> entries;

  std::size_t rows() const { return input.size(); }
  std::size_t cols() const { return output.size(); }
  double operator()(std::size_t x, std::size_t y) const { return entries[x * cols() + y]; }
  double& at(std::size_t x, std::size_t y) { return entries[x * cols() + y]; }
  std::span<const double> row(std::size_t x) const {
    return {entries.data() + x * cols(), cols()};
  }

  FiniteDistribution row_distribution(std::size_t x) const {
    auto r = row(x);
    return {output, std::vector<double>(r.begin(), r.end())};
  }

  static Channel from_rows(Alphabet input, Alphabet output,
                           const std::vector<std::vector<double>>& rows) {
    Channel c{std::move(input), std::move(output), {}};
    c.entries.reserve(c.input.size() * c.output.size());
    if (rows.size() != c.input.size()) {
      throw ValidationError("channel_shape", "channel.rows",
                            "expected " + std::to_string(c.input.size()) + " rows, got " +
                                std::to_string(rows.size()));
    }
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if (rows[x].size() != c.output.size()) {
        throw ValidationError("channel_shape", "channel.rows[" + std::to_string(x) + "]",
                              "expected " + std::to_string(c.output.size()) +
                                  " entries, got " + std::to_string(rows[x].size()));
      }
      c.entries.insert(c.entries.end(), rows[x].begin(), rows[x].end());
    }
    return c;
  }

  static Channel identity(const Alphabet& alphabet) {
    const auto n = alphabet.size();
    Channel c{alphabet, alphabet, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) c.at(i, i) = 1.0;
    return c;
  }

  // Every input emits the same output distribution (X independent of Y).
  static Channel constant(const Alphabet& input, const FiniteDistribution& out) {
    Channel c{input, out.alphabet, {}};
    c.entries.reserve(input.size() * out.size());
    for (std::size_t x = 0; x < input.size(); ++x) {
      c.entries.insert(c.entries.end(), out.probs.begin(), out.probs.end());
    }
    return c;
  }

  // Deterministic map x -> targets[x].
  static Channel deterministic(const Alphabet& input, const Alphabet& output,
                               std::span<const std::size_t> targets) {
    Channel c{input, output, std::vector<double>(input.size() * output.size(), 0.0)};
    for (std::size_t x = 0; x < input.size(); ++x) c.at(x, targets[x]) = 1.0;
    return c;
  }

  // Binary symmetric channel with crossover probability `flip`.
  static Channel bsc(double flip, const Alphabet& input = Alphabet::indexed(2, "x"),
                     const Alphabet& output = Alphabet::indexed(2, "y")) {
    return from_rows(input, output, {{1.0 - flip, flip}, {flip, 1.0 - flip}});
  }
};

struct JointModel {
  FiniteDistribution prior;
  Channel channel;

  double joint(std::size_t x, std::size_t y) const { return prior.probs[x] * channel(x, y); }
  std::size_t x_size() const { return prior.size(); }
  std::size_t y_size() const { return channel.cols(); }
};

inline Diagnostics validate_distribution(const FiniteDistribution& dist,
                                         const std::string& location) {
  Diagnostics out = validate_alphabet(dist.alphabet, location + ".alphabet");
  if (dist.probs.size() != dist.alphabet.size()) {
    out.push_back({"shape", location,
                   "has " + std::to_string(dist.probs.size()) + " entries for " +
                       std::to_string(dist.alphabet.size()) + " symbols"});
  }
  double sum = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    if (!std::isfinite(p)) {
      finite = false;
      out.push_back({"finite_entry", location + "[" + std::to_string(i) + "]",
                     "entry is not finite"});
      continue;
    }
    if (p < 0.0) {
      out.push_back({"nonnegative_entry", location + "[" + std::to_string(i) + "]",
                     "negative entry " + format_number(p)});
    }
    if (p > 1.0) {
      out.push_back({"entry_at_most_one", location + "[" + std::to_string(i) + "]",
                     "entry exceeds 1: " + format_number(p)});
    }
    sum += p;
  }
  if (finite && std::abs(sum - 1.0) > kSumTolerance) {
    out.push_back({"sum_to_one", location, "sum ≠ 1 (got " + format_number(sum) + ")"});
  }
  return out;
}

inline Diagnostics validate_channel(const Channel& channel, const std::string& location) {
  Diagnostics out = validate_alphabet(channel.input, location + ".input");
  auto out_alpha = validate_alphabet(channel.output, location + ".output");
  out.insert(out.end(), out_alpha.begin(), out_alpha.end());
  if (channel.entries.size() != channel.rows() * channel.cols()) {
    out.push_back({"shape", location, "entry count does not match alphabets"});
    return out;
  }
  for (std::size_t x = 0; x < channel.rows(); ++x) {
    FiniteDistribution row{channel.output, {channel.row(x).begin(), channel.row(x).end()}};
    auto d = validate_distribution(row, location + ".rows[" + std::to_string(x) + "]");
    for (auto& item : d) {
      // Alphabet problems were already reported once for the whole channel.
      if (item.location.find(".alphabet") == std::string::npos) out.push_back(std::move(item));
    }
  }
  return out;
}

// Returns an empty list iff every invariant of the model holds.
inline Diagnostics validate_model(const JointModel& model) {
  Diagnostics out = validate_distribution(model.prior, "prior");
  auto c = validate_channel(model.channel, "channel");
  out.insert(out.end(), c.begin(), c.end());
  if (!model.prior.alphabet.same_symbols(model.channel.input)) {
    out.push_back({"prior_matches_channel", "channel.input",
                   "channel input alphabet differs from the prior's alphabet"});
  }
  return out;
}

inline void require_valid(const JointModel& model) {
  if (auto d = validate_model(model); !d.empty()) throw ValidationError(std::move(d));
}

inline void require_valid(const FiniteDistribution& dist, const std::string& location) {
  if (auto d = validate_distribution(dist, location); !d.empty()) {
    throw ValidationError(std::move(d));
  }
}

inline void require_valid(const Channel& channel, const std::string& location) {
  if (auto d = validate_channel(channel, location); !d.empty()) {
    throw ValidationError(std::move(d));
  }
}

// p_Y(y) = sum_x p_X(x) p(y|x). Assumes a valid model.
inline std::vector<double> output_probs(const JointModel& model) {
  std::vector<double> py(model.y_size(), 0.0);
  for (std::size_t x = 0; x < model.x_size(); ++x) {
    const double px = model.prior.probs[x];
    if (px == 0.0) continue;
    auto row = model.channel.row(x);
    for (std::size_t y = 0; y < py.size(); ++y) py[y] += px * row[y];
  }
  return py;
}

inline FiniteDistribution output_marginal(const JointModel& model) {
  require_valid(model);
  return {model.channel.output, output_probs(model)};
}

// Bayes posteriors p_{X|Y}(.|y). Outputs with p_Y(y) <= kSupportEpsilon are
// unreachable: their row is left empty and every consumer skips them.
struct Posteriors {
  Alphabet x;
  Alphabet y;
  std::vector<double> output_probs;
  std::vector<std::vector<double>> rows;

  bool reachable(std::size_t y_index) const { return !rows[y_index].empty(); }
  std::size_t size() const { return rows.size(); }

  // Y -> X channel; unreachable rows carry the prior so the result stays
  // row-stochastic. Use reachable() before trusting a row.
  Channel as_channel(const FiniteDistribution& prior) const {
    Channel c{y, x, {}};
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto& r = reachable(j) ? rows[j] : prior.probs;
      c.entries.insert(c.entries.end(), r.begin(), r.end());
    }
    return c;
  }
};

inline Posteriors posteriors_unchecked(const JointModel& model) {
  Posteriors out{model.prior.alphabet, model.channel.output, output_probs(model), {}};
  out.rows.resize(model.y_size());
  for (std::size_t y = 0; y < model.y_size(); ++y) {
    const double py = out.output_probs[y];
    if (py <= kSupportEpsilon) continue;
    auto& row = out.rows[y];
    row.resize(model.x_size());
    for (std::size_t x = 0; x < model.x_size(); ++x) row[x] = model.joint(x, y) / py;
  }
  return out;
}

inline Posteriors posteriors(const JointModel& model) {
  require_valid(model);
  return posteriors_unchecked(model);
}

// Markov composition X -> Y -> Z as the matrix product p_{Z|X} = p_{Y|X} p_{Z|Y}.
inline Channel compose_channels(const Channel& first, const Channel& second) {
  if (!first.output.same_symbols(second.input)) {
    throw ValidationError("alphabet_match", "compose_channels",
                          "first channel's output alphabet differs from the second's input");
  }
  Channel out{first.input, second.output,
              std::vector<double>(first.rows() * second.cols(), 0.0)};
  for (std::size_t x = 0; x < first.rows(); ++x) {
    for (std::size_t y = 0; y < first.cols(); ++y) {
      const double w = first(x, y);
      if (w == 0.0) continue;
      for (std::size_t z = 0; z < second.cols(); ++z) out.at(x, z) += w * second(y, z);
    }
  }
  return out;
}

// Number of points of the simplex grid with the given resolution, i.e.
// C(resolution + dimension - 1, dimension - 1). Saturates at UINT64_MAX.
inline std::uint64_t simplex_grid_count(std::size_t dimension, std::size_t resolution) {
  if (dimension == 0) return 0;
  const std::uint64_t k = dimension - 1;
  long double count = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    count = count * static_cast<long double>(resolution + i) / static_cast<long double>(i);
    if (count >= 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(count));
}

// Saturating product used for Cartesian-product enumeration sizes.
inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

// Every probability vector of the given dimension whose entries are integer
// multiples of 1/resolution, in lexicographic order of the integer counts
// (first coordinate slowest): [0,..,0,1], ..., [1,0,..,0].
class SimplexGrid {
 public:
  SimplexGrid(std::size_t dimension, std::size_t resolution,
              std::uint64_t cap = kDefaultEnumerationCap)
      : dimension_(dimension), resolution_(resolution) {
    if (dimension == 0 || resolution == 0) {
      throw ValidationError("grid_arguments", "enumerate_simplex_grid",
                            "dimension and resolution must be at least 1");
    }
    count_ = simplex_grid_count(dimension, resolution);
    if (count_ > cap) throw CapExceeded(count_, cap);
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t resolution() const { return resolution_; }
  std::uint64_t size() const { return count_; }

  class iterator {
   public:
    using value_type = std::vector<double>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::size_t dimension, std::size_t resolution, bool end)
        : resolution_(resolution), counts_(dimension, 0), done_(end) {
      counts_.back() = resolution;
      refresh();
    }

    const std::vector<double>& operator*() const { return point_; }
    const std::vector<double>* operator->() const { return &point_; }
    const std::vector<std::size_t>& counts() const { return counts_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    bool operator==(const iterator& other) const { return done_ == other.done_; }

   private:
    void advance() {
      const std::size_t d = counts_.size();
      if (d == 1 || counts_.front() == resolution_) {
        done_ = true;
        return;
      }
      // Rightmost position i < d-1 whose suffix still holds mass.
      std::size_t suffix = counts_[d - 1];
      std::size_t i = d - 1;
      while (i-- > 0) {
        if (suffix > 0) break;
        suffix += counts_[i];
      }
      counts_[i] += 1;
      for (std::size_t j = i + 1; j + 1 < d; ++j) counts_[j] = 0;
      counts_[d - 1] = suffix - 1;
      refresh();
    }

    void refresh() {
      point_.resize(counts_.size());
      const double r = static_cast<double>(resolution_);
      for (std::size_t j = 0; j < counts_.size(); ++j) {
        point_[j] = static_cast<double>(counts_[j]) / r;
      }
    }

    std::size_t resolution_ = 1;
    std::vector<std::size_t> counts_;
    std::vector<double> point_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(dimension_, resolution_, false); }
  iterator end() const { return iterator(dimension_, resolution_, true); }

  std::vector<std::vector<double>> materialize() const {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (const auto& p : *this) out.push_back(p);
    return out;
  }

 private:
  std::size_t dimension_;
  std::size_t resolution_;
  std::uint64_t count_ = 0;
};

inline SimplexGrid enumerate_simplex_grid(std::size_t dimension, std::size_t resolution,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
  return SimplexGrid(dimension, resolution, cap);
}

// Seeded generator. Uniform draws use the top 53 bits of mt19937_64 so the
// stream is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exponential(1) draw.
  double exponential() { return -std::log1p(-uniform()); }

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Inverse-CDF categorical draw.
  std::size_t categorical(std::span<const double> probs) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      acc += probs[i];
      last_positive = i;
      if (u < acc) return i;
    }
    return last_positive;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Symmetric Dirichlet(1) draw quantized to multiples of 1e-12; the largest
// entry absorbs the rounding so the vector sums to one.
inline std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) {
    v = rng.exponential();
    total += v;
  }
  std::size_t largest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::round(p[i] / total * 1e12) / 1e12;
    if (p[i] > p[largest]) largest = i;
  }
  double rest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != largest) rest += p[i];
  }
  p[largest] = 1.0 - rest;
  return p;
}

inline FiniteDistribution random_distribution(Rng& rng, const Alphabet& alphabet) {
  return {alphabet, random_simplex_point(rng, alphabet.size())};
}

inline Channel random_channel(Rng& rng, const Alphabet& input, const Alphabet& output) {
  Channel c{input, output, {}};
  c.entries.reserve(input.size() * output.size());
  for (std::size_t x = 0; x < input.size(); ++x) {
    auto row = random_simplex_point(rng, output.size());
    c.entries.insert(c.entries.end(), row.begin(), row.end());
  }
  return c;
}

// Random model with X labeled x0.. carrying numeric values 0, 1, 2, ...
inline JointModel random_model(Rng& rng, std::size_t nx, std::size_t ny) {
  std::vector<double> values(nx);
  for (std::size_t i = 0; i < nx; ++i) values[i] = static_cast<double>(i);
  Alphabet x(Alphabet::indexed(nx, "x").labels(), values);
  Alphabet y = Alphabet::indexed(ny, "y");
  auto prior = random_distribution(rng, x);
  return {prior, random_channel(rng, x, y)};
}

// Total-variation distance between p_{XY} and p_X p_Y.
inline double dependence_tv(const JointModel& model) {
  const auto py = output_probs(model);
  double tv = 0.0;
  for (std::size_t x = 0; x < model.x_size(); ++x) {
    for (std::size_t y = 0; y < model.y_size(); ++y) {
      tv += std::abs(model.joint(x, y) - model.prior.probs[x] * py[y]);
    }
  }
  return 0.5 * tv;
}

}  // namespace voi
