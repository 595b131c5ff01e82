// Copyright 2026 The filterkey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filterkey/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "filterkey/errors.hpp"

namespace filterkey {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Pattern search layout.
constexpr std::size_t kStructuredStarts = 16;
constexpr std::size_t kRandomStarts = 16;
constexpr double kInitialStep = 0.25;
constexpr double kShrink = 0.5;
constexpr double kMinStep = 1e-6;
constexpr std::size_t kMaxEvaluationsPerStart = 20000;
// A move must beat the incumbent by more than rounding noise.
constexpr double kImprovementMargin = 1e-14;

// Golden-section search over log10(b = c).
constexpr double kGoldenTolerance = 1e-10;

// Knuth's MMIX multiplier and increment.
using Lcg64 = std::linear_congruential_engine<std::uint64_t,
                                              6364136223846793005ULL,
                                              1442695040888963407ULL, 0ULL>;

double unit_uniform(Lcg64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

using Params = std::array<double, 8>;

class Evaluator {
 public:
  Evaluator(const DensityMatrix16& state, double lower, double upper)
      : state_(state), lower_(lower), upper_(upper) {}

  double operator()(const Params& x) {
    ++count_;
    return objective(state_, LocalFilter::clamped(x));
  }

  double clamp(double v) const { return std::clamp(v, lower_, upper_); }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  std::size_t count() const { return count_; }

 private:
  const DensityMatrix16& state_;
  double lower_;
  double upper_;
  std::size_t count_ = 0;
};

struct Candidate {
  Params x;
  double value;
};

Candidate pattern_search(Evaluator& eval, Params x) {
  for (double& v : x) v = eval.clamp(v);
  double best = eval(x);
  const std::size_t budget = eval.count() + kMaxEvaluationsPerStart;
  double step = kInitialStep;
  while (step >= kMinStep && eval.count() < budget) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (const double dir : {1.0, -1.0}) {
        const double trial_v = eval.clamp(x[i] + dir * step);
        if (trial_v == x[i]) continue;
        Params trial = x;
        trial[i] = trial_v;
        const double f = eval(trial);
        if (f > best + kImprovementMargin) {
          best = f;
          x = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= kShrink;
  }
  return {x, best};
}

std::vector<Params> start_points(const Evaluator& eval, std::uint64_t seed) {
  std::vector<Params> starts;
  starts.reserve(kStructuredStarts + kRandomStarts);
  const double lo = eval.lower(), hi = eval.upper();
  // b = c on a log grid from the lower bound to the upper bound, with the
  // remaining parameters at the upper bound and then at half of it.
  constexpr std::size_t kPerLevel = kStructuredStarts / 2;
  for (const double level : {1.0, 0.5}) {
    for (std::size_t k = 0; k < kPerLevel; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(kPerLevel - 1);
      const double eps = eval.clamp(lo * std::pow(hi / lo, frac) * level);
      const double main = eval.clamp(hi * level);
      starts.push_back({main, eps, eps, main, main, main, main, main});
    }
  }
  Lcg64 rng(seed);
  for (std::size_t k = 0; k < kRandomStarts; ++k) {
    Params x{};
    for (double& v : x) v = lo + (hi - lo) * unit_uniform(rng);
    starts.push_back(x);
  }
  return starts;
}

Candidate golden_section(Evaluator& eval) {
  auto with_eps = [&](double eps) {
    return Params{eval.upper(), eps, eps, eval.upper(),
                  eval.upper(), eval.upper(), eval.upper(), eval.upper()};
  };
  auto at = [&](double log_eps) { return with_eps(eval.clamp(std::pow(10.0, log_eps))); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log10(eval.lower()), b = std::log10(eval.upper());
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(at(c)), fd = eval(at(d));
  while (b - a > kGoldenTolerance) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(at(c));
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(at(d));
    }
  }
  // The supremum often sits on the boundary; check both ends explicitly and
  // let the lower end win ties with an interior point.
  Candidate best{at(0.5 * (a + b)), eval(at(0.5 * (a + b)))};
  const Params low = with_eps(eval.lower());
  const double f_low = eval(low);
  if (f_low >= best.value - kImprovementMargin) best = {low, f_low};
  const Params high = with_eps(eval.upper());
  const double f_high = eval(high);
  if (f_high > best.value + kImprovementMargin) best = {high, f_high};
  return best;
}

}  // namespace

std::string_view mode_name(OptimizerMode m) noexcept {
  return m == OptimizerMode::kFull ? "full-8param" : "structured-1param";
}

OptimizerMode parse_mode(std::string_view s) {
  if (s == "full" || s == "full-8param") return OptimizerMode::kFull;
  if (s == "structured" || s == "structured-1param") return OptimizerMode::kStructured;
  throw ArgumentError("unknown optimizer mode '" + std::string(s) + "'");
}

double objective(const DensityMatrix16& state, const LocalFilter& f) {
  try {
    const FilteredKeyRate k = filtered_kdw(state, f);
    return k.kdw * k.success_probability;
  } catch (const FilteredOutError&) {
    return kNegInf;
  }
}

OptimizationResult optimize(const OptimizationProblem& problem,
                            std::uint64_t seed) {
  if (!(problem.lower > 0.0 && problem.lower <= problem.upper &&
        problem.upper <= 1.0 && problem.lower >= LocalFilter::kFilterFloor))
    throw DomainError("optimizer bounds must satisfy 1e-4 <= lower <= upper <= 1");
  Evaluator eval(problem.state, problem.lower, problem.upper);

  Candidate best{Params{}, kNegInf};
  if (problem.mode == OptimizerMode::kStructured) {
    best = golden_section(eval);
  } else {
    for (const Params& start : start_points(eval, seed)) {
      const Candidate c = pattern_search(eval, start);
      if (c.value > best.value + kImprovementMargin) best = c;
    }
  }
  // Never lose to doing nothing.
  const Params ones{1, 1, 1, 1, 1, 1, 1, 1};
  const double identity_value = eval(ones);
  if (identity_value > best.value) best = {ones, identity_value};

  OptimizationResult r;
  r.filter = LocalFilter::clamped(best.x);
  r.mode = problem.mode;
  r.evaluations = eval.count();
  const FilteredState fs = apply_filter(problem.state, r.filter);
  r.kdw = kdw_of_state(fs.state).kdw;
  r.success_probability = fs.success_probability;
  r.effective_rate = r.kdw * r.success_probability;
  for (std::size_t i = 0; i < 8; ++i)
    r.at_lower_bound[i] = r.filter.params()[i] <= problem.lower * (1.0 + 1e-9);
  return r;
}

std::string_view filter_mode_name(FilterMode m) noexcept {
  switch (m) {
    case FilterMode::kNone: return "none";
    case FilterMode::kOptimal: return "optimal";
    case FilterMode::kFixed: return "fixed";
  }
  return "none";
}

FilterMode parse_filter_mode(std::string_view s) {
  if (s == "none") return FilterMode::kNone;
  if (s == "optimal") return FilterMode::kOptimal;
  if (s == "fixed") return FilterMode::kFixed;
  throw ArgumentError("unknown filter mode '" + std::string(s) + "'");
}

std::vector<SweepRecord> sweep(Family family, std::span<const double> grid,
                               const SweepOptions& options) {
  const FamilyDomain dom = domain_of(family);
  for (double p : grid)
    if (!dom.contains(p))
      throw DomainError("grid point " + std::to_string(p) + " outside the " +
                        std::string(family_name(family)) + " domain");

  std::vector<SweepRecord> out(grid.size());
  auto run_point = [&](std::size_t i) {
    const double p = grid[i];
    const DensityMatrix16 rho = make_family(family, p);
    SweepRecord rec;
    rec.p = p;
    rec.kdw_before = kdw_of_state(rho).kdw;
    switch (options.filter_mode) {
      case FilterMode::kNone:
        rec.filter = LocalFilter::identity();
        rec.kdw_after = rec.kdw_before;
        rec.success_prob = 1.0;
        break;
      case FilterMode::kFixed: {
        rec.filter = options.fixed_filter;
        const FilteredState fs = apply_filter(rho, rec.filter);
        rec.kdw_after = kdw_of_state(fs.state).kdw;
        rec.success_prob = fs.success_probability;
        break;
      }
      case FilterMode::kOptimal: {
        const OptimizationResult r =
            optimize({rho, options.optimizer_mode}, options.seed ^ i);
        rec.filter = r.filter;
        rec.kdw_after = r.kdw;
        rec.success_prob = r.success_probability;
        break;
      }
    }
    rec.effective_rate = rec.kdw_after * rec.success_prob;
    out[i] = rec;
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          try {
            run_point(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    workers.clear();
    if (failure) std::rethrow_exception(failure);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepRecord& a, const SweepRecord& b) { return a.p < b.p; });
  return out;
}

}  // namespace filterkey
