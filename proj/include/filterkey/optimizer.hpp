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

// Derivative-free maximization of the effective key rate K(filtered) * P
// over diagonal local filters.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "filterkey/filtration.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/states.hpp"

namespace filterkey {

enum class OptimizerMode {
  /// All eight parameters, multi-start coordinate pattern search.
  kFull,
  /// a = d = r = s = t = u = 1, golden-section search over b = c.
  kStructured,
};

std::string_view mode_name(OptimizerMode m) noexcept;
/// "full" / "full-8param" / "structured" / "structured-1param".
OptimizerMode parse_mode(std::string_view s);

struct OptimizationProblem {
  DensityMatrix16 state;
  OptimizerMode mode = OptimizerMode::kFull;
  double lower = LocalFilter::kFilterFloor;
  double upper = 1.0;
};

struct OptimizationResult {
  LocalFilter filter;
  double kdw = 0.0;
  double success_probability = 0.0;
  double effective_rate = 0.0;
  std::size_t evaluations = 0;
  OptimizerMode mode = OptimizerMode::kFull;
  /// Parameters sitting on the lower bound.
  std::array<bool, 8> at_lower_bound{};
};

/// K(apply_filter(state, f)) * P. Negative rates are returned unchanged; a
/// filtered-out ensemble yields -infinity.
double objective(const DensityMatrix16& state, const LocalFilter& f);

/// Deterministic for a fixed (problem, seed). Never returns a filter whose
/// objective is below the all-ones filter's.
OptimizationResult optimize(const OptimizationProblem& problem,
                            std::uint64_t seed);

// Sweeps ------------------------------------------------------------------

enum class FilterMode { kNone, kOptimal, kFixed };
std::string_view filter_mode_name(FilterMode m) noexcept;
FilterMode parse_filter_mode(std::string_view s);

struct SweepOptions {
  FilterMode filter_mode = FilterMode::kOptimal;
  OptimizerMode optimizer_mode = OptimizerMode::kFull;
  std::uint64_t seed = 0;
  /// Used when filter_mode == kFixed.
  LocalFilter fixed_filter;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SweepRecord {
  double p = 0.0;
  double kdw_before = 0.0;
  double kdw_after = 0.0;
  double success_prob = 0.0;
  double effective_rate = 0.0;
  LocalFilter filter;
};

/// One record per grid point, sorted by p ascending. Grid point i is
/// optimized with seed ^ i, so the output does not depend on scheduling.
/// Throws DomainError if any p lies outside the family's domain.
std::vector<SweepRecord> sweep(Family family, std::span<const double> grid,
                               const SweepOptions& options);

}  // namespace filterkey
