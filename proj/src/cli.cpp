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

#include "filterkey/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "filterkey/errors.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/optimizer.hpp"
#include "filterkey/serialize.hpp"

namespace filterkey::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct SweepArgs {
  std::string family = "1";
  std::optional<double> p_min;
  std::optional<double> p_max;
  std::size_t steps = 50;
  std::string filter_mode = "optimal";
  std::string opt_mode = "full";
  std::string filter;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out = "-";
};

struct AnalyzeArgs {
  std::string family = "1";
  double p = 0.0;
};

struct OptimizeArgs {
  std::string family = "1";
  double p = 0.0;
  std::string mode = "full";
  std::uint64_t seed = 0;
};

struct FiguresArgs {
  std::vector<int> figs;
  std::string out_dir = ".";
  std::string opt_mode = "full";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = std::min(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1), hi);
  g.front() = lo;
  g.back() = hi;
  return g;
}

Family sweep_family(const std::string& s) {
  const Family f = parse_family(s);
  if (f != Family::kFamily1 && f != Family::kFamily2 && f != Family::kFamily3)
    throw ArgumentError("--family must be 1, 2 or 3");
  return f;
}

// Writes to a file, or to `out` for "-".
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(out);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ArgumentError("cannot open '" + path + "' for writing");
  writer(f);
  if (!f) throw ArgumentError("failed writing '" + path + "'");
}

std::string sweep_provenance(const std::string& command, Family family, double lo,
                             double hi, std::size_t steps, FilterMode fm,
                             OptimizerMode om, std::uint64_t seed) {
  std::ostringstream s;
  s << "filterkey " << kVersion << " command=" << command
    << " family=" << family_name(family) << " p_min=" << format_double(lo)
    << " p_max=" << format_double(hi) << " steps=" << steps
    << " filter_mode=" << filter_mode_name(fm) << " opt_mode=" << mode_name(om)
    << " seed=" << seed;
  return s.str();
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const Family family = sweep_family(a.family);
  const FamilyDomain dom = domain_of(family);
  const double lo = a.p_min.value_or(dom.p_min);
  const double hi = a.p_max.value_or(dom.p_max);
  if (a.steps < 2) throw ArgumentError("--steps must be at least 2");
  if (!(lo <= hi)) throw ArgumentError("--p-min must not exceed --p-max");
  if (!dom.contains(lo) || !dom.contains(hi))
    throw DomainError("--p-min/--p-max outside the family domain");

  SweepOptions opt;
  opt.filter_mode = parse_filter_mode(a.filter_mode);
  opt.optimizer_mode = parse_mode(a.opt_mode);
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (opt.filter_mode == FilterMode::kFixed) {
    if (a.filter.empty()) throw ArgumentError("--filter-mode fixed needs --filter");
    opt.fixed_filter = parse_filter(a.filter);
  }
  const std::vector<double> grid = linear_grid(lo, hi, a.steps);
  const auto rows = sweep(family, grid, opt);
  emit(a.out, out, [&](std::ostream& os) {
    write_sweep_csv(os, rows,
                    sweep_provenance("sweep", family, lo, hi, a.steps, opt.filter_mode,
                                     opt.optimizer_mode, a.seed));
  });
  return kOk;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  out << analysis_report(parse_family(a.family), a.p).dump(2) << '\n';
  return kOk;
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const Family family = parse_family(a.family);
  const DensityMatrix16 rho = make_family(family, a.p);
  const OptimizationResult r = optimize({rho, parse_mode(a.mode)}, a.seed);
  json j = optimization_to_json(r);
  j["family"] = family_name(family);
  j["p"] = a.p;
  j["seed"] = a.seed;
  j["kdw_before"] = kdw_of_state(rho).kdw;
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_figures(const FiguresArgs& a, std::ostream& out) {
  std::vector<int> figs = a.figs.empty() ? std::vector<int>{1, 2, 3} : a.figs;
  std::filesystem::create_directories(a.out_dir);
  SweepOptions opt;
  opt.filter_mode = FilterMode::kOptimal;
  opt.optimizer_mode = parse_mode(a.opt_mode);
  opt.seed = a.seed;
  opt.threads = a.threads;
  constexpr std::size_t kFigurePoints = 101;
  for (int fig : figs) {
    if (fig < 1 || fig > 3) throw ArgumentError("--fig must be 1, 2 or 3");
    const Family family = sweep_family(std::to_string(fig));
    const FamilyDomain dom = domain_of(family);
    const auto rows = sweep(family, domain_grid(family, kFigurePoints), opt);
    const std::string path =
        (std::filesystem::path(a.out_dir) / ("fig" + std::to_string(fig) + ".csv")).string();
    emit(path, out, [&](std::ostream& os) {
      write_sweep_csv(os, rows,
                      sweep_provenance("figures", family, dom.p_min, dom.p_max,
                                       kFigurePoints, opt.filter_mode,
                                       opt.optimizer_mode, a.seed));
    });
    out << path << '\n';
  }
  return kOk;
}

}  // namespace

json analysis_report(Family family, double p) {
  const DensityMatrix16 rho = make_family(family, p);
  const ValidationReport v = validate_state(rho);
  const PptReport ppt = ppt_report(rho);
  const BlockDecomposition blocks = decompose_blocks(rho);
  const KeyRateReport k = kdw_from_xyzw(xyzw(blocks));
  const PbitConditionReport pbit = pbit_sufficient_condition(blocks);

  json belldiag = nullptr;
  if (family == Family::kFamily2 || family == Family::kFamily3) {
    const ChiSigmas s = make_chi_sigmas(p);
    const BellDiagonalConditionReport b = belldiag_condition(s.s0, s.s1);
    belldiag = {{"sigma0_minus_sigma1_trace_norm", b.difference_norm},
                {"trace_sigma0_sigma1", b.overlap},
                {"holds", b.holds}};
  }

  auto ppt_entry = [](Ordering o, double min_eig, bool ok) {
    std::string fs;
    for (Subsystem s : factors(o)) {
      if (!fs.empty()) fs += ",";
      fs += subsystem_name(s);
    }
    return json{{"ordering", ordering_name(o)},
                {"factors", "(" + fs + ")"},
                {"transposed", "B,B'"},
                {"min_pt_eigenvalue", min_eig},
                {"ppt", ok}};
  };

  return {
      {"family", family_name(family)},
      {"p", p},
      {"validity",
       {{"trace_residual", v.trace_residual},
        {"min_eigenvalue", v.min_eigenvalue},
        {"hermiticity_residual", v.hermiticity_residual},
        {"valid", v.valid()}}},
      {"ppt",
       json::array({ppt_entry(Ordering::kR1, ppt.min_pt_eigenvalue_r1, ppt.ppt_r1),
                    ppt_entry(Ordering::kR2, ppt.min_pt_eigenvalue_r2, ppt.ppt_r2)})},
      {"keyrate", keyrate_to_json(k)},
      {"conditions",
       {{"pbit",
         {{"norm_0000", pbit.norm_0000},
          {"norm_0011", pbit.norm_0011},
          {"norm_1111", pbit.norm_1111},
          {"norm_0101", pbit.norm_0101},
          {"norm_1010", pbit.norm_1010},
          {"holds", pbit.holds}}},
        {"belldiag", belldiag}}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Key rates of filtered bound-entangled four-qubit states"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kVersion);

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep p over a family and write CSV");
  sweep_cmd->add_option("--family", sa.family, "State family (1, 2 or 3)")
      ->check(CLI::IsMember({"1", "2", "3"}));
  sweep_cmd->add_option("--p-min", sa.p_min, "Lower end of the p grid (default: domain start)");
  sweep_cmd->add_option("--p-max", sa.p_max, "Upper end of the p grid (default: domain end)");
  sweep_cmd->add_option("--steps", sa.steps, "Number of grid points (>= 2)");
  sweep_cmd->add_option("--filter-mode", sa.filter_mode, "none, optimal or fixed")
      ->check(CLI::IsMember({"none", "optimal", "fixed"}));
  sweep_cmd->add_option("--opt-mode", sa.opt_mode, "Optimizer: full or structured")
      ->check(CLI::IsMember({"full", "structured", "full-8param", "structured-1param"}));
  sweep_cmd->add_option("--filter", sa.filter, "Fixed filter a,b,c,d,r,s,t,u");
  sweep_cmd->add_option("--seed", sa.seed, "Optimizer seed");
  sweep_cmd->add_option("--threads", sa.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sa.out, "Output CSV path ('-' for stdout)");

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Print a JSON analysis of one state");
  analyze_cmd->add_option("--family", aa.family, "State family (1, 2, 3 or horodecki)")
      ->check(CLI::IsMember({"1", "2", "3", "horodecki"}));
  analyze_cmd->add_option("--p", aa.p, "Family parameter")->required();

  OptimizeArgs oa;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize the filter for one state");
  optimize_cmd->add_option("--family", oa.family, "State family (1, 2, 3 or horodecki)")
      ->check(CLI::IsMember({"1", "2", "3", "horodecki"}));
  optimize_cmd->add_option("--p", oa.p, "Family parameter")->required();
  optimize_cmd->add_option("--mode", oa.mode, "full or structured")
      ->check(CLI::IsMember({"full", "structured", "full-8param", "structured-1param"}));
  optimize_cmd->add_option("--seed", oa.seed, "Optimizer seed");

  FiguresArgs fa;
  auto* figures_cmd = app.add_subcommand("figures", "Write fig1.csv .. fig3.csv");
  figures_cmd->add_option("--fig", fa.figs, "Figure number(s) 1-3 (default: all)")
      ->check(CLI::Range(1, 3));
  figures_cmd->add_option("--out-dir", fa.out_dir, "Output directory");
  figures_cmd->add_option("--opt-mode", fa.opt_mode, "Optimizer: full or structured")
      ->check(CLI::IsMember({"full", "structured", "full-8param", "structured-1param"}));
  figures_cmd->add_option("--seed", fa.seed, "Optimizer seed");
  figures_cmd->add_option("--threads", fa.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sa, out);
    if (*analyze_cmd) return cmd_analyze(aa, out);
    if (*optimize_cmd) return cmd_optimize(oa, out);
    if (*figures_cmd) return cmd_figures(fa, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const FilteredOutError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::logic_error& e) {
    // DomainError, ArgumentError, SizeError
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
  return kInvalidArguments;
}

}  // namespace filterkey::cli
