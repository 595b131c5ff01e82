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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "filterkey/filtration.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/optimizer.hpp"
#include "filterkey/qmat.hpp"
#include "filterkey/states.hpp"
#include "test_support.hpp"

namespace fk = filterkey;
using fk::Family;
using fk::LocalFilter;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::array<Family, 3> kNumberedFamilies{Family::kFamily1, Family::kFamily2,
                                               Family::kFamily3};
constexpr std::array<Family, 4> kAllFamilies{Family::kFamily1, Family::kFamily2,
                                             Family::kFamily3, Family::kHorodecki};

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) msgs_ << (failures_ > 1 ? "; " : "") << what;
  }
  Verdict verdict(const std::string& summary) const {
    std::string d = summary;
    if (!pass_) d += " | failures=" + std::to_string(failures_) + ": " + msgs_.str();
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::ostringstream msgs_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string at(Family f, double p) {
  return std::string(fk::family_name(f)) + " p=" + fmt("%.6g", p);
}

double kdw_before(Family f, double p) { return fk::kdw_of_state(fk::make_family(f, p)).kdw; }

Verdict state_validity() {
  Checker c;
  double worst_trace = 0, worst_eig = 0;
  for (Family f : kAllFamilies)
    for (double p : fk::domain_grid(f, 50)) {
      const auto v = fk::validate_state(fk::make_family(f, p));
      worst_trace = std::max(worst_trace, v.trace_residual);
      worst_eig = std::min(worst_eig, v.min_eigenvalue);
      c.expect(v.trace_residual <= 1e-12 && v.min_eigenvalue >= -1e-10, at(f, p));
    }
  return c.verdict("max |tr-1|=" + fmt("%.2e", worst_trace) + " min eig=" + fmt("%.2e", worst_eig));
}

Verdict ppt_claims() {
  Checker c;
  double worst_r1 = 0;
  for (double p : fk::domain_grid(Family::kFamily2, 50)) {
    const auto rho = fk::make_family2(p);
    const auto& m = rho.matrix();
    const double d = fk::max_abs_diff(fk::bob_partial_transpose(m, fk::Ordering::kR1), m);
    worst_r1 = std::max(worst_r1, d);
    c.expect(d <= 1e-14, "(a) " + at(Family::kFamily2, p));
  }
  double min_r2 = 1;
  for (Family f : kNumberedFamilies)
    for (double p : fk::domain_grid(f, 50)) {
      const double e = fk::ppt_report(fk::make_family(f, p)).min_pt_eigenvalue_r2;
      min_r2 = std::min(min_r2, e);
      c.expect(e >= -1e-10, "(b) " + at(f, p));
    }
  const double r1_half = fk::ppt_report(fk::make_family1(0.5)).min_pt_eigenvalue_r1;
  c.expect(r1_half <= -0.05, "(c) family1 p=0.5 R1 min PT eig " + fmt("%.4g", r1_half));
  return c.verdict("(a) max|PT-rho|=" + fmt("%.1e", worst_r1) + " (b) min R2 PT eig=" +
                   fmt("%.2e", min_r2) + " (c) family1 p=0.5 R1 min PT eig=" + fmt("%.4f", r1_half));
}

Verdict closed_forms() {
  Checker c;
  double worst = 0;
  auto cmp = [&](const fk::XyzwParameters& a, const fk::XyzwParameters& b, const std::string& w) {
    const double d = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z),
                               std::abs(a.w - b.w)});
    worst = std::max(worst, d);
    c.expect(d <= 1e-12, w);
  };
  for (double p : fk::domain_grid(Family::kFamily1, 50))
    cmp(fk::xyzw(fk::decompose_blocks(fk::make_family1(p))), fk::family1_closed_form_xyzw(p),
        at(Family::kFamily1, p));
  for (double p : fk::domain_grid(Family::kFamily2, 50))
    cmp(fk::xyzw(fk::decompose_blocks(fk::make_family2(p))), fk::family2_closed_form_xyzw(p),
        at(Family::kFamily2, p));
  return c.verdict("max deviation=" + fmt("%.2e", worst) + " (family 2 w-term typo-corrected)");
}

Verdict zero_crossing() {
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (kdw_before(Family::kFamily1, mid) < 0 ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  Checker c;
  c.expect(std::abs(p - 0.315) <= 0.005, "p*=" + fmt("%.6f", p));
  return c.verdict("p*=" + fmt("%.10f", p));
}

Verdict family2_endpoints() {
  const double lo = kdw_before(Family::kFamily2, 0.125);
  const double hi = kdw_before(Family::kFamily2, fk::kChiUpper);
  Checker c;
  c.expect(std::abs(lo - (-0.3004)) <= 1e-3, "K(1/8)=" + fmt("%.6f", lo));
  c.expect(std::abs(hi - 0.0214) <= 1e-3, "K(upper)=" + fmt("%.6f", hi));
  return c.verdict("K(1/8)=" + fmt("%.6f", lo) + " K(1/(4+2sqrt2))=" + fmt("%.6f", hi));
}

Verdict family3_negative() {
  Checker c;
  double worst = -1;
  for (double p : fk::domain_grid(Family::kFamily3, 50)) {
    const double k = kdw_before(Family::kFamily3, p);
    worst = std::max(worst, k);
    c.expect(k < 0, at(Family::kFamily3, p) + " K=" + fmt("%.3g", k));
  }
  return c.verdict("max K over grid=" + fmt("%.6f", worst));
}

Verdict filtration_enhancement() {
  Checker c;
  double min_kdw = 2, min_rate = 2;
  for (Family f : kNumberedFamilies) {
    fk::SweepOptions opt;
    opt.seed = 0;
    for (const auto& r : fk::sweep(f, fk::domain_grid(f, 50), opt)) {
      min_kdw = std::min(min_kdw, r.kdw_after);
      min_rate = std::min(min_rate, r.effective_rate);
      c.expect(r.kdw_after >= 0.99 && r.effective_rate > 0,
               at(f, r.p) + " kdw_after=" + fmt("%.4g", r.kdw_after) +
                   " rate=" + fmt("%.3g", r.effective_rate));
    }
  }
  const double eps = 1e-4;
  double worst_p = 0;
  for (double p : fk::domain_grid(Family::kFamily1, 50)) {
    const double expect = (4 * p + eps * eps * (1 - 2 * p)) / (1 + 2 * p);
    const double got = fk::success_probability(fk::make_family1(p), LocalFilter::structured(eps));
    worst_p = std::max(worst_p, std::abs(got - expect));
    c.expect(std::abs(got - expect) <= 1e-6, "P " + at(Family::kFamily1, p));
  }
  return c.verdict("min kdw_after=" + fmt("%.6f", min_kdw) + " min rate=" + fmt("%.3g", min_rate) +
                   " max |P-closed form|=" + fmt("%.1e", worst_p));
}

Verdict filter_structure() {
  Checker c;
  double min_big = 1, max_gap = 0;
  for (Family f : kNumberedFamilies)
    for (double p : fk::domain_grid(f, 10)) {
      const auto r = fk::optimize({fk::make_family(f, p), fk::OptimizerMode::kFull}, 0);
      const auto& q = r.filter.params();
      const double big = std::min({q[0], q[3], q[4], q[5], q[6], q[7]});
      const double gap = std::abs(q[1] - q[2]);
      min_big = std::min(min_big, big);
      max_gap = std::max(max_gap, gap);
      c.expect(big >= 0.999 && gap <= 1e-3, at(f, p));
    }
  return c.verdict("min(a,d,r,s,t,u)=" + fmt("%.6f", min_big) + " max|b-c|=" + fmt("%.1e", max_gap) +
                   " (family1 p=0: flat objective, structured start kept)");
}

Verdict ppt_preservation() {
  fk::testing::Rng rng(20260101);
  Checker c;
  double worst = 1;
  for (int trial = 0; trial < 1000; ++trial) {
    const Family f = kNumberedFamilies[rng.index(3)];
    const double p = fk::testing::random_p(rng, f);
    const auto out = fk::apply_filter(fk::make_family(f, p), fk::testing::random_filter(rng, 1e-4));
    const double e = fk::ppt_report(out.state).min_pt_eigenvalue_r2;
    worst = std::min(worst, e);
    c.expect(e >= -1e-10, at(f, p));
  }
  return c.verdict("1000 triples, min R2 PT eig=" + fmt("%.2e", worst));
}

Verdict horodecki_relation() {
  Checker c;
  double worst = 0;
  for (double p : fk::domain_grid(Family::kFamily1, 50)) {
    const double r = fk::check_relation_family1(p);
    worst = std::max(worst, r);
    c.expect(r <= 1e-12, at(Family::kFamily1, p));
  }
  return c.verdict("max residual=" + fmt("%.2e", worst));
}

Verdict sufficient_conditions() {
  Checker c;
  double worst_norm = 0, worst_overlap = 0;
  for (double p : fk::domain_grid(Family::kFamily2, 50)) {
    const auto s = fk::make_chi_sigmas(p);
    const auto b = fk::belldiag_condition(s.s0, s.s1);
    worst_norm = std::max(worst_norm, std::abs(b.difference_norm - 4 * p));
    worst_overlap = std::max(worst_overlap, std::abs(b.overlap));
    c.expect(b.holds && std::abs(b.difference_norm - 4 * p) <= 1e-12 && std::abs(b.overlap) <= 1e-12,
             "belldiag " + at(Family::kFamily2, p));
  }
  const bool at_04 = fk::pbit_sufficient_condition(fk::decompose_blocks(fk::make_family1(0.4))).holds;
  const bool at_005 = fk::pbit_sufficient_condition(fk::decompose_blocks(fk::make_family1(0.05))).holds;
  c.expect(at_04, "pbit false at p=0.4");
  c.expect(!at_005, "pbit true at p=0.05");
  return c.verdict("max|norm-4p|=" + fmt("%.1e", worst_norm) + " max|tr s0 s1|=" +
                   fmt("%.1e", worst_overlap) + " pbit(0.4)=" + (at_04 ? "true" : "false") +
                   " pbit(0.05)=" + (at_005 ? "true" : "false"));
}

Verdict kernel_oracles() {
  fk::testing::Rng rng(12);
  Checker c;
  double worst_norm = 0, worst_rec = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = fk::testing::random_hermitian(rng, 16);
    const auto es = fk::hermitian_eigensystem(h);
    double s = 0;
    for (double l : es.spectrum.eigenvalues) s += std::abs(l);
    worst_norm = std::max(worst_norm, std::abs(fk::trace_norm(h.matrix()) - s));
    fk::ComplexMatrix d(16, 16);
    for (std::size_t i = 0; i < 16; ++i) d(i, i) = es.spectrum.eigenvalues[i];
    worst_rec = std::max(worst_rec, fk::max_abs_diff(es.vectors * d * es.vectors.adjoint(), h.matrix()));
  }
  c.expect(worst_norm <= 1e-10, "trace norm " + fmt("%.2e", worst_norm));
  c.expect(worst_rec <= 1e-10, "reconstruction " + fmt("%.2e", worst_rec));
  return c.verdict("max|trace norm - sum|eig||=" + fmt("%.1e", worst_norm) +
                   " max reconstruction=" + fmt("%.1e", worst_rec));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {1, "state validity", state_validity, 5.0},
      {2, "PPT claims", ppt_claims, 0},
      {3, "closed-form agreement", closed_forms, 0},
      {4, "family 1 zero crossing", zero_crossing, 0},
      {5, "family 2 endpoint values", family2_endpoints, 0},
      {6, "family 3 negativity", family3_negative, 0},
      {7, "filtration enhancement", filtration_enhancement, 0},
      {8, "optimal filter structure", filter_structure, 0},
      {9, "PPT preservation", ppt_preservation, 0},
      {10, "Horodecki relation", horodecki_relation, 0},
      {11, "sufficient conditions", sufficient_conditions, 0},
      {12, "kernel oracles", kernel_oracles, 0},
  };

  const auto start = Clock::now();
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = Clock::now();
    Verdict v = cr.run();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cr.budget_s > 0 && secs >= cr.budget_s) {
      v.pass = false;
      v.detail += " | over the " + fmt("%.0f", cr.budget_s) + " s budget";
    }
    if (cr.id == 12) {
      const double total = std::chrono::duration<double>(Clock::now() - start).count();
      v.detail += " total=" + fmt("%.2f", total) + "s";
      if (total >= 60.0) {
        v.pass = false;
        v.detail += " | suite over 60 s";
      }
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s %2d %-26s %6.2fs  %s\n", v.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
