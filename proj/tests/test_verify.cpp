#include <doctest.h>

#include <cmath>

#include "tpk/pinsker.hpp"
#include "tpk/verify.hpp"

using namespace tpk;

namespace {

bool same_report(const VerificationReport& a, const VerificationReport& b) {
  if (a.suite != b.suite || a.alpha != b.alpha || a.K != b.K || a.closed_form != b.closed_form ||
      a.empirical_min_ratio != b.empirical_min_ratio || a.n_samples != b.n_samples ||
      a.witness_ratio_at_tmin != b.witness_ratio_at_tmin || a.analytic_value != b.analytic_value ||
      a.violations != b.violations || a.checks.size() != b.checks.size())
    return false;
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    const auto& x = a.checks[i];
    const auto& y = b.checks[i];
    if (x.name != y.name || x.samples != y.samples || x.max_gap != y.max_gap ||
        x.tolerance != y.tolerance || x.violations != y.violations)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("verify_constant examples") {
  const auto r1 = verify_constant(AlphaParam(1.0), 2, 10000, 42);
  CHECK(r1.passed());
  REQUIRE(r1.empirical_min_ratio.has_value());
  CHECK(*r1.empirical_min_ratio >= 1.0 - 1e-12);
  CHECK(*r1.empirical_min_ratio <= 1.0 + 1e-3);
  CHECK(r1.n_samples == 10000);

  const auto r2 = verify_constant(AlphaParam(2.0), 3, 10000, 42);
  CHECK(r2.passed());
  CHECK(*r2.empirical_min_ratio >= 0.375 - 1e-12);

  const auto r3 = verify_constant(AlphaParam(3.0), 3, 2000, 42);
  CHECK(r3.passed());
  CHECK(*r3.closed_form == 0.0);
  bool saw_monotone = false;
  for (const auto& c : r3.checks) saw_monotone |= c.name.find("monotone") != std::string::npos;
  CHECK(saw_monotone);
}

TEST_CASE("a wrong constant is caught") {
  VerifyOptions bad;
  bad.constant_scale = 1.5;
  const auto r = verify_constant(AlphaParam(1.0), 2, 500, 42, bad);
  CHECK_FALSE(r.passed());
  CHECK(r.violations > 0);
}

TEST_CASE("verify_quadratic_form examples") {
  const auto a = verify_quadratic_form(AlphaParam(0.5), 4, 5000, 42);
  CHECK(a.passed());
  CHECK(*a.empirical_min_ratio >= std::sqrt(2.0) - 1e-12);
  REQUIRE(a.analytic_value.has_value());
  CHECK(std::fabs(*a.analytic_value - std::sqrt(2.0)) <= 1e-9 * std::sqrt(2.0));

  const auto b = verify_quadratic_form(AlphaParam(2.0), 2, 2000, 42);
  CHECK(b.passed());
  CHECK(*b.empirical_min_ratio == doctest::Approx(0.5).epsilon(1e-12));

  const auto c = verify_quadratic_form(AlphaParam(4.0), 2, 2000, 42);
  CHECK(c.passed());
  CHECK(*c.analytic_value == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("identity suite on shared seeds") {
  const auto r = verify_identities(1000, 42);
  CHECK(r.passed());
  CHECK(r.checks.size() >= 15);
  for (const auto& c : r.checks) {
    INFO(c.name);
    CHECK(c.passed());
    CHECK(c.max_gap <= c.tolerance);
  }
  for (const auto& c : r.checks) {
    if (c.name == "kl_equals_d1") CHECK(c.tolerance == 1e-12);
    if (c.name == "excess_risk_equals_bregman") CHECK(c.tolerance == 1e-10);
  }
}

TEST_CASE("individual checks") {
  CHECK(check_sigma_bounds().passed());
  CHECK(check_constant_regimes().passed());
  CHECK(check_zero_one_regret(3000, 1).passed());
  CHECK(check_tre_ordering({-1.0, 0.25, 0.5, 1.5, 2.0, 3.0}, 500, 1).passed());
  CHECK(check_alpha0_chain(500, 1).passed());
  CHECK(check_clipped(200, 1).passed());
}

TEST_CASE("grid results do not depend on the thread count") {
  GridSpec spec;
  spec.suite = Suite::All;
  spec.alphas = {-1.0, 0.5, 1.5, 2.0, 3.0};
  spec.Ks = {2, 3, 5};
  spec.n_samples = 500;
  spec.seed = 7;
  const auto one = run_grid(spec, 1);
  const auto four = run_grid(spec, 4);
  REQUIRE(one.size() == four.size());
  CHECK(one.size() == 2 * 5 * 3 + 1);
  CHECK(one.back().suite == "identities");
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_report(one[i], four[i]));
  for (const auto& r : one) CHECK(r.passed());

  spec.seed = 8;
  const auto other = run_grid(spec, 2);
  bool differs = false;
  for (std::size_t i = 0; i < one.size(); ++i) differs |= !same_report(one[i], other[i]);
  CHECK(differs);
}
