#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tpk/divergences.hpp"
#include "tpk/errors.hpp"
#include "tpk/rng.hpp"

using namespace tpk;

namespace {

oracle::Vec vec(const ProbVector& p) { return {p.coords().begin(), p.coords().end()}; }

const ProbVector kP({0.5, 0.5});
const ProbVector kQ({0.25, 0.75});

}  // namespace

TEST_CASE("bregman examples") {
  CHECK(bregman(AlphaParam(1.0), kP, kQ).value ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(bregman(AlphaParam(0.0), kP, kQ).value ==
        doctest::Approx(2.0 / 3.0 - std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(bregman(AlphaParam(2.0), kP, kQ).value == doctest::Approx(0.0625).epsilon(1e-15));
  for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.5}) CHECK(bregman(AlphaParam(a), kP, kP).value == 0.0);
}

TEST_CASE("bregman agrees with the closed-form oracle, near and far") {
  Rng rng(21);
  for (double a : {-2.0, -0.5, 0.0, 0.5, 1.0, 1.25, 2.0, 2.5, 3.0, 4.0}) {
    for (int i = 0; i < 100; ++i) {
      const int K = 2 + static_cast<int>(rng.index(7));
      const ProbVector p = sample_relint(K, rng, 0.01);
      const ProbVector q = sample_relint(K, rng, 0.01);
      const double d = bregman(AlphaParam(a), p, q).value;
      CHECK(oracle::relative_gap(d, oracle::beta_divergence(a, vec(p), vec(q))) <= 1e-12);
    }
  }
  // Close pairs: the series branch keeps relative precision, so 2D/‖p−q‖₁²
  // is exact to rounding at α = 2 even at ‖p−q‖₁ = 2e-6.
  const ProbVector p({0.5 + 1e-6, 0.5 - 1e-6});
  const ProbVector q({0.5, 0.5});
  const double d2 = bregman(AlphaParam(2.0), p, q).value;
  CHECK(oracle::relative_gap(d2, 1e-12) <= 1e-9);
  const double d1 = bregman(AlphaParam(1.0), p, q).value;
  CHECK(oracle::relative_gap(d1, 2e-12) <= 1e-5);
}

TEST_CASE("orthant arguments") {
  const PositiveVector p({2.0, 0.5, 3.0});
  const PositiveVector q({1.0, 1.0, 1.0});
  const oracle::Vec pv{2.0, 0.5, 3.0}, qv{1.0, 1.0, 1.0};
  for (double a : {0.0, 0.5, 1.0, 2.0, 3.0})
    CHECK(oracle::relative_gap(bregman(AlphaParam(a), p, q).value,
                               oracle::beta_divergence(a, pv, qv)) <= 1e-13);
  CHECK(bregman(AlphaParam(0.0), p, q).value ==
        doctest::Approx(itakura_saito(p, q)).epsilon(1e-14));
  CHECK(bregman(AlphaParam(2.0), p, q).value ==
        doctest::Approx(half_squared_euclidean(p.coords(), q.coords())).epsilon(1e-14));
  CHECK_THROWS_AS(bregman(AlphaParam(1.0), PositiveVector({1.0, 1.0}), q), ParameterError);
}

TEST_CASE("extended divergence on the boundary") {
  const std::vector<double> p{0.0, 1.0}, q{0.5, 0.5};
  // p_1 = 0 < q_1: contributes q^α/α for α > 0.
  const auto d2 = bregman_extended(AlphaParam(2.0), p, q);
  CHECK(d2.finite);
  CHECK(d2.value == doctest::Approx(0.25).epsilon(1e-14));
  const auto d1 = bregman_extended(AlphaParam(1.0), p, q);
  CHECK(d1.finite);
  CHECK(d1.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_FALSE(bregman_extended(AlphaParam(0.0), p, q).finite);
  // q_1 = 0 < p_1 only converges for α > 1.
  CHECK_FALSE(bregman_extended(AlphaParam(1.0), q, p).finite);
  CHECK(bregman_extended(AlphaParam(3.0), q, p).finite);
  CHECK(bregman_extended(AlphaParam(-1.0), p, p).value == 0.0);
}

TEST_CASE("definition route matches the closed form") {
  const ProbVector p({0.3, 0.7}), q({0.6, 0.4});
  const double a = bregman(AlphaParam(1.5), p, q).value;
  CHECK(oracle::relative_gap(bregman_from_definition(AlphaParam(1.5), p, q).value, a) <= 1e-9);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const ProbVector x = sample_relint(4, rng, 0.01), y = sample_relint(4, rng, 0.01);
    CHECK(std::fabs(bregman(AlphaParam(2.0), x, y).value -
                    half_squared_euclidean(x.coords(), y.coords())) <= 1e-12);
  }
  CHECK(bregman_from_definition(AlphaParam(0.7), p, p).value == 0.0);
}

TEST_CASE("excess risk and KL") {
  CHECK(excess_risk(AlphaParam(1.0), kP, kQ) ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-14));
  CHECK(excess_risk(AlphaParam(0.0), kP, kQ) ==
        doctest::Approx(2.0 / 3.0 - std::log(4.0 / 3.0)).epsilon(1e-14));
  CHECK(excess_risk(AlphaParam(2.5), kP, kP) == doctest::Approx(0.0));
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const ProbVector p = sample_relint(5, rng, 0.01), q = sample_relint(5, rng, 0.01);
    CHECK(std::fabs(kl_divergence(p, q) - oracle::kl(vec(p), vec(q))) <= 1e-14);
    CHECK(std::fabs(reverse_kl(p, q) - oracle::kl(vec(q), vec(p))) <= 1e-14);
    CHECK(std::fabs(kl_divergence(p, q) - bregman(AlphaParam(1.0), p, q).value) <= 1e-12);
  }
}

TEST_CASE("Tsallis relative entropy") {
  const auto r = tsallis_relative_entropy(AlphaParam(2.0), kP, kQ);
  CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK_FALSE(r.extended_domain);
  CHECK(tsallis_relative_entropy(AlphaParam(-1.0), kP, kQ).extended_domain);
  CHECK(tsallis_relative_entropy(AlphaParam(0.7), kP, kP).value == 0.0);
  const ProbVector p({0.3, 0.7}), q({0.6, 0.4});
  CHECK(tsallis_relative_entropy(AlphaParam(0.5), p, q).value <= bregman(AlphaParam(0.5), p, q).value);
  CHECK_THROWS_AS(tsallis_relative_entropy(AlphaParam(1.0), p, q), ParameterError);
  CHECK_THROWS_AS(tsallis_relative_entropy(AlphaParam(0.0), p, q), ParameterError);
  Rng rng(2);
  for (double a : {-1.0, 0.5, 1.5, 3.0}) {
    for (int i = 0; i < 50; ++i) {
      const ProbVector x = sample_relint(4, rng, 0.02), y = sample_relint(4, rng, 0.02);
      const double lit = oracle::tsallis_relative_entropy(a, vec(x), vec(y));
      CHECK(std::fabs(tsallis_relative_entropy(AlphaParam(a), x, y).value - lit) <=
            1e-12 * std::max(1.0, std::fabs(lit)));
    }
  }
}

TEST_CASE("continuity probe at the anchors") {
  CHECK(alpha_continuity_probe(AlphaParam(1.0), kP, kQ, 1e-6) <= 1e-4);
  CHECK(alpha_continuity_probe(AlphaParam(0.0), kP, kQ, 1e-6) <= 1e-4);
  CHECK(alpha_continuity_probe(AlphaParam(1.0), kP, kP, 1e-6) <= 1e-15);
  CHECK_THROWS_AS(alpha_continuity_probe(AlphaParam(0.5), kP, kQ, 1e-6), ParameterError);
  CHECK_THROWS_AS(alpha_continuity_probe(AlphaParam(1.0), kP, kQ, 1e-2), ParameterError);
}
