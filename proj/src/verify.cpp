#include "tpk/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "tpk/divergences.hpp"
#include "tpk/extremal.hpp"
#include "tpk/pinsker.hpp"
#include "tpk/rng.hpp"
#include "tpk/simplex.hpp"

namespace tpk {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<double, 11> kGridAlphas{-1.0, -0.5, 0.0, 0.25, 0.5, 1.0,
                                             1.5,  2.0,  2.5, 3.0,  4.0};

class Check {
 public:
  Check(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
  }

  /// Records one sample whose gap must not exceed the tolerance.
  void gap(double g) {
    ++r_.samples;
    if (std::isnan(g)) g = kInf;
    r_.max_gap = std::max(r_.max_gap, g);
    if (g > r_.tolerance) ++r_.violations;
  }

  /// Records one sample of a pass/fail property; `shortfall` is how far the
  /// property misses (<= 0 when it holds).
  void holds(bool ok, double shortfall = 0.0) {
    ++r_.samples;
    r_.max_gap = std::max(r_.max_gap, shortfall);
    if (!ok) ++r_.violations;
  }

  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

double rel_gap(double a, double b, double floor = 0.0) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

int draw_K(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.index(static_cast<std::size_t>(hi - lo + 1)));
}

double draw_grid_alpha(Rng& rng) { return kGridAlphas[rng.index(kGridAlphas.size())]; }

/// Uniform on [−2, 4], with the anchors 0, 1, 2, 3 drawn 30% of the time.
double draw_any_alpha(Rng& rng) {
  if (rng.bernoulli(0.3)) return static_cast<double>(rng.index(4));
  return rng.uniform(-2.0, 4.0);
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

PositiveVector random_positive(int K, Rng& rng, double lo, double hi) {
  std::vector<double> x(static_cast<std::size_t>(K));
  for (double& v : x) v = rng.uniform(lo, hi);
  return PositiveVector(std::move(x));
}

// Pair ζ ± (t/2)u with t clamped to half the admissible step.
std::optional<WitnessPair> perturbed_pair(std::span<const double> zeta,
                                          std::span<const double> u, double t) {
  double t_max = kInf;
  for (std::size_t k = 0; k < zeta.size(); ++k)
    if (u[k] != 0.0) t_max = std::min(t_max, 2.0 * zeta[k] / std::abs(u[k]));
  t = std::min(t, 0.5 * t_max);
  std::vector<double> p(zeta.size()), q(zeta.size());
  for (std::size_t k = 0; k < zeta.size(); ++k) {
    p[k] = zeta[k] + 0.5 * t * u[k];
    q[k] = zeta[k] - 0.5 * t * u[k];
    if (!(p[k] > 0.0) || !(q[k] > 0.0)) return std::nullopt;
  }
  return WitnessPair{ProbVector(std::move(p)), ProbVector(std::move(q))};
}

// u + η·w rescaled back onto T¹, with w supported where u is nonzero so that
// coordinates the optimizer leaves empty stay empty.
TangentUnitVector jitter_direction(std::span<const double> u, double eta, Rng& rng) {
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] != 0.0) support.push_back(k);
  const auto w = sample_tangent_unit(static_cast<int>(support.size()), rng);
  std::vector<double> v(u.begin(), u.end());
  for (std::size_t i = 0; i < support.size(); ++i) v[support[i]] += eta * w[i];
  const double l1 = lp_norm(v, 1.0);
  for (double& x : v) x /= l1;
  return TangentUnitVector(std::move(v));
}

std::vector<double> jitter_point(std::span<const double> zeta, int K, double eta,
                                 Rng& rng) {
  const auto r = sample_relint(K, rng, 1e-9);
  std::vector<double> z(zeta.size());
  for (std::size_t k = 0; k < zeta.size(); ++k)
    z[k] = (1.0 - eta) * zeta[k] + eta * r[k];
  return z;
}

enum class Strategy { Uniform, Perturbation, Jitter };

Strategy draw_strategy(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.5) return Strategy::Uniform;
  if (u < 0.8) return Strategy::Perturbation;
  return Strategy::Jitter;
}

std::optional<WitnessPair> constant_sample(const AlphaParam& alpha, int K,
                                           const std::optional<SharpnessPath>& path,
                                           Rng& rng) {
  switch (draw_strategy(rng)) {
    case Strategy::Uniform:
      return WitnessPair{sample_relint(K, rng, 1e-10), sample_relint(K, rng, 1e-10)};
    case Strategy::Perturbation: {
      const auto zeta = sample_relint(K, rng, 1e-4);
      const auto u = sample_tangent_unit(K, rng);
      return perturbed_pair(zeta.coords(), u.coords(), rng.log_uniform(1e-3, 1e-1));
    }
    case Strategy::Jitter:
      break;
  }
  if (!path) {
    const double t = rng.log_uniform(1e-4, 0.5 / (K - 1));
    const auto w = no_pinsker_witness(alpha.value(), K, t);
    return WitnessPair{w.p, w.q};
  }
  if (path->vertex) {
    const double s = rng.log_uniform(1e-4, 1e-1);
    const std::vector<double> base{1.0 - s, s};
    return perturbed_pair(base, path->u.coords(), s * rng.uniform(0.2, 1.5));
  }
  const double eta = rng.log_uniform(1e-4, 1e-2);
  const auto zeta = jitter_point(path->zeta, K, eta, rng);
  const auto v = jitter_direction(path->u.coords(), eta, rng);
  return perturbed_pair(zeta, v.coords(), rng.log_uniform(1e-3, 1e-2));
}

std::optional<SharpnessPath> path_if_any(const AlphaParam& alpha, int K,
                                         double delta) {
  if (alpha.regime() == AlphaRegime::Gt2 && K >= 3) return std::nullopt;
  return sharpness_path(alpha, K, delta);
}

}  // namespace

VerificationReport verify_constant(const AlphaParam& alpha, int K,
                                   std::size_t n_samples, std::uint64_t seed,
                                   const VerifyOptions& options) {
  const auto start = Clock::now();
  VerificationReport r;
  r.suite = "constant";
  r.alpha = alpha.value();
  r.K = K;
  const double c = sharp_constant(alpha, K).value;
  r.closed_form = c;
  const double threshold = c * options.constant_scale - options.slack;
  const auto path = path_if_any(alpha, K, options.delta);

  Rng rng(seed);
  Check ratio("pinsker_ratio", options.slack);
  double min_ratio = kInf;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto pair = constant_sample(alpha, K, path, rng);
    if (!pair) continue;
    const double l1 = l1_distance(pair->p.coords(), pair->q.coords());
    if (l1 < options.min_l1) continue;
    const double value = 2.0 * bregman(alpha, pair->p, pair->q).value / (l1 * l1);
    min_ratio = std::min(min_ratio, value);
    ratio.holds(value >= threshold, threshold - value);
  }
  r.n_samples = ratio.result().samples;
  r.checks.push_back(ratio.result());

  if (path) {
    const double t = std::min(1e-5, 0.5 * path->t_max);
    const auto w = sharpness_witness(alpha, K, t, options.delta);
    r.witness_ratio_at_tmin = pinsker_ratio(alpha, w.p, w.q);
  } else {
    Check closed("no_pinsker_closed_form", 1e-9);
    Check monotone("no_pinsker_monotone", 0.0);
    double previous = kInf;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      const auto w = no_pinsker_witness(alpha.value(), K, t);
      const double l1 = l1_distance(w.p.coords(), w.q.coords());
      const double value = bregman(alpha, w.p, w.q).value / (l1 * l1);
      closed.gap(rel_gap(value, w.predicted));
      monotone.holds(value < previous, value - previous);
      previous = value;
      min_ratio = std::min(min_ratio, 2.0 * value);
      r.witness_ratio_at_tmin = 2.0 * value;
    }
    r.checks.push_back(closed.result());
    r.checks.push_back(monotone.result());
  }
  r.empirical_min_ratio = min_ratio;
  for (const auto& ch : r.checks) r.violations += ch.violations;
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return r;
}

VerificationReport verify_quadratic_form(const AlphaParam& alpha, int K,
                                         std::size_t n_samples,
                                         std::uint64_t seed,
                                         const VerifyOptions& options) {
  const auto start = Clock::now();
  VerificationReport r;
  r.suite = "quadratic";
  r.alpha = alpha.value();
  r.K = K;
  const double c = sharp_constant(alpha, K).value;
  r.closed_form = c;
  const double target = c * options.constant_scale;
  const double threshold = target - options.slack;
  const auto path = path_if_any(alpha, K, options.delta);

  Rng rng(seed);
  Check lower("quadratic_lower_bound", options.slack);
  double min_value = kInf;
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::optional<ProbVector> gamma;
    std::optional<TangentUnitVector> v;
    if (!path || path->vertex || rng.bernoulli(0.5)) {
      gamma.emplace(sample_relint(K, rng, 1e-12));
      v.emplace(sample_tangent_unit(K, rng));
    } else {
      const double eta = rng.log_uniform(1e-6, 1e-1);
      gamma.emplace(jitter_point(path->zeta, K, eta, rng));
      v.emplace(jitter_direction(path->u.coords(), eta, rng));
    }
    const double value = quadratic_form(alpha, *gamma, *v).value;
    min_value = std::min(min_value, value);
    lower.holds(value >= threshold, threshold - value);
  }
  r.n_samples = n_samples;
  r.empirical_min_ratio = min_value;
  r.checks.push_back(lower.result());

  if (path) {
    const auto form_at = [&](std::vector<double> gamma) {
      return quadratic_form(alpha, ProbVector(std::move(gamma)), path->u).value;
    };
    double analytic;
    if (path->vertex) {
      // V(s) = C + a·s^{α−2} + O(s) on γ = (1 − s, s).
      const double s = 1e-10;
      const double k = std::exp2(alpha.value() - 2.0);
      analytic = (k * form_at({1.0 - 0.5 * s, 0.5 * s}) - form_at({1.0 - s, s})) /
                 (k - 1.0);
    } else if (path->surrogate) {
      // V(δ) = C + a·δ + O(δ²) along the surrogate.
      const double d = options.delta;
      const auto half = sharpness_path(alpha, K, 0.5 * d);
      analytic = 2.0 * form_at(half.zeta) - form_at(path->zeta);
    } else {
      analytic = form_at(path->zeta);
    }
    r.analytic_value = analytic;
    Check pair("analytic_pair", 1e-9);
    pair.gap(rel_gap(analytic, target, 1.0));
    r.checks.push_back(pair.result());
  }
  for (const auto& ch : r.checks) r.violations += ch.violations;
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return r;
}

CheckResult check_kl_identity(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("kl_equals_d1", 1e-12);
  const AlphaParam one(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 1e-3 / K);
    const auto q = sample_relint(K, rng, 1e-3 / K);
    c.gap(std::abs(kl_divergence(p, q) - bregman(one, p, q).value));
  }
  return c.result();
}

// Relative gaps below D = 1e-3 (1e-2 for excess risk) are measured against
// that floor, i.e. become absolute near the diagonal where cancellation in
// the entropy differences is intrinsic.
CheckResult check_definition_route(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("closed_form_equals_definition", 1e-9);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(draw_grid_alpha(rng));
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 0.1 / K);
    const auto q = sample_relint(K, rng, 0.1 / K);
    c.gap(rel_gap(bregman(alpha, p, q).value,
                  bregman_from_definition_raw(alpha, p, q), 1e-3));
  }
  return c.result();
}

CheckResult check_excess_risk(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("excess_risk_equals_bregman", 1e-10);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(draw_grid_alpha(rng));
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 0.1 / K);
    const auto q = sample_relint(K, rng, 0.1 / K);
    c.gap(rel_gap(excess_risk(alpha, p, q), bregman(alpha, p, q).value, 1e-2));
  }
  return c.result();
}

CheckResult check_bayes_risk(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("bayes_risk_equals_entropy", 1e-10);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(draw_any_alpha(rng));
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 1e-3 / K);
    const double s = entropy(alpha, p);
    c.gap(std::abs(bayes_risk(alpha, p) - s) / (1.0 + std::abs(s)));
  }
  return c.result();
}

CheckResult check_total_variation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("tv_half_l1_and_subset_sup", 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 1e-12);
    const auto q = sample_relint(K, rng, 1e-12);
    const double tv = tv_distance(p, q);
    double sup = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
      double s = 0.0;
      for (int k = 0; k < K; ++k)
        if (mask & (1u << k)) s += p[k] - q[k];
      sup = std::max(sup, std::abs(s));
    }
    const double half_l1 = 0.5 * l1_distance(p.coords(), q.coords());
    c.gap(std::max(std::abs(tv - half_l1), std::abs(tv - sup)));
  }
  return c.result();
}

namespace {

constexpr std::array<double, 7> kDerivativeAlphas{-1.0, 0.0, 0.5, 1.0,
                                                  1.5,  2.0, 3.0};

PositiveVector shifted(std::span<const double> p, std::size_t i, double h) {
  std::vector<double> x(p.begin(), p.end());
  x[i] += h;
  return PositiveVector(std::move(x));
}

}  // namespace

// Gradient and Hessian gaps are relative with a unit floor, since ∇S_α
// vanishes at p_i = 1/e for α = 1.
CheckResult check_gradient(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("gradient_finite_difference", 1e-6);
  constexpr double h = 1e-5;
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(kDerivativeAlphas[rng.index(kDerivativeAlphas.size())]);
    const int K = draw_K(rng, 2, 8);
    const auto p = sample_relint(K, rng, 0.05);
    const auto g = entropy_gradient(alpha, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < p.dim(); ++k) {
      const double fd = (entropy(alpha, shifted(p.coords(), k, h)) -
                         entropy(alpha, shifted(p.coords(), k, -h))) /
                        (2.0 * h);
      worst = std::max(worst, rel_gap(fd, g[k], 1.0));
    }
    c.gap(worst);
  }
  return c.result();
}

CheckResult check_hessian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("hessian_finite_difference", 1e-5);
  constexpr double h = 1e-5;
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(kDerivativeAlphas[rng.index(kDerivativeAlphas.size())]);
    const int K = draw_K(rng, 2, 8);
    const auto p = sample_relint(K, rng, 0.05);
    const auto hd = entropy_hessian_diag(alpha, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < p.dim(); ++k) {
      const double fd = (entropy_gradient(alpha, shifted(p.coords(), k, h))[k] -
                         entropy_gradient(alpha, shifted(p.coords(), k, -h))[k]) /
                        (2.0 * h);
      worst = std::max(worst, rel_gap(fd, hd[k], 1.0));
    }
    c.gap(worst);
  }
  return c.result();
}

CheckResult check_hessian_off_diagonal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("hessian_off_diagonal", 1e-6);
  constexpr double h = 1e-3;
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(kDerivativeAlphas[rng.index(kDerivativeAlphas.size())]);
    const int K = draw_K(rng, 2, 8);
    const auto p = sample_relint(K, rng, 0.05);
    const std::size_t a = rng.index(p.dim());
    const std::size_t b = (a + 1 + rng.index(p.dim() - 1)) % p.dim();
    const auto at = [&](double da, double db) {
      std::vector<double> x = to_vec(p.coords());
      x[a] += da;
      x[b] += db;
      return entropy(alpha, PositiveVector(std::move(x)));
    };
    c.gap(std::abs(at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h));
  }
  return c.result();
}

CheckResult check_continuity(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("alpha_continuity_probe", 1e-4);
  // The gap is about δ·|∂D/∂α|, which grows with ln(1/q_k)·(p_k/q_k); pairs
  // keep every coordinate at 0.5/K or more.
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam anchor(rng.bernoulli(0.5) ? 0.0 : 1.0);
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 0.5 / K);
    const auto q = sample_relint(K, rng, 0.5 / K);
    c.gap(alpha_continuity_probe(anchor, p, q, 1e-6));
  }
  return c.result();
}

CheckResult check_nonnegativity(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("bregman_nonnegative", 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(draw_any_alpha(rng));
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 1e-6);
    const auto q = sample_relint(K, rng, 1e-6);
    const double d = bregman(alpha, p, q).value;
    c.gap(std::max(-d, bregman(alpha, p, p).value));
  }
  return c.result();
}

CheckResult check_concavity(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("entropy_concave", 1e-10);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaParam alpha(draw_any_alpha(rng));
    const int K = draw_K(rng, 2, 12);
    const auto p = random_positive(K, rng, 0.01, 2.0);
    const auto q = random_positive(K, rng, 0.01, 2.0);
    const double lambda = rng.uniform(0.0, 1.0);
    std::vector<double> mix(static_cast<std::size_t>(K));
    for (std::size_t k = 0; k < mix.size(); ++k)
      mix[k] = lambda * p[k] + (1.0 - lambda) * q[k];
    const double lhs = entropy(alpha, PositiveVector(std::move(mix)));
    const double rhs = lambda * entropy(alpha, p) + (1.0 - lambda) * entropy(alpha, q);
    c.gap(std::max(0.0, rhs - lhs));
  }
  return c.result();
}

CheckResult check_tre_ordering(const std::vector<double>& alphas, std::size_t n,
                               std::uint64_t seed) {
  Rng rng(seed);
  Check c("bregman_vs_tsallis_relative_entropy", 1e-12);
  for (double a : alphas) {
    const AlphaParam alpha(a);
    for (std::size_t i = 0; i < n; ++i) {
      const int K = draw_K(rng, 2, 12);
      const auto p = sample_relint(K, rng, 1e-3 / K);
      const auto q = sample_relint(K, rng, 1e-3 / K);
      const double d = bregman(alpha, p, q).value;
      const double tre = tsallis_relative_entropy(alpha, p, q).value;
      const double shortfall = a < 1.0 ? tre - d : d - tre;
      c.gap(std::max(0.0, shortfall));
    }
  }
  return c.result();
}

CheckResult check_alpha0_chain(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("alpha0_chain", 1e-12);
  const AlphaParam zero(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int K = draw_K(rng, 2, 12);
    const auto p = sample_relint(K, rng, 1e-3 / K);
    const auto q = sample_relint(K, rng, 1e-3 / K);
    const double d0 = bregman(zero, p, q).value;
    const double rkl = reverse_kl(p, q);
    const double l1 = l1_distance(p.coords(), q.coords());
    c.gap(std::max({0.0, rkl - d0, 0.5 * l1 * l1 - rkl}));
  }
  return c.result();
}

CheckResult check_clipped(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("clipped_pinsker", 1e-12);
  for (double a : {2.5, 3.0, 4.0}) {
    const AlphaParam alpha(a);
    for (int K : {3, 4}) {
      for (double eps : {0.05, 0.01}) {
        for (ClipMode mode : {ClipMode::Both, ClipMode::POnly, ClipMode::QOnly}) {
          const double cc = clipped_constant(a, K, mode, eps);
          const double p_margin = mode == ClipMode::QOnly ? 1e-9 : eps;
          const double q_margin = mode == ClipMode::POnly ? 1e-9 : eps;
          for (std::size_t i = 0; i < n; ++i) {
            const auto p = sample_relint(K, rng, p_margin);
            const auto q = sample_relint(K, rng, q_margin);
            const double l1 = l1_distance(p.coords(), q.coords());
            const double d = bregman(alpha, p, q).value;
            c.gap(std::max(0.0, 0.5 * cc * l1 * l1 - d));
          }
        }
      }
    }
  }
  return c.result();
}

CheckResult check_zero_one_regret(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Check c("zero_one_regret", 1e-15);
  for (std::size_t i = 0; i < n; ++i) {
    const int K = draw_K(rng, 2, 10);
    const auto p = sample_relint(K, rng, 1e-12);
    const auto q = sample_relint(K, rng, 1e-12);
    const double regret = zero_one_regret_bound(p, q);
    c.gap(std::max(0.0, regret - l1_distance(p.coords(), q.coords())));
  }
  return c.result();
}

CheckResult check_sigma_bounds() {
  Check c("sigma_bounds", 0.0);
  for (double a : {1.1, 1.5, 2.0}) {
    for (int K = 3; K <= 101; K += 2) {
      const double s = sigma_factor(a, K);
      const double k2 = static_cast<double>(K) * K;
      const double lo = 1.0 + (a - 1.0) / ((3.0 - a) * k2);
      const double hi = 1.0 + 7.0 * (a - 1.0) / (6.0 * (3.0 - a) * k2);
      c.gap(std::max({0.0, lo - s, s - hi}));
    }
  }
  c.gap(std::abs(sigma_factor(2.0, 3) - 1.125));
  return c.result();
}

CheckResult check_constant_regimes() {
  Check c("constant_regimes", 1e-8);
  constexpr double e = 1e-9;
  const auto C = [](double a, int K) { return sharp_constant(AlphaParam(a), K).value; };
  for (int K = 2; K <= 12; ++K) {
    c.gap(std::abs(C(1.0 - e, K) - 1.0));
    c.gap(std::abs(C(1.0 + e, K) - 1.0));
  }
  c.gap(std::abs(C(3.0 - e, 2) - 0.25));
  c.gap(std::abs(C(3.0 + e, 2) - 0.25));
  c.gap(std::abs(C(2.0 - e, 2) - 0.5));
  c.gap(std::abs(C(2.0 + e, 2) - 0.25));
  for (double a : {1.1, 1.25, 1.5, 1.75, 2.0}) {
    for (int K = 3; K <= 101; K += 2) {
      const double base = std::pow(static_cast<double>(K), 1.0 - a);
      const double value = C(a, K);
      c.holds(value > base, base - value);
    }
  }
  return c.result();
}

VerificationReport verify_identities(std::size_t n_samples, std::uint64_t seed) {
  const auto start = Clock::now();
  VerificationReport r;
  r.suite = "identities";
  r.n_samples = n_samples;
  std::uint64_t stream = 0;
  const auto next = [&] { return derive_seed(seed, stream++); };
  r.checks.push_back(check_kl_identity(n_samples, next()));
  r.checks.push_back(check_definition_route(n_samples, next()));
  r.checks.push_back(check_excess_risk(n_samples, next()));
  r.checks.push_back(check_bayes_risk(n_samples, next()));
  r.checks.push_back(check_total_variation(n_samples, next()));
  r.checks.push_back(check_gradient(n_samples, next()));
  r.checks.push_back(check_hessian(n_samples, next()));
  r.checks.push_back(check_hessian_off_diagonal(n_samples, next()));
  r.checks.push_back(check_continuity(n_samples, next()));
  r.checks.push_back(check_nonnegativity(n_samples, next()));
  r.checks.push_back(check_concavity(n_samples, next()));
  r.checks.push_back(check_tre_ordering({-1.0, 0.25, 0.5, 0.75, 1.5, 2.0, 3.0},
                                        n_samples, next()));
  r.checks.push_back(check_alpha0_chain(n_samples, next()));
  r.checks.push_back(check_clipped(n_samples, next()));
  r.checks.push_back(check_zero_one_regret(n_samples, next()));
  r.checks.push_back(check_sigma_bounds());
  r.checks.push_back(check_constant_regimes());
  for (const auto& ch : r.checks) r.violations += ch.violations;
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return r;
}

std::vector<VerificationReport> run_grid(const GridSpec& spec, unsigned threads) {
  struct Cell {
    bool quadratic;
    double alpha;
    int K;
  };
  std::vector<Cell> cells;
  const bool want_constant = spec.suite == Suite::Constant || spec.suite == Suite::All;
  const bool want_quadratic = spec.suite == Suite::Quadratic || spec.suite == Suite::All;
  for (bool quadratic : {false, true}) {
    if (quadratic ? !want_quadratic : !want_constant) continue;
    for (double a : spec.alphas)
      for (int K : spec.Ks) cells.push_back({quadratic, a, K});
  }
  const bool want_identities =
      spec.suite == Suite::Identities || spec.suite == Suite::All;

  std::vector<VerificationReport> out(cells.size() + (want_identities ? 1 : 0));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= out.size()) return;
      try {
        const std::uint64_t seed = derive_seed(spec.seed, i);
        if (i == cells.size()) {
          out[i] = verify_identities(spec.n_samples, seed);
        } else {
          const Cell& cell = cells[i];
          const AlphaParam a(cell.alpha);
          out[i] = cell.quadratic
                       ? verify_quadratic_form(a, cell.K, spec.n_samples, seed,
                                               spec.options)
                       : verify_constant(a, cell.K, spec.n_samples, seed,
                                         spec.options);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(
      threads, static_cast<unsigned>(std::max<std::size_t>(1, out.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tpk
