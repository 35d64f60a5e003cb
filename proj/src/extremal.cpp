#include "tpk/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tpk/divergences.hpp"
#include "tpk/errors.hpp"
#include "tpk/pinsker.hpp"

namespace tpk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(int K) {
  if (K < 2) throw ParameterError("dimension K must be at least 2");
}

std::vector<double> two_point_tangent(int K) {
  std::vector<double> v(static_cast<std::size_t>(K), 0.0);
  v[0] = 0.5;
  v[1] = -0.5;
  return v;
}

std::vector<double> balanced_tangent(int K) {
  const int lo = K / 2;
  const int hi = K - lo;
  std::vector<double> v(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k)
    v[static_cast<std::size_t>(k)] = k < lo ? 0.5 / lo : -0.5 / hi;
  return v;
}

double max_step(std::span<const double> zeta, std::span<const double> u) {
  double t = kInf;
  for (std::size_t k = 0; k < zeta.size(); ++k)
    if (u[k] != 0.0) t = std::min(t, 2.0 * zeta[k] / std::abs(u[k]));
  return t;
}

// Rounding leaves Σ(p − q) off zero by a few ulps, which moves the pair off
// the tangent space and biases 2D/‖p − q‖₁² by about ulp/t. The residual is
// folded back into the support coordinate of p with the finest ulp until the
// realized differences sum to exactly zero.
void balance_differences(std::vector<double>& p, const std::vector<double>& q,
                         std::span<const double> u) {
  std::size_t j = p.size();
  for (std::size_t k = 0; k < p.size(); ++k)
    if (u[k] != 0.0 && (j == p.size() || p[k] < p[j])) j = k;
  if (j == p.size()) return;
  for (int pass = 0; pass < 4; ++pass) {
    long double s = 0.0L;
    for (std::size_t k = 0; k < p.size(); ++k) s += static_cast<long double>(p[k]) - q[k];
    if (s == 0.0L) return;
    p[j] = static_cast<double>(static_cast<long double>(p[j]) - s);
  }
}

WitnessPair pair_around(std::span<const double> zeta, std::span<const double> u,
                        double t) {
  std::vector<double> p(zeta.size()), q(zeta.size());
  for (std::size_t k = 0; k < zeta.size(); ++k) {
    p[k] = zeta[k] + 0.5 * t * u[k];
    q[k] = zeta[k] - 0.5 * t * u[k];
  }
  balance_differences(p, q, u);
  return {ProbVector(std::move(p)), ProbVector(std::move(q))};
}

}  // namespace

QuadraticFormPoint quadratic_form(const AlphaParam& alpha,
                                  const ProbVector& gamma,
                                  const TangentUnitVector& v) {
  if (!gamma.relint())
    throw ParameterError("quadratic_form: gamma must lie in the relative interior");
  if (gamma.dim() != v.dim())
    throw ParameterError("quadratic_form: dimension mismatch");
  const double e = alpha.value() - 2.0;
  double value = 0.0;
  for (std::size_t k = 0; k < gamma.dim(); ++k)
    value += v[k] * v[k] * power(gamma[k], e);
  return {gamma, v, value};
}

GammaOptimum optimal_gamma_for_weights(double nu, std::span<const double> lambda) {
  if (!std::isfinite(nu) || nu < 0.0)
    throw ParameterError("optimal_gamma_for_weights: nu must be finite and >= 0");
  if (lambda.size() < 2)
    throw ParameterError("optimal_gamma_for_weights: need at least 2 weights");
  const double r = 1.0 / (nu + 1.0);
  std::vector<double> w(lambda.size());
  double total = 0.0;
  bool boundary = false;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (!std::isfinite(lambda[k]) || lambda[k] < 0.0)
      throw ParameterError(
          "optimal_gamma_for_weights: weights must be finite and nonnegative");
    boundary = boundary || lambda[k] == 0.0;
    w[k] = lambda[k] == 0.0 ? 0.0 : std::pow(lambda[k], r);
    total += w[k];
  }
  if (total == 0.0)
    throw ParameterError("optimal_gamma_for_weights: weights are all zero");
  const double value = std::pow(total, nu + 1.0);
  for (double& x : w) x /= total;
  return {ProbVector(std::move(w), Support::Closed), boundary, value};
}

TangentOptimum min_tangent_norm(double beta, int K) {
  require_dimension(K);
  if (!std::isfinite(beta) || !(beta > 0.0))
    throw ParameterError("min_tangent_norm: beta must be positive and finite");
  if (beta == 1.0)
    throw ParameterError(
        "min_tangent_norm: beta = 1 has no unique minimizer (every tangent "
        "unit vector has norm 1)");
  if (beta < 1.0)
    return {TangentUnitVector(two_point_tangent(K)), std::exp2(1.0 / beta - 1.0)};
  const double lo = K / 2;
  const double hi = K - K / 2;
  const double value =
      0.5 * std::pow(std::pow(lo, 1.0 - beta) + std::pow(hi, 1.0 - beta), 1.0 / beta);
  return {TangentUnitVector(balanced_tangent(K)), value};
}

double dual_exponent(double alpha) {
  if (!std::isfinite(alpha) || alpha >= 3.0)
    throw ParameterError("dual_exponent: requires alpha < 3");
  return 2.0 / (3.0 - alpha);
}

SharpnessPath sharpness_path(const AlphaParam& alpha, int K, double delta) {
  require_dimension(K);
  const double a = alpha.value();
  if (a < 1.0) {
    auto u = two_point_tangent(K);
    std::vector<double> zeta(static_cast<std::size_t>(K));
    bool surrogate = false;
    if (K == 2) {
      zeta = {0.5, 0.5};
    } else {
      if (!(delta > 0.0) || !(delta < 1.0))
        throw ParameterError("sharpness_path: delta must lie in (0, 1)");
      std::fill(zeta.begin(), zeta.end(), delta / (K - 2));
      zeta[0] = zeta[1] = 0.5 * (1.0 - delta);
      surrogate = true;
    }
    const double t_max = max_step(zeta, u);
    return {std::move(zeta), TangentUnitVector(std::move(u)), t_max, surrogate, false};
  }
  if (a <= 2.0) {
    auto u = balanced_tangent(K);
    std::vector<double> lambda(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) lambda[k] = u[k] * u[k];
    auto opt = optimal_gamma_for_weights(2.0 - a, lambda);
    std::vector<double> zeta(opt.gamma.coords().begin(), opt.gamma.coords().end());
    const double t_max = max_step(zeta, u);
    return {std::move(zeta), TangentUnitVector(std::move(u)), t_max, false, false};
  }
  if (K >= 3)
    throw ParameterError(
        "sharpness_path: no sharpness witness for alpha > 2 and K >= 3 "
        "(the sharp constant is 0)");
  if (a >= 3.0)
    return {{0.5, 0.5}, TangentUnitVector({0.5, -0.5}), 2.0, false, false};
  return {{1.0, 0.0}, TangentUnitVector({0.5, -0.5}), 0.8, false, true};
}

WitnessPair sharpness_witness(const AlphaParam& alpha, int K, double t,
                              double delta) {
  const auto path = sharpness_path(alpha, K, delta);
  if (!std::isfinite(t) || !(t > 0.0) || !(t < path.t_max))
    throw ParameterError("sharpness_witness: t must lie in (0, " +
                         std::to_string(path.t_max) + ")");
  if (path.vertex) {
    const std::vector<double> base{1.0 - t, t};
    return pair_around(base, path.u.coords(), t);
  }
  return pair_around(path.zeta, path.u.coords(), t);
}

double pinsker_ratio(const AlphaParam& alpha, const ProbVector& p,
                     const ProbVector& q) {
  const double l1 = l1_distance(p.coords(), q.coords());
  if (l1 == 0.0) throw ParameterError("pinsker_ratio: p and q coincide");
  return 2.0 * bregman(alpha, p, q).value / (l1 * l1);
}

double no_pinsker_ratio(double alpha, double t) {
  return std::pow(t, alpha - 2.0) *
         (std::pow(5.0, alpha - 1.0) - std::pow(3.0, alpha - 1.0)) /
         (2.0 * (alpha - 1.0) * std::pow(4.0, alpha - 1.0));
}

NoPinskerWitness no_pinsker_witness(double alpha, int K, double t) {
  if (!std::isfinite(alpha) || !(alpha > 2.0) || K < 3)
    throw ParameterError("no_pinsker_witness: requires alpha > 2 and K ≥ 3");
  if (!std::isfinite(t) || !(t > 0.0) || !(t < 1.0 / (K - 1)))
    throw ParameterError("no_pinsker_witness: t must lie in (0, 1/(K − 1))");
  std::vector<double> p(static_cast<std::size_t>(K), t);
  p[0] = 1.0 - (K - 1) * t;
  p[1] = 0.75 * t;
  p[2] = 1.25 * t;
  std::vector<double> q = p;
  std::swap(q[1], q[2]);
  return {ProbVector(std::move(p)), ProbVector(std::move(q)),
          no_pinsker_ratio(alpha, t)};
}

OrthantWitness orthant_witness(double alpha, int K, double t) {
  require_dimension(K);
  if (!std::isfinite(alpha))
    throw ParameterError("orthant_witness: alpha must be finite");
  if (alpha == 2.0)
    throw ParameterError(
        "orthant_witness: no failure witness at alpha = 2 (the orthant "
        "constant is 1/K)");
  if (!std::isfinite(t) || !(t > 0.0))
    throw ParameterError("orthant_witness: t must be positive and finite");
  const double eps = alpha < 2.0 ? 1.0 / t : t;
  std::vector<double> q(static_cast<std::size_t>(K), t);
  std::vector<double> p = q;
  p[0] += eps;
  PositiveVector pv(std::move(p)), qv(std::move(q));
  const double l1 = l1_distance(pv.coords(), qv.coords());
  const double ratio = 2.0 * bregman(AlphaParam(alpha), pv, qv).value / (l1 * l1);
  return {std::move(pv), std::move(qv), ratio};
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Sharpness:
      return "SHARPNESS";
    case WitnessKind::NoPinsker:
      return "NO_PINSKER";
    case WitnessKind::OrthantAlpha2:
      return "ORTHANT_ALPHA2";
    case WitnessKind::OrthantGeneral:
      return "ORTHANT_GENERAL";
  }
  return "?";
}

WitnessFamily make_witness_family(WitnessKind kind, double alpha, int K,
                                  double delta) {
  require_dimension(K);
  const AlphaParam a(alpha);
  switch (kind) {
    case WitnessKind::Sharpness: {
      const auto path = sharpness_path(a, K, delta);
      const double c = sharp_constant(a, K).value;
      return {kind, alpha, K, 0.0, path.t_max, [a, K, delta, c](double t) {
                auto w = sharpness_witness(a, K, t, delta);
                const double r = pinsker_ratio(a, w.p, w.q);
                return WitnessPoint{t,
                                    {w.p.coords().begin(), w.p.coords().end()},
                                    {w.q.coords().begin(), w.q.coords().end()},
                                    r, c};
              }};
    }
    case WitnessKind::NoPinsker: {
      no_pinsker_witness(alpha, K, 0.5 / (K - 1));
      return {kind, alpha, K, 0.0, 1.0 / (K - 1), [a, K](double t) {
                auto w = no_pinsker_witness(a.value(), K, t);
                const double l1 = l1_distance(w.p.coords(), w.q.coords());
                const double r = bregman(a, w.p, w.q).value / (l1 * l1);
                return WitnessPoint{t,
                                    {w.p.coords().begin(), w.p.coords().end()},
                                    {w.q.coords().begin(), w.q.coords().end()},
                                    r, w.predicted};
              }};
    }
    case WitnessKind::OrthantAlpha2: {
      if (alpha != 2.0)
        throw ParameterError("orthant-alpha2 witness requires alpha = 2");
      return {kind, alpha, K, 0.0, kInf, [a, K](double t) {
                if (!std::isfinite(t) || !(t > 0.0))
                  throw ParameterError("orthant-alpha2 witness: t must be positive");
                std::vector<double> q(static_cast<std::size_t>(K), 1.0);
                std::vector<double> p(static_cast<std::size_t>(K), 1.0 + t);
                const double l1 = l1_distance(p, q);
                const double r =
                    2.0 * bregman(a, PositiveVector(p), PositiveVector(q)).value /
                    (l1 * l1);
                return WitnessPoint{t, std::move(p), std::move(q), r,
                                    orthant_constant_alpha2(K)};
              }};
    }
    case WitnessKind::OrthantGeneral: {
      orthant_witness(alpha, K, 1.0);
      return {kind, alpha, K, 0.0, kInf, [alpha, K](double t) {
                auto w = orthant_witness(alpha, K, t);
                return WitnessPoint{t,
                                    {w.p.coords().begin(), w.p.coords().end()},
                                    {w.q.coords().begin(), w.q.coords().end()},
                                    w.ratio, std::pow(t, alpha - 2.0)};
              }};
    }
  }
  throw ParameterError("make_witness_family: unknown kind");
}

}  // namespace tpk
