#include "tpk/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

constexpr double kSeriesRadius = 0.1;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ParameterError(std::string(what) + ": dimension mismatch");
}

// g_α(1 + h) = Σ_{n>=2} c_n h^n with c_2 = 1/2, c_{n+1} = c_n (α − n)/(n + 1).
// Valid for every real α, including the anchors 0 and 1.
double g_series(double a, double h) {
  double c = 0.5;
  double hn = h * h;
  double sum = c * hn;
  for (int n = 2; n < 200; ++n) {
    c *= (a - n) / (n + 1);
    hn *= h;
    const double term = c * hn;
    if (term == 0.0) break;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// g_α(x) from its closed form; used away from x = 1.
double g_direct(const AlphaParam& alpha, double x) {
  const double a = alpha.value();
  if (alpha.is(AlphaAnchor::Zero)) return x - std::log(x) - 1.0;
  if (alpha.is(AlphaAnchor::One)) return x * std::log(x) - x + 1.0;
  return (power(x, a) - 1.0 - a * (x - 1.0)) / (a * (a - 1.0));
}

double g_alpha(const AlphaParam& alpha, double p, double q) {
  const double h = (p - q) / q;
  if (std::abs(h) <= kSeriesRadius) return g_series(alpha.value(), h);
  return g_direct(alpha, p / q);
}

// Contribution of one coordinate to d_α(p‖q), p, q > 0.
double coordinate_term(const AlphaParam& alpha, double p, double q) {
  if (p == q) return 0.0;
  if (alpha.is(AlphaAnchor::Two)) {
    const double d = p - q;
    return 0.5 * d * d;
  }
  const double a = alpha.value();
  const double h = (p - q) / q;
  if (std::abs(h) <= kSeriesRadius) return power(q, a) * g_series(a, h);
  if (alpha.is(AlphaAnchor::Zero)) {
    const double x = p / q;
    return x - std::log(x) - 1.0;
  }
  if (alpha.is(AlphaAnchor::One)) return p * std::log(p / q) - p + q;
  return (power(p, a) + (a - 1.0) * power(q, a) - a * p * power(q, a - 1.0)) /
         (a * (a - 1.0));
}

}  // namespace

DivergenceValue bregman(const AlphaParam& alpha, const PositiveVector& p,
                        const PositiveVector& q) {
  require_same_dim(p.dim(), q.dim(), "bregman");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k)
    sum += coordinate_term(alpha, p[k], q[k]);
  return DivergenceValue::of(sum);
}

DivergenceValue bregman_extended(const AlphaParam& alpha,
                                 std::span<const double> p,
                                 std::span<const double> q) {
  require_same_dim(p.size(), q.size(), "bregman");
  const double a = alpha.value();
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double pk = p[k], qk = q[k];
    if (!std::isfinite(pk) || !std::isfinite(qk) || pk < 0.0 || qk < 0.0)
      throw ParameterError("bregman: coordinates must be finite and nonnegative");
    if (pk == qk) continue;
    if (pk == 0.0) {
      if (!(a > 0.0)) return {kInf, false};
      sum += alpha.is(AlphaAnchor::One) ? qk : power(qk, a) / a;
    } else if (qk == 0.0) {
      if (!(a > 1.0)) return {kInf, false};
      sum += power(pk, a) / (a * (a - 1.0));
    } else {
      sum += coordinate_term(alpha, pk, qk);
    }
  }
  return DivergenceValue::of(sum);
}

double bregman_from_definition_raw(const AlphaParam& alpha,
                                   const PositiveVector& p,
                                   const PositiveVector& q) {
  require_same_dim(p.dim(), q.dim(), "bregman_from_definition");
  const auto grad_q = entropy_gradient(alpha, q);
  double inner = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) inner += grad_q[k] * (p[k] - q[k]);
  return -entropy(alpha, p) + entropy(alpha, q) + inner;
}

DivergenceValue bregman_from_definition(const AlphaParam& alpha,
                                        const PositiveVector& p,
                                        const PositiveVector& q) {
  return DivergenceValue::of(bregman_from_definition_raw(alpha, p, q));
}

double excess_risk(const AlphaParam& alpha, const ProbVector& p,
                   const ProbVector& q) {
  require_same_dim(p.dim(), q.dim(), "excess_risk");
  double risk = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k)
    risk += p[k] * (loss(alpha, q, k) - loss(alpha, p, k));
  return risk;
}

RelativeEntropyValue tsallis_relative_entropy(const AlphaParam& alpha,
                                              const ProbVector& p,
                                              const ProbVector& q) {
  require_same_dim(p.dim(), q.dim(), "tsallis_relative_entropy");
  if (alpha.is(AlphaAnchor::Zero) || alpha.is(AlphaAnchor::One))
    throw ParameterError(
        "tsallis_relative_entropy: undefined for alpha in {0, 1}");
  if (!p.relint() || !q.relint())
    throw ParameterError(
        "tsallis_relative_entropy: arguments must lie in the relative interior");
  // On the simplex Σ q_k (p_k/q_k − 1) = 0, so Σ q_k f_α(p_k/q_k) equals
  // Σ q_k g_α(p_k/q_k); the latter has no cancellation near p = q.
  double sum = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k)
    if (p[k] != q[k]) sum += q[k] * g_alpha(alpha, p[k], q[k]);
  return {sum < 0.0 ? 0.0 : sum, alpha.value() < 0.0};
}

double kl_divergence(const ProbVector& p, const ProbVector& q) {
  require_same_dim(p.dim(), q.dim(), "kl_divergence");
  if (!p.relint() || !q.relint())
    throw ParameterError("kl_divergence: arguments must lie in the relative interior");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) sum += p[k] * std::log(p[k] / q[k]);
  return sum;
}

double reverse_kl(const ProbVector& p, const ProbVector& q) {
  return kl_divergence(q, p);
}

double itakura_saito(const PositiveVector& p, const PositiveVector& q) {
  require_same_dim(p.dim(), q.dim(), "itakura_saito");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) {
    const double x = p[k] / q[k];
    sum += x - std::log(x) - 1.0;
  }
  return sum;
}

double half_squared_euclidean(std::span<const double> p,
                              std::span<const double> q) {
  require_same_dim(p.size(), q.size(), "half_squared_euclidean");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - q[k];
    sum += d * d;
  }
  return 0.5 * sum;
}

double alpha_continuity_probe(const AlphaParam& anchor, const PositiveVector& p,
                              const PositiveVector& q, double delta) {
  if (!anchor.is(AlphaAnchor::Zero) && !anchor.is(AlphaAnchor::One))
    throw ParameterError("alpha_continuity_probe: alpha must be exactly 0 or 1");
  if (!(delta > 0.0) || delta > 1e-3)
    throw ParameterError("alpha_continuity_probe: delta must lie in (0, 1e-3]");
  const double at_anchor = bregman(anchor, p, q).value;
  const double below = bregman(AlphaParam(anchor.value() - delta), p, q).value;
  const double above = bregman(AlphaParam(anchor.value() + delta), p, q).value;
  return std::max(std::abs(below - at_anchor), std::abs(above - at_anchor));
}

}  // namespace tpk
