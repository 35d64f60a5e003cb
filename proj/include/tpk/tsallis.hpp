#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tpk/simplex.hpp"

namespace tpk {

/// Regimes of α that govern the shape of the sharp Pinsker constant.
enum class AlphaRegime {
  Le1,     ///< α <= 1
  In1To2,  ///< 1 < α <= 2
  Gt2,     ///< α > 2
};

/// Exact values of α with dedicated closed forms.
enum class AlphaAnchor { Zero, One, Two, Three };

/// The real Tsallis parameter α with its regime and (exact) anchor.
class AlphaParam {
 public:
  /// Throws ParameterError for non-finite values.
  explicit AlphaParam(double value);

  double value() const noexcept { return value_; }
  AlphaRegime regime() const noexcept { return regime_; }
  std::optional<AlphaAnchor> anchor() const noexcept { return anchor_; }
  bool is(AlphaAnchor a) const noexcept { return anchor_ == a; }

 private:
  double value_;
  AlphaRegime regime_;
  std::optional<AlphaAnchor> anchor_;
};

std::string_view to_string(AlphaRegime r);

/// x^a with exact multiplication for small integer exponents
/// (0, ±1, ±2, 3) and std::pow otherwise. 0^a = +inf for a < 0.
double power(double x, double a);

/// An extended real: `finite` is false when `value` is ±inf.
struct ExtendedValue {
  double value;
  bool finite;
};

/// Tsallis entropy S_α(p) on the positive orthant:
///   Σ p_k^α / (α(1 − α))      α ∉ {0, 1}
///   Σ ln p_k                  α = 0 (Burg)
///   −Σ p_k ln p_k             α = 1 (Shannon)
/// The branch is chosen by the exact anchor, never by a limit.
double entropy(const AlphaParam& alpha, const PositiveVector& p);

/// S_α on the closed orthant [0, +inf)^K with 0^α = +inf for α < 0,
/// ln 0 = −inf and 0·ln 0 = 0. For α <= 0 and a zero coordinate the result
/// is −inf with finite = false. Throws on negative or non-finite input.
ExtendedValue entropy_extended(const AlphaParam& alpha,
                               std::span<const double> p);

/// Tsallis (power) loss ℓ_α(q, k) for a prediction q in relint(Δ^K) and
/// outcome index k (0-based):
///   q_k^{α−1}/(1 − α) + (1/α) Σ q_i^α    α ∉ {0, 1}
///   q_k^{−1} − K + Σ ln q_i              α = 0
///   −ln q_k                              α = 1
double loss(const AlphaParam& alpha, const ProbVector& q, std::size_t k);

/// Bayes risk E_{Y~p}[ℓ_α(p, Y)], evaluated as the expectation (it equals
/// S_α(p); the two are computed independently).
double bayes_risk(const AlphaParam& alpha, const ProbVector& p);

/// ∇S_α(p): −p_i^{α−1}/(α − 1), or 1/p_i at α = 0, or −(1 + ln p_i) at α = 1.
std::vector<double> entropy_gradient(const AlphaParam& alpha,
                                     const PositiveVector& p);

/// Diagonal of the Hessian of S_α, −p_i^{α−2}. The Hessian is diagonal.
std::vector<double> entropy_hessian_diag(const AlphaParam& alpha,
                                         const PositiveVector& p);

}  // namespace tpk
