#pragma once

#include <optional>
#include <string_view>

#include "tpk/simplex.hpp"
#include "tpk/tsallis.hpp"

namespace tpk {

// All constants C follow one convention: D_α(p‖q) >= (C/2)·‖p − q‖₁².

enum class PinskerRegime {
  AlphaLe1,       ///< C = 2^{1−α}
  Alpha1To2Even,  ///< C = K^{1−α}
  Alpha1To2Odd,   ///< C = K^{1−α}·σ_{α,K}
  AlphaGt2K2,     ///< C = 2^{1−max(α,3)}
  AlphaGt2KGe3,   ///< C = 0, no Pinsker-type inequality
};

std::string_view to_string(PinskerRegime r);

struct PinskerConstant {
  double value;
  PinskerRegime regime;
  /// σ_{α,K}, present exactly in the Alpha1To2Odd regime.
  std::optional<double> sigma;
};

/// Largest C with D_α(p‖q) >= (C/2)‖p − q‖₁² for all p, q in relint(Δ^K).
/// Throws for K < 2.
PinskerConstant sharp_constant(const AlphaParam& alpha, int K);

/// Parity factor for 1 < α <= 2 and odd K >= 3:
///   σ = ( ((1 − 1/K)^e + (1 + 1/K)^e) / 2 )^{3−α},  e = (1 − α)/(3 − α).
/// At α = 2 (e = −1) the two powers are evaluated as K/(K ∓ 1).
double sigma_factor(double alpha, int K);

/// ℓ₁ strong-convexity modulus of −S_α on relint(Δ^K); equals the sharp
/// Pinsker constant.
double strong_convexity_param(const AlphaParam& alpha, int K);

/// Constant of the α = 2 inequality on the whole orthant (0, +inf)^K,
/// D₂ >= (1/(2K))‖p − q‖₁², reported as C = 1/K. For every α ≠ 2 the orthant
/// constant is 0.
double orthant_constant_alpha2(int K);

enum class ClipMode {
  Both,   ///< p_k >= ε and q_k >= ε
  POnly,  ///< p_k >= ε
  QOnly,  ///< q_k >= ε
};

std::string_view to_string(ClipMode m);

/// Pinsker constant valid for α > 2, K >= 3 when coordinates are clipped
/// below by ε ∈ (0, 1/K):
///   Both:  C_{2,K}·ε^{α−2}
///   POnly: C_{2,K}·(2/(α(α − 1)))·ε^{α−2}
///   QOnly: C_{2,K}·(2/α)·ε^{α−2}
double clipped_constant(double alpha, int K, ClipMode mode, double eps);

/// Plug-in 0–1 regret P_{Y~p}[Y ≠ k*_q] − P_{Y~p}[Y ≠ k*_p], with argmax
/// ties broken by lowest index. Never exceeds ‖p − q‖₁.
double zero_one_regret_bound(const ProbVector& p, const ProbVector& q);

}  // namespace tpk
