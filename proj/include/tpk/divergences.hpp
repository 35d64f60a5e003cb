#pragma once

#include <span>

#include "tpk/simplex.hpp"
#include "tpk/tsallis.hpp"

namespace tpk {

/// A divergence value. `value` is >= 0 when `finite`; `finite` is false only
/// when an argument sits on the boundary in a branch whose limit diverges.
struct DivergenceValue {
  double value;
  bool finite;

  /// Finite value, with rounding-level negatives clamped to 0.
  static DivergenceValue of(double v) { return {v < 0.0 ? 0.0 : v, true}; }
};

/// D_α(p‖q), the Bregman divergence of −S_α, evaluated through the closed
/// β-divergence forms d_α (Itakura–Saito at α = 0, I-divergence at α = 1,
/// ½‖p − q‖₂² at α = 2).
///
/// Each coordinate contributes q^α·g_α(p/q) with
/// g_α(x) = (x^α − 1 − α(x − 1)) / (α(α − 1)). For |p/q − 1| <= 0.1 the
/// binomial series of g_α is summed instead of the closed form, which keeps
/// full relative precision when p and q are close.
DivergenceValue bregman(const AlphaParam& alpha, const PositiveVector& p,
                        const PositiveVector& q);

/// D_α on the closed orthant, continuing each coordinate by its limit. A
/// coordinate with p_k = 0 < q_k contributes q_k^α/α for α > 0 and diverges
/// otherwise; q_k = 0 < p_k contributes p_k^α/(α(α − 1)) for α > 1 and
/// diverges otherwise; p_k = q_k contributes 0.
DivergenceValue bregman_extended(const AlphaParam& alpha,
                                 std::span<const double> p,
                                 std::span<const double> q);

/// D_α straight from the Bregman definition with f = −S_α:
/// −S_α(p) + S_α(q) + ⟨∇S_α(q), p − q⟩. Independent of `bregman`.
DivergenceValue bregman_from_definition(const AlphaParam& alpha,
                                        const PositiveVector& p,
                                        const PositiveVector& q);

/// Same as bregman_from_definition but without clamping rounding negatives.
double bregman_from_definition_raw(const AlphaParam& alpha,
                                   const PositiveVector& p,
                                   const PositiveVector& q);

/// Excess risk E_{Y~p}[ℓ_α(q, Y)] − E_{Y~p}[ℓ_α(p, Y)] on relint(Δ^K).
double excess_risk(const AlphaParam& alpha, const ProbVector& p,
                   const ProbVector& q);

struct RelativeEntropyValue {
  double value;
  /// Set for α < 0, where the generator is used outside its usual range.
  bool extended_domain;
};

/// Tsallis relative entropy Σ_k q_k f_α(p_k/q_k), f_α(x) = (x^α − 1)/(α(α − 1)),
/// for p, q in relint(Δ^K). Throws for α ∈ {0, 1}.
RelativeEntropyValue tsallis_relative_entropy(const AlphaParam& alpha,
                                              const ProbVector& p,
                                              const ProbVector& q);

/// KL(p‖q) = Σ p_k ln(p_k/q_k) for p, q in relint(Δ^K).
double kl_divergence(const ProbVector& p, const ProbVector& q);

/// KL(q‖p), the α = 0 counterpart of the Tsallis relative entropy.
double reverse_kl(const ProbVector& p, const ProbVector& q);

/// Σ (p_k/q_k − ln(p_k/q_k) − 1).
double itakura_saito(const PositiveVector& p, const PositiveVector& q);

/// ½‖p − q‖₂².
double half_squared_euclidean(std::span<const double> p,
                              std::span<const double> q);

/// max over s ∈ {−1, +1} of |D_{a + s·δ}(p‖q) − D_a(p‖q)| for an anchor
/// a ∈ {0, 1}. Throws for other α or δ outside (0, 1e-3].
double alpha_continuity_probe(const AlphaParam& anchor, const PositiveVector& p,
                              const PositiveVector& q, double delta);

}  // namespace tpk
