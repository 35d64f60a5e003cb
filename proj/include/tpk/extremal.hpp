#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tpk/simplex.hpp"
#include "tpk/tsallis.hpp"

namespace tpk {

/// A point (γ, v) of the variational problem together with
/// value = Σ_k v_k² γ_k^{α−2}.
struct QuadraticFormPoint {
  ProbVector gamma;
  TangentUnitVector v;
  double value;
};

/// Evaluates the quadratic form at γ ∈ relint(Δ^K), v ∈ T¹. Over all such
/// pairs its infimum is C_{α,K}. Throws if γ is on the boundary.
QuadraticFormPoint quadratic_form(const AlphaParam& alpha,
                                  const ProbVector& gamma,
                                  const TangentUnitVector& v);

struct GammaOptimum {
  /// Minimizer γ̂_k ∝ λ_k^{1/(ν+1)}. Coordinates with λ_k = 0 are 0, in which
  /// case the infimum is only approached and `boundary` is set.
  ProbVector gamma;
  bool boundary;
  /// (Σ_k λ_k^{1/(ν+1)})^{ν+1}
  double value;
};

/// inf over γ ∈ relint(Δ^K) of Σ_k λ_k γ_k^{−ν}. Requires ν >= 0 and a
/// nonnegative, nonzero λ.
GammaOptimum optimal_gamma_for_weights(double nu, std::span<const double> lambda);

struct TangentOptimum {
  TangentUnitVector v;
  double value;
};

/// Minimizer of ‖v‖_β over T¹ and the minimum, positive entries first.
///   0 < β < 1: v = (1/2, −1/2, 0, …), value 2^{1/β − 1}
///   β > 1:     v_k = 1/(2⌊K/2⌋) on the first ⌊K/2⌋ coordinates and
///              −1/(2⌈K/2⌉) on the rest, value ½(⌊K/2⌋^{1−β} + ⌈K/2⌉^{1−β})^{1/β}
/// Throws for β = 1, where every element of T¹ has norm 1.
TangentOptimum min_tangent_norm(double beta, int K);

/// Dual exponent β = 2/(3 − α) tying the quadratic form to ‖·‖_β.
double dual_exponent(double alpha);

/// Base point ζ and direction u along which the Pinsker ratio approaches
/// C_{α,K}, with t_max the largest t keeping ζ ± (t/2)u in relint(Δ^K).
struct SharpnessPath {
  std::vector<double> zeta;
  TangentUnitVector u;
  double t_max;
  /// True when ζ is the margin-δ interior surrogate of a boundary optimizer.
  bool surrogate;
  /// True on the vertex segment; `zeta` then holds the vertex (1, 0).
  bool vertex;
};

/// The approach path used by sharpness_witness.
///   α < 1:      u = (1/2, −1/2, 0, …); ζ puts 1 − δ on the two support
///               coordinates and δ/(K − 2) on the rest (exact optimum for K = 2)
///   1 <= α <= 2: u balanced, ζ = γ̂ for ν = 2 − α, λ = u² (interior)
///   α > 2, K = 2: for α >= 3, ζ = (1/2, 1/2); for α < 3 the infimum sits at
///               a vertex and the path is the segment ζ(s) = (1 − s, s) with
///               step t = s, so ζ depends on t (see sharpness_witness)
/// Throws for α > 2, K >= 3 where C_{α,K} = 0.
SharpnessPath sharpness_path(const AlphaParam& alpha, int K, double delta = 1e-6);

struct WitnessPair {
  ProbVector p;
  ProbVector q;
};

/// (ζ + (t/2)u, ζ − (t/2)u) along sharpness_path. On the vertex segment
/// (α ∈ (2, 3), K = 2) the base point is (1 − t, t). Throws unless
/// 0 < t < t_max.
WitnessPair sharpness_witness(const AlphaParam& alpha, int K, double t,
                              double delta = 1e-6);

/// 2 D_α(p‖q) / ‖p − q‖₁².
double pinsker_ratio(const AlphaParam& alpha, const ProbVector& p,
                     const ProbVector& q);

struct NoPinskerWitness {
  ProbVector p;
  ProbVector q;
  /// Closed form of D_α(p‖q)/‖p − q‖₁²:
  /// t^{α−2} (5^{α−1} − 3^{α−1}) / (2(α − 1) 4^{α−1}).
  double predicted;
};

/// p = (1 − (K−1)t, 3t/4, 5t/4, t, …, t) and q = p with coordinates 2 and 3
/// swapped, so ‖p − q‖₁ = t. Requires α > 2, K >= 3, 0 < t < 1/(K − 1).
NoPinskerWitness no_pinsker_witness(double alpha, int K, double t);

/// Closed-form ratio D_α/‖p − q‖₁² of no_pinsker_witness.
double no_pinsker_ratio(double alpha, double t);

struct OrthantWitness {
  PositiveVector p;
  PositiveVector q;
  /// 2 D_α(p‖q) / ‖p − q‖₁²
  double ratio;
};

/// q = t·1, p = q + ε e₁ with ε = 1/t for α < 2 and ε = t for α > 2. The
/// ratio tends to 0 as t → +inf (α < 2) or t → 0⁺ (α > 2). Throws for α = 2,
/// where the orthant constant is 1/K.
OrthantWitness orthant_witness(double alpha, int K, double t);

enum class WitnessKind { Sharpness, NoPinsker, OrthantAlpha2, OrthantGeneral };

std::string_view to_string(WitnessKind k);

struct WitnessPoint {
  double t;
  std::vector<double> p;
  std::vector<double> q;
  double ratio;
  double predicted;
};

/// A parametric pair t ↦ (p(t), q(t)) on its valid range (t_lo, t_hi).
///
/// `ratio` and `predicted` follow one convention per kind:
///   Sharpness, OrthantGeneral, OrthantAlpha2: 2D/‖p − q‖₁², predicted C_{α,K},
///     t^{α−2} and 1/K respectively
///   NoPinsker: D/‖p − q‖₁² and its closed form
///
/// OrthantAlpha2 is q(t) = 1, p(t) = (1 + t)·1, the equality case of the
/// α = 2 orthant bound.
struct WitnessFamily {
  WitnessKind kind;
  double alpha;
  int K;
  double t_lo;
  double t_hi;
  /// Points lie in relint(Δ^K) for Sharpness and NoPinsker and in
  /// the orthant otherwise.
  std::function<WitnessPoint(double)> evaluate;
};

/// Builds a family, throwing when (kind, α, K) has none.
WitnessFamily make_witness_family(WitnessKind kind, double alpha, int K,
                                  double delta = 1e-6);

}  // namespace tpk
