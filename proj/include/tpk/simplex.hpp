#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpk/rng.hpp"

namespace tpk {

/// Absolute tolerance on coordinate sums (simplex membership, tangent
/// constraints and the ℓ₁-unit constraint).
inline constexpr double kSimplexTolerance = 1e-12;

enum class Support {
  Relint,  ///< every coordinate strictly positive
  Closed,  ///< zero coordinates allowed
};

/// Describes why `coords` is not a valid point of the simplex, or nullopt.
std::optional<std::string> simplex_violation(std::span<const double> coords,
                                             Support support);

/// Same for the positive orthant (0, +inf)^K.
std::optional<std::string> orthant_violation(std::span<const double> coords);

class PositiveVector;

/// A point of the probability simplex with K >= 2 coordinates that sum to 1
/// within kSimplexTolerance. Immutable once built.
class ProbVector {
 public:
  /// Throws ParameterError naming the violated invariant.
  explicit ProbVector(std::vector<double> coords,
                      Support support = Support::Relint);

  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  /// True when every coordinate is strictly positive.
  bool relint() const noexcept { return relint_; }

 private:
  std::vector<double> coords_;
  bool relint_ = false;
};

/// A point of the positive orthant (0, +inf)^K, the domain of D_α and d_β.
class PositiveVector {
 public:
  explicit PositiveVector(std::vector<double> coords);
  /// Interior simplex points are orthant points; boundary points throw.
  PositiveVector(const ProbVector& p);  // NOLINT(google-explicit-constructor)

  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }

 private:
  std::vector<double> coords_;
};

/// Element of the tangent ℓ₁-unit sphere T¹ = {v : Σv = 0, ‖v‖₁ = 1}.
/// Signed zeros are normalized to +0.0.
class TangentUnitVector {
 public:
  explicit TangentUnitVector(std::vector<double> coords);

  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }

 private:
  std::vector<double> coords_;
};

/// (Σ|x_k|^β)^(1/β); a quasi-norm for 0 < β < 1. Throws for β <= 0.
double lp_norm(std::span<const double> x, double beta);

/// Σ|p_k − q_k|, evaluated exactly as lp_norm(p − q, 1).
double l1_distance(std::span<const double> p, std::span<const double> q);

/// Total variation ½‖p − q‖₁, which equals the supremum over coordinate
/// subsets C of |Σ_{k∈C}(p_k − q_k)|.
double tv_distance(const ProbVector& p, const ProbVector& q);

/// Uniform point of the margin-shrunk simplex {x : x_k >= margin, Σx = 1}:
/// a Dirichlet(1) draw d mapped to margin + (1 − K·margin)·d.
/// Requires K >= 2 and 0 < margin < 1/K.
ProbVector sample_relint(int K, Rng& rng, double margin);
ProbVector sample_relint(int K, std::uint64_t seed, double margin);

/// Random element of T¹. Each coordinate is assigned to the positive part,
/// the negative part, or (for K > 2, with probability 1/5) left at zero; each
/// part then receives Dirichlet(1) weights scaled to total mass 1/2. Both
/// parts are always nonempty, so K = 2 yields exactly ±(1/2, −1/2).
TangentUnitVector sample_tangent_unit(int K, Rng& rng);
TangentUnitVector sample_tangent_unit(int K, std::uint64_t seed);

}  // namespace tpk
