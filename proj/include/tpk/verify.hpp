#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpk/tsallis.hpp"

namespace tpk {

/// Outcome of one named check: the worst gap seen against its tolerance.
struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  double max_gap = 0.0;
  double tolerance = 0.0;
  std::size_t violations = 0;

  bool passed() const noexcept { return violations == 0; }
};

/// One record of the harness: a grid cell (or the identity suite) with its
/// closed form, the empirical evidence and the individual checks.
struct VerificationReport {
  std::string suite;
  std::optional<double> alpha;
  std::optional<int> K;
  std::optional<double> closed_form;
  /// Smallest ratio (constant suite) or form value (quadratic suite) seen.
  std::optional<double> empirical_min_ratio;
  std::size_t n_samples = 0;
  /// Ratio 2D/‖p − q‖₁² of the cell's witness at its smallest t.
  std::optional<double> witness_ratio_at_tmin;
  /// Quadratic-form suite only: value at the analytic optimizer pair.
  std::optional<double> analytic_value;
  std::size_t violations = 0;
  /// Excluded from determinism comparisons.
  std::chrono::nanoseconds elapsed{0};
  std::vector<CheckResult> checks;

  bool passed() const noexcept { return violations == 0; }
};

struct VerifyOptions {
  /// Absolute slack on ratios.
  double slack = 1e-12;
  /// Pairs closer than this in ℓ₁ are left out of ratio statistics.
  double min_l1 = 1e-8;
  /// Boundary surrogate margin for sharpness paths.
  double delta = 1e-6;
  /// Multiplies the closed form before comparison. 1 in normal use; values
  /// above 1 simulate a wrong constant table.
  double constant_scale = 1.0;
};

/// Samples relint pairs (50% independent uniform, 30% ζ ± (t/2)u
/// perturbations, 20% jitter around the extremizer path) and compares
/// 2D_α/‖p − q‖₁² with C_{α,K}. For α > 2, K >= 3 it also checks that the
/// no-Pinsker witness matches its closed form and decreases strictly along
/// t = 1e-2, 1e-3, 1e-4.
VerificationReport verify_constant(const AlphaParam& alpha, int K,
                                   std::size_t n_samples, std::uint64_t seed,
                                   const VerifyOptions& options = {});

/// Samples (γ, v), records the minimum of the quadratic form against
/// C_{α,K} and evaluates the analytic optimizer pair (extrapolated in δ when
/// it is a boundary surrogate).
VerificationReport verify_quadratic_form(const AlphaParam& alpha, int K,
                                         std::size_t n_samples,
                                         std::uint64_t seed,
                                         const VerifyOptions& options = {});

// Individual identity checks, each on n seeded samples.

CheckResult check_kl_identity(std::size_t n, std::uint64_t seed);
CheckResult check_definition_route(std::size_t n, std::uint64_t seed);
CheckResult check_excess_risk(std::size_t n, std::uint64_t seed);
CheckResult check_bayes_risk(std::size_t n, std::uint64_t seed);
CheckResult check_total_variation(std::size_t n, std::uint64_t seed);
CheckResult check_gradient(std::size_t n, std::uint64_t seed);
CheckResult check_hessian(std::size_t n, std::uint64_t seed);
/// Mixed second differences of S_α (step 1e-3), which must vanish.
CheckResult check_hessian_off_diagonal(std::size_t n, std::uint64_t seed);
CheckResult check_continuity(std::size_t n, std::uint64_t seed);
CheckResult check_nonnegativity(std::size_t n, std::uint64_t seed);
CheckResult check_concavity(std::size_t n, std::uint64_t seed);
/// D_α ≥ D^TRE_α for α < 1 and D_α ≤ D^TRE_α for α > 1, on n pairs per α.
CheckResult check_tre_ordering(const std::vector<double>& alphas, std::size_t n,
                               std::uint64_t seed);
/// D₀(p‖q) ≥ KL(q‖p) ≥ ½‖p − q‖₁².
CheckResult check_alpha0_chain(std::size_t n, std::uint64_t seed);
/// Clipped inequalities for α ∈ {2.5, 3, 4}, K ∈ {3, 4}, ε ∈ {0.05, 0.01} and
/// every clipping mode, n pairs per combination.
CheckResult check_clipped(std::size_t n, std::uint64_t seed);
/// Regret ≤ ‖p − q‖₁ on n pairs spread over K ∈ {2, …, 10}.
CheckResult check_zero_one_regret(std::size_t n, std::uint64_t seed);
/// 1 + (α−1)/((3−α)K²) ≤ σ_{α,K} ≤ 1 + 7(α−1)/(6(3−α)K²) for α ∈ {1.1, 1.5, 2}
/// and odd K ∈ [3, 101], plus σ_{2,3} = 9/8 exactly.
CheckResult check_sigma_bounds();
/// Continuity at α = 1 and at α = 3 (K = 2), the K = 2 jump at α = 2 and
/// the odd/even ordering on (1, 2].
CheckResult check_constant_regimes();

/// Runs every identity check on shared seeds. One report, one check each.
VerificationReport verify_identities(std::size_t n_samples, std::uint64_t seed);

enum class Suite { Constant, Quadratic, Identities, All };

struct GridSpec {
  Suite suite = Suite::All;
  std::vector<double> alphas;
  std::vector<int> Ks;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 42;
  VerifyOptions options;
};

/// Evaluates every (suite, α, K) cell; stream i of the seed drives cell i, so
/// the result does not depend on `threads`. Reports come back in cell order;
/// the identity suite, when selected, is appended last.
std::vector<VerificationReport> run_grid(const GridSpec& spec, unsigned threads);

}  // namespace tpk
