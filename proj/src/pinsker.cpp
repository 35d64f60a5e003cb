#include "tpk/pinsker.hpp"

#include <algorithm>
#include <cmath>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

void require_dimension(int K) {
  if (K < 2) throw ParameterError("dimension K must be at least 2");
}

std::size_t first_argmax(std::span<const double> x) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < x.size(); ++k)
    if (x[k] > x[best]) best = k;
  return best;
}

}  // namespace

std::string_view to_string(PinskerRegime r) {
  switch (r) {
    case PinskerRegime::AlphaLe1:
      return "ALPHA_LE1";
    case PinskerRegime::Alpha1To2Even:
      return "ALPHA_1_2_EVEN";
    case PinskerRegime::Alpha1To2Odd:
      return "ALPHA_1_2_ODD";
    case PinskerRegime::AlphaGt2K2:
      return "ALPHA_GT2_K2";
    case PinskerRegime::AlphaGt2KGe3:
      return "ALPHA_GT2_KGE3";
  }
  return "?";
}

std::string_view to_string(ClipMode m) {
  switch (m) {
    case ClipMode::Both:
      return "both";
    case ClipMode::POnly:
      return "p";
    case ClipMode::QOnly:
      return "q";
  }
  return "?";
}

double sigma_factor(double alpha, int K) {
  if (!(alpha > 1.0) || !(alpha <= 2.0))
    throw ParameterError("sigma_factor: alpha must lie in (1, 2]");
  if (K < 3 || K % 2 == 0)
    throw ParameterError("sigma_factor: K must be odd and at least 3");
  const double k = K;
  double lower, upper;
  if (alpha == 2.0) {
    lower = k / (k - 1.0);
    upper = k / (k + 1.0);
  } else {
    const double e = (1.0 - alpha) / (3.0 - alpha);
    lower = std::exp(e * std::log1p(-1.0 / k));
    upper = std::exp(e * std::log1p(1.0 / k));
  }
  return power(0.5 * (lower + upper), 3.0 - alpha);
}

PinskerConstant sharp_constant(const AlphaParam& alpha, int K) {
  require_dimension(K);
  const double a = alpha.value();
  switch (alpha.regime()) {
    case AlphaRegime::Le1:
      return {std::exp2(1.0 - a), PinskerRegime::AlphaLe1, std::nullopt};
    case AlphaRegime::In1To2: {
      const double base = std::pow(static_cast<double>(K), 1.0 - a);
      if (K % 2 == 0) return {base, PinskerRegime::Alpha1To2Even, std::nullopt};
      const double sigma = sigma_factor(a, K);
      return {base * sigma, PinskerRegime::Alpha1To2Odd, sigma};
    }
    case AlphaRegime::Gt2:
      if (K == 2)
        return {std::exp2(1.0 - std::max(a, 3.0)), PinskerRegime::AlphaGt2K2,
                std::nullopt};
      return {0.0, PinskerRegime::AlphaGt2KGe3, std::nullopt};
  }
  throw ParameterError("sharp_constant: unreachable regime");
}

double strong_convexity_param(const AlphaParam& alpha, int K) {
  return sharp_constant(alpha, K).value;
}

double orthant_constant_alpha2(int K) {
  require_dimension(K);
  return 1.0 / K;
}

double clipped_constant(double alpha, int K, ClipMode mode, double eps) {
  if (!std::isfinite(alpha) || !(alpha > 2.0))
    throw ParameterError("clipped_constant: requires alpha > 2");
  if (K < 3) throw ParameterError("clipped_constant: requires K >= 3");
  if (!(eps > 0.0) || !(eps < 1.0 / K))
    throw ParameterError("clipped_constant: eps must lie in (0, 1/K)");
  const double base =
      sharp_constant(AlphaParam(2.0), K).value * std::pow(eps, alpha - 2.0);
  switch (mode) {
    case ClipMode::Both:
      return base;
    case ClipMode::POnly:
      return base * 2.0 / (alpha * (alpha - 1.0));
    case ClipMode::QOnly:
      return base * 2.0 / alpha;
  }
  throw ParameterError("clipped_constant: unknown mode");
}

double zero_one_regret_bound(const ProbVector& p, const ProbVector& q) {
  if (p.dim() != q.dim())
    throw ParameterError("zero_one_regret_bound: dimension mismatch");
  const std::size_t kp = first_argmax(p.coords());
  const std::size_t kq = first_argmax(q.coords());
  if (kp == kq) return 0.0;
  return (1.0 - p[kq]) - (1.0 - p[kp]);
}

}  // namespace tpk
