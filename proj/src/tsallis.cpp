#include "tpk/tsallis.hpp"

#include <cmath>
#include <limits>

#include "tpk/errors.hpp"

namespace tpk {

AlphaParam::AlphaParam(double value) : value_(value) {
  if (!std::isfinite(value)) throw ParameterError("alpha must be finite");
  if (value <= 1.0) {
    regime_ = AlphaRegime::Le1;
  } else if (value <= 2.0) {
    regime_ = AlphaRegime::In1To2;
  } else {
    regime_ = AlphaRegime::Gt2;
  }
  if (value == 0.0) anchor_ = AlphaAnchor::Zero;
  if (value == 1.0) anchor_ = AlphaAnchor::One;
  if (value == 2.0) anchor_ = AlphaAnchor::Two;
  if (value == 3.0) anchor_ = AlphaAnchor::Three;
}

std::string_view to_string(AlphaRegime r) {
  switch (r) {
    case AlphaRegime::Le1:
      return "LE1";
    case AlphaRegime::In1To2:
      return "IN_1_2";
    case AlphaRegime::Gt2:
      return "GT2";
  }
  return "?";
}

double power(double x, double a) {
  if (a == 0.0) return 1.0;
  if (a == 1.0) return x;
  if (a == 2.0) return x * x;
  if (a == 3.0) return x * x * x;
  if (a == -1.0) return 1.0 / x;
  if (a == -2.0) return 1.0 / (x * x);
  return std::pow(x, a);
}

namespace {

double entropy_sum(const AlphaParam& alpha, std::span<const double> p) {
  const double a = alpha.value();
  double s = 0.0;
  if (alpha.is(AlphaAnchor::Zero)) {
    for (double x : p) s += std::log(x);
    return s;
  }
  if (alpha.is(AlphaAnchor::One)) {
    for (double x : p)
      if (x > 0.0) s -= x * std::log(x);
    return s;
  }
  for (double x : p) s += power(x, a);
  return s / (a * (1.0 - a));
}

}  // namespace

double entropy(const AlphaParam& alpha, const PositiveVector& p) {
  return entropy_sum(alpha, p.coords());
}

ExtendedValue entropy_extended(const AlphaParam& alpha,
                               std::span<const double> p) {
  bool has_zero = false;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0)
      throw ParameterError("entropy: coordinates must be finite and nonnegative");
    has_zero = has_zero || x == 0.0;
  }
  if (has_zero && alpha.value() <= 0.0)
    return {-std::numeric_limits<double>::infinity(), false};
  return {entropy_sum(alpha, p), true};
}

double loss(const AlphaParam& alpha, const ProbVector& q, std::size_t k) {
  if (!q.relint())
    throw ParameterError("loss: prediction must lie in the relative interior");
  if (k >= q.dim()) throw ParameterError("loss: outcome index out of range");
  const double a = alpha.value();
  const auto c = q.coords();
  if (alpha.is(AlphaAnchor::One)) return -std::log(c[k]);
  if (alpha.is(AlphaAnchor::Zero)) {
    double logs = 0.0;
    for (double x : c) logs += std::log(x);
    return 1.0 / c[k] - static_cast<double>(c.size()) + logs;
  }
  double pow_sum = 0.0;
  for (double x : c) pow_sum += power(x, a);
  return power(c[k], a - 1.0) / (1.0 - a) + pow_sum / a;
}

double bayes_risk(const AlphaParam& alpha, const ProbVector& p) {
  double risk = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) risk += p[k] * loss(alpha, p, k);
  return risk;
}

std::vector<double> entropy_gradient(const AlphaParam& alpha,
                                     const PositiveVector& p) {
  const double a = alpha.value();
  std::vector<double> g(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (alpha.is(AlphaAnchor::Zero)) {
      g[i] = 1.0 / p[i];
    } else if (alpha.is(AlphaAnchor::One)) {
      g[i] = -(1.0 + std::log(p[i]));
    } else {
      g[i] = -power(p[i], a - 1.0) / (a - 1.0);
    }
  }
  return g;
}

std::vector<double> entropy_hessian_diag(const AlphaParam& alpha,
                                         const PositiveVector& p) {
  const double a = alpha.value();
  std::vector<double> h(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) h[i] = -power(p[i], a - 2.0);
  return h;
}

}  // namespace tpk
