#include "tpk/simplex.hpp"

#include <cmath>
#include <sstream>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

std::string describe_sum(double sum) {
  std::ostringstream os;
  os.precision(17);
  os << "sum ≠ 1 (coordinates sum to " << sum << ")";
  return os.str();
}

void check_dimension(int K) {
  if (K < 2) throw ParameterError("dimension K must be at least 2");
}

// Weights w_k ~ Exp(1)/Σ, i.e. a Dirichlet(1,...,1) draw of size n.
std::vector<double> dirichlet_ones(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

std::optional<std::string> simplex_violation(std::span<const double> coords,
                                             Support support) {
  if (coords.size() < 2) return "dimension K < 2";
  double sum = 0.0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const double x = coords[k];
    if (!std::isfinite(x))
      return "coordinate " + std::to_string(k + 1) + " is not finite";
    if (x < 0.0) return "coordinate " + std::to_string(k + 1) + " is negative";
    if (support == Support::Relint && x == 0.0)
      return "coordinate " + std::to_string(k + 1) +
             " is zero (relative interior requires > 0)";
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) return describe_sum(sum);
  return std::nullopt;
}

std::optional<std::string> orthant_violation(std::span<const double> coords) {
  if (coords.size() < 2) return "dimension K < 2";
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const double x = coords[k];
    if (!std::isfinite(x))
      return "coordinate " + std::to_string(k + 1) + " is not finite";
    if (!(x > 0.0))
      return "coordinate " + std::to_string(k + 1) + " is not strictly positive";
  }
  return std::nullopt;
}

ProbVector::ProbVector(std::vector<double> coords, Support support)
    : coords_(std::move(coords)) {
  if (auto why = simplex_violation(coords_, support))
    throw ParameterError("not a probability vector: " + *why);
  relint_ = true;
  for (double x : coords_) relint_ = relint_ && x > 0.0;
}

PositiveVector::PositiveVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
  if (auto why = orthant_violation(coords_))
    throw ParameterError("not a positive vector: " + *why);
}

PositiveVector::PositiveVector(const ProbVector& p)
    : coords_(p.coords().begin(), p.coords().end()) {
  if (!p.relint())
    throw ParameterError(
        "probability vector on the simplex boundary is not a positive vector");
}

TangentUnitVector::TangentUnitVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw ParameterError("tangent vector: dimension K < 2");
  double sum = 0.0;
  double l1 = 0.0;
  for (auto& x : coords_) {
    if (!std::isfinite(x))
      throw ParameterError("tangent vector: coordinate is not finite");
    if (x == 0.0) x = 0.0;  // -0.0 -> +0.0
    sum += x;
    l1 += std::abs(x);
  }
  if (std::abs(sum) > kSimplexTolerance)
    throw ParameterError("tangent vector: coordinates do not sum to 0");
  if (std::abs(l1 - 1.0) > kSimplexTolerance)
    throw ParameterError("tangent vector: ℓ₁ norm ≠ 1");
}

double lp_norm(std::span<const double> x, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ParameterError("lp_norm: exponent beta must be positive and finite");
  if (beta == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (beta == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), beta);
  return std::pow(s, 1.0 / beta);
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw ParameterError("l1_distance: dimension mismatch");
  std::vector<double> diff(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) diff[k] = p[k] - q[k];
  return lp_norm(diff, 1.0);
}

double tv_distance(const ProbVector& p, const ProbVector& q) {
  if (p.dim() != q.dim()) throw ParameterError("tv_distance: dimension mismatch");
  return 0.5 * l1_distance(p.coords(), q.coords());
}

ProbVector sample_relint(int K, Rng& rng, double margin) {
  check_dimension(K);
  if (!(margin > 0.0) || !(margin < 1.0 / K))
    throw ParameterError("sample_relint: margin must lie in (0, 1/K)");
  auto d = dirichlet_ones(static_cast<std::size_t>(K), rng);
  const double scale = 1.0 - K * margin;
  for (auto& x : d) x = margin + scale * x;
  return ProbVector(std::move(d), Support::Relint);
}

ProbVector sample_relint(int K, std::uint64_t seed, double margin) {
  Rng rng(seed);
  return sample_relint(K, rng, margin);
}

TangentUnitVector sample_tangent_unit(int K, Rng& rng) {
  check_dimension(K);
  const auto n = static_cast<std::size_t>(K);
  // 1 = positive part, -1 = negative part, 0 = zero coordinate.
  std::vector<int> part(n);
  for (;;) {
    std::size_t pos = 0, neg = 0;
    for (auto& s : part) {
      if (K > 2 && rng.bernoulli(0.2)) {
        s = 0;
      } else {
        s = rng.bernoulli(0.5) ? 1 : -1;
      }
      pos += s == 1;
      neg += s == -1;
    }
    if (pos > 0 && neg > 0) break;
  }

  std::vector<double> v(n, 0.0);
  for (int sign : {1, -1}) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (part[k] == sign) idx.push_back(k);
    const auto w = dirichlet_ones(idx.size(), rng);
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = sign * 0.5 * w[i];
  }
  return TangentUnitVector(std::move(v));
}

TangentUnitVector sample_tangent_unit(int K, std::uint64_t seed) {
  Rng rng(seed);
  return sample_tangent_unit(K, rng);
}

}  // namespace tpk
