#include "tpk/rng.hpp"

#include <cmath>

namespace tpk {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_positive() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::exponential() { return -std::log(uniform_positive()); }

__extension__ typedef unsigned __int128 u128;

// Multiply-high reduction of a 64-bit draw onto [0, n).
std::size_t Rng::index(std::size_t n) {
  const u128 wide = static_cast<u128>(engine_()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

}  // namespace tpk
