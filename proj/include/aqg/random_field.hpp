#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "aqg/operators.hpp"

namespace aqg {

/// SplitMix64 finalizer; used as a counter-based hash so that every Fourier
/// mode draws its own coefficient independently of lattice size.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return splitmix64(seed ^ splitmix64(v));
}

/// Seed for run `index` of a batch. Index 0 reuses the master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return index == 0 ? master : hash_combine(master, index);
}

struct RandomSpectrum {
  double gamma = 2.0;       // envelope (1 + |k|^2)^(-gamma)
  int kmax = -1;            // max-norm lattice index cutoff (inclusive); -1: the 2/3 box
  int kmin = 0;             // modes with max(|m1|,|m2|) <= kmin are left empty
  double amplitude = 1.0;   // pointwise rms of the field is amplitude * sqrt(sum A^2 / area)
  std::uint64_t seed = 0;
};

namespace detail {

inline double unit_uniform(std::uint64_t bits) {
  // 53 random bits in (0, 1]
  return (double((bits >> 11) + 1)) * 0x1.0p-53;
}

/// Standard complex Gaussian with E|z|^2 = 1 for mode (m1, m2).
inline std::complex<double> mode_gaussian(std::uint64_t seed, int m1, int m2) {
  const std::uint64_t key = hash_combine(hash_combine(seed, std::uint64_t(std::int64_t(m1))),
                                         std::uint64_t(std::int64_t(m2)));
  const double u1 = unit_uniform(splitmix64(key));
  const double u2 = unit_uniform(splitmix64(key + 1));
  const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u)/sqrt(2)
  const double phi = 2 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace detail

/// Effective lattice cutoff of a spectrum on a grid: min(kmax, (n_j - 1) / 3) per axis,
/// the largest index inside the dealiasing box.
inline int effective_kmax(int kmax, int n) { return kmax < 0 ? (n - 1) / 3 : std::min(kmax, (n - 1) / 3); }

/// Real, mean-free, band-limited Gaussian field with coefficients
/// amplitude * sqrt(l1 l2) * (1 + |k|^2)^(-gamma) * z_k.
///
/// Each coefficient depends only on (seed, m1, m2), so one seed describes
/// the same band-limited function on every lattice that resolves it.
template <typename Scalar = double>
SpectralField<Scalar> random_bandlimited(const Grid<Scalar>& grid, const RandomSpectrum& spec) {
  SpectralField<Scalar> F(grid);
  const int c1 = effective_kmax(spec.kmax, grid.n1());
  const int c2 = effective_kmax(spec.kmax, grid.n2());
  const double scale = spec.amplitude * std::sqrt(double(grid.area()));
  for (int m2 = 0; m2 <= c2; ++m2) {
    for (int m1 = -c1; m1 <= c1; ++m1) {
      // upper half plane representative of each (k, -k) pair
      if (m2 == 0 && m1 <= 0) continue;
      if (std::max(std::abs(m1), m2) <= spec.kmin) continue;
      const double k1 = double(grid.fundamental1()) * m1;
      const double k2 = double(grid.fundamental2()) * m2;
      const double envelope = std::pow(1 + k1 * k1 + k2 * k2, -spec.gamma);
      const auto z = scale * envelope * detail::mode_gaussian(spec.seed, m1, m2);
      const std::complex<Scalar> c(Scalar(z.real()), Scalar(z.imag()));
      F.at(m1, m2) = c;
      F.at(-m1, -m2) = std::conj(c);
    }
  }
  return F;
}

/// Closed-form E||theta||^2 for random_bandlimited: amplitude^2 * sum_k A(k)^2.
template <typename Scalar>
double expected_l2_squared(const Grid<Scalar>& grid, const RandomSpectrum& spec) {
  const int c1 = effective_kmax(spec.kmax, grid.n1());
  const int c2 = effective_kmax(spec.kmax, grid.n2());
  double sum = 0;
  for (int m2 = -c2; m2 <= c2; ++m2) {
    for (int m1 = -c1; m1 <= c1; ++m1) {
      if (std::max(std::abs(m1), std::abs(m2)) <= spec.kmin) continue;
      if (m1 == 0 && m2 == 0) continue;
      const double k1 = double(grid.fundamental1()) * m1;
      const double k2 = double(grid.fundamental2()) * m2;
      sum += std::pow(1 + k1 * k1 + k2 * k2, -2 * spec.gamma);
    }
  }
  return spec.amplitude * spec.amplitude * sum;
}

}  // namespace aqg
