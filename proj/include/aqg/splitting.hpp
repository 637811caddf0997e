#pragma once

#include <cmath>

#include "aqg/params.hpp"

namespace aqg {

/// Relative slack on the cutoff so that delta = m * fundamental keeps mode m.
inline constexpr double kCutoffSlack = 1e-12;

/// True for max(|k1|, |k2|) <= delta.
template <typename Scalar>
RealArray<Scalar> square_cutoff_mask(const Grid<Scalar>& grid, Scalar delta) {
  if (!(delta > 0)) throw InvalidArgument("split threshold delta must be positive");
  const auto k1 = grid.wavenumbers1();
  const auto k2 = grid.wavenumbers2();
  const Scalar edge = delta * (Scalar(1) + Scalar(kCutoffSlack));
  RealArray<Scalar> mask(grid.n1(), grid.n2());
  for (int j = 0; j < grid.n2(); ++j)
    for (int i = 0; i < grid.n1(); ++i)
      mask(i, j) = std::max(std::abs(k1(i)), std::abs(k2(j))) <= edge ? Scalar(1) : Scalar(0);
  return mask;
}

/// A_delta(D): keeps the modes inside the square max(|k1|,|k2|) <= delta.
template <typename Scalar>
SpectralField<Scalar> low_pass(const SpectralField<Scalar>& F, Scalar delta) {
  const RealArray<Scalar> mask = square_cutoff_mask(F.grid, delta);
  return SpectralField<Scalar>(F.grid, F.coeffs * mask.template cast<std::complex<Scalar>>());
}

/// B_delta(D) = I - A_delta(D).
template <typename Scalar>
SpectralField<Scalar> high_pass(const SpectralField<Scalar>& F, Scalar delta) {
  const RealArray<Scalar> mask = square_cutoff_mask(F.grid, delta);
  return SpectralField<Scalar>(F.grid, F.coeffs * (Scalar(1) - mask).template cast<std::complex<Scalar>>());
}

/// (||w_delta||, ||v_delta||) without materializing the projections.
template <typename Scalar>
std::pair<Scalar, Scalar> split_norms(const SpectralField<Scalar>& F, Scalar delta) {
  const RealArray<Scalar> mask = square_cutoff_mask(F.grid, delta);
  const RealArray<Scalar> e = F.coeffs.abs2();
  const Scalar low = (e * mask).sum() / F.grid.area();
  const Scalar high = (e * (Scalar(1) - mask)).sum() / F.grid.area();
  return {std::sqrt(low), std::sqrt(high)};
}

template <typename Scalar>
struct BoundSides {
  Scalar lhs;
  Scalar rhs;
  bool holds(Scalar rel_slack) const { return lhs <= rhs * (Scalar(1) + rel_slack); }
};

/// ||v_delta||^2 against delta^{-2 alpha} || |d1|^alpha theta ||^2 + delta^{-2 beta} || |d2|^beta theta ||^2.
template <typename Scalar>
BoundSides<Scalar> high_freq_bound(const SpectralField<Scalar>& theta, const DissipationParams& params,
                                   Scalar delta) {
  const auto [low, high] = split_norms(theta, delta);
  (void)low;
  const auto [d1, d2] = dissipation_pair(theta, params);
  const Scalar rhs = std::pow(delta, Scalar(-2 * params.alpha)) * d1 +
                     std::pow(delta, Scalar(-2 * params.beta)) * d2;
  return {high * high, rhs};
}

}  // namespace aqg
