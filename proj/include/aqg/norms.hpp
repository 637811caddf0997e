#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "aqg/operators.hpp"

namespace aqg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Quadrature L^p norm (sum |f|^p dA)^(1/p); p = infinity gives the lattice max.
template <typename Scalar>
Scalar lp_norm(const PhysicalField<Scalar>& f, Scalar p) {
  if (!(p >= 1)) throw InvalidArgument("L^p norm requires p >= 1");
  const auto a = f.values.abs();
  if (std::isinf(double(p))) return a.maxCoeff();
  Scalar sum;
  if (p == Scalar(2)) {
    sum = a.square().sum();
  } else if (p == Scalar(4)) {
    sum = a.square().square().sum();
  } else if (p == Scalar(8)) {
    sum = a.square().square().square().sum();
  } else {
    sum = a.pow(p).sum();
  }
  return std::pow(sum * f.grid.cell_area(), Scalar(1) / p);
}

/// Real L2 inner product (f, g) = (1/(l1 l2)) Re sum F conj(G).
template <typename Scalar>
Scalar inner_product(const SpectralField<Scalar>& F, const SpectralField<Scalar>& G) {
  require_same_grid(F.grid, G.grid);
  return (F.coeffs * G.coeffs.conjugate()).real().sum() / F.grid.area();
}

template <typename Scalar>
Scalar l2_norm_squared(const SpectralField<Scalar>& F) {
  return F.coeffs.abs2().sum() / F.grid.area();
}

template <typename Scalar>
Scalar l2_norm(const SpectralField<Scalar>& F) {
  return std::sqrt(l2_norm_squared(F));
}

/// Weighted spectral sum (1/(l1 l2)) sum w(|k|^2) |F|^2.
template <typename Scalar, typename Weight>
Scalar weighted_energy(const SpectralField<Scalar>& F, Weight&& weight) {
  const auto k1 = F.grid.wavenumbers1();
  const auto k2 = F.grid.wavenumbers2();
  Scalar sum = 0;
  for (int j = 0; j < F.grid.n2(); ++j)
    for (int i = 0; i < F.grid.n1(); ++i)
      sum += weight(k1(i) * k1(i) + k2(j) * k2(j)) * std::norm(F.coeffs(i, j));
  return sum / F.grid.area();
}

/// Inhomogeneous H^s norm with weight (1 + |k|^2)^s.
template <typename Scalar>
Scalar sobolev_norm(const SpectralField<Scalar>& F, Scalar s) {
  if (s == Scalar(0)) return l2_norm(F);
  return std::sqrt(weighted_energy(F, [s](Scalar k2) { return std::pow(Scalar(1) + k2, s); }));
}

/// True when |F(0)| is at roundoff level relative to the whole spectrum.
template <typename Scalar>
bool is_mean_free(const SpectralField<Scalar>& F) {
  const Scalar total = F.coeffs.abs2().sum();
  return std::norm(F.mean_coefficient()) <= Scalar(1e-24) * total;
}

/// Homogeneous H^s norm with weight |k|^(2s); the k = 0 mode is excluded.
template <typename Scalar>
Scalar homogeneous_norm(const SpectralField<Scalar>& F, Scalar s) {
  if (s <= 0 && !is_mean_free(F)) {
    throw InvalidArgument("homogeneous norm of order <= 0 requires a mean-free field");
  }
  return std::sqrt(weighted_energy(F, [s](Scalar k2) {
    if (k2 == Scalar(0)) return Scalar(0);
    return s == Scalar(0) ? Scalar(1) : std::pow(k2, s);
  }));
}

/// (|| |d1|^alpha theta ||^2, || |d2|^beta theta ||^2)
template <typename Scalar>
std::pair<Scalar, Scalar> dissipation_pair(const SpectralField<Scalar>& theta, Scalar alpha, Scalar beta) {
  const auto k1 = theta.grid.wavenumbers1();
  const auto k2 = theta.grid.wavenumbers2();
  const RealVector<Scalar> w1 = k1.unaryExpr([alpha](Scalar v) { return abs_pow(v, Scalar(2) * alpha); });
  const RealVector<Scalar> w2 = k2.unaryExpr([beta](Scalar v) { return abs_pow(v, Scalar(2) * beta); });
  const RealArray<Scalar> e = theta.coeffs.abs2();
  const Scalar d1 = (e.colwise() * w1).sum() / theta.grid.area();
  const Scalar d2 = (e.rowwise() * w2.transpose()).sum() / theta.grid.area();
  return {d1, d2};
}

}  // namespace aqg
