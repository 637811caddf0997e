#pragma once

#include <cmath>

#include "aqg/transform.hpp"

namespace aqg {

enum class Axis { X1 = 1, X2 = 2 };

inline Axis axis_from_int(int a) {
  if (a != 1 && a != 2) throw InvalidArgument("axis must be 1 or 2");
  return a == 1 ? Axis::X1 : Axis::X2;
}

/// Multiplies every coefficient by symbol(k1, k2, i, j).
template <typename Scalar, typename Symbol>
SpectralField<Scalar> apply_multiplier(const SpectralField<Scalar>& F, Symbol&& symbol) {
  SpectralField<Scalar> out(F.grid);
  const auto k1 = F.grid.wavenumbers1();
  const auto k2 = F.grid.wavenumbers2();
  for (int j = 0; j < F.grid.n2(); ++j)
    for (int i = 0; i < F.grid.n1(); ++i) out.coeffs(i, j) = F.coeffs(i, j) * symbol(k1(i), k2(j), i, j);
  return out;
}

/// 0^r with the convention 0^0 = 1.
template <typename Scalar>
Scalar abs_pow(Scalar k, Scalar r) {
  if (r == Scalar(0)) return Scalar(1);
  const Scalar a = std::abs(k);
  return a == Scalar(0) ? Scalar(0) : std::pow(a, r);
}

/// |d_axis|^r : multiplies by |k_axis|^r, r >= 0.
template <typename Scalar>
SpectralField<Scalar> fractional_directional(const SpectralField<Scalar>& F, Axis axis, Scalar r) {
  if (!(r >= 0)) throw InvalidArgument("directional order must be nonnegative");
  if (r == Scalar(0)) return F;
  // the symbol depends on one axis only: build the factor vector once
  const RealVector<Scalar> k = axis == Axis::X1 ? F.grid.wavenumbers1() : F.grid.wavenumbers2();
  const RealVector<Scalar> w = k.unaryExpr([r](Scalar v) { return abs_pow(v, r); });
  SpectralField<Scalar> out = F;
  if (axis == Axis::X1)
    out.coeffs.colwise() *= w.template cast<std::complex<Scalar>>();
  else
    out.coeffs.rowwise() *= w.template cast<std::complex<Scalar>>().transpose();
  return out;
}

/// |nabla|^s : multiplies by |k|^s. The k = 0 coefficient is set to 0 for s != 0;
/// negative s requires a mean-free input.
template <typename Scalar>
SpectralField<Scalar> fractional_isotropic(const SpectralField<Scalar>& F, Scalar s) {
  if (s == Scalar(0)) return F;
  if (s < 0) {
    const Scalar scale = F.coeffs.abs().maxCoeff();
    if (std::abs(F.mean_coefficient()) > Scalar(1e-12) * scale) {
      throw InvalidArgument("negative-order Riesz potential applied to a field with nonzero mean");
    }
  }
  const Scalar half = s / Scalar(2);
  return apply_multiplier(F, [half](Scalar a, Scalar b, int, int) {
    const Scalar k2 = a * a + b * b;
    return k2 == Scalar(0) ? Scalar(0) : std::pow(k2, half);
  });
}

/// Spectral first derivative; the odd symbol i k_axis is zeroed on the Nyquist mode.
template <typename Scalar>
SpectralField<Scalar> derivative(const SpectralField<Scalar>& F, Axis axis) {
  const int ny1 = F.grid.n1() / 2;
  const int ny2 = F.grid.n2() / 2;
  SpectralField<Scalar> out(F.grid);
  const auto k1 = F.grid.wavenumbers1();
  const auto k2 = F.grid.wavenumbers2();
  const std::complex<Scalar> I(0, 1);
  for (int j = 0; j < F.grid.n2(); ++j) {
    for (int i = 0; i < F.grid.n1(); ++i) {
      if (i == ny1 || j == ny2) continue;
      out.coeffs(i, j) = I * (axis == Axis::X1 ? k1(i) : k2(j)) * F.coeffs(i, j);
    }
  }
  return out;
}

/// Velocity u = (-R2 theta, R1 theta) with R_j = i k_j / |k|. Mean and Nyquist modes give no velocity.
template <typename Scalar>
VelocityPair<Scalar> riesz_velocity(const SpectralField<Scalar>& theta) {
  VelocityPair<Scalar> u{SpectralField<Scalar>(theta.grid), SpectralField<Scalar>(theta.grid)};
  const int ny1 = theta.grid.n1() / 2;
  const int ny2 = theta.grid.n2() / 2;
  const auto k1 = theta.grid.wavenumbers1();
  const auto k2 = theta.grid.wavenumbers2();
  const std::complex<Scalar> I(0, 1);
  for (int j = 0; j < theta.grid.n2(); ++j) {
    for (int i = 0; i < theta.grid.n1(); ++i) {
      if (i == ny1 || j == ny2 || (i == 0 && j == 0)) continue;
      const Scalar kk = std::sqrt(k1(i) * k1(i) + k2(j) * k2(j));
      u.u1.coeffs(i, j) = -I * (k2(j) / kk) * theta.coeffs(i, j);
      u.u2.coeffs(i, j) = I * (k1(i) / kk) * theta.coeffs(i, j);
    }
  }
  return u;
}

/// True where the 2/3 rule keeps the mode: 3|m_j| < n_j on both axes.
inline bool inside_dealias_box(int m1_signed, int m2_signed, int n1, int n2) {
  return 3 * std::abs(m1_signed) < n1 && 3 * std::abs(m2_signed) < n2;
}

/// 2/3-rule truncation applied independently on each axis.
template <typename Scalar>
void dealias_inplace(SpectralField<Scalar>& F) {
  const int n1 = F.grid.n1();
  const int n2 = F.grid.n2();
  for (int j = 0; j < n2; ++j) {
    const int m2 = Grid<Scalar>::signed_index(j, n2);
    for (int i = 0; i < n1; ++i) {
      if (!inside_dealias_box(Grid<Scalar>::signed_index(i, n1), m2, n1, n2)) F.coeffs(i, j) = 0;
    }
  }
}

template <typename Scalar>
SpectralField<Scalar> dealias(SpectralField<Scalar> F) {
  dealias_inplace(F);
  return F;
}

/// Pseudo-spectral advection term F(u_theta . grad theta).
///
/// Holds the Riesz and derivative symbols for one grid so repeated
/// evaluations inside a time stepper skip the per-mode square roots.
template <typename Scalar>
class NonlinearEvaluator {
 public:
  using Complex = std::complex<Scalar>;

  explicit NonlinearEvaluator(const Grid<Scalar>& grid)
      : grid_(grid),
        ik1_(grid.n1(), grid.n2()),
        ik2_(grid.n1(), grid.n2()),
        r1_(grid.n1(), grid.n2()),
        r2_(grid.n1(), grid.n2()),
        mask_(grid.n1(), grid.n2()) {
    const auto k1 = grid.wavenumbers1();
    const auto k2 = grid.wavenumbers2();
    const int ny1 = grid.n1() / 2;
    const int ny2 = grid.n2() / 2;
    for (int j = 0; j < grid.n2(); ++j) {
      for (int i = 0; i < grid.n1(); ++i) {
        const bool odd_ok = i != ny1 && j != ny2;
        const Scalar kk = std::sqrt(k1(i) * k1(i) + k2(j) * k2(j));
        ik1_(i, j) = odd_ok ? Complex(0, k1(i)) : Complex(0);
        ik2_(i, j) = odd_ok ? Complex(0, k2(j)) : Complex(0);
        const bool riesz_ok = odd_ok && kk > 0;
        // u1 = -i k2/|k| theta, u2 = i k1/|k| theta
        r1_(i, j) = riesz_ok ? Complex(0, -k2(j) / kk) : Complex(0);
        r2_(i, j) = riesz_ok ? Complex(0, k1(i) / kk) : Complex(0);
        mask_(i, j) = inside_dealias_box(Grid<Scalar>::signed_index(i, grid.n1()),
                                         Grid<Scalar>::signed_index(j, grid.n2()), grid.n1(), grid.n2())
                          ? Scalar(1)
                          : Scalar(0);
      }
    }
  }

  const Grid<Scalar>& grid() const { return grid_; }

  /// Returns the dealiased transform of u.grad(theta); `max_speed`, when given,
  /// receives max |u| over the lattice.
  ComplexArray<Scalar> evaluate(const ComplexArray<Scalar>& theta, Scalar* max_speed = nullptr) const {
    const Scalar area = grid_.area();
    auto [u1, u2] = detail::inverse_pair_unchecked<Scalar>(r1_ * theta, r2_ * theta, area);
    auto [g1, g2] = detail::inverse_pair_unchecked<Scalar>(ik1_ * theta, ik2_ * theta, area);
    if (max_speed) *max_speed = std::sqrt((u1.square() + u2.square()).maxCoeff());
    const RealArray<Scalar> product = u1 * g1 + u2 * g2;
    ComplexArray<Scalar> out = detail::forward_unchecked(product, grid_.cell_area());
    out *= mask_.template cast<Complex>();
    out(0, 0) = 0;
    return out;
  }

 private:
  Grid<Scalar> grid_;
  ComplexArray<Scalar> ik1_, ik2_, r1_, r2_;
  RealArray<Scalar> mask_;
};

template <typename Scalar>
SpectralField<Scalar> nonlinear_term(const SpectralField<Scalar>& theta) {
  NonlinearEvaluator<Scalar> eval(theta.grid);
  return SpectralField<Scalar>(theta.grid, eval.evaluate(theta.coeffs));
}

}  // namespace aqg
