#pragma once

#include <complex>
#include <utility>

#include "aqg/grid.hpp"

namespace aqg {

/// Real samples of a scalar field on the lattice.
template <typename Scalar = double>
struct PhysicalField {
  Grid<Scalar> grid;
  RealArray<Scalar> values;

  explicit PhysicalField(Grid<Scalar> g)
      : grid(std::move(g)), values(RealArray<Scalar>::Zero(grid.n1(), grid.n2())) {}
  PhysicalField(Grid<Scalar> g, RealArray<Scalar> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.rows() != grid.n1() || values.cols() != grid.n2()) {
      throw InvalidArgument("sample array shape does not match the grid");
    }
  }

  /// Samples f(x1, x2) at every lattice point.
  template <typename Fn>
  static PhysicalField sample(const Grid<Scalar>& g, Fn&& f) {
    PhysicalField out(g);
    for (int j = 0; j < g.n2(); ++j)
      for (int i = 0; i < g.n1(); ++i) out.values(i, j) = f(g.x1(i), g.x2(j));
    return out;
  }
};

/// Fourier coefficients of a real field, stored in FFT order.
///
/// Convention: F(k) = sum_x f(x) exp(-i k.x) * (l1 l2)/(n1 n2), so spectral
/// sums approximate integrals over the plane and
/// ||f||_{L2}^2 = (1/(l1 l2)) sum_k |F(k)|^2.
template <typename Scalar = double>
struct SpectralField {
  using Complex = std::complex<Scalar>;

  Grid<Scalar> grid;
  ComplexArray<Scalar> coeffs;

  explicit SpectralField(Grid<Scalar> g)
      : grid(std::move(g)), coeffs(ComplexArray<Scalar>::Zero(grid.n1(), grid.n2())) {}
  SpectralField(Grid<Scalar> g, ComplexArray<Scalar> c) : grid(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.rows() != grid.n1() || coeffs.cols() != grid.n2()) {
      throw InvalidArgument("coefficient array shape does not match the grid");
    }
  }

  Complex mean_coefficient() const { return coeffs(0, 0); }

  /// Coefficient at signed lattice indices (m1, m2).
  Complex& at(int m1, int m2) { return coeffs(wrap(m1, grid.n1()), wrap(m2, grid.n2())); }
  const Complex& at(int m1, int m2) const {
    return coeffs(wrap(m1, grid.n1()), wrap(m2, grid.n2()));
  }

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    coeffs += o.coeffs;
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    coeffs -= o.coeffs;
    return *this;
  }
  SpectralField& operator*=(Scalar a) {
    coeffs *= a;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Scalar a, SpectralField b) { return b *= a; }

 private:
  static int wrap(int m, int n) {
    const int r = m % n;
    return r < 0 ? r + n : r;
  }
};

template <typename Scalar = double>
struct VelocityPair {
  SpectralField<Scalar> u1;
  SpectralField<Scalar> u2;
};

/// Largest |F(k) - conj(F(-k))| relative to max |F|; 0 for an exactly real field.
template <typename Scalar>
Scalar hermitian_defect(const SpectralField<Scalar>& F) {
  const int n1 = F.grid.n1();
  const int n2 = F.grid.n2();
  Scalar worst = 0;
  for (int j = 0; j < n2; ++j) {
    const int mj = Grid<Scalar>::mirror_index(j, n2);
    for (int i = 0; i < n1; ++i) {
      const int mi = Grid<Scalar>::mirror_index(i, n1);
      worst = std::max(worst, std::abs(F.coeffs(i, j) - std::conj(F.coeffs(mi, mj))));
    }
  }
  const Scalar scale = F.coeffs.abs().maxCoeff();
  return scale > 0 ? worst / scale : Scalar(0);
}

/// Replaces F by its Hermitian part (F(k) + conj(F(-k)))/2.
template <typename Scalar>
void symmetrize(SpectralField<Scalar>& F) {
  const int n1 = F.grid.n1();
  const int n2 = F.grid.n2();
  for (int j = 0; j < n2; ++j) {
    const int mj = Grid<Scalar>::mirror_index(j, n2);
    for (int i = 0; i < n1; ++i) {
      const int mi = Grid<Scalar>::mirror_index(i, n1);
      // visit each pair once; self-paired modes end up real
      if (j > mj || (j == mj && i > mi)) continue;
      const auto avg = (F.coeffs(i, j) + std::conj(F.coeffs(mi, mj))) / Scalar(2);
      F.coeffs(i, j) = avg;
      F.coeffs(mi, mj) = std::conj(avg);
    }
  }
}

/// Zeroes the unpaired Nyquist row and column.
template <typename Scalar>
void zero_nyquist(SpectralField<Scalar>& F) {
  F.coeffs.row(F.grid.n1() / 2).setZero();
  F.coeffs.col(F.grid.n2() / 2).setZero();
}

}  // namespace aqg
