#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>

#include "aqg/error.hpp"

namespace aqg {

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// Periodic box [0,l1) x [0,l2) sampled on an n1 x n2 lattice.
///
/// Array storage is (n1, n2): the row index runs along x1, the column index
/// along x2. Spectral index m in [0, n) maps to the signed wavenumber index
/// m for m < n/2 and m - n otherwise, so the unpaired Nyquist index n/2 maps
/// to -n/2 and the lattice is {-n/2, ..., n/2 - 1} * 2*pi/l.
template <typename Scalar = double>
class Grid {
 public:
  Grid(int n1, int n2, Scalar l1, Scalar l2) : n1_(n1), n2_(n2), l1_(l1), l2_(l2) {
    if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0) {
      throw InvalidArgument("grid sizes must be even and at least 8, got " + std::to_string(n1) +
                            "x" + std::to_string(n2));
    }
    if (!(l1 > 0) || !(l2 > 0) || !std::isfinite(double(l1)) || !std::isfinite(double(l2))) {
      throw InvalidArgument("box side lengths must be positive and finite");
    }
  }

  /// Square box of side `side` with n x n samples.
  static Grid square(int n, Scalar side) { return Grid(n, n, side, side); }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  Scalar l1() const { return l1_; }
  Scalar l2() const { return l2_; }
  Eigen::Index size() const { return Eigen::Index(n1_) * n2_; }
  Scalar area() const { return l1_ * l2_; }
  Scalar cell_area() const { return area() / Scalar(size()); }
  Scalar spacing() const { return std::min(l1_ / n1_, l2_ / n2_); }

  Scalar fundamental1() const { return Scalar(2) * std::numbers::pi_v<Scalar> / l1_; }
  Scalar fundamental2() const { return Scalar(2) * std::numbers::pi_v<Scalar> / l2_; }
  /// Smallest nonzero lattice wavenumber, 2*pi/max(l1, l2).
  Scalar fundamental() const {
    return Scalar(2) * std::numbers::pi_v<Scalar> / std::max(l1_, l2_);
  }

  static int signed_index(int m, int n) { return m < n / 2 ? m : m - n; }
  /// Storage index of the mode -m.
  static int mirror_index(int m, int n) { return m == 0 ? 0 : n - m; }

  Scalar k1(int m) const { return fundamental1() * Scalar(signed_index(m, n1_)); }
  Scalar k2(int m) const { return fundamental2() * Scalar(signed_index(m, n2_)); }
  bool is_nyquist1(int m) const { return m == n1_ / 2; }
  bool is_nyquist2(int m) const { return m == n2_ / 2; }

  RealVector<Scalar> wavenumbers1() const {
    RealVector<Scalar> k(n1_);
    for (int m = 0; m < n1_; ++m) k(m) = k1(m);
    return k;
  }
  RealVector<Scalar> wavenumbers2() const {
    RealVector<Scalar> k(n2_);
    for (int m = 0; m < n2_; ++m) k(m) = k2(m);
    return k;
  }

  Scalar x1(int i) const { return l1_ * Scalar(i) / Scalar(n1_); }
  Scalar x2(int j) const { return l2_ * Scalar(j) / Scalar(n2_); }

  /// Same box with each sample count multiplied by `factor`.
  Grid refined(int factor) const { return Grid(n1_ * factor, n2_ * factor, l1_, l2_); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.l1_ == b.l1_ && a.l2_ == b.l2_;
  }

 private:
  int n1_;
  int n2_;
  Scalar l1_;
  Scalar l2_;
};

template <typename Scalar>
void require_same_grid(const Grid<Scalar>& a, const Grid<Scalar>& b) {
  if (!(a == b)) throw InvalidArgument("fields live on different grids");
}

}  // namespace aqg
