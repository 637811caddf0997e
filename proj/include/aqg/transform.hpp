#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "aqg/field.hpp"

namespace aqg {

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  // kissfft caches plans in mutable state, so one engine per thread.
  thread_local Eigen::FFT<Scalar> engine(Eigen::default_fft_impl<Scalar>(),
                                         Eigen::FFT<Scalar>::Unscaled);
  return engine;
}

/// Unscaled 2-D DFT in place; sign -1 for forward, +1 for inverse.
template <typename Scalar>
void fft2_inplace(ComplexArray<Scalar>& a, bool inverse) {
  using Complex = std::complex<Scalar>;
  auto& fft = fft_engine<Scalar>();
  const Eigen::Index n1 = a.rows();
  const Eigen::Index n2 = a.cols();
  thread_local std::vector<Complex> in;
  thread_local std::vector<Complex> out;
  in.resize(std::max(n1, n2));
  out.resize(std::max(n1, n2));

  for (Eigen::Index j = 0; j < n2; ++j) {
    Complex* col = a.data() + j * n1;
    if (inverse)
      fft.inv(out.data(), col, n1);
    else
      fft.fwd(out.data(), col, n1);
    std::copy_n(out.data(), n1, col);
  }
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) in[j] = a(i, j);
    if (inverse)
      fft.inv(out.data(), in.data(), n2);
    else
      fft.fwd(out.data(), in.data(), n2);
    for (Eigen::Index j = 0; j < n2; ++j) a(i, j) = out[j];
  }
}

/// Unscaled forward DFT of real samples (full spectrum).
template <typename Scalar>
ComplexArray<Scalar> fft2_real(const RealArray<Scalar>& v) {
  using Complex = std::complex<Scalar>;
  auto& fft = fft_engine<Scalar>();
  const Eigen::Index n1 = v.rows();
  const Eigen::Index n2 = v.cols();
  ComplexArray<Scalar> a(n1, n2);
  thread_local std::vector<Complex> in;
  thread_local std::vector<Complex> out;
  in.resize(std::max(n1, n2));
  out.resize(std::max(n1, n2));
  for (Eigen::Index j = 0; j < n2; ++j) {
    fft.fwd(out.data(), v.data() + j * n1, n1);
    std::copy_n(out.data(), n1, a.data() + j * n1);
  }
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) in[j] = a(i, j);
    fft.fwd(out.data(), in.data(), n2);
    for (Eigen::Index j = 0; j < n2; ++j) a(i, j) = out[j];
  }
  return a;
}

/// Physical samples of two Hermitian spectra from a single complex transform:
/// inverse(F + iG) = f + i g when f and g are real.
template <typename Scalar>
std::pair<RealArray<Scalar>, RealArray<Scalar>> inverse_pair_unchecked(const ComplexArray<Scalar>& F,
                                                                       const ComplexArray<Scalar>& G,
                                                                       Scalar area) {
  ComplexArray<Scalar> z = F + std::complex<Scalar>(0, 1) * G;
  fft2_inplace(z, true);
  const Scalar scale = Scalar(1) / area;
  return {z.real() * scale, z.imag() * scale};
}

template <typename Scalar>
RealArray<Scalar> inverse_unchecked(const ComplexArray<Scalar>& F, Scalar area) {
  ComplexArray<Scalar> z = F;
  fft2_inplace(z, true);
  return z.real() / area;
}

template <typename Scalar>
ComplexArray<Scalar> forward_unchecked(const RealArray<Scalar>& v, Scalar cell_area) {
  return fft2_real(v) * cell_area;
}

}  // namespace detail

/// Physical -> spectral with the quadrature-weighted convention of SpectralField.
template <typename Scalar>
SpectralField<Scalar> forward_transform(const PhysicalField<Scalar>& f) {
  for (Eigen::Index j = 0; j < f.values.cols(); ++j) {
    for (Eigen::Index i = 0; i < f.values.rows(); ++i) {
      if (!std::isfinite(double(f.values(i, j)))) {
        throw InvalidArgument("non-finite sample at index (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
  return SpectralField<Scalar>(f.grid, detail::forward_unchecked(f.values, f.grid.cell_area()));
}

/// Relative Hermitian defect above which inverse_transform refuses the input.
inline constexpr double kHermitianTolerance = 1e-10;

/// Spectral -> physical. Inputs within kHermitianTolerance of Hermitian are
/// symmetrized first; the imaginary residue of the result is dropped.
template <typename Scalar>
PhysicalField<Scalar> inverse_transform(const SpectralField<Scalar>& F) {
  const Scalar defect = hermitian_defect(F);
  if (defect > Scalar(kHermitianTolerance)) {
    throw InvalidArgument("spectrum is not Hermitian (relative defect " + std::to_string(double(defect)) +
                          "); it does not describe a real field");
  }
  if (defect == Scalar(0)) {
    return PhysicalField<Scalar>(F.grid, detail::inverse_unchecked(F.coeffs, F.grid.area()));
  }
  SpectralField<Scalar> sym = F;
  symmetrize(sym);
  return PhysicalField<Scalar>(F.grid, detail::inverse_unchecked(sym.coeffs, F.grid.area()));
}

/// Resamples a spectrum onto `target`, a grid of the same box with at least as
/// many samples per axis. Nyquist modes of the source are dropped.
template <typename Scalar>
SpectralField<Scalar> zero_pad(const SpectralField<Scalar>& F, const Grid<Scalar>& target) {
  if (F.grid.l1() != target.l1() || F.grid.l2() != target.l2() || target.n1() < F.grid.n1() ||
      target.n2() < F.grid.n2()) {
    throw InvalidArgument("zero_pad target must be a refinement of the source box");
  }
  SpectralField<Scalar> out(target);
  const int n1 = F.grid.n1();
  const int n2 = F.grid.n2();
  for (int j = 0; j < n2; ++j) {
    if (j == n2 / 2) continue;
    const int m2 = Grid<Scalar>::signed_index(j, n2);
    for (int i = 0; i < n1; ++i) {
      if (i == n1 / 2) continue;
      out.at(Grid<Scalar>::signed_index(i, n1), m2) = F.coeffs(i, j);
    }
  }
  return out;
}

}  // namespace aqg
