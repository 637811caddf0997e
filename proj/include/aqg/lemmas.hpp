#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqg/norms.hpp"

namespace aqg {

/// Empirical ratios lhs/rhs of an inequality over a family of samples.
struct RatioReport {
  std::string lemma;
  std::vector<std::pair<std::string, double>> params;
  int sample_count = 0;
  int skipped = 0;
  double max_ratio = 0;
  double mean_ratio = 0;
  std::vector<std::pair<int, double>> per_resolution;  // (n1, max ratio at that lattice size)

  void add(int resolution, double ratio) {
    mean_ratio = (mean_ratio * sample_count + ratio) / (sample_count + 1);
    ++sample_count;
    max_ratio = std::max(max_ratio, ratio);
    resolution_slot(resolution) = std::max(resolution_slot(resolution), ratio);
  }

  void skip(int resolution) {
    ++skipped;
    resolution_slot(resolution);
  }

  void merge(const RatioReport& o) {
    const int total = sample_count + o.sample_count;
    if (total > 0) mean_ratio = (mean_ratio * sample_count + o.mean_ratio * o.sample_count) / total;
    sample_count = total;
    skipped += o.skipped;
    max_ratio = std::max(max_ratio, o.max_ratio);
    for (const auto& [n, r] : o.per_resolution) resolution_slot(n) = std::max(resolution_slot(n), r);
  }

  /// max / min of the per-resolution maxima; 1 for a single resolution.
  double resolution_spread() const {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& [n, r] : per_resolution) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (per_resolution.empty() || hi == 0) return 1.0;
    return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  }

 private:
  double& resolution_slot(int n) {
    for (auto& [m, r] : per_resolution)
      if (m == n) return r;
    per_resolution.emplace_back(n, 0.0);
    std::sort(per_resolution.begin(), per_resolution.end());
    for (auto& [m, r] : per_resolution)
      if (m == n) return r;
    return per_resolution.back().second;  // unreachable
  }
};

template <typename Scalar>
struct Sides {
  Scalar lhs;
  Scalar rhs;
};

template <typename Scalar>
struct FieldPair {
  SpectralField<Scalar> f;
  SpectralField<Scalar> g;
};

/// Adds lhs/rhs to the report; 0/0 (and x/0 with x at roundoff) is skipped.
template <typename Scalar>
void record_ratio(RatioReport& report, int resolution, const Sides<Scalar>& s) {
  if (s.rhs > 0) {
    report.add(resolution, double(s.lhs / s.rhs));
  } else if (s.lhs > 0) {
    report.add(resolution, std::numeric_limits<double>::infinity());
  } else {
    report.skip(resolution);
  }
}

/// Product of two fields on the 2x refined lattice of the same box, where
/// the quadratic convolution has no aliasing.
template <typename Scalar>
SpectralField<Scalar> padded_product(const SpectralField<Scalar>& F, const SpectralField<Scalar>& G) {
  require_same_grid(F.grid, G.grid);
  const Grid<Scalar> fine = F.grid.refined(2);
  const SpectralField<Scalar> Fp = zero_pad(F, fine);
  const SpectralField<Scalar> Gp = zero_pad(G, fine);
  auto [f, g] = detail::inverse_pair_unchecked<Scalar>(Fp.coeffs, Gp.coeffs, fine.area());
  return SpectralField<Scalar>(fine, detail::forward_unchecked<Scalar>(f * g, fine.cell_area()));
}

enum class InterpolationNorm { Inhomogeneous, Homogeneous };

/// || |d_i|^{z s1 + (1-z) s2} f ||_X  vs  || |d_i|^{s1} f ||_X^z || |d_i|^{s2} f ||_X^{1-z}
/// with X = H^s or the homogeneous space of the same order.
template <typename Scalar>
Sides<Scalar> interpolation_sides(const SpectralField<Scalar>& f, Axis axis, Scalar s1, Scalar s2, Scalar z,
                                  Scalar s, InterpolationNorm norm) {
  if (!(z >= 0 && z <= 1)) throw InvalidArgument("interpolation weight z must lie in [0,1]");
  auto X = [&](const SpectralField<Scalar>& F) {
    return norm == InterpolationNorm::Inhomogeneous ? sobolev_norm(F, s) : homogeneous_norm(F, s);
  };
  const Scalar mid = z * s1 + (1 - z) * s2;
  const Scalar lhs = X(fractional_directional(f, axis, mid));
  const Scalar a = X(fractional_directional(f, axis, s1));
  const Scalar b = X(fractional_directional(f, axis, s2));
  return {lhs, std::pow(a, z) * std::pow(b, 1 - z)};
}

template <typename Scalar>
RatioReport check_interpolation(std::span<const SpectralField<Scalar>> family, Axis axis, Scalar s1, Scalar s2,
                                Scalar z, Scalar s,
                                InterpolationNorm norm = InterpolationNorm::Inhomogeneous) {
  RatioReport r;
  r.lemma = norm == InterpolationNorm::Inhomogeneous ? "interpolation" : "interpolation_homogeneous";
  r.params = {{"axis", axis == Axis::X1 ? 1.0 : 2.0}, {"s1", s1}, {"s2", s2}, {"z", z}, {"s", s}};
  for (const auto& f : family) record_ratio(r, f.grid.n1(), interpolation_sides(f, axis, s1, s2, z, s, norm));
  return r;
}

enum class ProductForm { Symmetric, Asymmetric };

/// ||f g||_{Hdot^{s1+s2-1}} against the symmetric or (for s2 < 1) one-term
/// product bound. The mean of f g is excluded from the left side.
template <typename Scalar>
Sides<Scalar> product_sides(const SpectralField<Scalar>& f, const SpectralField<Scalar>& g, Scalar s1, Scalar s2,
                            ProductForm form) {
  if (!(s1 < 1) || !(s1 + s2 > 0)) throw InvalidArgument("product estimate needs s1 < 1 and s1 + s2 > 0");
  if (form == ProductForm::Asymmetric && !(s2 < 1)) {
    throw InvalidArgument("one-term product estimate needs s2 < 1");
  }
  SpectralField<Scalar> fg = padded_product(f, g);
  fg.coeffs(0, 0) = 0;
  const Scalar lhs = homogeneous_norm(fg, s1 + s2 - 1);
  Scalar rhs = homogeneous_norm(f, s1) * homogeneous_norm(g, s2);
  if (form == ProductForm::Symmetric) rhs += homogeneous_norm(f, s2) * homogeneous_norm(g, s1);
  return {lhs, rhs};
}

template <typename Scalar>
RatioReport check_product_estimate(std::span<const FieldPair<Scalar>> family, Scalar s1, Scalar s2,
                                   ProductForm form = ProductForm::Symmetric) {
  RatioReport r;
  r.lemma = form == ProductForm::Symmetric ? "product" : "product_asymmetric";
  r.params = {{"s1", s1}, {"s2", s2}};
  for (const auto& p : family) record_ratio(r, p.f.grid.n1(), product_sides(p.f, p.g, s1, s2, form));
  return r;
}

/// max(||u1||_p, ||u2||_p) against ||theta||_p for u = (-R2 theta, R1 theta).
template <typename Scalar>
Sides<Scalar> riesz_lp_sides(const SpectralField<Scalar>& theta, Scalar p) {
  if (!(p > 1) || std::isinf(double(p))) throw InvalidArgument("Riesz L^p bound needs 1 < p < infinity");
  const auto u = riesz_velocity(theta);
  const Scalar area = theta.grid.area();
  auto [u1, u2] = detail::inverse_pair_unchecked<Scalar>(u.u1.coeffs, u.u2.coeffs, area);
  const PhysicalField<Scalar> th(theta.grid, detail::inverse_unchecked(theta.coeffs, area));
  const Scalar lhs = std::max(lp_norm(PhysicalField<Scalar>(theta.grid, std::move(u1)), p),
                              lp_norm(PhysicalField<Scalar>(theta.grid, std::move(u2)), p));
  return {lhs, lp_norm(th, p)};
}

template <typename Scalar>
RatioReport check_riesz_lp(std::span<const SpectralField<Scalar>> family, Scalar p) {
  RatioReport r;
  r.lemma = "riesz_lp";
  r.params = {{"p", p}};
  for (const auto& f : family) record_ratio(r, f.grid.n1(), riesz_lp_sides(f, p));
  return r;
}

enum class CommutatorForm { Commutator, Product };

/// Kato-Ponce type bounds:
///   || |D|^s(fg) - f |D|^s g ||  vs  || |D|^{s+a} f || || |D|^{1-a} g || + || |D|^{s-1+a} g || || |D|^{2-a} f ||
///   || |D|^s(fg) ||              vs  || |D|^{s+a} f || || |D|^{1-a} g || + || |D|^{s+a} g || || |D|^{1-a} f ||
template <typename Scalar>
Sides<Scalar> commutator_sides(const SpectralField<Scalar>& f, const SpectralField<Scalar>& g, Scalar s, Scalar a,
                               CommutatorForm form) {
  if (!(s > 1)) throw InvalidArgument("commutator estimate needs s > 1");
  if (!(a > 0 && a < 1)) throw InvalidArgument("commutator estimate needs a in (0,1)");
  const SpectralField<Scalar> Ds_fg = fractional_isotropic(padded_product(f, g), s);
  auto H = [](const SpectralField<Scalar>& F, Scalar order) { return homogeneous_norm(F, order); };
  if (form == CommutatorForm::Product) {
    return {l2_norm(Ds_fg), H(f, s + a) * H(g, 1 - a) + H(g, s + a) * H(f, 1 - a)};
  }
  const SpectralField<Scalar> f_Ds_g = padded_product(f, fractional_isotropic(g, s));
  return {l2_norm(Ds_fg - f_Ds_g), H(f, s + a) * H(g, 1 - a) + H(g, s - 1 + a) * H(f, 2 - a)};
}

template <typename Scalar>
RatioReport check_commutator(std::span<const FieldPair<Scalar>> family, Scalar s, Scalar a,
                             CommutatorForm form = CommutatorForm::Commutator) {
  RatioReport r;
  r.lemma = form == CommutatorForm::Commutator ? "commutator" : "fractional_leibniz";
  r.params = {{"s", s}, {"a", a}};
  for (const auto& p : family) record_ratio(r, p.f.grid.n1(), commutator_sides(p.f, p.g, s, a, form));
  return r;
}

/// Constant of |x + y|^r <= C(r) (|x|^r + |y|^r).
inline double pointwise_product_constant(double r) { return std::pow(2.0, std::max(0.0, r - 1.0)); }

/// sup_k |k_i|^r |F(fg)(k)|  vs  ||f|| || |d_i|^r g || + ||g|| || |d_i|^r f ||
template <typename Scalar>
Sides<Scalar> pointwise_product_sides(const SpectralField<Scalar>& f, const SpectralField<Scalar>& g, Axis axis,
                                      Scalar r) {
  if (!(r > 0)) throw InvalidArgument("pointwise product bound needs r > 0");
  const SpectralField<Scalar> fg = padded_product(f, g);
  const Scalar lhs = fractional_directional(fg, axis, r).coeffs.abs().maxCoeff();
  const Scalar rhs = l2_norm(f) * l2_norm(fractional_directional(g, axis, r)) +
                     l2_norm(g) * l2_norm(fractional_directional(f, axis, r));
  return {lhs, rhs};
}

template <typename Scalar>
RatioReport check_pointwise_product(std::span<const FieldPair<Scalar>> family, Axis axis, Scalar r) {
  RatioReport rep;
  rep.lemma = "pointwise_product";
  rep.params = {{"axis", axis == Axis::X1 ? 1.0 : 2.0}, {"r", r}};
  for (const auto& p : family) record_ratio(rep, p.f.grid.n1(), pointwise_product_sides(p.f, p.g, axis, r));
  return rep;
}

}  // namespace aqg
