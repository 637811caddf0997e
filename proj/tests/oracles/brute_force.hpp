#pragma once

// Direct-summation references for the FFT-based code paths. Everything here is
// O(n^4) or worse and only meant for lattices up to ~16^2.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<long double>;

struct Lattice {
  int n1, n2;
  long double l1, l2;

  long double x1(int i) const { return l1 * i / n1; }
  long double x2(int j) const { return l2 * j / n2; }
  static int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }
  long double k1(int i) const { return 2 * std::numbers::pi_v<long double> / l1 * signed_index(i, n1); }
  long double k2(int j) const { return 2 * std::numbers::pi_v<long double> / l2 * signed_index(j, n2); }
};

/// Grid-ordered table (i + n1 * j).
template <typename T>
struct Table {
  int n1 = 0, n2 = 0;
  std::vector<T> v;
  Table(int a, int b) : n1(a), n2(b), v(std::size_t(a) * b) {}
  T& operator()(int i, int j) { return v[std::size_t(i) + std::size_t(n1) * j]; }
  const T& operator()(int i, int j) const { return v[std::size_t(i) + std::size_t(n1) * j]; }
};

/// F(k) = (l1 l2 / n1 n2) sum_x f(x) exp(-i k.x)
inline Table<cplx> forward(const Lattice& L, const Table<long double>& f) {
  Table<cplx> F(L.n1, L.n2);
  const long double w = L.l1 * L.l2 / (L.n1 * L.n2);
  for (int q = 0; q < L.n2; ++q)
    for (int p = 0; p < L.n1; ++p) {
      cplx acc = 0;
      for (int j = 0; j < L.n2; ++j)
        for (int i = 0; i < L.n1; ++i) {
          const long double ph = -(L.k1(p) * L.x1(i) + L.k2(q) * L.x2(j));
          acc += f(i, j) * cplx(std::cos(ph), std::sin(ph));
        }
      F(p, q) = w * acc;
    }
  return F;
}

/// f(x) = (1 / (l1 l2)) sum_k F(k) exp(i k.x); complex result.
inline Table<cplx> inverse(const Lattice& L, const Table<cplx>& F) {
  Table<cplx> f(L.n1, L.n2);
  const long double w = 1 / (L.l1 * L.l2);
  for (int j = 0; j < L.n2; ++j)
    for (int i = 0; i < L.n1; ++i) {
      cplx acc = 0;
      for (int q = 0; q < L.n2; ++q)
        for (int p = 0; p < L.n1; ++p) {
          const long double ph = L.k1(p) * L.x1(i) + L.k2(q) * L.x2(j);
          acc += F(p, q) * cplx(std::cos(ph), std::sin(ph));
        }
      f(i, j) = w * acc;
    }
  return f;
}

inline bool nyquist(const Lattice& L, int p, int q) { return p == L.n1 / 2 || q == L.n2 / 2; }

inline bool kept(const Lattice& L, int p, int q) {
  return 3 * std::abs(Lattice::signed_index(p, L.n1)) < L.n1 && 3 * std::abs(Lattice::signed_index(q, L.n2)) < L.n2;
}

/// u.grad(theta) through explicit physical-space sums: symbols applied mode by
/// mode, direct inverse sums, pointwise product, direct forward sum, 2/3 mask.
inline Table<cplx> advection_by_sums(const Lattice& L, const Table<cplx>& theta) {
  Table<cplx> U1(L.n1, L.n2), U2(L.n1, L.n2), G1(L.n1, L.n2), G2(L.n1, L.n2);
  const cplx I(0, 1);
  for (int q = 0; q < L.n2; ++q)
    for (int p = 0; p < L.n1; ++p) {
      if (nyquist(L, p, q)) continue;
      const long double a = L.k1(p), b = L.k2(q), r = std::hypot(a, b);
      if (r > 0) {
        U1(p, q) = -I * (b / r) * theta(p, q);
        U2(p, q) = I * (a / r) * theta(p, q);
      }
      G1(p, q) = I * a * theta(p, q);
      G2(p, q) = I * b * theta(p, q);
    }
  const auto u1 = inverse(L, U1), u2 = inverse(L, U2), g1 = inverse(L, G1), g2 = inverse(L, G2);
  Table<long double> prod(L.n1, L.n2);
  for (std::size_t s = 0; s < prod.v.size(); ++s)
    prod.v[s] = (u1.v[s] * g1.v[s] + u2.v[s] * g2.v[s]).real();
  auto out = forward(L, prod);
  for (int q = 0; q < L.n2; ++q)
    for (int p = 0; p < L.n1; ++p)
      if (!kept(L, p, q) || (p == 0 && q == 0)) out(p, q) = 0;
  return out;
}

/// The same quantity as a triad sum over wavevectors k = a + b (no aliasing
/// when theta lies inside the 2/3 box):
///   F(u.grad theta)(k) = (1/(l1 l2)) sum_{a+b=k} u(a) . (i b) theta(b).
inline Table<cplx> advection_by_convolution(const Lattice& L, const Table<cplx>& theta) {
  Table<cplx> out(L.n1, L.n2);
  const cplx I(0, 1);
  const long double w = 1 / (L.l1 * L.l2);
  auto wrap = [](int m, int n) { return ((m % n) + n) % n; };
  for (int aq = 0; aq < L.n2; ++aq)
    for (int ap = 0; ap < L.n1; ++ap) {
      if (nyquist(L, ap, aq)) continue;
      const long double a1 = L.k1(ap), a2 = L.k2(aq), r = std::hypot(a1, a2);
      if (r == 0) continue;
      const cplx u1 = -I * (a2 / r) * theta(ap, aq), u2 = I * (a1 / r) * theta(ap, aq);
      for (int bq = 0; bq < L.n2; ++bq)
        for (int bp = 0; bp < L.n1; ++bp) {
          if (nyquist(L, bp, bq)) continue;
          const int m1 = Lattice::signed_index(ap, L.n1) + Lattice::signed_index(bp, L.n1);
          const int m2 = Lattice::signed_index(aq, L.n2) + Lattice::signed_index(bq, L.n2);
          // keep only exact (non-wrapped) sums inside the retained box
          if (3 * std::abs(m1) >= L.n1 || 3 * std::abs(m2) >= L.n2) continue;
          const cplx term = (u1 * I * L.k1(bp) + u2 * I * L.k2(bq)) * theta(bp, bq);
          out(wrap(m1, L.n1), wrap(m2, L.n2)) += w * term;
        }
    }
  out(0, 0) = 0;
  return out;
}

}  // namespace oracle
