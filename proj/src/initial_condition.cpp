#include "aqg/experiment/initial_condition.hpp"

#include <cmath>
#include <string>

#include "aqg/random_field.hpp"

namespace aqg::experiment {

namespace {

bool in_box(const Grid<double>& g, int m1, int m2) {
  return inside_dealias_box(m1, m2, g.n1(), g.n2());
}

/// amplitude * sin(k.x) at lattice mode (m1, m2).
void add_sine(SpectralField<double>& F, int m1, int m2, double amplitude) {
  const std::complex<double> c(0.0, -0.5 * amplitude * F.grid.area());
  F.at(m1, m2) += c;
  F.at(-m1, -m2) += std::conj(c);
}

double periodic_offset(double d, double l) { return d - l * std::round(d / l); }

}  // namespace

SpectralField<double> generate_initial(const InitialCondition& ic, const Grid<double>& grid) {
  SpectralField<double> F(grid);
  switch (ic.kind) {
    case InitialKind::SingleMode: {
      const auto [m1, m2] = ic.mode;
      if (m1 == 0 && m2 == 0) throw InvalidArgument("single_mode needs a nonzero wavevector");
      if (!in_box(grid, m1, m2)) {
        throw InvalidArgument("mode (" + std::to_string(m1) + ", " + std::to_string(m2) +
                              ") lies outside the dealiased part of the lattice");
      }
      add_sine(F, m1, m2, ic.amplitude);
      break;
    }
    case InitialKind::RandomBandlimited: {
      if (!ic.seed) throw InvalidArgument("random_bandlimited requires a seed");
      RandomSpectrum spec;
      spec.gamma = ic.gamma;
      spec.kmax = ic.kmax;
      spec.kmin = ic.kmin;
      spec.amplitude = ic.amplitude;
      spec.seed = *ic.seed;
      F = random_bandlimited(grid, spec);
      break;
    }
    case InitialKind::VortexPair: {
      if (!(ic.radius > 0)) throw InvalidArgument("vortex_pair radius must be positive");
      // Opposite-signed Gaussians centred on the box midpoint, offset along x1.
      const double c1 = grid.l1() / 2, c2 = grid.l2() / 2, h = ic.separation / 2;
      const double r2 = ic.radius * ic.radius;
      auto blob = [&](double x1, double x2, double centre1) {
        const double d1 = periodic_offset(x1 - centre1, grid.l1());
        const double d2 = periodic_offset(x2 - c2, grid.l2());
        return std::exp(-(d1 * d1 + d2 * d2) / r2);
      };
      const auto f = PhysicalField<double>::sample(
          grid, [&](double x1, double x2) { return ic.amplitude * (blob(x1, x2, c1 - h) - blob(x1, x2, c1 + h)); });
      F = dealias(forward_transform(f));
      break;
    }
    case InitialKind::X1Profile: {
      for (std::size_t j = 0; j < ic.coeffs.size(); ++j) {
        const int m = int(j) + 1;
        if (!in_box(grid, m, 0)) {
          throw InvalidArgument("x1_profile mode " + std::to_string(m) + " lies outside the dealiased part of the lattice");
        }
        add_sine(F, m, 0, ic.amplitude * ic.coeffs[j]);
      }
      break;
    }
  }
  F.coeffs(0, 0) = 0;
  return F;
}

}  // namespace aqg::experiment
