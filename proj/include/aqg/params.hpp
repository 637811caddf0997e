#pragma once

#include <string>

#include "aqg/norms.hpp"

namespace aqg {

/// Coefficients of mu |d1|^{2 alpha} + nu |d2|^{2 beta}.
struct DissipationParams {
  double mu = 1.0;
  double nu = 1.0;
  double alpha = 0.75;
  double beta = 0.75;

  void validate() const {
    if (!(mu > 0)) throw InvalidArgument("mu must be positive");
    if (!(nu > 0)) throw InvalidArgument("nu must be positive");
    if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("alpha must lie in the open interval (0,1)");
    if (!(beta > 0 && beta < 1)) throw InvalidArgument("beta must lie in the open interval (0,1)");
  }
};

enum class Branch { LowAlpha, HighAlpha };

inline const char* to_string(Branch b) { return b == Branch::LowAlpha ? "low_alpha" : "high_alpha"; }

/// Position of (alpha, beta) relative to the global-regularity region.
struct RegionClass {
  bool satisfied = false;
  double margin = 0;     // beta - threshold(alpha)
  double threshold = 0;  // smallest admissible beta, exclusive
  Branch branch = Branch::LowAlpha;
};

/// beta must exceed 1/(2 alpha + 1) for alpha <= 1/2 and (1 - alpha)/(2 alpha) above.
inline double region_threshold(double alpha) {
  return alpha <= 0.5 ? 1.0 / (2.0 * alpha + 1.0) : (1.0 - alpha) / (2.0 * alpha);
}

inline RegionClass classify_region(double alpha, double beta) {
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("alpha must lie in the open interval (0,1)");
  if (!(beta > 0 && beta < 1)) throw InvalidArgument("beta must lie in the open interval (0,1)");
  RegionClass rc;
  rc.branch = alpha <= 0.5 ? Branch::LowAlpha : Branch::HighAlpha;
  rc.threshold = region_threshold(alpha);
  rc.margin = beta - rc.threshold;
  rc.satisfied = rc.margin > 0;  // strict: the boundary itself is excluded
  return rc;
}

template <typename Scalar>
std::pair<Scalar, Scalar> dissipation_pair(const SpectralField<Scalar>& theta, const DissipationParams& p) {
  return dissipation_pair(theta, Scalar(p.alpha), Scalar(p.beta));
}

}  // namespace aqg
