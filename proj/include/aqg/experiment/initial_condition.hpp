#pragma once

#include "aqg/experiment/config.hpp"
#include "aqg/field.hpp"

namespace aqg::experiment {

/// theta0 for a configuration; deterministic, real, mean-free and inside the
/// 2/3 dealiasing box. single_mode and x1_profile use sine phase.
SpectralField<double> generate_initial(const InitialCondition& ic, const Grid<double>& grid);

}  // namespace aqg::experiment
