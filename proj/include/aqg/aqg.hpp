#pragma once

#include "aqg/diagnostics.hpp"
#include "aqg/error.hpp"
#include "aqg/field.hpp"
#include "aqg/grid.hpp"
#include "aqg/lemmas.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"
#include "aqg/params.hpp"
#include "aqg/random_field.hpp"
#include "aqg/solver.hpp"
#include "aqg/splitting.hpp"
#include "aqg/transform.hpp"
