#pragma once

// Umbrella header for the radial Schrodinger-Bopp-Podolsky ground-state library.

#include "sbp/error.hpp"
#include "sbp/grid.hpp"
#include "sbp/interpolation.hpp"
#include "sbp/field.hpp"
#include "sbp/kernels.hpp"
#include "sbp/potential.hpp"
#include "sbp/params.hpp"
#include "sbp/functionals.hpp"
#include "sbp/fibering.hpp"
#include "sbp/solver.hpp"
#include "sbp/studies.hpp"
#include "sbp/oracle.hpp"
#include "sbp/io.hpp"
