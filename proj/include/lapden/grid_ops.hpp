#pragma once

// Discrete differential operators: 1D banded second-difference matrices and 2D stencils.
#include "lapden/banded.hpp"
#include "lapden/stencil2d.hpp"
