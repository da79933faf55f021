#pragma once

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"
#include "curvaspec/dynamics.hpp"
#include "curvaspec/symmetry.hpp"
#include "curvaspec/quadrature.hpp"
#include "curvaspec/quantization.hpp"
#include "curvaspec/special_functions.hpp"
#include "curvaspec/spectrum.hpp"
#include "curvaspec/tridiagonal.hpp"
#include "curvaspec/oracle.hpp"
#include "curvaspec/verify.hpp"

namespace curvaspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace curvaspec
