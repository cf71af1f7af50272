#pragma once

// Entire approximations to Dirichlet L-functions built from truncated Euler
// products, with their exact error series and decay bounds.

#include "lapprox/approximation.hpp"
#include "lapprox/bigcomplex.hpp"
#include "lapprox/bigfloat.hpp"
#include "lapprox/characters.hpp"
#include "lapprox/error_analysis.hpp"
#include "lapprox/errors.hpp"
#include "lapprox/euler.hpp"
#include "lapprox/format.hpp"
#include "lapprox/oracle.hpp"
#include "lapprox/primes.hpp"
#include "lapprox/principal_part.hpp"
#include "lapprox/quadrature.hpp"
#include "lapprox/reference.hpp"
#include "lapprox/special.hpp"
