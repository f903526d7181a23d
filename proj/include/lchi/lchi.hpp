// lchi.hpp - everything except the command-line front end.

#ifndef LCHI_LCHI_HPP
#define LCHI_LCHI_HPP

#include "lchi/arithmetic.hpp"
#include "lchi/bump.hpp"
#include "lchi/characters.hpp"
#include "lchi/errors.hpp"
#include "lchi/fit.hpp"
#include "lchi/gauss.hpp"
#include "lchi/lfunc.hpp"
#include "lchi/numeric.hpp"
#include "lchi/quadrature.hpp"
#include "lchi/report.hpp"
#include "lchi/special.hpp"
#include "lchi/sums.hpp"
#include "lchi/verify.hpp"
#include "lchi/zeros.hpp"

#endif  // LCHI_LCHI_HPP
