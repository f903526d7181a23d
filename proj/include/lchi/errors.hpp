// errors.hpp - exception types shared across the library.

#ifndef LCHI_ERRORS_HPP
#define LCHI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lchi {

/// Evaluation requested at a pole (s = 1 for the principal character,
/// or a genuine pole of the functional-equation factor).
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// |L(s, chi)| too small to divide by.
struct NearZeroError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A sum was asked to cover ordinates beyond the supplied zero list.
struct CoverageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of its subdivision budget.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The rotated Z-function failed to come out real.
struct PhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lchi

#endif  // LCHI_ERRORS_HPP
