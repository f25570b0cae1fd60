#ifndef GBCURV_ERRORS_HPP
#define GBCURV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gbcurv {

/// Degree outside [0, n], or a product/star would leave the algebra.
struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Contraction applied to a form with an empty argument block.
struct ContractionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operands live on different dimensions or have mismatched bidegrees.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Immersion chart fails the full-rank requirement at a queried point.
struct DegenerateImmersion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Variation setup that the theory does not cover (open chart, no compact support).
struct InvalidVariation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad user-facing configuration (CLI maps this to exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace gbcurv

#endif
