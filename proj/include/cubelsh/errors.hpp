#pragma once

#include <stdexcept>
#include <string>

namespace cubelsh {

/// Bad input value (wrong range, wrong size, inconsistent dimensions).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds the exhaustive/desk-scale limits of an operation.
struct UnsupportedScale : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The rho denominator log(p_beta) vanished because p_beta = 1.
struct DegenerateDenominator : std::runtime_error {
    explicit DegenerateDenominator(double p_beta_value)
        : std::runtime_error("rho is undefined: p_beta = " + std::to_string(p_beta_value) +
                             " makes the denominator log(p_beta) zero"),
          p_beta(p_beta_value) {}

    double p_beta;
};

/// A spectrum whose squared coefficients do not sum to 1.
struct NotBooleanValued : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Corrupt, truncated, or version-mismatched serialized payload.
/// `section` names the part of the file that failed to parse.
struct FormatError : std::runtime_error {
    FormatError(std::string section_name, const std::string& detail)
        : std::runtime_error("format error in section '" + section_name + "': " + detail),
          section(std::move(section_name)) {}

    std::string section;
};

} // namespace cubelsh
