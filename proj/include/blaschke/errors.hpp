#pragma once

#include <stdexcept>
#include <string>

namespace blaschke {

// Bad input: out-of-range parameters, malformed zero lists, broken invariants.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numeric procedure failed to meet its tolerance: quadrature non-convergence,
// root residuals above threshold, enclosures wider than requested.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace blaschke
