#pragma once

#include <stdexcept>
#include <string>

namespace lassoda {

// Bad arguments or malformed inputs. Maps to CLI exit code 1.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical breakdown (non-finite values, failed factorization). Maps to CLI
// exit code 2. `detail` carries a diagnostic scalar, e.g. the minimum diagonal
// pivot seen by a failed Cholesky factorization.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double detail = 0.0)
        : std::runtime_error(what), detail_(detail) {}

    double detail() const noexcept { return detail_; }

private:
    double detail_;
};

}  // namespace lassoda
