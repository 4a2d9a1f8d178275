#pragma once

#include <stdexcept>
#include <string>

namespace infonomics {

// Bad input: a violated invariant or precondition. The CLI maps this to exit 3.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A realization (or conditioning event) with zero probability.
class ZeroProbabilityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Solver breakdown or an iteration budget exhausted. The CLI maps this to exit 4.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace infonomics
