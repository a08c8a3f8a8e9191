#pragma once

#include <stdexcept>
#include <string>

namespace framelimit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed documents, violated invariants, unresolved references.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Failures of the numerical pipeline on otherwise well-formed input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularStiffness : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoMechanism : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BudgetExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonPositiveResidual : public NumericalError {
public:
    NonPositiveResidual(const std::string& what, double zero_crossing)
        : NumericalError(what), zero_crossing_(zero_crossing) {}

    // Displacement at which the softening branch reaches zero base shear.
    double zero_crossing() const noexcept { return zero_crossing_; }

private:
    double zero_crossing_;
};

class BilinearizationFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace framelimit
