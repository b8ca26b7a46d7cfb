#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// A caller-supplied input violates a documented hypothesis (CLI exit code 1).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An identity that the mathematics guarantees did not hold (CLI exit code 2).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ContextMismatch : public PreconditionError {
public:
    ContextMismatch() : PreconditionError("polynomials live in different variable contexts") {}
};

class InexactDivision : public std::domain_error {
public:
    InexactDivision() : std::domain_error("division is not exact over the integers") {}
    using std::domain_error::domain_error;
};

class DegenerateResultant : public PreconditionError {
public:
    DegenerateResultant() : PreconditionError("resultant of two constants is undefined") {}
};

class NotPrime : public PreconditionError {
public:
    NotPrime()
        : PreconditionError("rows of B do not generate Z^2 (Z^n / im(B) has torsion), so no Gale dual A exists") {}
};

class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("computation cancelled (deadline exceeded)") {}
};

}  // namespace toric
