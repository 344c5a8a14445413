#pragma once

#include <stdexcept>
#include <string>

namespace hamgap {

// Argument outside an operation's mathematical domain (a ≡ 0 where a unit is
// required, d ∤ p−1, bit operand wider than L, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Empty input range, e.g. sieving below 2.
class EmptyRangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Modulus unsuitable for the requested operation (even p, p = 1, composite).
class InvalidModulusError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured size cap or search budget.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed (engine disagreement, w > W, ...).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unknown-schema input file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hamgap
