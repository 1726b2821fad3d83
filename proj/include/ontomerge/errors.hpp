#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ontomerge {

// Base class for all library errors so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Structural validation of an ontology failed; carries every violation found,
// not just the first one.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& violations) {
        std::string out = "ontology validation failed:";
        for (const auto& v : violations) out += "\n  - " + v;
        return out;
    }

    std::vector<std::string> violations_;
};

// A map does not satisfy the homomorphism constraints (totality, incidence,
// exact tag preservation).
class InvalidHomomorphism : public Error {
public:
    using Error::Error;
};

// Composition or pairing was attempted between maps whose endpoints disagree.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

// An element id or member key was not found where one was required.
class UnknownElement : public Error {
public:
    using Error::Error;
};

// A cocone handed to the mediating-morphism construction does not commute
// with the alignment pair of the square.
class CoconeDoesNotCommute : public Error {
public:
    using Error::Error;
};

// A search exceeded its step budget before completing.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A precondition of an operation does not hold (for example the order handed
// to the order-theorem check is not a partial order).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// An order-relative property (LU, CPl, CPr, CP) was checked without an order.
class OrderRequired : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

// Input files could not be parsed into the expected shape.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ontomerge
