#pragma once

#include <stdexcept>
#include <string>

namespace ekalg {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrime : Error {
    explicit NotPrime(const std::string& msg) : Error(msg) {}
};

struct DuplicateGenerator : Error {
    explicit DuplicateGenerator(const std::string& msg) : Error(msg) {}
};

// Odd total degree forces an exterior generator at odd p; p = 2 is all polynomial.
struct ParityViolation : Error {
    explicit ParityViolation(const std::string& msg) : Error(msg) {}
};

// A generator with t < 1 and w < 1 would put infinitely many monomials in one bidegree.
struct NonConnective : Error {
    explicit NonConnective(const std::string& msg) : Error(msg) {}
};

struct AmbientMismatch : Error {
    explicit AmbientMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct BetaAtTwo : Error {
    explicit BetaAtTwo(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

struct EvenSphere : Error {
    explicit EvenSphere(const std::string& msg) : Error(msg) {}
};

struct DegreeCapExceeded : Error {
    explicit DegreeCapExceeded(const std::string& msg) : Error(msg) {}
};

struct InhomogeneousRelation : Error {
    explicit InhomogeneousRelation(const std::string& msg) : Error(msg) {}
};

struct OddPrimeRequired : Error {
    explicit OddPrimeRequired(const std::string& msg) : Error(msg) {}
};

// Catch-all for precondition violations that have no dedicated type.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

}  // namespace ekalg
