#pragma once

#include <stdexcept>
#include <string>

namespace affinehsp {

struct NotPrime : std::invalid_argument {
    explicit NotPrime(unsigned long long p)
        : std::invalid_argument("not a prime: " + std::to_string(p)) {}
};

struct InvalidDegree : std::invalid_argument {
    explicit InvalidDegree(long long n)
        : std::invalid_argument("extension degree must be >= 1, got " + std::to_string(n)) {}
};

struct FieldTooLarge : std::invalid_argument {
    explicit FieldTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in GF(p^n)") {}
};

struct LogOfZero : std::domain_error {
    LogOfZero() : std::domain_error("discrete log of zero") {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NonUnitary : std::invalid_argument {
    explicit NonUnitary(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownLabel : std::out_of_range {
    explicit UnknownLabel(const std::string& what) : std::out_of_range(what) {}
};

struct NotInvertible : std::domain_error {
    NotInvertible(unsigned long long m, unsigned long long mod)
        : std::domain_error(std::to_string(m) + " is not invertible mod " + std::to_string(mod)) {}
};

struct PhaseOracleFailed : std::runtime_error {
    explicit PhaseOracleFailed(unsigned long long m)
        : std::runtime_error("phase subroutine drew non-invertible m = " + std::to_string(m)) {}
};

struct Overflow : std::overflow_error {
    explicit Overflow(const std::string& what) : std::overflow_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace affinehsp
