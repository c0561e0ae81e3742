#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affinehsp::nt {

struct Factorization {
    std::vector<std::pair<std::uint64_t, int>> factors;  // sorted (prime, exponent)
    std::uint64_t value() const;
    std::string to_string() const;  // e.g. "23^1*89^1"
};

bool is_prime(std::uint64_t n);

/// Trial division up to 2^20, Pollard-Brent rho beyond. n >= 2.
Factorization factorize(std::uint64_t n);

std::uint64_t totient(const Factorization& f);

struct TotientReport {
    std::uint64_t n;
    Factorization factorization;
    std::uint64_t phi;
    double ratio;                // phi(n)/n
    double hardy_wright_bound;   // e^{-gamma}/(loglog n + 3/loglog n); NaN when n < 5
    bool bound_applicable;
};

TotientReport totient_report(std::uint64_t n);

inline constexpr double kEulerGamma = 0.57721566490153286;

/// ceil(2 ln ln n * (-ln eps)), minimum 1. Requires n >= 16, 0 < eps < 1.
int repetition_count(std::uint64_t n, double epsilon);

/// Whole-trial retry budget used by the pipeline: the same formula with the
/// ln ln n factor clamped below at 1 so small desk-scale fields (q-1 < 16)
/// still get a usable budget.
int retry_budget(std::uint64_t n, double epsilon);

struct FermatProduct {
    int max_index;
    std::vector<std::uint64_t> primes;  // distinct primes dividing F_0..F_N
    double prime_divisor_product;       // prod (1 - 1/l)
    double idealized_product;           // prod (1 - 1/F_n)
};

/// Products over Fermat numbers F_0..F_N; N <= 6 (larger factorizations are
/// out of desk range and not hardcoded).
FermatProduct fermat_product(int max_index);

struct ScanRow {
    std::uint32_t n;
    std::uint64_t q_minus_1;  // p^n - 1
    Factorization factorization;
    double ratio;             // phi(p^n-1)/(p^n-1)
    double bound;             // e^{-1/2} * prod_{l < p prime} (1 - 1/l)
    bool ratio_at_least_bound;
    bool structural_ok;       // every prime l > 2 dividing p^n-1 is == 1 mod 2n (odd prime n)
};

/// Scan over prime exponents n <= max_n. Throws Overflow when p^max_n > 2^63.
std::vector<ScanRow> prime_power_scan(std::uint32_t p, std::uint32_t max_n);

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace affinehsp::nt
