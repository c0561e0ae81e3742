#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "affinehsp/errors.hpp"
#include "affinehsp/number_theory.hpp"
#include "affinehsp/rng.hpp"

using namespace affinehsp;

TEST_SUITE("number_theory") {

TEST_CASE("primality") {
    CHECK(nt::is_prime(2));
    CHECK(nt::is_prime(8191));                  // 2^13 - 1
    CHECK(nt::is_prime(2305843009213693951ull));  // 2^61 - 1
    CHECK(nt::is_prime(67280421310721ull));     // large factor of F_6
    CHECK_FALSE(nt::is_prime(1));
    CHECK_FALSE(nt::is_prime(2047));            // 23 * 89
    CHECK_FALSE(nt::is_prime(3215031751ull));   // strong pseudoprime to 2,3,5,7
}

TEST_CASE("factorization") {
    auto f = nt::factorize(2047);
    CHECK(f.to_string() == "23^1*89^1");
    CHECK(f.value() == 2047);

    auto m = nt::factorize((1ull << 32) - 1);
    CHECK(m.to_string() == "3^1*5^1*17^1*257^1*65537^1");

    auto pow2 = nt::factorize(1024);
    CHECK(pow2.to_string() == "2^10");

    // beyond trial division range: product of two 10-digit primes
    auto big = nt::factorize(1000000007ull * 1000000009ull);
    CHECK(big.factors.size() == 2);
    CHECK(big.factors[0].first == 1000000007ull);
    CHECK(big.factors[1].first == 1000000009ull);
    CHECK(big.value() == 1000000007ull * 1000000009ull);

    CHECK_THROWS_AS(nt::factorize(1), std::domain_error);
}

TEST_CASE("totient") {
    CHECK(nt::totient(nt::factorize(255)) == 128);
    CHECK(nt::totient(nt::factorize(7)) == 6);
    CHECK(nt::totient(nt::factorize(8191)) == 8190);
    // multiplicativity spot-check
    CHECK(nt::totient(nt::factorize(36)) == 12);
}

TEST_CASE("totient report and the Hardy-Wright floor") {
    auto r = nt::totient_report(255);
    CHECK(r.phi == 128);
    CHECK(r.ratio == doctest::Approx(128.0 / 255.0));
    CHECK(r.bound_applicable);
    CHECK(r.ratio > r.hardy_wright_bound);

    auto m = nt::totient_report(8191);
    CHECK(m.ratio == doctest::Approx(8190.0 / 8191.0));

    auto small = nt::totient_report(4);
    CHECK_FALSE(small.bound_applicable);
}

TEST_CASE("divisors of 2^11 - 1 are 1 mod 22") {
    auto f = nt::factorize(2047);
    for (auto [p, e] : f.factors) CHECK(p % 22 == 1);
}

TEST_CASE("repetition count") {
    // 2 ln ln 255 = 3.429...; with eps = 1/e the budget is ceil(3.429) = 4
    CHECK(nt::repetition_count(255, std::exp(-1.0)) == 4);
    CHECK(nt::repetition_count(1 << 20, 0.01) == 25);
    CHECK_THROWS_AS(nt::repetition_count(7, 0.5), std::domain_error);
    CHECK_THROWS_AS(nt::repetition_count(255, 1.5), std::domain_error);
}

TEST_CASE("retry budget clamps the loglog factor for small n") {
    // ln ln 7 = 0.666 < 1 clamps to 1: ceil(2 * -ln 0.05) = 6
    CHECK(nt::retry_budget(7, 0.05) == 6);
    CHECK(nt::retry_budget(255, std::exp(-1.0)) == nt::repetition_count(255, std::exp(-1.0)));
    CHECK_THROWS_AS(nt::retry_budget(1, 0.5), std::domain_error);
}

TEST_CASE("Hardy-Wright bound vs the 1/(2 loglog n) shortcut") {
    // The proof-sketch step "e^{-gamma}/(loglog n + 3/loglog n) > 1/(2 loglog n)"
    // requires loglog n > sqrt(3 / (2 e^{-gamma} - 1)) ~ 4.94, far beyond any
    // 64-bit n. On [16, 2^20] the comparison goes the other way; pin that as a
    // counterexample so the discrepancy stays visible.
    bool shortcut_always_fails = true;
    bool decay_always_holds = true;
    for (std::uint64_t n = 16; n <= (1ull << 20); ++n) {
        double ll = std::log(std::log(double(n)));
        double hw = std::exp(-nt::kEulerGamma) / (ll + 3.0 / ll);
        shortcut_always_fails = shortcut_always_fails && hw < 1.0 / (2.0 * ll);
        // the failure-decay inequality behind the repetition count does hold
        decay_always_holds = decay_always_holds &&
                             std::pow(1.0 - 1.0 / (2.0 * ll), 2.0 * ll) < std::exp(-1.0);
    }
    CHECK(shortcut_always_fails);
    CHECK(decay_always_holds);
    // and phi(n)/n itself can dip below 1/(2 loglog n): primorial counterexample
    auto primorial = nt::totient_report(510510);  // 2*3*5*7*11*13*17
    CHECK(primorial.ratio < 1.0 / (2.0 * std::log(std::log(510510.0))));
    CHECK(primorial.ratio > primorial.hardy_wright_bound);  // the real bound survives
}

TEST_CASE("totient via factorization equals the gcd count") {
    auto gcd_count = [](std::uint64_t n) {
        std::uint64_t c = 0;
        for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1 ? 1 : 0;
        return c;
    };
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        CHECK(nt::totient(nt::factorize(n)) == gcd_count(n));
    }
}

TEST_CASE("factorize round-trips on sampled values") {
    Rng rng(606);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 2 + rng.next_below(1000000 - 2);
        CHECK(nt::factorize(n).value() == n);
    }
}

TEST_CASE("Fermat products") {
    auto f4 = nt::fermat_product(4);
    // F_0..F_4 are the five known Fermat primes; the telescoped product is
    // prod (1 - 1/F_i) = 2^31 / (2^32 - 1)
    CHECK(f4.primes == std::vector<std::uint64_t>{3, 5, 17, 257, 65537});
    CHECK(f4.prime_divisor_product == doctest::Approx(f4.idealized_product).epsilon(1e-12));
    CHECK(f4.idealized_product ==
          doctest::Approx(double(1ull << 31) / double((1ull << 32) - 1)).epsilon(1e-12));

    auto f5 = nt::fermat_product(5);
    CHECK(f5.primes == std::vector<std::uint64_t>{3, 5, 17, 257, 641, 65537, 6700417});
    CHECK(f5.prime_divisor_product == doctest::Approx(0.49922).epsilon(1e-4));
    // the commonly quoted .4997 does not match the computed product
    CHECK(std::abs(f5.prime_divisor_product - 0.4997) > 4e-4);

    auto f6 = nt::fermat_product(6);
    bool has_small = false, has_large = false;
    for (auto p : f6.primes) {
        has_small = has_small || p == 274177;
        has_large = has_large || p == 67280421310721ull;
    }
    CHECK(has_small);
    CHECK(has_large);

    CHECK_THROWS_AS(nt::fermat_product(7), IndexOutOfRange);
    CHECK_THROWS_AS(nt::fermat_product(-1), IndexOutOfRange);
}

TEST_CASE("prime power scan at p = 2") {
    auto rows = nt::prime_power_scan(2, 31);
    // prime exponents up to 31
    CHECK(rows.size() == 11);
    double min_ratio = 1.0;
    for (const auto& r : rows) {
        CHECK(r.q_minus_1 == (1ull << r.n) - 1);
        CHECK(r.ratio_at_least_bound);
        CHECK(r.structural_ok);
        min_ratio = std::min(min_ratio, r.ratio);
    }
    CHECK(min_ratio >= 0.6);
}

TEST_CASE("scan handles odd characteristics and overflow") {
    auto rows = nt::prime_power_scan(3, 13);
    CHECK(!rows.empty());
    for (const auto& r : rows) {
        CHECK(r.bound == doctest::Approx(std::exp(-0.5) * 0.5));  // (1 - 1/2) for l = 2 < 3
        CHECK(r.structural_ok);
    }
    CHECK_THROWS_AS(nt::prime_power_scan(4, 5), NotPrime);
    CHECK_THROWS_AS(nt::prime_power_scan(3, 41), Overflow);
}

TEST_CASE("scan CSV shape") {
    auto rows = nt::prime_power_scan(2, 13);
    std::string csv = nt::scan_csv(rows);
    CHECK(csv.rfind("n,q_minus_1,factorization,ratio,bound,ratio_at_least_bound,structural_ok\n",
                    0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n' ? 1 : 0;
    CHECK(lines == rows.size() + 1);
}

}  // TEST_SUITE
