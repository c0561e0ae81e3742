#include "affinehsp/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "affinehsp/errors.hpp"

namespace affinehsp::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Pollard-Brent with a deterministic parameter walk.
u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        int power = 1, lam = 0;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = (mulmod(y, y, n) + c) % n;
            ++lam;
            q = mulmod(q, x > y ? x - y : y - x, n);
            if (lam % 64 == 0 || power == lam) {
                d = std::gcd(q, n);
                q = 1;
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 Factorization::value() const {
    u64 v = 1;
    for (auto [p, e] : factors) {
        for (int i = 0; i < e; ++i) v *= p;
    }
    return v;
}

std::string Factorization::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i].first << "^" << factors[i].second;
    }
    return os.str();
}

Factorization factorize(u64 n) {
    if (n < 2) throw std::domain_error("factorize requires n >= 2");
    std::map<u64, int> acc;
    for (u64 d = 2; d <= (1ull << 20) && d * d <= n; ++d) {
        while (n % d == 0) {
            ++acc[d];
            n /= d;
        }
    }
    factor_rec(n, acc);
    Factorization f;
    f.factors.assign(acc.begin(), acc.end());
    return f;
}

u64 totient(const Factorization& f) {
    u64 phi = 1;
    for (auto [p, e] : f.factors) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

TotientReport totient_report(u64 n) {
    if (n < 2) throw std::domain_error("totient_report requires n >= 2");
    TotientReport r;
    r.n = n;
    r.factorization = factorize(n);
    r.phi = totient(r.factorization);
    r.ratio = static_cast<double>(r.phi) / static_cast<double>(n);
    r.bound_applicable = n >= 5;
    if (r.bound_applicable) {
        double ll = std::log(std::log(static_cast<double>(n)));
        r.hardy_wright_bound = std::exp(-kEulerGamma) / (ll + 3.0 / ll);
        if (r.ratio < r.hardy_wright_bound) {
            throw std::logic_error("totient ratio fell below the Hardy-Wright bound");
        }
    } else {
        r.hardy_wright_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

int repetition_count(u64 n, double epsilon) {
    if (n < 16) throw std::domain_error("repetition_count requires n >= 16");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must be in (0, 1)");
    double v = 2.0 * std::log(std::log(static_cast<double>(n))) * -std::log(epsilon);
    return std::max(1, static_cast<int>(std::ceil(v)));
}

int retry_budget(u64 n, double epsilon) {
    if (n < 2) throw std::domain_error("retry_budget requires n >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must be in (0, 1)");
    double ll = std::max(1.0, std::log(std::log(static_cast<double>(n))));
    return std::max(1, static_cast<int>(std::ceil(2.0 * ll * -std::log(epsilon))));
}

FermatProduct fermat_product(int max_index) {
    if (max_index < 0 || max_index > 6) {
        throw IndexOutOfRange("Fermat product supported for indices 0..6");
    }
    FermatProduct out;
    out.max_index = max_index;
    std::vector<u64> primes;
    double log_ideal = 0.0;
    for (int i = 0; i <= max_index; ++i) {
        u128 fi = (u128(1) << (1u << i)) + 1;  // F_i = 2^(2^i) + 1
        log_ideal += std::log1p(-1.0 / static_cast<double>(fi));
        // peel small primes so the remainder fits in 64 bits (F_6 = 2^64 + 1)
        u128 rem = fi;
        for (u64 d = 3; d <= (1ull << 20) && u128(d) * d <= rem; d += 2) {
            while (rem % d == 0) {
                primes.push_back(d);
                rem /= d;
            }
        }
        if (rem > 1) {
            if (rem > std::numeric_limits<u64>::max()) {
                throw Overflow("Fermat cofactor out of 64-bit range");
            }
            auto f = factorize(static_cast<u64>(rem));
            for (auto [p, e] : f.factors) primes.push_back(p);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    double log_prod = 0.0;
    for (u64 l : primes) log_prod += std::log1p(-1.0 / static_cast<double>(l));
    out.primes = std::move(primes);
    out.prime_divisor_product = std::exp(log_prod);
    out.idealized_product = std::exp(log_ideal);
    return out;
}

std::vector<ScanRow> prime_power_scan(std::uint32_t p, std::uint32_t max_n) {
    if (!is_prime(p)) throw NotPrime(p);
    // overflow guard: p^max_n <= 2^63
    {
        u128 q = 1;
        for (std::uint32_t i = 0; i < max_n; ++i) {
            q *= p;
            if (q > (u128(1) << 63)) throw Overflow("p^max_n exceeds 2^63");
        }
    }
    double log_small = 0.0;
    for (u64 l = 2; l < p; ++l) {
        if (is_prime(l)) log_small += std::log1p(-1.0 / static_cast<double>(l));
    }
    const double bound = std::exp(-0.5 + log_small);

    std::vector<ScanRow> rows;
    for (std::uint32_t n = 2; n <= max_n; ++n) {
        if (!is_prime(n)) continue;
        u64 q = 1;
        for (std::uint32_t i = 0; i < n; ++i) q *= p;
        ScanRow row;
        row.n = n;
        row.q_minus_1 = q - 1;
        row.factorization = factorize(q - 1);
        row.ratio = static_cast<double>(totient(row.factorization)) / static_cast<double>(q - 1);
        row.bound = bound;
        row.ratio_at_least_bound = row.ratio >= bound;
        row.structural_ok = true;
        if (n % 2 == 1) {  // the l = kn+1 claim is for odd prime exponents
            for (auto [l, e] : row.factorization.factors) {
                if (l > p && l != 2 && l % (2 * static_cast<u64>(n)) != 1) {
                    row.structural_ok = false;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "n,q_minus_1,factorization,ratio,bound,ratio_at_least_bound,structural_ok\n";
    os.precision(17);
    for (const auto& r : rows) {
        os << r.n << "," << r.q_minus_1 << "," << r.factorization.to_string() << "," << r.ratio
           << "," << r.bound << "," << (r.ratio_at_least_bound ? "pass" : "fail") << ","
           << (r.structural_ok ? "pass" : "fail") << "\n";
    }
    return os.str();
}

}  // namespace affinehsp::nt
