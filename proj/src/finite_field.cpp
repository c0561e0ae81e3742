#include "affinehsp/finite_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "affinehsp/errors.hpp"

namespace affinehsp {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant term first

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0: Fermat.
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
        if (e & 1u) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

// Remainder of f mod g over Z/p; g must be nonzero.
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
    const int dg = degree(g);
    const std::uint32_t lead_inv = inv_mod_p(g[static_cast<std::size_t>(dg)], p);
    for (int df = degree(f); df >= dg; df = degree(f)) {
        std::uint64_t c = static_cast<std::uint64_t>(f[static_cast<std::size_t>(df)]) * lead_inv % p;
        for (int i = 0; i <= dg; ++i) {
            std::uint64_t t = c * g[static_cast<std::size_t>(i)] % p;
            std::size_t k = static_cast<std::size_t>(df - dg + i);
            f[k] = static_cast<std::uint32_t>((f[k] + p - t) % p);
        }
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = static_cast<std::uint32_t>(
                (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t m) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

}  // namespace

bool Field::is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

bool Field::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
    const int d = degree(poly);
    if (d < 1) return false;
    if (poly[static_cast<std::size_t>(d)] != 1) return false;  // must be monic
    if (d == 1) return true;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (int e = 1; 2 * e <= d; ++e) {
        std::uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (std::uint64_t t = 0; t < count; ++t) {
            Poly g(static_cast<std::size_t>(e) + 1, 0);
            std::uint64_t tt = t;
            for (int i = 0; i < e; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(tt % p);
                tt /= p;
            }
            g[static_cast<std::size_t>(e)] = 1;
            if (degree(poly_rem(poly, g, p)) < 0) return false;
        }
    }
    return true;
}

Field Field::build(std::uint32_t p, std::uint32_t n, std::uint64_t max_q) {
    if (!is_prime(p)) throw NotPrime(p);
    if (n < 1) throw InvalidDegree(static_cast<long long>(n));
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        q *= p;
        if (q > max_q) {
            throw FieldTooLarge("p^n exceeds the configured maximum " + std::to_string(max_q));
        }
    }

    Field f;
    f.p_ = p;
    f.n_ = n;
    f.q_ = static_cast<std::uint32_t>(q);

    if (n == 1) {
        f.modulus_ = {0, 1};  // the polynomial x; unused by prime-field arithmetic
    } else {
        // First irreducible monic degree-n polynomial in lex order of (c0,...,c_{n-1}).
        bool found = false;
        for (std::uint64_t t = 0; t < q && !found; ++t) {
            Poly cand(n + 1, 0);
            std::uint64_t tt = t;
            // last tuple coordinate varies fastest in lex order
            for (std::uint32_t i = 0; i < n; ++i) {
                cand[n - 1 - i] = static_cast<std::uint32_t>(tt % p);
                tt /= p;
            }
            cand[n] = 1;
            if (is_irreducible(p, cand)) {
                f.modulus_ = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no irreducible polynomial found");  // cannot happen
    }

    // Generator: first element in coefficient-lex order of multiplicative order q-1.
    const auto qm1_primes = prime_divisors(q - 1);
    f.u_ = 0;
    for (std::uint32_t r = 0; r < f.q_; ++r) {
        Elem x = f.from_lex_rank(r);
        if (x == 0) continue;
        bool ok = true;
        for (std::uint64_t l : qm1_primes) {
            if (f.pow(x, (q - 1) / l) == f.one()) {
                ok = false;
                break;
            }
        }
        if (q - 1 == 1) ok = (x == f.one());
        if (ok) {
            f.u_ = x;
            break;
        }
    }
    if (f.u_ == 0 && f.q_ > 2) throw std::logic_error("no generator found");
    if (f.q_ == 2) f.u_ = 1;

    f.exp_.assign(f.q_ - 1, 0);
    f.dlog_.assign(f.q_, -1);
    Elem x = f.one();
    for (std::uint32_t j = 0; j + 1 < f.q_; ++j) {
        f.exp_[j] = x;
        if (f.dlog_[x] != -1) throw std::logic_error("generator order below q-1");
        f.dlog_[x] = static_cast<std::int32_t>(j);
        x = f.mul(x, f.u_);
    }
    if (x != f.one()) throw std::logic_error("generator order exceeds q-1");
    return f;
}

Field::Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != n_) throw DimensionMismatch("coefficient vector length != n");
    Elem x = 0;
    std::uint32_t base = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (c[i] >= p_) throw IndexOutOfRange("coefficient out of [0, p)");
        x += c[i] * base;
        base *= p_;
    }
    return x;
}

std::vector<std::uint32_t> Field::coeffs(Elem x) const {
    std::vector<std::uint32_t> c(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        c[i] = x % p_;
        x /= p_;
    }
    return c;
}

std::uint32_t Field::lex_rank(Elem x) const {
    auto c = coeffs(x);
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n_; ++i) r = r * p_ + c[i];
    return r;
}

Field::Elem Field::from_lex_rank(std::uint32_t r) const {
    std::vector<std::uint32_t> c(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        c[n_ - 1 - i] = r % p_;
        r /= p_;
    }
    return from_coeffs(c);
}

Field::Elem Field::add(Elem x, Elem y) const {
    Elem out = 0;
    std::uint32_t base = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        out += ((x % p_ + y % p_) % p_) * base;
        x /= p_;
        y /= p_;
        base *= p_;
    }
    return out;
}

Field::Elem Field::neg(Elem x) const {
    Elem out = 0;
    std::uint32_t base = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        out += ((p_ - x % p_) % p_) * base;
        x /= p_;
        base *= p_;
    }
    return out;
}

Field::Elem Field::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Field::Elem Field::mul(Elem x, Elem y) const {
    if (x == 0 || y == 0) return 0;
    if (n_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(x) * y % p_);
    Poly prod = poly_mul(coeffs(x), coeffs(y), p_);
    Poly rem = poly_rem(std::move(prod), modulus_, p_);
    rem.resize(n_, 0);
    return from_coeffs(rem);
}

Field::Elem Field::inv(Elem x) const {
    if (x == 0) throw DivisionByZero();
    if (!exp_.empty()) {
        std::uint32_t j = dlog(x);
        return exp_[(q_ - 1 - j) % (q_ - 1)];
    }
    return pow(x, q_ - 2);
}

Field::Elem Field::pow(Elem x, std::uint64_t e) const {
    Elem r = one();
    Elem b = x;
    while (e != 0) {
        if (e & 1ull) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint32_t Field::dlog(Elem x) const {
    if (x == 0) throw LogOfZero();
    return static_cast<std::uint32_t>(dlog_[x]);
}

Field::Elem Field::exp_u(std::uint64_t j) const { return exp_[j % (q_ - 1)]; }

std::uint32_t Field::trace(Elem x) const {
    Elem acc = x;
    Elem t = x;
    for (std::uint32_t i = 1; i < n_; ++i) {
        t = pow(t, p_);
        acc = add(acc, t);
    }
    auto c = coeffs(acc);
    for (std::uint32_t i = 1; i < n_; ++i) {
        if (c[i] != 0) throw std::logic_error("trace landed outside the prime subfield");
    }
    return c[0];
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "p=" << p_ << " n=" << n_ << " modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ",";
        os << modulus_[i];
    }
    os << " u=";
    auto c = coeffs(u_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    return os.str();
}

void Field::validate() const {
    if (modulus_.size() != n_ + 1 || modulus_[n_] != 1) {
        throw std::logic_error("modulus is not monic of degree n");
    }
    if (!is_irreducible(p_, modulus_)) {
        throw std::logic_error("modulus is reducible");
    }
    // Generator order and dlog bijection.
    std::vector<bool> seen(q_, false);
    for (std::uint32_t j = 0; j + 1 < q_; ++j) {
        Elem x = exp_[j];
        if (x == 0 || seen[x]) throw std::logic_error("dlog table is not a bijection");
        seen[x] = true;
        if (dlog_[x] != static_cast<std::int32_t>(j)) throw std::logic_error("dlog table inconsistent");
    }
    if (mul(exp_[q_ - 2], u_) != one()) throw std::logic_error("generator order != q-1");
}

}  // namespace affinehsp
