#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affinehsp {

/// Exact arithmetic in GF(p^n).
///
/// Elements are encoded as indices in [0, q): index = sum_i c_i * p^i for the
/// coefficient vector (c_0, ..., c_{n-1}) of the residue polynomial, so the
/// prime-field case (n = 1) stores the residue itself.
///
/// Construction is deterministic: the modulus is the first irreducible monic
/// degree-n polynomial in lexicographic order of (c_0, ..., c_{n-1}), and the
/// generator u is the first element in coefficient-lex order with
/// multiplicative order q-1. A full discrete-log table is built up front.
/// Immutable after build(); all operations are pure and thread-safe.
class Field {
public:
    using Elem = std::uint32_t;

    static constexpr std::uint64_t kDefaultMaxQ = 1ull << 16;

    static Field build(std::uint32_t p, std::uint32_t n, std::uint64_t max_q = kDefaultMaxQ);

    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t q() const { return q_; }

    /// Monic modulus polynomial, n+1 coefficients, constant term first.
    /// For n = 1 this is the polynomial x (stored for uniformity, unused).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem generator() const { return u_; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
    std::vector<std::uint32_t> coeffs(Elem x) const;

    /// Rank of x in lexicographic order of its coefficient vector
    /// (c_0 most significant).
    std::uint32_t lex_rank(Elem x) const;
    Elem from_lex_rank(std::uint32_t r) const;

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    /// Polynomial product mod (p, modulus). This is the ground-truth product;
    /// tests cross-check it against the discrete-log route.
    Elem mul(Elem x, Elem y) const;
    Elem inv(Elem x) const;  // throws DivisionByZero on x = 0
    Elem pow(Elem x, std::uint64_t e) const;

    /// L(x): exponent with u^L(x) = x. Throws LogOfZero on x = 0.
    std::uint32_t dlog(Elem x) const;
    /// u^j; the exponent is reduced mod q-1.
    Elem exp_u(std::uint64_t j) const;

    /// Absolute trace Tr(x) = x + x^p + ... + x^{p^{n-1}}, as a residue mod p.
    std::uint32_t trace(Elem x) const;

    /// "p=<p> n=<n> modulus=<c0,...,cn> u=<coeffs>"
    std::string describe() const;

    /// Re-checks the construction invariants; throws std::logic_error on
    /// violation. Cheap enough to run from the CLI's verify command.
    void validate() const;

    static bool is_prime(std::uint64_t m);
    static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

private:
    Field() = default;

    std::uint32_t p_ = 0;
    std::uint32_t n_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem u_ = 0;
    std::vector<Elem> exp_;          // exp_[j] = u^j for j in [0, q-1)
    std::vector<std::int32_t> dlog_; // dlog_[0] = -1
};

}  // namespace affinehsp
