#include "doctest.h"

#include <cstdint>
#include <set>

#include "affinehsp/errors.hpp"
#include "affinehsp/finite_field.hpp"

using namespace affinehsp;

namespace {

// Independent multiplication oracle: schoolbook polynomial product reduced by
// repeated subtraction of shifted modulus multiples, all over small ints.
Field::Elem slow_mul(const Field& f, Field::Elem x, Field::Elem y) {
    const std::uint32_t p = f.p(), n = f.n();
    auto cx = f.coeffs(x);
    auto cy = f.coeffs(y);
    std::vector<std::uint32_t> prod(2 * n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % p;
        }
    }
    const auto& mod = f.modulus();
    for (std::uint32_t d = 2 * n - 1; d >= n; --d) {
        std::uint32_t c = prod[d];
        if (c == 0) continue;
        for (std::uint32_t i = 0; i <= n; ++i) {
            std::uint32_t k = d - n + i;
            prod[k] = (prod[k] + p * c - c * mod[i] % p) % p;
        }
    }
    prod.resize(n);
    return f.from_coeffs(prod);
}

}  // namespace

TEST_SUITE("finite_field") {

TEST_CASE("primality helper") {
    CHECK(Field::is_prime(2));
    CHECK(Field::is_prime(3));
    CHECK(Field::is_prime(65537));
    CHECK_FALSE(Field::is_prime(1));
    CHECK_FALSE(Field::is_prime(4));
    CHECK_FALSE(Field::is_prime(65536));
}

TEST_CASE("irreducibility over F2") {
    // x^2 + 1 = (x+1)^2 over F2; x^2 + x + 1 is irreducible.
    CHECK_FALSE(Field::is_irreducible(2, {1, 0, 1}));
    CHECK(Field::is_irreducible(2, {1, 1, 1}));
    // degree 3: x^3 + x + 1 and x^3 + x^2 + 1 are the irreducible ones
    CHECK(Field::is_irreducible(2, {1, 1, 0, 1}));
    CHECK(Field::is_irreducible(2, {1, 0, 1, 1}));
    CHECK_FALSE(Field::is_irreducible(2, {1, 1, 1, 1}));  // (x+1)(x^2+1)... has root 1
    CHECK_FALSE(Field::is_irreducible(2, {0, 0, 0, 1}));  // x^3
    // non-monic or constant input is rejected
    CHECK_FALSE(Field::is_irreducible(2, {1}));
    CHECK_FALSE(Field::is_irreducible(3, {1, 1, 2}));
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Field::build(4, 1), NotPrime);
    CHECK_THROWS_AS(Field::build(2, 0), InvalidDegree);
    CHECK_THROWS_AS(Field::build(2, 17), FieldTooLarge);
    CHECK_THROWS_AS(Field::build(2, 5, 16), FieldTooLarge);
}

TEST_CASE("GF(8) pinned construction") {
    Field f = Field::build(2, 3);
    CHECK(f.q() == 8);
    // First irreducible monic cubic in lex order of (c0, c1, c2) over F2.
    // (0,*,*) all have root 0; (1,0,0) = x^3+1 has root 1; (1,0,1) = x^3+x^2+1
    // is irreducible, so lex order with c0 most significant picks it.
    CHECK(f.modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
    // First element in coefficient-lex order of order 7. Candidates before
    // x^2 (lex rank of (0,0,1) is 1): only 0. So u = x^2, index 4.
    CHECK(f.generator() == 4);
    CHECK(f.describe() == "p=2 n=3 modulus=1,0,1,1 u=0,0,1");
    f.validate();
}

TEST_CASE("prime field stores residues directly") {
    Field f = Field::build(7, 1);
    CHECK(f.add(3, 5) == 1);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.neg(2) == 5);
    CHECK(f.inv(3) == 5);
    CHECK(f.generator() == 3);  // smallest generator of F7*
    for (std::uint32_t x = 0; x < 7; ++x) CHECK(f.lex_rank(x) == x);
}

TEST_CASE("arithmetic agrees with the schoolbook oracle") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                        {2, 4},
                        {3, 2},
                        {5, 2},
                        {3, 3}}) {
        Field f = Field::build(p, n);
        for (std::uint32_t x = 0; x < f.q(); ++x) {
            for (std::uint32_t y = 0; y < f.q(); ++y) {
                CHECK(f.mul(x, y) == slow_mul(f, x, y));
            }
        }
    }
}

TEST_CASE("field axioms, exhaustive at small q") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 1},
                        {2, 2},
                        {2, 3},
                        {3, 1},
                        {3, 2},
                        {5, 1},
                        {7, 1},
                        {2, 4}}) {
        Field f = Field::build(p, n);
        const std::uint32_t q = f.q();
        for (std::uint32_t x = 0; x < q; ++x) {
            CHECK(f.add(x, f.neg(x)) == 0);
            CHECK(f.mul(x, f.one()) == x);
            if (x != 0) {
                CHECK(f.mul(x, f.inv(x)) == f.one());
                CHECK(f.exp_u(f.dlog(x)) == x);
            }
            for (std::uint32_t y = 0; y < q; ++y) {
                CHECK(f.add(x, y) == f.add(y, x));
                CHECK(f.mul(x, y) == f.mul(y, x));
                CHECK(f.sub(x, y) == f.add(x, f.neg(y)));
                if (x && y) {
                    CHECK(f.dlog(f.mul(x, y)) == (f.dlog(x) + f.dlog(y)) % (q - 1));
                }
                // distributivity against a fixed third element
                CHECK(f.mul(x, f.add(y, f.one())) == f.add(f.mul(x, y), x));
            }
        }
        CHECK_THROWS_AS(f.inv(0), DivisionByZero);
        CHECK_THROWS_AS(f.dlog(0), LogOfZero);
    }
}

TEST_CASE("generator is the lex-first primitive element") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3}, {3, 2}, {2, 4}, {13, 1}}) {
        Field f = Field::build(p, n);
        const std::uint32_t q = f.q();
        auto order_of = [&](Field::Elem x) {
            std::uint32_t ord = 1;
            Field::Elem cur = x;
            while (cur != f.one()) {
                cur = f.mul(cur, x);
                ++ord;
            }
            return ord;
        };
        for (std::uint32_t r = 0; r < f.lex_rank(f.generator()); ++r) {
            Field::Elem x = f.from_lex_rank(r);
            if (x == 0) continue;
            CHECK(order_of(x) < q - 1);
        }
        CHECK(order_of(f.generator()) == q - 1);
    }
}

TEST_CASE("trace properties") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        Field f = Field::build(p, n);
        std::set<std::uint32_t> image;
        for (std::uint32_t x = 0; x < f.q(); ++x) {
            image.insert(f.trace(x));
            CHECK(f.trace(f.pow(x, f.p())) == f.trace(x));  // Frobenius invariance
            for (std::uint32_t y = 0; y < f.q(); ++y) {
                CHECK(f.trace(f.add(x, y)) == (f.trace(x) + f.trace(y)) % f.p());
            }
        }
        CHECK(image.size() == f.p());  // trace is onto F_p (nontrivial)
    }
}

TEST_CASE("coefficient and lex-rank round trips") {
    Field f = Field::build(3, 2);
    for (std::uint32_t x = 0; x < f.q(); ++x) {
        CHECK(f.from_coeffs(f.coeffs(x)) == x);
        CHECK(f.from_lex_rank(f.lex_rank(x)) == x);
    }
    // lex order: c0 most significant, so rank of c=(c0,c1) is 3*c0 + c1
    CHECK(f.lex_rank(f.from_coeffs({2, 1})) == 7);
    CHECK_THROWS_AS(f.from_coeffs({1, 1, 1}), DimensionMismatch);
    CHECK_THROWS_AS(f.from_coeffs({3, 0}), IndexOutOfRange);
}

TEST_CASE("q = 2 edge case") {
    Field f = Field::build(2, 1);
    CHECK(f.generator() == 1);
    CHECK(f.dlog(1) == 0);
    CHECK(f.add(1, 1) == 0);
    f.validate();
}

}  // TEST_SUITE
