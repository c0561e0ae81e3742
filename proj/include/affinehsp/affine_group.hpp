#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "affinehsp/finite_field.hpp"
#include "affinehsp/rng.hpp"

namespace affinehsp {

/// The affine map x -> a*x + b, a != 0. As a matrix: [[a, b], [0, 1]].
struct AffineElement {
    Field::Elem a;
    Field::Elem b;
    bool operator==(const AffineElement&) const = default;
};

/// The group G of affine maps of F, |G| = q(q-1). Group elements are also
/// addressable by a flat index dlog(a)*q + b, matching the tensor coordinates
/// (|u^j>, |x>) used by the state engine.
class AffineGroup {
public:
    explicit AffineGroup(const Field& f) : f_(&f) {}

    const Field& field() const { return *f_; }
    std::size_t order() const { return static_cast<std::size_t>(f_->q()) * (f_->q() - 1); }

    AffineElement identity() const { return {f_->one(), f_->zero()}; }
    AffineElement mul(AffineElement g, AffineElement h) const;
    AffineElement inv(AffineElement g) const;

    std::size_t index_of(AffineElement g) const;
    AffineElement element_at(std::size_t idx) const;

    /// C_b: powers of (u, b); entry k is (u^k, (1-u^k)/(1-u) * b).
    std::vector<AffineElement> cyclic_subgroup(Field::Elem b) const;

    /// Brute-force enumeration of the maximal non-normal cyclic subgroups of
    /// G, each returned as its full ordered element list. Requires q <= max_q.
    std::vector<std::vector<AffineElement>> maximal_nonnormal_cyclic(std::uint64_t max_q = 64) const;

    /// pi(g) as a basis permutation of F: perm[x] = a*x + b.
    std::vector<std::uint32_t> rep_pi(AffineElement g) const;

    std::string describe(AffineElement g) const;

private:
    const Field* f_;
};

/// A hiding function f: G -> {0,...,q-1}, constant exactly on the right
/// cosets of C_{hidden_b}, with labels assigned by a seeded permutation of
/// the canonical coset order.
class HiddenOracle {
public:
    static HiddenOracle make(const AffineGroup& g, Field::Elem hidden_b, std::uint64_t seed);

    Field::Elem hidden_b() const { return hidden_b_; }
    std::uint32_t label(std::size_t group_index) const { return label_[group_index]; }
    std::uint32_t operator()(const AffineGroup& g, AffineElement x) const {
        return label_[g.index_of(x)];
    }
    /// Canonical representative of the coset carrying a given label.
    AffineElement representative(std::uint32_t label) const { return rep_[label]; }

private:
    Field::Elem hidden_b_ = 0;
    std::vector<std::uint32_t> label_;
    std::vector<AffineElement> rep_;
};

}  // namespace affinehsp
