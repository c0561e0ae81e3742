#include "affinehsp/affine_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "affinehsp/errors.hpp"

namespace affinehsp {

AffineElement AffineGroup::mul(AffineElement g, AffineElement h) const {
    // (a1,b1)(a2,b2) = (a1 a2, a1 b2 + b1)
    return {f_->mul(g.a, h.a), f_->add(f_->mul(g.a, h.b), g.b)};
}

AffineElement AffineGroup::inv(AffineElement g) const {
    Field::Elem ai = f_->inv(g.a);
    return {ai, f_->neg(f_->mul(ai, g.b))};
}

std::size_t AffineGroup::index_of(AffineElement g) const {
    return static_cast<std::size_t>(f_->dlog(g.a)) * f_->q() + g.b;
}

AffineElement AffineGroup::element_at(std::size_t idx) const {
    return {f_->exp_u(idx / f_->q()), static_cast<Field::Elem>(idx % f_->q())};
}

std::vector<AffineElement> AffineGroup::cyclic_subgroup(Field::Elem b) const {
    const std::uint32_t q = f_->q();
    std::vector<AffineElement> out;
    out.reserve(q - 1);
    // (1-u^k)/(1-u) * b, accumulated as successive powers of (u, b).
    AffineElement gen{f_->generator(), b};
    AffineElement cur = identity();
    for (std::uint32_t k = 0; k + 1 < q; ++k) {
        out.push_back(cur);
        cur = mul(gen, cur);
    }
    return out;
}

std::vector<std::uint32_t> AffineGroup::rep_pi(AffineElement g) const {
    std::vector<std::uint32_t> perm(f_->q());
    for (std::uint32_t x = 0; x < f_->q(); ++x) {
        perm[x] = f_->add(f_->mul(g.a, x), g.b);
    }
    return perm;
}

std::string AffineGroup::describe(AffineElement g) const {
    auto join = [&](Field::Elem e) {
        auto c = f_->coeffs(e);
        std::ostringstream os;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ",";
            os << c[i];
        }
        return os.str();
    };
    return "(a=" + join(g.a) + ", b=" + join(g.b) + ")";
}

namespace {

std::set<std::size_t> closure(const AffineGroup& g, std::vector<std::size_t> gens) {
    std::set<std::size_t> members;
    std::vector<std::size_t> work;
    members.insert(g.index_of(g.identity()));
    work.push_back(g.index_of(g.identity()));
    for (auto s : gens) {
        if (members.insert(s).second) work.push_back(s);
    }
    while (!work.empty()) {
        std::size_t x = work.back();
        work.pop_back();
        for (std::size_t y : std::vector<std::size_t>(members.begin(), members.end())) {
            for (std::size_t z : {g.index_of(g.mul(g.element_at(x), g.element_at(y))),
                                  g.index_of(g.mul(g.element_at(y), g.element_at(x)))}) {
                if (members.insert(z).second) work.push_back(z);
            }
        }
    }
    return members;
}

}  // namespace

std::vector<std::vector<AffineElement>> AffineGroup::maximal_nonnormal_cyclic(
    std::uint64_t max_q) const {
    if (f_->q() > max_q) {
        throw FieldTooLarge("subgroup enumeration is brute force; q capped at " +
                            std::to_string(max_q));
    }
    const std::size_t N = order();

    // All distinct cyclic subgroups, as sorted index sets keyed for dedup.
    std::map<std::vector<std::size_t>, std::vector<AffineElement>> cyclic;
    for (std::size_t i = 0; i < N; ++i) {
        AffineElement gen = element_at(i);
        std::vector<AffineElement> elems;
        AffineElement cur = identity();
        do {
            elems.push_back(cur);
            cur = mul(gen, cur);
        } while (!(cur == identity()));
        std::vector<std::size_t> key;
        key.reserve(elems.size());
        for (auto& e : elems) key.push_back(index_of(e));
        std::sort(key.begin(), key.end());
        cyclic.emplace(std::move(key), std::move(elems));
    }

    std::vector<std::vector<AffineElement>> out;
    for (const auto& [key, elems] : cyclic) {
        // Prune: a cyclic subgroup strictly inside another cyclic one is not maximal.
        bool strictly_contained = false;
        for (const auto& [key2, elems2] : cyclic) {
            if (key2.size() > key.size() &&
                std::includes(key2.begin(), key2.end(), key.begin(), key.end())) {
                strictly_contained = true;
                break;
            }
        }
        if (strictly_contained) continue;

        // Non-normal: some conjugate differs.
        std::set<std::size_t> members(key.begin(), key.end());
        bool normal = true;
        for (std::size_t i = 0; i < N && normal; ++i) {
            AffineElement h = element_at(i);
            for (const auto& e : elems) {
                if (!members.count(index_of(mul(mul(h, e), inv(h))))) {
                    normal = false;
                    break;
                }
            }
        }
        if (normal) continue;

        // Maximal: adjoining any outside element generates all of G.
        bool maximal = true;
        for (std::size_t i = 0; i < N && maximal; ++i) {
            if (members.count(i)) continue;
            std::vector<std::size_t> gens(key.begin(), key.end());
            gens.push_back(i);
            if (closure(*this, gens).size() != N) maximal = false;
        }
        if (maximal) out.push_back(elems);
    }
    return out;
}

HiddenOracle HiddenOracle::make(const AffineGroup& g, Field::Elem hidden_b, std::uint64_t seed) {
    const Field& f = g.field();
    const std::uint32_t q = f.q();
    const std::size_t N = g.order();

    HiddenOracle o;
    o.hidden_b_ = hidden_b;

    auto subgroup = g.cyclic_subgroup(hidden_b);

    // Right cosets C_b * g, with canonical representative = minimal element
    // in (L(a), lex(b)) order; cosets are ordered by their representative.
    std::vector<int> coset_of(N, -1);
    struct Coset {
        std::pair<std::uint32_t, std::uint32_t> key;
        AffineElement rep;
        std::vector<std::size_t> members;
    };
    std::vector<Coset> cosets;
    for (std::size_t i = 0; i < N; ++i) {
        if (coset_of[i] >= 0) continue;
        Coset cs;
        AffineElement base = g.element_at(i);
        for (const auto& c : subgroup) {
            AffineElement e = g.mul(c, base);
            std::size_t idx = g.index_of(e);
            coset_of[idx] = static_cast<int>(cosets.size());
            cs.members.push_back(idx);
            std::pair<std::uint32_t, std::uint32_t> k{f.dlog(e.a), f.lex_rank(e.b)};
            if (cs.members.size() == 1 || k < cs.key) {
                cs.key = k;
                cs.rep = e;
            }
        }
        cosets.push_back(std::move(cs));
    }
    std::vector<std::size_t> order(cosets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cosets[a].key < cosets[b].key; });

    // Seeded bijection from canonical coset ordinal to label.
    std::vector<std::uint32_t> labels(q);
    std::iota(labels.begin(), labels.end(), 0u);
    Rng rng(seed);
    rng.shuffle(labels);

    o.label_.assign(N, 0);
    o.rep_.assign(q, AffineElement{});
    for (std::size_t ord = 0; ord < order.size(); ++ord) {
        const Coset& cs = cosets[order[ord]];
        std::uint32_t lab = labels[ord];
        for (std::size_t idx : cs.members) o.label_[idx] = lab;
        o.rep_[lab] = cs.rep;
    }
    return o;
}

}  // namespace affinehsp
