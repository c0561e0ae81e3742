#include "affinehsp/verify.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "affinehsp/affine_group.hpp"
#include "affinehsp/dlog_phase.hpp"
#include "affinehsp/errors.hpp"
#include "affinehsp/hsp_pipeline.hpp"
#include "affinehsp/number_theory.hpp"
#include "affinehsp/spectra.hpp"
#include "affinehsp/statevector.hpp"

namespace affinehsp {

namespace {

constexpr double kTol = 1e-9;

Eigen::MatrixXcd permutation_matrix(const std::vector<std::uint32_t>& perm) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(perm.size(), perm.size());
    for (std::size_t x = 0; x < perm.size(); ++x) p(perm[x], x) = 1.0;
    return p;
}

/// The Theorem-4 closed form for (F_M (x) I) applied to the coset state of
/// C_b * (1, x), assembled from the wavelet formula rather than the engine.
Eigen::VectorXcd theorem4_expected(const Field& f, Field::Elem b, Field::Elem x) {
    const std::uint32_t q = f.q();
    const Field::Elem v = f.mul(b, f.inv(f.sub(f.one(), f.generator())));  // b/(1-u)
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(q) * (q - 1));
    if (x == v) {
        out(v) = 1.0;  // |u^0> (x) |v>
        return out;
    }
    const double inv_qm1 = 1.0 / static_cast<double>(q - 1);
    for (std::uint32_t t = 0; t < q; ++t) out(t) += inv_qm1;  // k = 0 block
    out(v) -= inv_qm1;
    const long long d = f.dlog(f.sub(x, v));
    for (std::uint32_t k = 1; k < q - 1; ++k) {
        Eigen::VectorXcd phi = spectra::wavelet_phi(f, -(long long)k, v);
        spectra::Complex c =
            spectra::zeta_pow(f, -(long long)k * d) / std::sqrt(static_cast<double>(q - 1));
        out.segment(static_cast<Eigen::Index>(k) * q, q) = c * phi;
    }
    return out;
}

StateVector coset_state_for(const Field& f, const AffineGroup& g, Field::Elem b, Field::Elem x) {
    const std::uint32_t q = f.q();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(q) * (q - 1));
    const double a = 1.0 / std::sqrt(static_cast<double>(q - 1));
    for (const auto& c : g.cyclic_subgroup(b)) {
        AffineElement e = g.mul(c, {f.one(), x});
        amps(static_cast<Eigen::Index>(g.index_of(e))) = a;
    }
    return StateVector::from_amplitudes({{"F^x", q - 1}, {"F", q}}, std::move(amps));
}

}  // namespace

std::vector<CheckResult> run_verification(const Field& f, std::uint64_t seed) {
    if (f.q() > 16) throw FieldTooLarge("exhaustive verification capped at q = 16");
    const std::uint32_t q = f.q();
    const Field::Elem u = f.generator();
    AffineGroup grp(f);
    std::vector<CheckResult> out;
    auto record = [&](const std::string& name, bool pass, const std::string& detail = "") {
        out.push_back({name, pass, detail});
    };

    // Field construction invariants.
    {
        bool ok = true;
        std::string detail;
        try {
            f.validate();
            for (std::uint32_t x = 0; x < q && ok; ++x) {
                for (std::uint32_t y = 0; y < q; ++y) {
                    if (f.trace(f.add(x, y)) != (f.trace(x) + f.trace(y)) % f.p()) ok = false;
                    if (x && y &&
                        (f.dlog(x) + f.dlog(y)) % (q - 1) != f.dlog(f.mul(x, y))) ok = false;
                }
                if (f.trace(f.pow(x, f.p())) != f.trace(x)) ok = false;
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        record("field invariants (modulus, generator, dlog, trace)", ok, detail);
    }

    // Lemma 1: on C_b with b != 0, equal second coordinates force equal firsts.
    {
        bool ok = true;
        for (std::uint32_t b = 1; b < q && ok; ++b) {
            auto sub = grp.cyclic_subgroup(b);
            for (std::size_t i = 0; i < sub.size() && ok; ++i) {
                for (std::size_t j = i + 1; j < sub.size(); ++j) {
                    if (sub[i].b == sub[j].b) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        record("lemma 1 (coset second coordinates injective)", ok);
    }

    // Lemma 2: collapse weight, fixed vector, eigenvectors, uniqueness.
    {
        bool ok = true;
        const Field::Elem one_minus_u_inv = f.inv(f.sub(f.one(), u));
        for (std::uint32_t b = 0; b < q && ok; ++b) {
            Field::Elem v = f.mul(b, one_minus_u_inv);
            Eigen::MatrixXcd pmat = permutation_matrix(grp.rep_pi({u, b}));
            Eigen::VectorXcd psi = spectra::wavelet_psi(f, v);
            if (std::abs(std::norm(psi(v)) - double(q - 1) / q) > kTol) ok = false;
            if ((pmat * psi - psi).cwiseAbs().maxCoeff() > kTol) ok = false;
            for (std::uint32_t k = 1; k < q - 1; ++k) {
                Eigen::VectorXcd phi = spectra::wavelet_phi(f, k, v);
                if ((pmat * phi - spectra::zeta_pow(f, k) * phi).cwiseAbs().maxCoeff() > kTol) {
                    ok = false;
                }
            }
            // +1-eigenspace of pi((u,b)) on L2(F) is 2-dim (constants + psi),
            // so on L0^2 it is exactly the span of psi.
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(pmat - Eigen::MatrixXcd::Identity(q, q));
            lu.setThreshold(1e-9);
            if (static_cast<std::uint32_t>(lu.rank()) != q - 2) ok = false;
        }
        record("lemma 2 (psi fixed vector, (q-1)/q collapse, uniqueness)", ok);
    }

    // Lemma 3: maximal non-normal cyclic subgroups are exactly the C_b.
    if (q <= 9) {
        auto found = grp.maximal_nonnormal_cyclic();
        bool ok = found.size() == q;
        for (const auto& h : found) {
            if (h.size() != static_cast<std::size_t>(q - 1)) ok = false;
        }
        std::size_t matched = 0;
        for (std::uint32_t b = 0; b < q; ++b) {
            auto cb = grp.cyclic_subgroup(b);
            std::vector<std::size_t> want;
            for (auto& e : cb) want.push_back(grp.index_of(e));
            std::sort(want.begin(), want.end());
            for (const auto& h : found) {
                std::vector<std::size_t> got;
                for (auto& e : h) got.push_back(grp.index_of(e));
                std::sort(got.begin(), got.end());
                if (got == want) {
                    ++matched;
                    break;
                }
            }
        }
        record("lemma 3 (enumeration equals {C_b})", ok && matched == q);
    } else {
        record("lemma 3 (enumeration equals {C_b})", true, "skipped: q > 9");
    }

    // Lemma 5 and its j = 0 counterexample.
    {
        bool ok = true;
        for (std::uint32_t j = 1; j < q - 1 && ok; ++j) {
            for (std::uint32_t zi = 0; zi < q - 1 && ok; ++zi) {
                for (std::uint32_t ti = 0; ti < q - 1; ++ti) {
                    Field::Elem z = f.exp_u(zi), t = f.exp_u(ti);
                    // With G = (1/sqrt q) sum chi_j(y) eta(ty) the product is
                    // chi_j(t/z), i.e. the conjugate of chi_j(z/t).
                    auto lhs = spectra::gauss_sum(f, j, z) * std::conj(spectra::gauss_sum(f, j, t));
                    auto rhs = spectra::mult_character(f, j, f.mul(t, f.inv(z)));
                    if (std::abs(lhs - rhs) > kTol) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        auto j0 = spectra::gauss_sum(f, 0, 1) * std::conj(spectra::gauss_sum(f, 0, 1));
        if (std::abs(j0 - spectra::Complex(1.0 / q)) > kTol) ok = false;
        record("lemma 5 (Gauss-sum product identity; j = 0 fails as expected)", ok);
    }

    // Theorem 4: engine output equals the closed form for every b and coset.
    {
        bool ok = true;
        Pipeline pipe(f, grp);
        for (std::uint32_t b = 0; b < q && ok; ++b) {
            for (std::uint32_t x = 0; x < q; ++x) {
                StateVector s = coset_state_for(f, grp, b, x);
                pipe.mult_fourier_stage(s);
                if ((s.amplitudes() - theorem4_expected(f, b, x)).cwiseAbs().maxCoeff() > kTol) {
                    ok = false;
                    break;
                }
            }
        }
        record("theorem 4 (F_M x I closed form, both cases)", ok);
    }

    // Recovery chain: F_A, T_k, F_A^{-1} turns phi_{-k,v} into psi_v.
    {
        bool ok = true;
        Pipeline pipe(f, grp);
        for (std::uint32_t k = 1; k < q - 1 && ok; ++k) {
            for (std::uint32_t v = 0; v < q; ++v) {
                StateVector s = StateVector::from_amplitudes(
                    {{"F", q}}, spectra::wavelet_phi(f, -(long long)k, v));
                StateVector r = pipe.recover_pre_measurement(k, std::move(s));
                StateVector psi =
                    StateVector::from_amplitudes({{"F", q}}, spectra::wavelet_psi(f, v));
                if (!r.equal_up_to_phase(psi, kTol)) {
                    ok = false;
                    break;
                }
            }
        }
        record("recovery chain (F_A, T_k, F_A^-1 yields psi_v)", ok);
    }

    // Pipeline exact success probability.
    {
        Pipeline pipe(f, grp);
        bool ok = true;
        std::ostringstream detail;
        const double paper = double(q - 1) * (q - 1) / (double(q) * q);
        const double full = double(q) * q - 2.0 * q + 2.0;
        for (std::uint32_t b = 0; b < q && ok; ++b) {
            HiddenOracle oracle = HiddenOracle::make(grp, b, seed + b);
            double exact = pipe.exact_success_probability(oracle);
            if (exact < paper - kTol) ok = false;
            if (std::abs(exact - full / (double(q) * q)) > kTol) ok = false;
            if (b == 0) detail << "exact=" << exact << " paper bound=" << paper;
        }
        record("pipeline exact success >= ((q-1)/q)^2, all hidden b", ok, detail.str());
    }

    // Phase subroutine vs the diagonal oracle (small fields only).
    if (q <= 8) {
        bool ok = true;
        const double want_inv = static_cast<double>(nt::totient(nt::factorize(q - 1))) / (q - 1);
        for (std::uint32_t k = 0; k < q - 1 && ok; ++k) {
            Eigen::MatrixXcd tk = spectra::t_k_diagonal(f, k);
            for (std::uint32_t x = 1; x < q && ok; ++x) {
                StateVector input = StateVector::basis_state({{"F", q}}, {x});
                double p_inv = 0.0;
                for (const auto& br : dlog::t_k_branches(f, k, input)) {
                    if (!br.invertible) continue;
                    p_inv += br.probability;
                    Eigen::VectorXcd want = tk * input.amplitudes();
                    StateVector expect = StateVector::from_amplitudes({{"F", q}}, want);
                    if (!br.state.equal_up_to_phase(expect, kTol)) ok = false;
                }
                if (std::abs(p_inv - want_inv) > kTol) ok = false;
            }
        }
        record("phase subroutine matches T_k; invertible-m probability phi(q-1)/(q-1)", ok);
    } else {
        record("phase subroutine matches T_k; invertible-m probability phi(q-1)/(q-1)", true,
               "skipped: q > 8");
    }

    return out;
}

}  // namespace affinehsp
