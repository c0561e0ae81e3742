#include "affinehsp/dlog_phase.hpp"

#include <cmath>
#include <numeric>

#include "affinehsp/errors.hpp"
#include "affinehsp/spectra.hpp"

namespace affinehsp::dlog {

std::uint64_t mod_inverse(std::uint64_t m, std::uint64_t modulus) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(modulus), new_r = static_cast<std::int64_t>(m % modulus);
    while (new_r != 0) {
        std::int64_t qt = r / new_r;
        t = std::exchange(new_t, t - qt * new_t);
        r = std::exchange(new_r, r - qt * new_r);
    }
    if (r != 1) throw NotInvertible(m, modulus);
    if (t < 0) t += static_cast<std::int64_t>(modulus);
    return static_cast<std::uint64_t>(t);
}

void apply_v(const Field& f, StateVector& state) {
    const std::size_t m = f.q() - 1;
    if (state.num_factors() != 4 || state.factor(0).size != m || state.factor(1).size != m ||
        state.factor(2).size != m || state.factor(3).size != f.q()) {
        throw DimensionMismatch("V expects registers (Z/(q-1), F^x, Z/(q-1), F)");
    }
    state.apply_classical_map(3, [&](const std::vector<std::size_t>& l) -> std::size_t {
        // x^r u^s with x = u^j: exponent j*r + s mod q-1
        std::uint64_t e = (static_cast<std::uint64_t>(l[1]) * l[0] + l[2]) % m;
        return f.add(static_cast<Field::Elem>(l[3]), f.exp_u(e));
    });
}

namespace {

// Single-factor state over L2(F) supported on F^x -> amplitudes indexed by
// the exponent j of u^j.
Eigen::VectorXcd to_fx_amplitudes(const Field& f, const StateVector& input) {
    if (input.num_factors() != 1 || input.factor(0).size != f.q()) {
        throw DimensionMismatch("input must be a single factor over L2(F)");
    }
    if (std::abs(input.amplitudes()(0)) > 1e-9) {
        throw DimensionMismatch("input state has weight on |0>; not supported on F^x");
    }
    Eigen::VectorXcd v(f.q() - 1);
    for (std::uint32_t j = 0; j + 1 < f.q(); ++j) {
        v(j) = input.amplitudes()(static_cast<Eigen::Index>(f.exp_u(j)));
    }
    return v / v.norm();
}

StateVector from_fx_amplitudes(const Field& f, const StateVector& fx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(f.q());
    for (std::uint32_t j = 0; j + 1 < f.q(); ++j) {
        v(static_cast<Eigen::Index>(f.exp_u(j))) = fx.amplitudes()(j);
    }
    return StateVector::from_amplitudes({{"F", f.q()}}, std::move(v));
}

// Deterministic tail after an invertible m: relabel by m^{-1}, apply the
// U_k phase, apply T, discard the disentangled |1>.
StateVector finish_invertible(const Field& f, long long k, StateVector state, std::size_t m_inv) {
    const std::size_t n = f.q() - 1;
    std::vector<std::size_t> relabel(n);
    for (std::size_t j = 0; j < n; ++j) relabel[j] = j * m_inv % n;
    state.apply_permutation(0, relabel);

    state.apply_phase([&](const std::vector<std::size_t>& l) {
        return spectra::zeta_pow(f, -k * static_cast<long long>(l[0]));
    });

    // T|j, x> = |u^j, u^{-j} x>: subtract j from the exponent register of x.
    state.apply_classical_map(1, [&](const std::vector<std::size_t>& l) {
        return (l[1] + n - l[0] % n) % n;
    });

    // The second register is now |u^0> = |1> on the whole support.
    auto bs = state.branches(1);
    if (bs.size() != 1 || bs[0].label != 0) {
        throw std::logic_error("T did not disentangle the |1> register");
    }
    return from_fx_amplitudes(f, bs[0].state);
}

}  // namespace

StateVector four_register_state(const Field& f, const StateVector& input_over_f) {
    const std::size_t m = f.q() - 1;
    StateVector fx = StateVector::from_amplitudes({{"F^x", m}}, to_fx_amplitudes(f, input_over_f));
    StateVector regs02 = StateVector::prepare({{"Z/(q-1)", m}}, {std::nullopt});
    StateVector anc = StateVector::basis_state({{"F", f.q()}}, {0});
    StateVector state = StateVector::tensor(StateVector::tensor(regs02, fx),
                                            StateVector::tensor(regs02, anc));
    apply_v(f, state);
    return state;
}

SubroutineResult t_k_subroutine(const Field& f, long long k, const StateVector& input_over_f,
                                Rng& rng) {
    const std::size_t n = f.q() - 1;
    StateVector state = four_register_state(f, input_over_f);
    Eigen::MatrixXcd fm = spectra::mult_qft(f);
    state.apply_unitary(0, fm);
    state.apply_unitary(2, fm);

    PhaseSubroutineTrace trace;
    trace.mult_qft = 2;

    auto zrec = state.measure(3, rng);
    trace.z = f.dlog(static_cast<Field::Elem>(zrec.label));
    auto mrec = state.measure(2, rng);
    trace.m = mrec.label;
    trace.gcd = std::gcd(static_cast<std::uint64_t>(trace.m), static_cast<std::uint64_t>(n));
    trace.invertible = (trace.gcd == 1);
    if (!trace.invertible) {
        return {false, std::move(state), trace};
    }
    trace.m_inverse = static_cast<std::size_t>(mod_inverse(trace.m, n));
    return {true, finish_invertible(f, k, std::move(state), trace.m_inverse), trace};
}

std::vector<SubroutineBranch> t_k_branches(const Field& f, long long k,
                                           const StateVector& input_over_f) {
    const std::size_t n = f.q() - 1;
    StateVector state = four_register_state(f, input_over_f);
    Eigen::MatrixXcd fm = spectra::mult_qft(f);
    state.apply_unitary(0, fm);
    state.apply_unitary(2, fm);

    std::vector<SubroutineBranch> out;
    for (const auto& zb : state.branches(3)) {
        for (const auto& mb : zb.state.branches(2)) {
            bool invertible = std::gcd(static_cast<std::uint64_t>(mb.label),
                                       static_cast<std::uint64_t>(n)) == 1;
            StateVector result =
                invertible
                    ? finish_invertible(f, k, mb.state,
                                        static_cast<std::size_t>(mod_inverse(mb.label, n)))
                    : mb.state;
            out.push_back({f.dlog(static_cast<Field::Elem>(zb.label)), mb.label,
                           zb.probability * mb.probability, invertible, std::move(result)});
        }
    }
    return out;
}

}  // namespace affinehsp::dlog
