#include "affinehsp/hsp_pipeline.hpp"

#include <algorithm>

#include "affinehsp/errors.hpp"
#include "affinehsp/spectra.hpp"

namespace affinehsp {

StateVector Pipeline::initial_state(const HiddenOracle& oracle, StageCounts* counts) const {
    const std::uint32_t q = f_->q();
    StateVector state = StateVector::prepare(
        {{"F^x", q - 1}, {"F", q}, {"Z/q", q}},
        {std::nullopt, std::nullopt, std::optional<std::size_t>(0)});
    if (counts) counts->mult_qft += 1;  // the uniform F^x register is F_M|1>

    state.apply_classical_map(2, [&](const std::vector<std::size_t>& l) {
        std::size_t g_index = l[0] * q + l[1];
        return (l[2] + oracle.label(g_index)) % q;
    });
    if (counts) counts->oracle_calls += 1;
    return state;
}

StateVector Pipeline::coset_state(const HiddenOracle& oracle, Rng& rng, StageCounts* counts,
                                  MeasurementRecord* ancilla) const {
    StateVector state = initial_state(oracle, counts);
    MeasurementRecord rec = state.measure(2, rng);
    if (ancilla) *ancilla = rec;
    return state;
}

void Pipeline::mult_fourier_stage(StateVector& state, StageCounts* counts) const {
    state.apply_unitary(0, spectra::mult_qft(*f_));
    if (counts) counts->mult_qft += 1;
}

StateVector Pipeline::recover_pre_measurement(long long k, StateVector state, StageCounts* counts) const {
    if (k % static_cast<long long>(f_->q() - 1) == 0) {
        throw DimensionMismatch("phase correction requires k != 0");
    }
    Eigen::MatrixXcd fa = spectra::add_qft(*f_, eta_twist_);
    state.apply_unitary(0, fa);
    if (counts) counts->add_qft += 1;
    // After F_A the amplitude at |t> carries G(u^k,t) = zeta^{-k L(t)} * g_k,
    // so the corrective diagonal is T_{-k}: multiply by zeta^{+k L(t)}.
    state.apply_phase([&](const std::vector<std::size_t>& l) {
        return l[0] == 0 ? spectra::Complex(1.0)
                         : spectra::zeta_pow(*f_, k * static_cast<long long>(
                                                      f_->dlog(static_cast<Field::Elem>(l[0]))));
    });
    state.apply_unitary(0, fa.adjoint());
    if (counts) counts->add_qft += 1;
    return state;
}

Pipeline::DlogRecovery Pipeline::recover_pre_measurement_dlog(long long k, StateVector state,
                                                              Rng& rng, StageCounts* counts) const {
    Eigen::MatrixXcd fa = spectra::add_qft(*f_, eta_twist_);
    state.apply_unitary(0, fa);
    if (counts) counts->add_qft += 1;
    auto res = dlog::t_k_subroutine(*f_, -k, state, rng);  // T_{-k}, as above
    if (counts) counts->mult_qft += res.trace.mult_qft;
    if (!res.ok) return {false, std::move(res.state), res.trace};
    res.state.apply_unitary(0, fa.adjoint());
    if (counts) counts->add_qft += 1;
    return {true, std::move(res.state), res.trace};
}

bool Pipeline::verify_candidate(const HiddenOracle& oracle, Field::Elem candidate_b,
                                Rng& rng) const {
    const std::uint32_t q = f_->q();
    AffineElement c{f_->generator(), candidate_b};
    const std::size_t checks = std::min<std::size_t>(q, 32);
    for (std::size_t i = 0; i < checks; ++i) {
        AffineElement g{f_->exp_u(rng.next_below(q - 1)),
                        static_cast<Field::Elem>(rng.next_below(q))};
        if (oracle.label(g_->index_of(g_->mul(c, g))) != oracle.label(g_->index_of(g))) {
            return false;
        }
    }
    return true;
}

TrialReport Pipeline::run_trial(const HiddenOracle& oracle, std::uint64_t master_seed,
                                std::uint64_t trial_index, TkMode mode, int max_attempts) const {
    TrialReport rep;
    rep.master_seed = master_seed;
    rep.trial_index = trial_index;
    rep.hidden_b = oracle.hidden_b();
    rep.mode = mode;

    Rng rng = Rng::for_trial(master_seed, trial_index);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        rep.attempts = attempt;
        StageCounts counts;
        MeasurementRecord ancilla{};
        StateVector state = coset_state(oracle, rng, &counts, &ancilla);
        rep.coset_label = ancilla.label;
        rep.coset_probability = ancilla.probability;
        rep.coset_witness = oracle.representative(static_cast<std::uint32_t>(ancilla.label));

        mult_fourier_stage(state, &counts);
        MeasurementRecord krec = state.measure(0, rng);
        rep.measured_k = krec.label;
        rep.k_probability = krec.probability;

        bool stage_ok = true;
        if (krec.label != 0) {
            if (mode == TkMode::Diagonal) {
                state = recover_pre_measurement(static_cast<long long>(krec.label),
                                                std::move(state), &counts);
            } else {
                auto res = recover_pre_measurement_dlog(static_cast<long long>(krec.label),
                                                        std::move(state), rng, &counts);
                rep.subroutine_traces.push_back(res.trace);
                if (!res.ok) {
                    stage_ok = false;
                } else {
                    state = std::move(res.state);
                }
            }
        }
        // k = 0: measure the second factor anyway and use its label.

        if (stage_ok) {
            MeasurementRecord vrec = state.measure(0, rng);
            rep.candidate_v = static_cast<Field::Elem>(vrec.label);
            rep.v_probability = vrec.probability;
            rep.recovered_b = recovered_b_from(rep.candidate_v);
            rep.success = verify_candidate(oracle, rep.recovered_b, rng);
        } else {
            rep.success = false;
        }

        rep.counts.mult_qft += counts.mult_qft;
        rep.counts.add_qft += counts.add_qft;
        rep.counts.oracle_calls += counts.oracle_calls;
        rep.last_attempt_counts = counts;
        if (rep.success) break;
    }
    rep.retries = rep.attempts - 1;
    return rep;
}

double Pipeline::exact_success_probability(const HiddenOracle& oracle) const {
    if (f_->q() > 16) throw FieldTooLarge("exact enumeration capped at q = 16");
    const Field::Elem hidden = oracle.hidden_b();
    double total = 0.0;
    StateVector st0 = initial_state(oracle);
    for (const auto& cb : st0.branches(2)) {
        StateVector s = cb.state;
        mult_fourier_stage(s);
        for (const auto& kb : s.branches(0)) {
            if (kb.label != 0) {
                StateVector r = recover_pre_measurement(static_cast<long long>(kb.label), kb.state);
                for (const auto& vb : r.branches(0)) {
                    if (recovered_b_from(static_cast<Field::Elem>(vb.label)) == hidden) {
                        total += cb.probability * kb.probability * vb.probability;
                    }
                }
            } else {
                for (const auto& vb : kb.state.branches(0)) {
                    if (recovered_b_from(static_cast<Field::Elem>(vb.label)) == hidden) {
                        total += cb.probability * kb.probability * vb.probability;
                    }
                }
            }
        }
    }
    return total;
}

}  // namespace affinehsp
