#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "affinehsp/affine_group.hpp"
#include "affinehsp/dlog_phase.hpp"
#include "affinehsp/finite_field.hpp"
#include "affinehsp/statevector.hpp"

namespace affinehsp {

enum class TkMode { Diagonal, DlogSubroutine };

/// QFT / oracle accounting for one pipeline attempt. Preparing the uniform
/// F^x register counts as one multiplicative QFT (it is F_M|1>); basis
/// ancillas are free.
struct StageCounts {
    int mult_qft = 0;
    int add_qft = 0;
    int oracle_calls = 0;
};

struct TrialReport {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    Field::Elem hidden_b = 0;
    TkMode mode = TkMode::Diagonal;

    std::size_t coset_label = 0;      // measured oracle value
    AffineElement coset_witness{};    // canonical representative of that coset
    std::size_t measured_k = 0;
    Field::Elem candidate_v = 0;
    Field::Elem recovered_b = 0;      // (1-u) * v
    bool success = false;
    int attempts = 0;                 // 1 + retries
    int retries = 0;

    double coset_probability = 0.0;   // branch probabilities of the sampled path
    double k_probability = 0.0;
    double v_probability = 0.0;

    StageCounts counts;               // accumulated over all attempts
    StageCounts last_attempt_counts;
    std::vector<dlog::PhaseSubroutineTrace> subroutine_traces;
};

/// The full algorithm: prepare, oracle, collapse, F_M, phase correction,
/// F_A^{-1}, final measurement, classical candidate verification.
class Pipeline {
public:
    Pipeline(const Field& f, const AffineGroup& g, Field::Elem eta_twist = 1)
        : f_(&f), g_(&g), eta_twist_(eta_twist) {}

    /// (1/sqrt(q(q-1))) sum_g |g> (x) |f(g)> over factors (F^x, F, Z/q).
    StateVector initial_state(const HiddenOracle& oracle, StageCounts* counts = nullptr) const;

    /// Measures the ancilla of initial_state; returns the coset state over
    /// (F^x, F) and reports the measured label.
    StateVector coset_state(const HiddenOracle& oracle, Rng& rng, StageCounts* counts = nullptr,
                            MeasurementRecord* ancilla = nullptr) const;

    /// F_M (x) I on a coset state.
    void mult_fourier_stage(StateVector& state, StageCounts* counts = nullptr) const;

    /// F_A, T_k, F_A^{-1} with the diagonal phase oracle; input is the
    /// single-factor residue after measuring k != 0.
    StateVector recover_pre_measurement(long long k, StateVector state_over_f,
                                        StageCounts* counts = nullptr) const;

    struct DlogRecovery {
        bool ok;
        StateVector state;
        dlog::PhaseSubroutineTrace trace;
    };
    /// Same stage, with T_k realized by the discrete-log subroutine.
    DlogRecovery recover_pre_measurement_dlog(long long k, StateVector state_over_f, Rng& rng,
                                              StageCounts* counts = nullptr) const;

    /// Classical check: (u, candidate_b) must stabilize the oracle value on
    /// min(q, 32) sampled group elements. Sound and complete for these
    /// subgroups (see tests).
    bool verify_candidate(const HiddenOracle& oracle, Field::Elem candidate_b, Rng& rng) const;

    /// One trial, retried on any failure (non-invertible m or failed
    /// verification) up to max_attempts.
    TrialReport run_trial(const HiddenOracle& oracle, std::uint64_t master_seed,
                          std::uint64_t trial_index, TkMode mode, int max_attempts = 1) const;

    /// Exact success probability over the complete measurement tree
    /// (diagonal T_k, single attempt). Requires q <= 16.
    double exact_success_probability(const HiddenOracle& oracle) const;

    Field::Elem recovered_b_from(Field::Elem v) const {
        return f_->mul(f_->sub(f_->one(), f_->generator()), v);
    }

private:
    const Field* f_;
    const AffineGroup* g_;
    Field::Elem eta_twist_;
};

}  // namespace affinehsp
