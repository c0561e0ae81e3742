#pragma once

#include <cstdint>
#include <vector>

#include "affinehsp/finite_field.hpp"
#include "affinehsp/statevector.hpp"

namespace affinehsp::dlog {

/// What one phase-subroutine call measured and did.
struct PhaseSubroutineTrace {
    std::size_t m = 0;        // measured value in Z/(q-1)
    std::size_t z = 0;        // measured exponent of the fourth register (u^z)
    std::uint64_t gcd = 0;    // gcd(m, q-1)
    bool invertible = false;
    std::size_t m_inverse = 0;  // valid when invertible
    int mult_qft = 0;           // multiplicative QFT applications in this call
};

/// m^{-1} mod modulus via extended Euclid; throws NotInvertible.
std::uint64_t mod_inverse(std::uint64_t m, std::uint64_t modulus);

/// V|r,x,s,z> = |r,x,s,z + x^r u^s>. Expects four factors
/// (Z/(q-1), F^x, Z/(q-1), F); the F^x factor is labeled by the exponent j
/// of x = u^j.
void apply_v(const Field& f, StateVector& state);

/// Initial four-register state (1/(q-1)) sum_{r,s} sum_x a_x |r,x,s,0> built
/// from a single-factor input over L2(F) supported on F^x.
StateVector four_register_state(const Field& f, const StateVector& input_over_f);

struct SubroutineResult {
    bool ok;
    StateVector state;  // T_k * input on success; post-measurement residue on failure
    PhaseSubroutineTrace trace;
};

/// The discrete-log implementation of T_k, sampling the measurements of the
/// third and fourth registers from rng. Fails (ok = false) when the measured
/// m is not invertible mod q-1; the caller restarts the whole trial.
SubroutineResult t_k_subroutine(const Field& f, long long k, const StateVector& input_over_f,
                                Rng& rng);

struct SubroutineBranch {
    std::size_t z;
    std::size_t m;
    double probability;
    bool invertible;
    StateVector state;  // only meaningful when invertible
};

/// Exact branch enumeration over the (z, m) measurement outcomes.
std::vector<SubroutineBranch> t_k_branches(const Field& f, long long k,
                                           const StateVector& input_over_f);

}  // namespace affinehsp::dlog
