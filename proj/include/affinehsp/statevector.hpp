#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affinehsp/errors.hpp"
#include "affinehsp/rng.hpp"

namespace affinehsp {

struct BasisFactor {
    std::string name;
    std::size_t size;
};

struct MeasurementRecord {
    std::size_t factor;
    std::size_t label;
    double probability;
};

/// Maximum amplitude count; overridable via the AFFINE_HSP_MAX_DIM env var.
std::size_t max_state_dimension();

struct StateBranch;

/// Dense complex state over a labeled tensor product of finite basis sets.
/// Amplitudes are row-major in factor order. Measurement is
/// measure-and-discard: the measured factor is removed.
class StateVector {
public:
    static StateVector basis_state(std::vector<BasisFactor> factors,
                                   const std::vector<std::size_t>& labels);

    /// Per-factor mode: a pinned label or (nullopt) the uniform superposition.
    static StateVector prepare(std::vector<BasisFactor> factors,
                               const std::vector<std::optional<std::size_t>>& pinned);

    static StateVector from_amplitudes(std::vector<BasisFactor> factors, Eigen::VectorXcd amps);

    static StateVector tensor(const StateVector& a, const StateVector& b);

    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
    std::size_t num_factors() const { return factors_.size(); }
    const BasisFactor& factor(std::size_t i) const { return factors_[i]; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    void apply_unitary(std::size_t f, const Eigen::MatrixXcd& u);
    void apply_permutation(std::size_t f, const std::vector<std::size_t>& perm);

    /// Classical reversible update of one factor; the map may read every
    /// factor's label. Must be injective; checked.
    void apply_classical_map(std::size_t target,
                             const std::function<std::size_t(const std::vector<std::size_t>&)>& fn);

    /// Diagonal unitary given as a unit-modulus phase per basis label tuple.
    void apply_phase(const std::function<std::complex<double>(const std::vector<std::size_t>&)>& fn);

    MeasurementRecord measure(std::size_t f, Rng& rng);

    /// All outcomes of measuring factor f with probability > 0.
    std::vector<StateBranch> branches(std::size_t f) const;

    std::vector<double> marginal(std::size_t f) const;

    double norm() const { return amps_.norm(); }
    std::complex<double> inner(const StateVector& other) const;
    bool equal_up_to_phase(const StateVector& other, double tol = 1e-9) const;

private:
    StateVector() = default;
    void init_strides();
    void check_norm() const;
    StateVector collapsed(std::size_t f, std::size_t label, double prob) const;
    void decode(std::size_t idx, std::vector<std::size_t>& labels) const;

    std::vector<BasisFactor> factors_;
    std::vector<std::size_t> strides_;
    Eigen::VectorXcd amps_;
};

struct StateBranch {
    std::size_t label;
    double probability;
    StateVector state;
};

}  // namespace affinehsp
