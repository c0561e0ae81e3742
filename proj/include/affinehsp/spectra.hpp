#pragma once

#include <complex>

#include <Eigen/Dense>

#include "affinehsp/finite_field.hpp"

namespace affinehsp::spectra {

using Complex = std::complex<double>;

/// zeta^e with zeta = exp(2*pi*i/(q-1)); the exponent is reduced exactly
/// before touching floating point.
Complex zeta_pow(const Field& f, long long e);

/// chi_j(x) = zeta^(j * L(x)). Throws LogOfZero on x = 0.
Complex mult_character(const Field& f, long long j, Field::Elem x);

/// eta(x) = exp(2*pi*i * Tr(twist * x) / p). twist = 1 is the canonical trace
/// character; any twist != 0 gives another nontrivial character, used to
/// check that nothing downstream depends on the choice.
Complex add_character(const Field& f, Field::Elem x, Field::Elem twist = 1);

/// F_M on L2(F^x), basis |u^0>,...,|u^{q-2}>; entry (k, j) = zeta^{kj}/sqrt(q-1).
Eigen::MatrixXcd mult_qft(const Field& f);

/// F_A on L2(F), basis by element index; entry (t, z) = eta(t*z)/sqrt(q).
Eigen::MatrixXcd add_qft(const Field& f, Field::Elem twist = 1);

/// G(u^j, t) = (1/sqrt(q)) * sum_{y != 0} chi_j(y) eta(t*y).
Complex gauss_sum(const Field& f, long long j, Field::Elem t, Field::Elem twist = 1);

/// phi_{k,v}: zeta^{-kj}/sqrt(q-1) at x = u^j + v, zero at x = v.
Eigen::VectorXcd wavelet_phi(const Field& f, long long k, Field::Elem v);

/// psi_v: 1/sqrt(q(q-1)) at x != v, -sqrt((q-1)/q) at x = v.
Eigen::VectorXcd wavelet_psi(const Field& f, Field::Elem v);

/// Diagonal on L2(F): 1 at index 0, zeta^{-k*L(t)} at t != 0.
Eigen::MatrixXcd t_k_diagonal(const Field& f, long long k);

}  // namespace affinehsp::spectra
