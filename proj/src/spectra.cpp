#include "affinehsp/spectra.hpp"

#include <cmath>
#include <numbers>

#include "affinehsp/errors.hpp"

namespace affinehsp::spectra {

namespace {

long long mod_reduce(long long e, long long m) {
    long long r = e % m;
    return r < 0 ? r + m : r;
}

Complex root_of_unity(long long num, long long den) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) /
                               static_cast<double>(den));
}

}  // namespace

Complex zeta_pow(const Field& f, long long e) {
    const long long m = f.q() - 1;
    return root_of_unity(mod_reduce(e, m), m);
}

Complex mult_character(const Field& f, long long j, Field::Elem x) {
    return zeta_pow(f, j * static_cast<long long>(f.dlog(x)));
}

Complex add_character(const Field& f, Field::Elem x, Field::Elem twist) {
    if (twist == 0) throw DimensionMismatch("additive character twist must be nonzero");
    return root_of_unity(f.trace(f.mul(twist, x)), f.p());
}

Eigen::MatrixXcd mult_qft(const Field& f) {
    const long long m = f.q() - 1;
    Eigen::MatrixXcd out(m, m);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (long long k = 0; k < m; ++k) {
        for (long long j = 0; j < m; ++j) {
            out(k, j) = norm * zeta_pow(f, k * j);
        }
    }
    return out;
}

Eigen::MatrixXcd add_qft(const Field& f, Field::Elem twist) {
    const std::uint32_t q = f.q();
    Eigen::MatrixXcd out(q, q);
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (std::uint32_t t = 0; t < q; ++t) {
        for (std::uint32_t z = 0; z < q; ++z) {
            out(t, z) = norm * add_character(f, f.mul(t, z), twist);
        }
    }
    return out;
}

Complex gauss_sum(const Field& f, long long j, Field::Elem t, Field::Elem twist) {
    Complex sum = 0.0;
    for (std::uint32_t k = 0; k + 1 < f.q(); ++k) {
        Field::Elem y = f.exp_u(k);
        sum += mult_character(f, j, y) * add_character(f, f.mul(t, y), twist);
    }
    return sum / std::sqrt(static_cast<double>(f.q()));
}

Eigen::VectorXcd wavelet_phi(const Field& f, long long k, Field::Elem v) {
    const std::uint32_t q = f.q();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(q);
    const double norm = 1.0 / std::sqrt(static_cast<double>(q - 1));
    for (std::uint32_t j = 0; j + 1 < q; ++j) {
        out(f.add(f.exp_u(j), v)) = norm * zeta_pow(f, -k * static_cast<long long>(j));
    }
    return out;
}

Eigen::VectorXcd wavelet_psi(const Field& f, Field::Elem v) {
    const std::uint32_t q = f.q();
    const double qd = static_cast<double>(q);
    Eigen::VectorXcd out(q);
    out.setConstant(1.0 / std::sqrt(qd * (qd - 1.0)));
    out(v) = -std::sqrt((qd - 1.0) / qd);
    return out;
}

Eigen::MatrixXcd t_k_diagonal(const Field& f, long long k) {
    const std::uint32_t q = f.q();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(q, q);
    out(0, 0) = 1.0;
    for (std::uint32_t t = 1; t < q; ++t) {
        out(t, t) = zeta_pow(f, -k * static_cast<long long>(f.dlog(t)));
    }
    return out;
}

}  // namespace affinehsp::spectra
