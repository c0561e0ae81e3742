#include "affinehsp/statevector.hpp"

#include <cmath>
#include <cstdlib>

namespace affinehsp {

namespace {
constexpr double kNormTol = 1e-7;
constexpr double kBranchFloor = 1e-12;
}  // namespace

std::size_t max_state_dimension() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("AFFINE_HSP_MAX_DIM")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1) << 24;
    }();
    return cap;
}

void StateVector::init_strides() {
    std::size_t dim = 1;
    for (const auto& f : factors_) {
        if (f.size == 0) throw DimensionMismatch("factor of size zero");
        dim *= f.size;
        if (dim > max_state_dimension()) {
            throw DimensionMismatch("state dimension exceeds the amplitude cap");
        }
    }
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * factors_[i].size;
    }
}

void StateVector::check_norm() const {
    if (std::abs(amps_.norm() - 1.0) > kNormTol) {
        throw std::logic_error("state norm drifted away from 1");
    }
}

void StateVector::decode(std::size_t idx, std::vector<std::size_t>& labels) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        labels[i] = idx / strides_[i] % factors_[i].size;
    }
}

StateVector StateVector::basis_state(std::vector<BasisFactor> factors,
                                     const std::vector<std::size_t>& labels) {
    if (labels.size() != factors.size()) throw DimensionMismatch("one label per factor required");
    StateVector s;
    s.factors_ = std::move(factors);
    s.init_strides();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.factors_.size(); ++i) {
        if (labels[i] >= s.factors_[i].size) {
            throw UnknownLabel("label out of range for factor " + s.factors_[i].name);
        }
        idx += labels[i] * s.strides_[i];
    }
    s.amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.strides_[0] * s.factors_[0].size));
    s.amps_(static_cast<Eigen::Index>(idx)) = 1.0;
    return s;
}

StateVector StateVector::prepare(std::vector<BasisFactor> factors,
                                 const std::vector<std::optional<std::size_t>>& pinned) {
    if (pinned.size() != factors.size()) throw DimensionMismatch("one mode per factor required");
    StateVector s;
    s.factors_ = std::move(factors);
    s.init_strides();
    std::size_t dim = s.strides_[0] * s.factors_[0].size;
    s.amps_.resize(static_cast<Eigen::Index>(dim));
    double norm = 1.0;
    for (std::size_t i = 0; i < s.factors_.size(); ++i) {
        if (pinned[i]) {
            if (*pinned[i] >= s.factors_[i].size) {
                throw UnknownLabel("label out of range for factor " + s.factors_[i].name);
            }
        } else {
            norm *= static_cast<double>(s.factors_[i].size);
        }
    }
    norm = 1.0 / std::sqrt(norm);
    std::vector<std::size_t> labels(s.factors_.size());
    for (std::size_t idx = 0; idx < dim; ++idx) {
        s.decode(idx, labels);
        bool hit = true;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (pinned[i] && labels[i] != *pinned[i]) {
                hit = false;
                break;
            }
        }
        s.amps_(static_cast<Eigen::Index>(idx)) = hit ? norm : 0.0;
    }
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<BasisFactor> factors, Eigen::VectorXcd amps) {
    StateVector s;
    s.factors_ = std::move(factors);
    s.init_strides();
    if (static_cast<std::size_t>(amps.size()) != s.strides_[0] * s.factors_[0].size) {
        throw DimensionMismatch("amplitude count does not match factor sizes");
    }
    s.amps_ = std::move(amps);
    s.check_norm();
    return s;
}

StateVector StateVector::tensor(const StateVector& a, const StateVector& b) {
    StateVector s;
    s.factors_ = a.factors_;
    s.factors_.insert(s.factors_.end(), b.factors_.begin(), b.factors_.end());
    s.init_strides();
    s.amps_.resize(a.amps_.size() * b.amps_.size());
    for (Eigen::Index i = 0; i < a.amps_.size(); ++i) {
        s.amps_.segment(i * b.amps_.size(), b.amps_.size()) = a.amps_(i) * b.amps_;
    }
    return s;
}

void StateVector::apply_unitary(std::size_t f, const Eigen::MatrixXcd& u) {
    if (f >= factors_.size()) throw DimensionMismatch("factor index out of range");
    const Eigen::Index s = static_cast<Eigen::Index>(factors_[f].size);
    if (u.rows() != s || u.cols() != s) {
        throw DimensionMismatch("unitary dimension does not match factor size");
    }
    double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(s, s)).cwiseAbs().maxCoeff();
    if (dev > 1e-6) throw NonUnitary("operator deviates from unitarity by " + std::to_string(dev));

    const std::size_t stride = strides_[f];
    const std::size_t block = stride * factors_[f].size;
    Eigen::VectorXcd x(s), y(s);
    for (std::size_t base = 0; base < dimension(); base += block) {
        for (std::size_t in = 0; in < stride; ++in) {
            for (Eigen::Index j = 0; j < s; ++j) {
                x(j) = amps_(static_cast<Eigen::Index>(base + in + static_cast<std::size_t>(j) * stride));
            }
            y.noalias() = u * x;
            for (Eigen::Index j = 0; j < s; ++j) {
                amps_(static_cast<Eigen::Index>(base + in + static_cast<std::size_t>(j) * stride)) = y(j);
            }
        }
    }
    check_norm();
}

void StateVector::apply_permutation(std::size_t f, const std::vector<std::size_t>& perm) {
    if (f >= factors_.size()) throw DimensionMismatch("factor index out of range");
    const std::size_t s = factors_[f].size;
    if (perm.size() != s) throw DimensionMismatch("permutation size does not match factor size");
    std::vector<bool> seen(s, false);
    for (std::size_t v : perm) {
        if (v >= s || seen[v]) throw NonUnitary("not a permutation of the factor basis");
        seen[v] = true;
    }
    const std::size_t stride = strides_[f];
    const std::size_t block = stride * s;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps_.size());
    for (std::size_t base = 0; base < dimension(); base += block) {
        for (std::size_t j = 0; j < s; ++j) {
            for (std::size_t in = 0; in < stride; ++in) {
                out(static_cast<Eigen::Index>(base + in + perm[j] * stride)) =
                    amps_(static_cast<Eigen::Index>(base + in + j * stride));
            }
        }
    }
    amps_ = std::move(out);
}

void StateVector::apply_classical_map(
    std::size_t target, const std::function<std::size_t(const std::vector<std::size_t>&)>& fn) {
    if (target >= factors_.size()) throw DimensionMismatch("factor index out of range");
    const std::size_t stride = strides_[target];
    const std::size_t size = factors_[target].size;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps_.size());
    std::vector<bool> hit(dimension(), false);
    std::vector<std::size_t> labels(factors_.size());
    for (std::size_t idx = 0; idx < dimension(); ++idx) {
        decode(idx, labels);
        std::size_t t2 = fn(labels);
        if (t2 >= size) throw UnknownLabel("classical map produced an out-of-range label");
        std::size_t idx2 = idx + (t2 - labels[target]) * stride;
        if (hit[idx2]) throw NonUnitary("classical map is not reversible");
        hit[idx2] = true;
        out(static_cast<Eigen::Index>(idx2)) = amps_(static_cast<Eigen::Index>(idx));
    }
    amps_ = std::move(out);
}

void StateVector::apply_phase(
    const std::function<std::complex<double>(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> labels(factors_.size());
    for (std::size_t idx = 0; idx < dimension(); ++idx) {
        decode(idx, labels);
        std::complex<double> ph = fn(labels);
        if (std::abs(std::abs(ph) - 1.0) > 1e-9) {
            throw NonUnitary("phase factor is not unit modulus");
        }
        amps_(static_cast<Eigen::Index>(idx)) *= ph;
    }
}

std::vector<double> StateVector::marginal(std::size_t f) const {
    if (f >= factors_.size()) throw DimensionMismatch("factor index out of range");
    std::vector<double> probs(factors_[f].size, 0.0);
    const std::size_t stride = strides_[f];
    for (std::size_t idx = 0; idx < dimension(); ++idx) {
        probs[idx / stride % factors_[f].size] += std::norm(amps_(static_cast<Eigen::Index>(idx)));
    }
    return probs;
}

StateVector StateVector::collapsed(std::size_t f, std::size_t label, double prob) const {
    StateVector out;
    out.factors_ = factors_;
    out.factors_.erase(out.factors_.begin() + static_cast<std::ptrdiff_t>(f));
    if (out.factors_.empty()) out.factors_.push_back({"scalar", 1});
    out.init_strides();
    out.amps_.resize(static_cast<Eigen::Index>(dimension() / factors_[f].size));
    const std::size_t stride = strides_[f];
    const double scale = 1.0 / std::sqrt(prob);
    std::size_t w = 0;
    for (std::size_t idx = 0; idx < dimension(); ++idx) {
        if (idx / stride % factors_[f].size == label) {
            out.amps_(static_cast<Eigen::Index>(w++)) = amps_(static_cast<Eigen::Index>(idx)) * scale;
        }
    }
    return out;
}

MeasurementRecord StateVector::measure(std::size_t f, Rng& rng) {
    auto probs = marginal(f);
    double r = rng.next_double();
    std::size_t label = probs.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (r < acc) {
            label = i;
            break;
        }
    }
    // guard against sampling a zero-probability tail from rounding
    while (probs[label] <= 0.0) --label;
    MeasurementRecord rec{f, label, probs[label]};
    *this = collapsed(f, label, probs[label]);
    check_norm();
    return rec;
}

std::vector<StateBranch> StateVector::branches(std::size_t f) const {
    auto probs = marginal(f);
    std::vector<StateBranch> out;
    for (std::size_t label = 0; label < probs.size(); ++label) {
        if (probs[label] > kBranchFloor) {
            out.push_back({label, probs[label], collapsed(f, label, probs[label])});
        }
    }
    return out;
}

std::complex<double> StateVector::inner(const StateVector& other) const {
    if (factors_.size() != other.factors_.size() || dimension() != other.dimension()) {
        throw DimensionMismatch("factor structure differs");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].size != other.factors_[i].size) {
            throw DimensionMismatch("factor structure differs");
        }
    }
    return amps_.dot(other.amps_);
}

bool StateVector::equal_up_to_phase(const StateVector& other, double tol) const {
    return std::abs(inner(other)) >= 1.0 - tol;
}

}  // namespace affinehsp
