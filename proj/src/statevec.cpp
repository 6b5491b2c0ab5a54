#include "telsim/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace telsim {

namespace {

// construction-time guard; looser than kExactTol so that states assembled
// from user-supplied decimals are accepted, while garbage is rejected
constexpr double kCtorNormTol = 1e-9;

void check_norm(double squared_norm) {
    if (std::abs(squared_norm - 1.0) > kCtorNormTol) {
        throw std::invalid_argument(
            "StateVector: amplitudes are not normalized");
    }
}

std::size_t bit_position(std::size_t num_qubits, QubitLabel q) {
    if (q.index >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    return num_qubits - 1 - q.index;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<cdouble> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
        throw std::invalid_argument(
            "StateVector: amplitude count must be 2^num_qubits");
    }
    check_norm(squared_norm());
}

StateVector StateVector::basis_state(std::size_t num_qubits, std::size_t index) {
    std::vector<cdouble> amps(std::size_t{1} << num_qubits, cdouble{0.0, 0.0});
    amps.at(index) = cdouble{1.0, 0.0};
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::qubit(cdouble a, cdouble b) {
    return StateVector(1, {a, b});
}

StateVector StateVector::from_unnormalized(std::size_t num_qubits,
                                           std::vector<cdouble> amplitudes) {
    double nrm2 = 0.0;
    for (const auto& amp : amplitudes) nrm2 += std::norm(amp);
    if (nrm2 < 1e-300) {
        throw std::invalid_argument(
            "StateVector: cannot normalize a (numerically) zero vector");
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& amp : amplitudes) amp *= inv;
    return StateVector(num_qubits, std::move(amplitudes));
}

double StateVector::squared_norm() const {
    double nrm2 = 0.0;
    for (const auto& amp : amplitudes_) nrm2 += std::norm(amp);
    return nrm2;
}

cdouble StateVector::inner_product(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    cdouble result{0.0, 0.0};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        result += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return result;
}

SingleQubitGate::SingleQubitGate(std::array<cdouble, 4> entries)
    : entries_(entries) {
    // U^dagger U == I within kExactTol
    const auto& m = entries_;
    const cdouble g00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const cdouble g01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const cdouble g10 = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
    const cdouble g11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    const double dev = std::max({std::abs(g00 - 1.0), std::abs(g01),
                                 std::abs(g10), std::abs(g11 - 1.0)});
    if (dev > kExactTol) {
        throw std::invalid_argument("SingleQubitGate: matrix is not unitary");
    }
}

SingleQubitGate SingleQubitGate::identity() {
    return SingleQubitGate({cdouble{1, 0}, {}, {}, cdouble{1, 0}});
}

SingleQubitGate SingleQubitGate::sigma_x() {
    return SingleQubitGate({{}, cdouble{1, 0}, cdouble{1, 0}, {}});
}

SingleQubitGate SingleQubitGate::sigma_z() {
    return SingleQubitGate({cdouble{1, 0}, {}, {}, cdouble{-1, 0}});
}

SingleQubitGate SingleQubitGate::sigma_z_sigma_x() {
    return SingleQubitGate({{}, cdouble{1, 0}, cdouble{-1, 0}, {}});
}

StateVector tensor_product(const StateVector& left, const StateVector& right) {
    const std::size_t rdim = right.dim();
    std::vector<cdouble> amps(left.dim() * rdim);
    for (std::size_t i = 0; i < left.dim(); ++i) {
        for (std::size_t j = 0; j < rdim; ++j) {
            amps[i * rdim + j] = left.amplitude(i) * right.amplitude(j);
        }
    }
    return StateVector(left.num_qubits() + right.num_qubits(), std::move(amps));
}

std::vector<cdouble> apply_matrix(const StateVector& state, QubitLabel target,
                                  const std::array<cdouble, 4>& m) {
    const std::size_t stride =
        std::size_t{1} << bit_position(state.num_qubits(), target);
    std::vector<cdouble> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & stride) continue;
        const cdouble a0 = amps[i];
        const cdouble a1 = amps[i | stride];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | stride] = m[2] * a0 + m[3] * a1;
    }
    return amps;
}

StateVector apply_gate(const StateVector& state, QubitLabel target,
                       const SingleQubitGate& gate) {
    return StateVector(state.num_qubits(),
                       apply_matrix(state, target, gate.entries()));
}

double fidelity(const StateVector& state_a, const StateVector& state_b) {
    return std::norm(state_a.inner_product(state_b));
}

namespace detail {

SubsystemIndexer::SubsystemIndexer(std::size_t num_qubits,
                                   std::span<const QubitLabel> qubits) {
    const std::size_t k = qubits.size();
    if (k > num_qubits) {
        throw std::invalid_argument("subsystem larger than the full state");
    }
    std::vector<bool> taken(num_qubits, false);
    std::vector<std::size_t> sub_pos(k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t idx = qubits[j].index;
        if (idx >= num_qubits) {
            throw std::out_of_range("qubit index out of range");
        }
        if (taken[idx]) {
            throw std::invalid_argument("duplicate qubit in subsystem list");
        }
        taken[idx] = true;
        sub_pos[j] = num_qubits - 1 - idx;
    }
    std::vector<std::size_t> rem_pos;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!taken[q]) rem_pos.push_back(num_qubits - 1 - q);
    }

    sub_expand_.assign(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < sub_expand_.size(); ++s) {
        std::size_t full = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (s & (std::size_t{1} << (k - 1 - j))) {
                full |= std::size_t{1} << sub_pos[j];
            }
        }
        sub_expand_[s] = full;
    }
    rem_expand_.assign(std::size_t{1} << rem_pos.size(), 0);
    for (std::size_t r = 0; r < rem_expand_.size(); ++r) {
        std::size_t full = 0;
        for (std::size_t j = 0; j < rem_pos.size(); ++j) {
            if (r & (std::size_t{1} << (rem_pos.size() - 1 - j))) {
                full |= std::size_t{1} << rem_pos[j];
            }
        }
        rem_expand_[r] = full;
    }
}

}  // namespace detail

std::vector<cdouble> partial_inner_product(const StateVector& state,
                                           std::span<const QubitLabel> qubits,
                                           const StateVector& probe) {
    if (probe.num_qubits() != qubits.size()) {
        throw std::invalid_argument(
            "partial_inner_product: probe size does not match qubit list");
    }
    const detail::SubsystemIndexer ix(state.num_qubits(), qubits);
    std::vector<cdouble> rem(ix.rem_dim(), cdouble{0.0, 0.0});
    for (std::size_t s = 0; s < ix.sub_dim(); ++s) {
        const cdouble w = std::conj(probe.amplitude(s));
        if (w == cdouble{0.0, 0.0}) continue;
        for (std::size_t r = 0; r < ix.rem_dim(); ++r) {
            rem[r] += w * state.amplitude(ix.full_index(s, r));
        }
    }
    return rem;
}

StateVector extract_subsystem(const StateVector& state,
                              std::span<const QubitLabel> measured_qubits,
                              const StateVector& witnessed_state) {
    std::vector<cdouble> rem =
        partial_inner_product(state, measured_qubits, witnessed_state);
    double nrm2 = 0.0;
    for (const auto& amp : rem) nrm2 += std::norm(amp);
    // For a normalized state, 1 - ||<w|psi>||^2 is exactly the weight lying
    // outside the witnessed slice, i.e. the residual entanglement.
    if (1.0 - nrm2 > kFactorTol) {
        throw std::logic_error(
            "extract_subsystem: state does not factorize over the witnessed "
            "subsystem (residual entanglement)");
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& amp : rem) amp *= inv;
    return StateVector(state.num_qubits() - measured_qubits.size(),
                       std::move(rem));
}

}  // namespace telsim
