// statevec.hpp
// Dense complex state vectors over a small number of labeled qubits,
// with tensor products, single-qubit operators, fidelity and subsystem
// extraction. Qubit 0 is the most significant bit of the amplitude index.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace telsim {

using cdouble = std::complex<double>;

// tolerance for exact-math invariants (orthonormality, completeness, norms)
inline constexpr double kExactTol = 1e-12;
// tolerance for factorizability checks after a chain of protocol steps
inline constexpr double kFactorTol = 1e-10;

// Position of a qubit inside a StateVector, 0-based from the most
// significant index bit.
struct QubitLabel {
    std::size_t index = 0;
};

class StateVector {
  public:
    // Amplitudes must already be normalized; length must be 2^num_qubits.
    StateVector(std::size_t num_qubits, std::vector<cdouble> amplitudes);

    static StateVector basis_state(std::size_t num_qubits, std::size_t index);
    static StateVector qubit(cdouble a, cdouble b);
    // Divides by the norm; throws if the norm is (numerically) zero.
    static StateVector from_unnormalized(std::size_t num_qubits,
                                         std::vector<cdouble> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    cdouble amplitude(std::size_t i) const { return amplitudes_.at(i); }

    double squared_norm() const;
    cdouble inner_product(const StateVector& other) const;  // <this|other>

  private:
    std::size_t num_qubits_;
    std::vector<cdouble> amplitudes_;
};

// 2x2 unitary acting on one qubit. Construction checks unitarity.
class SingleQubitGate {
  public:
    // row-major {m00, m01, m10, m11}
    explicit SingleQubitGate(std::array<cdouble, 4> entries);

    static SingleQubitGate identity();
    static SingleQubitGate sigma_x();
    static SingleQubitGate sigma_z();
    static SingleQubitGate sigma_z_sigma_x();  // matrix product sigma_z * sigma_x

    const std::array<cdouble, 4>& entries() const { return entries_; }

  private:
    std::array<cdouble, 4> entries_;
};

// Kronecker product; the left operand's qubits occupy the more significant
// index bits of the result.
StateVector tensor_product(const StateVector& left, const StateVector& right);

StateVector apply_gate(const StateVector& state, QubitLabel target,
                       const SingleQubitGate& gate);

// Raw linear action of an arbitrary 2x2 operator on one qubit. No unitarity
// requirement and no renormalization; used for Kraus/filter operators.
std::vector<cdouble> apply_matrix(const StateVector& state, QubitLabel target,
                                  const std::array<cdouble, 4>& m);

// |<a|b>|^2
double fidelity(const StateVector& state_a, const StateVector& state_b);

// Contracts <probe| against the listed qubits of `state`. Returns the
// (unnormalized) amplitudes on the remaining qubits, ordered by ascending
// qubit index. probe qubit j corresponds to qubits[j].
std::vector<cdouble> partial_inner_product(const StateVector& state,
                                           std::span<const QubitLabel> qubits,
                                           const StateVector& probe);

// Factors `state` as witnessed_state (on measured_qubits) x remainder and
// returns the normalized remainder. Throws if the state does not factorize
// that way within kFactorTol; that signals a protocol-logic bug upstream.
StateVector extract_subsystem(const StateVector& state,
                              std::span<const QubitLabel> measured_qubits,
                              const StateVector& witnessed_state);

namespace detail {

// Splits a full basis index into a (subsystem, remainder) pair for a fixed
// qubit subset; shared by the contraction and measurement kernels.
class SubsystemIndexer {
  public:
    SubsystemIndexer(std::size_t num_qubits, std::span<const QubitLabel> qubits);

    std::size_t sub_dim() const { return sub_expand_.size(); }
    std::size_t rem_dim() const { return rem_expand_.size(); }
    std::size_t full_index(std::size_t sub, std::size_t rem) const {
        return sub_expand_[sub] | rem_expand_[rem];
    }

  private:
    std::vector<std::size_t> sub_expand_;
    std::vector<std::size_t> rem_expand_;
};

}  // namespace detail

}  // namespace telsim
