// protocols.hpp
// Three conclusive-teleportation protocols as deterministic-given-seed state
// machines: the ancilla-assisted protocol (a three-qubit projective
// measurement followed by a conditional discrimination POVM), the standard
// BBCJPW protocol on a maximally entangled channel, and the Mor-Horodecki
// filtering protocol. Register layout: qubit 0 = unknown input, qubit 1 =
// ancilla, qubit 2 = Alice's channel half (A), qubit 3 = Bob's half (B).

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "telsim/measurement.hpp"

namespace telsim {

// Schmidt pair (alpha, beta) of the shared channel alpha|00> + beta|11>,
// with alpha >= beta >= 0 and alpha^2 + beta^2 = 1.
class ChannelSpec {
  public:
    ChannelSpec(double alpha, double beta);
    static ChannelSpec from_alpha_sq(double alpha_sq);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double alpha_sq() const { return alpha_ * alpha_; }
    double beta_sq() const { return beta_ * beta_; }
    StateVector state() const;  // alpha|00> + beta|11>

  private:
    double alpha_;
    double beta_;
};

// The unknown qubit a|0> + b|1> to be teleported.
class InputQubit {
  public:
    InputQubit(cdouble a, cdouble b);
    cdouble a() const { return a_; }
    cdouble b() const { return b_; }
    StateVector state() const { return StateVector::qubit(a_, b_); }

  private:
    cdouble a_;
    cdouble b_;
};

// The eight-state orthonormal basis of Alice's three qubits that the joint
// measurement is built on. Ordering is fixed: see build_phi_basis.
struct PhiBasis {
    std::array<StateVector, 8> states;
};

enum class OutcomeLabel {
    phi5,
    phi6,
    phi7,
    phi8,
    subspace1_plus,
    subspace1_minus,
    subspace1_fail,
    subspace2_plus,
    subspace2_minus,
    subspace2_fail,
};

inline constexpr std::array<OutcomeLabel, 10> kAllOutcomeLabels = {
    OutcomeLabel::phi5,           OutcomeLabel::phi6,
    OutcomeLabel::phi7,           OutcomeLabel::phi8,
    OutcomeLabel::subspace1_plus, OutcomeLabel::subspace1_minus,
    OutcomeLabel::subspace1_fail, OutcomeLabel::subspace2_plus,
    OutcomeLabel::subspace2_minus, OutcomeLabel::subspace2_fail,
};

enum class Correction { identity, sigma_z, sigma_x, sigma_z_sigma_x };

std::string_view to_string(OutcomeLabel label);
std::string_view to_string(Correction correction);

// Bob's rotation for each outcome Alice can announce; failure outcomes map
// to the identity (no correction is applied).
Correction correction_for(OutcomeLabel label);
SingleQubitGate correction_gate(Correction correction);

// The full classical message: one success bit plus two correction bits
// (00 identity, 01 sigma_z, 10 sigma_x, 11 sigma_z sigma_x). Failure
// messages carry zeroed correction bits.
struct ClassicalMessage {
    bool success_bit = false;
    std::uint8_t correction_bits = 0;

    std::uint8_t packed() const {
        return static_cast<std::uint8_t>((success_bit ? 1 : 0) |
                                         (correction_bits << 1));
    }
    friend bool operator==(const ClassicalMessage&,
                           const ClassicalMessage&) = default;
};

// One protocol run (or one exact branch of the outcome tree).
struct TeleportationRecord {
    OutcomeLabel outcome_label;
    ClassicalMessage classical_bits;
    Correction correction;
    bool success;
    StateVector bob_state;  // Bob's qubit after his correction
    double branch_probability;
};

PhiBasis build_phi_basis();

// Six projectors on qubits {0,1,2}: two rank-2 subspace projectors followed
// by four rank-1 projectors on the last four basis states.
ProjectorSet build_projectors(const PhiBasis& basis);

// input (x) ancilla (x) channel, with the ancilla carrying the channel's
// Schmidt coefficients.
StateVector prepare_joint_state(const InputQubit& input,
                                const ChannelSpec& channel);

// Measurement machinery reused across many runs over one channel.
class QubitAssistedPlan {
  public:
    explicit QubitAssistedPlan(const ChannelSpec& channel);

    struct Discrimination {
        StateVector logical_zero;   // 3-qubit basis state mapped to |0~>
        StateVector logical_one;    // 3-qubit basis state mapped to |1~>
        StateVector u_plus;         // states to distinguish on the logical qubit
        StateVector u_minus;
        StateVector witness_plus;   // Alice's collapse direction per outcome
        StateVector witness_minus;
        Povm povm;
        OutcomeLabel label_plus;
        OutcomeLabel label_minus;
        OutcomeLabel label_fail;
    };

    const ChannelSpec& channel() const { return channel_; }
    const PhiBasis& basis() const { return basis_; }
    const ProjectorSet& projectors() const { return projectors_; }
    const std::array<Discrimination, 2>& subspaces() const {
        return subspaces_;
    }

  private:
    ChannelSpec channel_;
    PhiBasis basis_;
    ProjectorSet projectors_;
    std::array<Discrimination, 2> subspaces_;
};

TeleportationRecord run_qubit_assisted(const InputQubit& input,
                                       const ChannelSpec& channel,
                                       RandomSource& randomness);
TeleportationRecord run_qubit_assisted(const QubitAssistedPlan& plan,
                                       const InputQubit& input,
                                       RandomSource& randomness);

// Every branch of the two-stage measurement tree with its exact probability,
// in kAllOutcomeLabels order. Probabilities sum to 1.
std::vector<TeleportationRecord> enumerate_branches(const InputQubit& input,
                                                    const ChannelSpec& channel);
std::vector<TeleportationRecord> enumerate_branches(
    const QubitAssistedPlan& plan, const InputQubit& input);

// Standard teleportation over the maximally entangled channel: Bell
// measurement on the input and Alice's channel half, then a Pauli
// correction. Always succeeds. Bell outcomes are reported on the phi5..phi8
// labels carrying the same correction.
TeleportationRecord run_bbcjpw(const InputQubit& input,
                               RandomSource& randomness);

// Conclusive filtering baseline: Alice filters her channel half with
// M_succ = diag(beta/alpha, 1); on success the channel is maximally
// entangled and standard teleportation completes. Filter failure is
// reported as subspace1_fail.
TeleportationRecord run_mor_horodecki(const InputQubit& input,
                                      const ChannelSpec& channel,
                                      RandomSource& randomness);

// Exact filter acceptance probability, evaluated from the state vector.
double mor_horodecki_success_probability(const ChannelSpec& channel);

ClassicalMessage encode_classical_message(const TeleportationRecord& record);

}  // namespace telsim
