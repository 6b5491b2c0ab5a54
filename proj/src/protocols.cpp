#include "telsim/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace telsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// branches thinner than this carry no usable post state and are recorded
// with a placeholder
constexpr double kNegligibleBranch = 1e-30;

const std::array<QubitLabel, 3> kAliceQubits = {QubitLabel{0}, QubitLabel{1},
                                                QubitLabel{2}};
const std::array<QubitLabel, 2> kBellQubits = {QubitLabel{0}, QubitLabel{1}};
const std::array<QubitLabel, 1> kLogicalQubit = {QubitLabel{0}};

bool is_success_label(OutcomeLabel label) {
    return label != OutcomeLabel::subspace1_fail &&
           label != OutcomeLabel::subspace2_fail;
}

ClassicalMessage make_message(bool success, Correction correction) {
    ClassicalMessage msg;
    msg.success_bit = success;
    msg.correction_bits =
        success ? static_cast<std::uint8_t>(correction) : std::uint8_t{0};
    return msg;
}

StateVector two_state_superposition(std::size_t num_qubits, std::size_t i,
                                    std::size_t j, double sign) {
    std::vector<cdouble> amps(std::size_t{1} << num_qubits, cdouble{0.0, 0.0});
    amps[i] = cdouble{kInvSqrt2, 0.0};
    amps[j] = cdouble{sign * kInvSqrt2, 0.0};
    return StateVector(num_qubits, std::move(amps));
}

// Bell basis on two qubits, ordered so that outcome k pairs with the same
// correction as the phi5..phi8 labels.
const std::array<StateVector, 4>& bell_basis() {
    static const std::array<StateVector, 4> basis = {
        two_state_superposition(2, 0b00, 0b11, +1.0),   // (|00>+|11>)/sqrt2
        two_state_superposition(2, 0b00, 0b11, -1.0),   // (|00>-|11>)/sqrt2
        two_state_superposition(2, 0b01, 0b10, +1.0),   // (|01>+|10>)/sqrt2
        two_state_superposition(2, 0b01, 0b10, -1.0)};  // (|01>-|10>)/sqrt2
    return basis;
}

const ProjectorSet& bell_projectors() {
    static const ProjectorSet set(
        std::vector<QubitLabel>(kBellQubits.begin(), kBellQubits.end()),
        {{bell_basis()[0]}, {bell_basis()[1]}, {bell_basis()[2]},
         {bell_basis()[3]}});
    return set;
}

constexpr std::array<OutcomeLabel, 4> kBellLabels = {
    OutcomeLabel::phi5, OutcomeLabel::phi6, OutcomeLabel::phi7,
    OutcomeLabel::phi8};

// Re-expresses a post-measurement state supported on span{zero, one} of
// Alice's three qubits as a two-qubit state (logical qubit, Bob).
StateVector to_logical_pair(const StateVector& post, const StateVector& zero,
                            const StateVector& one) {
    const auto c0 = partial_inner_product(post, kAliceQubits, zero);
    const auto c1 = partial_inner_product(post, kAliceQubits, one);
    std::vector<cdouble> amps = {c0[0], c0[1], c1[0], c1[1]};
    double nrm2 = 0.0;
    for (const auto& a : amps) nrm2 += std::norm(a);
    if (1.0 - nrm2 > kFactorTol) {
        throw std::logic_error(
            "post-measurement state leaked out of the expected subspace");
    }
    return StateVector::from_unnormalized(2, std::move(amps));
}

// Factors off the listed qubits of a product state and returns the pure
// state of the remaining ones. Throws if the state is entangled across the
// cut; the protocols only call this where purity is guaranteed.
StateVector pure_remainder(const StateVector& state,
                           std::span<const QubitLabel> measured) {
    const std::size_t k = measured.size();
    std::vector<std::vector<cdouble>> slices;
    slices.reserve(std::size_t{1} << k);
    std::size_t best = 0;
    double best_nrm2 = -1.0;
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
        slices.push_back(partial_inner_product(
            state, measured, StateVector::basis_state(k, m)));
        double nrm2 = 0.0;
        for (const auto& a : slices.back()) nrm2 += std::norm(a);
        if (nrm2 > best_nrm2) {
            best_nrm2 = nrm2;
            best = m;
        }
    }
    StateVector remainder = StateVector::from_unnormalized(
        state.num_qubits() - k, std::vector<cdouble>(slices[best]));
    // every slice must be parallel to the dominant one
    for (const auto& slice : slices) {
        cdouble overlap{0.0, 0.0};
        double nrm2 = 0.0;
        for (std::size_t r = 0; r < slice.size(); ++r) {
            overlap += std::conj(remainder.amplitude(r)) * slice[r];
            nrm2 += std::norm(slice[r]);
        }
        if (nrm2 - std::norm(overlap) > kFactorTol) {
            throw std::logic_error(
                "pure_remainder: state is entangled across the cut");
        }
    }
    return remainder;
}

TeleportationRecord make_placeholder(OutcomeLabel label, double probability) {
    // zero-probability branch: there is no post state to record
    return {label,
            make_message(false, Correction::identity),
            Correction::identity,
            false,
            StateVector::basis_state(1, 0),
            probability};
}

TeleportationRecord make_success_record(OutcomeLabel label,
                                        const StateVector& bob_raw,
                                        double probability) {
    const Correction corr = correction_for(label);
    StateVector bob = apply_gate(bob_raw, QubitLabel{0}, correction_gate(corr));
    return {label, make_message(true, corr), corr, true, std::move(bob),
            probability};
}

TeleportationRecord make_failure_record(OutcomeLabel label,
                                        StateVector bob_state,
                                        double probability) {
    return {label,
            make_message(false, Correction::identity),
            Correction::identity,
            false,
            std::move(bob_state),
            probability};
}

// Resolves one discrimination outcome into a full record. `prior` is the
// probability of reaching the POVM stage.
TeleportationRecord resolve_povm_outcome(
    const QubitAssistedPlan::Discrimination& d,
    const MeasurementOutcome& outcome, double prior) {
    const double joint = prior * outcome.probability;
    switch (d.povm.labels[outcome.outcome_index]) {
        case PovmLabel::identify_plus: {
            StateVector bob = extract_subsystem(outcome.post_state,
                                                kLogicalQubit, d.witness_plus);
            return make_success_record(d.label_plus, bob, joint);
        }
        case PovmLabel::identify_minus: {
            StateVector bob = extract_subsystem(outcome.post_state,
                                                kLogicalQubit, d.witness_minus);
            return make_success_record(d.label_minus, bob, joint);
        }
        case PovmLabel::inconclusive:
        default: {
            StateVector bob = pure_remainder(outcome.post_state, kLogicalQubit);
            return make_failure_record(d.label_fail, std::move(bob), joint);
        }
    }
}

// Bell measurement on qubits {0,1} of a three-qubit (input, Alice, Bob)
// state, followed by Bob's correction. `prior` scales the recorded branch
// probability.
TeleportationRecord bell_stage(const StateVector& state, double prior,
                               RandomSource& randomness) {
    const MeasurementOutcome outcome =
        measure_projective(state, bell_projectors(), randomness);
    const OutcomeLabel label = kBellLabels[outcome.outcome_index];
    StateVector bob = extract_subsystem(outcome.post_state, kBellQubits,
                                        bell_basis()[outcome.outcome_index]);
    return make_success_record(label, bob, prior * outcome.probability);
}

std::array<cdouble, 4> diag2(double d0, double d1) {
    return {cdouble{d0, 0.0}, cdouble{0.0, 0.0}, cdouble{0.0, 0.0},
            cdouble{d1, 0.0}};
}

}  // namespace

ChannelSpec::ChannelSpec(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
    if (!(alpha >= beta) || !(beta >= 0.0)) {
        throw std::invalid_argument(
            "ChannelSpec: requires alpha >= beta >= 0");
    }
    if (std::abs(alpha * alpha + beta * beta - 1.0) > kExactTol) {
        throw std::invalid_argument(
            "ChannelSpec: requires alpha^2 + beta^2 = 1");
    }
}

ChannelSpec ChannelSpec::from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.5) || !(alpha_sq <= 1.0)) {
        throw std::invalid_argument("alpha_sq must lie in [0.5, 1]");
    }
    return ChannelSpec(std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq));
}

StateVector ChannelSpec::state() const {
    return StateVector(2, {cdouble{alpha_, 0.0}, {}, {}, cdouble{beta_, 0.0}});
}

InputQubit::InputQubit(cdouble a, cdouble b) : a_(a), b_(b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kExactTol) {
        throw std::invalid_argument("InputQubit: requires |a|^2 + |b|^2 = 1");
    }
}

std::string_view to_string(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::phi5: return "phi5";
        case OutcomeLabel::phi6: return "phi6";
        case OutcomeLabel::phi7: return "phi7";
        case OutcomeLabel::phi8: return "phi8";
        case OutcomeLabel::subspace1_plus: return "subspace1_plus";
        case OutcomeLabel::subspace1_minus: return "subspace1_minus";
        case OutcomeLabel::subspace1_fail: return "subspace1_fail";
        case OutcomeLabel::subspace2_plus: return "subspace2_plus";
        case OutcomeLabel::subspace2_minus: return "subspace2_minus";
        case OutcomeLabel::subspace2_fail: return "subspace2_fail";
    }
    return "unknown";
}

std::string_view to_string(Correction correction) {
    switch (correction) {
        case Correction::identity: return "identity";
        case Correction::sigma_z: return "sigma_z";
        case Correction::sigma_x: return "sigma_x";
        case Correction::sigma_z_sigma_x: return "sigma_z_sigma_x";
    }
    return "unknown";
}

Correction correction_for(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::phi5:
        case OutcomeLabel::subspace1_plus:
            return Correction::identity;
        case OutcomeLabel::phi6:
        case OutcomeLabel::subspace1_minus:
            return Correction::sigma_z;
        case OutcomeLabel::phi7:
        case OutcomeLabel::subspace2_plus:
            return Correction::sigma_x;
        case OutcomeLabel::phi8:
        case OutcomeLabel::subspace2_minus:
            return Correction::sigma_z_sigma_x;
        case OutcomeLabel::subspace1_fail:
        case OutcomeLabel::subspace2_fail:
            return Correction::identity;
    }
    return Correction::identity;
}

SingleQubitGate correction_gate(Correction correction) {
    switch (correction) {
        case Correction::identity: return SingleQubitGate::identity();
        case Correction::sigma_z: return SingleQubitGate::sigma_z();
        case Correction::sigma_x: return SingleQubitGate::sigma_x();
        case Correction::sigma_z_sigma_x:
            return SingleQubitGate::sigma_z_sigma_x();
    }
    return SingleQubitGate::identity();
}

PhiBasis build_phi_basis() {
    return PhiBasis{{StateVector::basis_state(3, 0b000),
                     StateVector::basis_state(3, 0b111),
                     StateVector::basis_state(3, 0b011),
                     StateVector::basis_state(3, 0b100),
                     two_state_superposition(3, 0b010, 0b101, +1.0),
                     two_state_superposition(3, 0b010, 0b101, -1.0),
                     two_state_superposition(3, 0b001, 0b110, +1.0),
                     two_state_superposition(3, 0b001, 0b110, -1.0)}};
}

ProjectorSet build_projectors(const PhiBasis& basis) {
    const auto& s = basis.states;
    return ProjectorSet(
        std::vector<QubitLabel>(kAliceQubits.begin(), kAliceQubits.end()),
        {{s[0], s[1]}, {s[2], s[3]}, {s[4]}, {s[5]}, {s[6]}, {s[7]}});
}

StateVector prepare_joint_state(const InputQubit& input,
                                const ChannelSpec& channel) {
    const StateVector ancilla = StateVector::qubit(
        cdouble{channel.alpha(), 0.0}, cdouble{channel.beta(), 0.0});
    return tensor_product(tensor_product(input.state(), ancilla),
                          channel.state());
}

QubitAssistedPlan::QubitAssistedPlan(const ChannelSpec& channel)
    : channel_(channel),
      basis_(build_phi_basis()),
      projectors_(build_projectors(basis_)),
      subspaces_{
          Discrimination{basis_.states[0], basis_.states[1],
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         Povm{},
                         OutcomeLabel::subspace1_plus,
                         OutcomeLabel::subspace1_minus,
                         OutcomeLabel::subspace1_fail},
          Discrimination{basis_.states[2], basis_.states[3],
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         StateVector::basis_state(1, 0),
                         Povm{},
                         OutcomeLabel::subspace2_plus,
                         OutcomeLabel::subspace2_minus,
                         OutcomeLabel::subspace2_fail}} {
    const double a2 = channel.alpha_sq();
    const double b2 = channel.beta_sq();
    const double norm = std::sqrt(a2 * a2 + b2 * b2);

    // subspace 1 discriminates (alpha^2, +/-beta^2) on {|0~>, |1~>}
    subspaces_[0].u_plus = StateVector::qubit(a2 / norm, b2 / norm);
    subspaces_[0].u_minus = StateVector::qubit(a2 / norm, -b2 / norm);
    // subspace 2 discriminates (beta^2, +/-alpha^2)
    subspaces_[1].u_plus = StateVector::qubit(b2 / norm, a2 / norm);
    subspaces_[1].u_minus = StateVector::qubit(b2 / norm, -a2 / norm);

    for (auto& d : subspaces_) {
        // a conclusive click collapses Alice onto the complement of the
        // state it excludes
        d.witness_plus = orthogonal_qubit(d.u_minus);
        d.witness_minus = orthogonal_qubit(d.u_plus);
        d.povm = build_idp_povm(d.u_plus, d.u_minus);
    }
}

TeleportationRecord run_qubit_assisted(const QubitAssistedPlan& plan,
                                       const InputQubit& input,
                                       RandomSource& randomness) {
    const StateVector joint = prepare_joint_state(input, plan.channel());
    const MeasurementOutcome first =
        measure_projective(joint, plan.projectors(), randomness);

    if (first.outcome_index >= 2) {
        // one of the four direct outcomes: Bob only needs his rotation
        const std::size_t k = first.outcome_index - 2;
        const OutcomeLabel label = kBellLabels[k];  // phi5..phi8
        StateVector bob = extract_subsystem(first.post_state, kAliceQubits,
                                            plan.basis().states[4 + k]);
        return make_success_record(label, bob, first.probability);
    }

    const auto& d = plan.subspaces()[first.outcome_index];
    const StateVector logical =
        to_logical_pair(first.post_state, d.logical_zero, d.logical_one);
    const MeasurementOutcome second =
        apply_povm(logical, d.povm, QubitLabel{0}, randomness);
    return resolve_povm_outcome(d, second, first.probability);
}

TeleportationRecord run_qubit_assisted(const InputQubit& input,
                                       const ChannelSpec& channel,
                                       RandomSource& randomness) {
    return run_qubit_assisted(QubitAssistedPlan(channel), input, randomness);
}

std::vector<TeleportationRecord> enumerate_branches(
    const QubitAssistedPlan& plan, const InputQubit& input) {
    const StateVector joint = prepare_joint_state(input, plan.channel());
    const std::vector<double> first_probs =
        born_probabilities(joint, plan.projectors());

    std::vector<TeleportationRecord> records;
    records.reserve(10);

    for (std::size_t k = 0; k < 4; ++k) {
        const double p = first_probs[2 + k];
        if (p <= kNegligibleBranch) {
            records.push_back(make_placeholder(kBellLabels[k], p));
            continue;
        }
        const MeasurementOutcome out =
            projective_branch(joint, plan.projectors(), 2 + k);
        StateVector bob = extract_subsystem(out.post_state, kAliceQubits,
                                            plan.basis().states[4 + k]);
        records.push_back(make_success_record(kBellLabels[k], bob, p));
    }

    for (std::size_t s = 0; s < 2; ++s) {
        const auto& d = plan.subspaces()[s];
        const double prior = first_probs[s];
        const std::array<OutcomeLabel, 3> labels = {d.label_plus,
                                                    d.label_minus, d.label_fail};
        if (prior <= kNegligibleBranch) {
            for (const auto label : labels) {
                records.push_back(make_placeholder(label, 0.0));
            }
            continue;
        }
        const MeasurementOutcome out =
            projective_branch(joint, plan.projectors(), s);
        const StateVector logical =
            to_logical_pair(out.post_state, d.logical_zero, d.logical_one);
        for (std::size_t e = 0; e < d.povm.effects.size(); ++e) {
            std::vector<cdouble> raw = apply_matrix(
                logical, QubitLabel{0},
                {d.povm.measurement_ops[e](0, 0), d.povm.measurement_ops[e](0, 1),
                 d.povm.measurement_ops[e](1, 0),
                 d.povm.measurement_ops[e](1, 1)});
            double p_eff = 0.0;
            for (const auto& a : raw) p_eff += std::norm(a);
            if (p_eff <= kNegligibleBranch) {
                records.push_back(make_placeholder(labels[e], prior * p_eff));
                continue;
            }
            const MeasurementOutcome branch =
                povm_branch(logical, d.povm, QubitLabel{0}, e);
            records.push_back(
                resolve_povm_outcome(d, branch, prior));
        }
    }
    return records;
}

std::vector<TeleportationRecord> enumerate_branches(const InputQubit& input,
                                                    const ChannelSpec& channel) {
    return enumerate_branches(QubitAssistedPlan(channel), input);
}

TeleportationRecord run_bbcjpw(const InputQubit& input,
                               RandomSource& randomness) {
    const ChannelSpec channel = ChannelSpec::from_alpha_sq(0.5);
    const StateVector joint =
        tensor_product(input.state(), channel.state());
    return bell_stage(joint, 1.0, randomness);
}

double mor_horodecki_success_probability(const ChannelSpec& channel) {
    const double ratio =
        channel.alpha() > 0.0 ? channel.beta() / channel.alpha() : 0.0;
    const std::vector<cdouble> filtered =
        apply_matrix(channel.state(), QubitLabel{0}, diag2(ratio, 1.0));
    double p = 0.0;
    for (const auto& a : filtered) p += std::norm(a);
    return p;
}

TeleportationRecord run_mor_horodecki(const InputQubit& input,
                                      const ChannelSpec& channel,
                                      RandomSource& randomness) {
    const StateVector joint =
        tensor_product(input.state(), channel.state());
    const double ratio = channel.beta() / channel.alpha();

    std::vector<cdouble> accepted =
        apply_matrix(joint, QubitLabel{1}, diag2(ratio, 1.0));
    double p_succ = 0.0;
    for (const auto& a : accepted) p_succ += std::norm(a);

    if (randomness.uniform() < p_succ) {
        const StateVector post =
            StateVector::from_unnormalized(3, std::move(accepted));
        return bell_stage(post, p_succ, randomness);
    }

    const double keep = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    std::vector<cdouble> rejected =
        apply_matrix(joint, QubitLabel{1}, diag2(keep, 0.0));
    StateVector post = StateVector::from_unnormalized(3, std::move(rejected));
    StateVector bob = pure_remainder(post, kBellQubits);
    return make_failure_record(OutcomeLabel::subspace1_fail, std::move(bob),
                               1.0 - p_succ);
}

ClassicalMessage encode_classical_message(const TeleportationRecord& record) {
    return make_message(record.success, record.correction);
}

}  // namespace telsim
