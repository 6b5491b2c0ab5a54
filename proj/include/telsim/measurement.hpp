// measurement.hpp
// Projective measurements over arbitrary orthogonal projector sets, and the
// optimal unambiguous-discrimination POVM for two nonorthogonal pure states.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "telsim/random.hpp"
#include "telsim/statevec.hpp"

namespace telsim {

struct MeasurementOutcome {
    std::size_t outcome_index;
    double probability;
    StateVector post_state;
};

// Ordered list of mutually orthogonal projectors summing to the identity on a
// subsystem. Each projector is given by an orthonormal basis of its range;
// orthonormality and completeness are checked at construction.
class ProjectorSet {
  public:
    ProjectorSet(std::vector<QubitLabel> subsystem,
                 std::vector<std::vector<StateVector>> projector_bases);

    const std::vector<QubitLabel>& subsystem() const { return subsystem_; }
    const std::vector<std::vector<StateVector>>& projectors() const {
        return projector_bases_;
    }
    std::size_t size() const { return projector_bases_.size(); }

  private:
    std::vector<QubitLabel> subsystem_;
    std::vector<std::vector<StateVector>> projector_bases_;
};

// Exact Born distribution <psi|P_i|psi> over the projector list.
std::vector<double> born_probabilities(const StateVector& state,
                                       const ProjectorSet& projectors);

// Samples one outcome with Born probabilities and collapses the state.
// Deterministic given the RandomSource.
MeasurementOutcome measure_projective(const StateVector& state,
                                      const ProjectorSet& projectors,
                                      RandomSource& randomness);

// Deterministic evaluation of one branch of the measurement tree.
// Throws std::domain_error for a branch of (numerically) zero probability.
MeasurementOutcome projective_branch(const StateVector& state,
                                     const ProjectorSet& projectors,
                                     std::size_t outcome_index);

enum class PovmLabel { identify_plus, identify_minus, inconclusive };

// Positive effects summing to the single-qubit identity, together with the
// measurement operators (positive square roots) used for post-states.
struct Povm {
    std::vector<Eigen::Matrix2cd> effects;
    std::vector<PovmLabel> labels;
    std::vector<Eigen::Matrix2cd> measurement_ops;
};

// Assembles a Povm from raw effects; computes the measurement operators.
// Does not validate positivity/completeness (see validate_povm).
Povm make_povm(std::vector<Eigen::Matrix2cd> effects,
               std::vector<PovmLabel> labels);

// Optimal equal-prior unambiguous discrimination of two pure qubit states:
// E+ never fires on u_minus, E- never fires on u_plus, and the conclusive
// probability on either input is 1 - |<u+|u->|. Identical inputs yield the
// degenerate POVM {0, 0, I}.
Povm build_idp_povm(const StateVector& u_plus, const StateVector& u_minus);

// Probability of a non-inconclusive outcome on a single-qubit state.
double conclusive_probability(const Povm& povm, const StateVector& state);

MeasurementOutcome apply_povm(const StateVector& state, const Povm& povm,
                              QubitLabel target, RandomSource& randomness);

// Deterministic single-branch counterpart of apply_povm.
MeasurementOutcome povm_branch(const StateVector& state, const Povm& povm,
                               QubitLabel target, std::size_t outcome_index);

struct PovmValidation {
    double completeness_residual;  // max |entry| of (sum of effects - I)
    double min_effect_eigenvalue;
    bool valid() const {
        return completeness_residual < kExactTol &&
               min_effect_eigenvalue >= -kExactTol;
    }
};

PovmValidation validate_povm(const Povm& povm);

// The unique (up to phase) single-qubit state orthogonal to q.
StateVector orthogonal_qubit(const StateVector& q);

}  // namespace telsim
