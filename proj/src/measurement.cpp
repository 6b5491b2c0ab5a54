#include "telsim/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace telsim {

namespace {

constexpr double kProbSumTol = 1e-10;
constexpr double kZeroBranch = 1e-300;

// inverse-CDF sampling with a single uniform draw; zero-probability
// outcomes can never be selected
std::size_t sample_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    std::size_t last_positive = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        acc += probs[i];
        last_positive = i;
        if (u < acc) return i;
    }
    if (last_positive == probs.size()) {
        throw std::logic_error("sample_index: all probabilities are zero");
    }
    return last_positive;  // u landed in the rounding gap past the last bin
}

Eigen::Matrix2cd outer(const StateVector& q) {
    Eigen::Vector2cd v(q.amplitude(0), q.amplitude(1));
    return v * v.adjoint();
}

Eigen::Matrix2cd hermitize(const Eigen::Matrix2cd& m) {
    return 0.5 * (m + m.adjoint());
}

Eigen::Matrix2cd sqrt_psd(const Eigen::Matrix2cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hermitize(m));
    Eigen::Vector2d lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

// zero eigenvalues in (-tol, 0); larger negative eigenvalues are left for
// validate_povm to flag
Eigen::Matrix2cd clamp_psd(const Eigen::Matrix2cd& m, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hermitize(m));
    Eigen::Vector2d lam = es.eigenvalues();
    for (int i = 0; i < 2; ++i) {
        if (lam[i] < 0.0 && lam[i] > -tol) lam[i] = 0.0;
    }
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

std::array<cdouble, 4> as_array(const Eigen::Matrix2cd& m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

double squared_norm_of(const std::vector<cdouble>& amps) {
    double nrm2 = 0.0;
    for (const auto& a : amps) nrm2 += std::norm(a);
    return nrm2;
}

}  // namespace

ProjectorSet::ProjectorSet(std::vector<QubitLabel> subsystem,
                           std::vector<std::vector<StateVector>> projector_bases)
    : subsystem_(std::move(subsystem)),
      projector_bases_(std::move(projector_bases)) {
    if (subsystem_.empty() || projector_bases_.empty()) {
        throw std::invalid_argument("ProjectorSet: empty subsystem or list");
    }
    const std::size_t k = subsystem_.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (subsystem_[i].index == subsystem_[j].index) {
                throw std::invalid_argument("ProjectorSet: duplicate qubit");
            }
        }
    }

    std::vector<const StateVector*> all;
    std::size_t rank_sum = 0;
    for (const auto& basis : projector_bases_) {
        rank_sum += basis.size();
        for (const auto& v : basis) {
            if (v.num_qubits() != k) {
                throw std::invalid_argument(
                    "ProjectorSet: basis vector size does not match subsystem");
            }
            all.push_back(&v);
        }
    }
    if (rank_sum != (std::size_t{1} << k)) {
        throw std::invalid_argument(
            "ProjectorSet: ranks do not sum to the subsystem dimension");
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i; j < all.size(); ++j) {
            const cdouble g = all[i]->inner_product(*all[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > kExactTol) {
                throw std::invalid_argument(
                    "ProjectorSet: range bases are not mutually orthonormal");
            }
        }
    }
}

std::vector<double> born_probabilities(const StateVector& state,
                                       const ProjectorSet& projectors) {
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const auto& basis : projectors.projectors()) {
        double p = 0.0;
        for (const auto& v : basis) {
            p += squared_norm_of(
                partial_inner_product(state, projectors.subsystem(), v));
        }
        probs.push_back(p);
    }
    return probs;
}

MeasurementOutcome projective_branch(const StateVector& state,
                                     const ProjectorSet& projectors,
                                     std::size_t outcome_index) {
    const auto& basis = projectors.projectors().at(outcome_index);
    const detail::SubsystemIndexer ix(state.num_qubits(),
                                      projectors.subsystem());
    // P|psi> = sum_v |v><v|psi|, assembled back onto the full register
    std::vector<cdouble> full(state.dim(), cdouble{0.0, 0.0});
    for (const auto& v : basis) {
        const auto rem =
            partial_inner_product(state, projectors.subsystem(), v);
        for (std::size_t s = 0; s < ix.sub_dim(); ++s) {
            const cdouble w = v.amplitude(s);
            if (w == cdouble{0.0, 0.0}) continue;
            for (std::size_t r = 0; r < ix.rem_dim(); ++r) {
                full[ix.full_index(s, r)] += w * rem[r];
            }
        }
    }
    const double p = squared_norm_of(full);
    if (p < kZeroBranch) {
        throw std::domain_error("projective_branch: zero-probability branch");
    }
    const double inv = 1.0 / std::sqrt(p);
    for (auto& a : full) a *= inv;
    return {outcome_index, p, StateVector(state.num_qubits(), std::move(full))};
}

MeasurementOutcome measure_projective(const StateVector& state,
                                      const ProjectorSet& projectors,
                                      RandomSource& randomness) {
    const std::vector<double> probs = born_probabilities(state, projectors);
    double sum = 0.0;
    for (double p : probs) sum += p;
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw std::logic_error(
            "measure_projective: outcome probabilities do not sum to 1 "
            "(broken ProjectorSet)");
    }
    const std::size_t idx = sample_index(probs, randomness.uniform());
    MeasurementOutcome out = projective_branch(state, projectors, idx);
    out.probability = probs[idx];
    return out;
}

Povm make_povm(std::vector<Eigen::Matrix2cd> effects,
               std::vector<PovmLabel> labels) {
    if (effects.size() != labels.size() || effects.empty()) {
        throw std::invalid_argument("make_povm: effects/labels mismatch");
    }
    Povm povm{std::move(effects), std::move(labels), {}};
    povm.measurement_ops.reserve(povm.effects.size());
    for (const auto& e : povm.effects) {
        povm.measurement_ops.push_back(sqrt_psd(e));
    }
    return povm;
}

Povm build_idp_povm(const StateVector& u_plus, const StateVector& u_minus) {
    if (u_plus.num_qubits() != 1 || u_minus.num_qubits() != 1) {
        throw std::invalid_argument("build_idp_povm: inputs must be qubits");
    }
    const double s = std::abs(u_plus.inner_product(u_minus));
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

    if (1.0 - s <= 1e-15) {
        // indistinguishable inputs: every outcome is inconclusive
        const Eigen::Matrix2cd zero = Eigen::Matrix2cd::Zero();
        return make_povm({zero, zero, id},
                         {PovmLabel::identify_plus, PovmLabel::identify_minus,
                          PovmLabel::inconclusive});
    }

    const double scale = 1.0 / (1.0 + s);
    Eigen::Matrix2cd e_plus = scale * outer(orthogonal_qubit(u_minus));
    Eigen::Matrix2cd e_minus = scale * outer(orthogonal_qubit(u_plus));
    Eigen::Matrix2cd e_fail = id - e_plus - e_minus;
    if (1.0 - s < 1e-9) {
        // nearly identical inputs: strip the rounding-level negative
        // eigenvalue that the subtraction can leave behind
        e_fail = clamp_psd(e_fail, kExactTol);
    }
    return make_povm({e_plus, e_minus, e_fail},
                     {PovmLabel::identify_plus, PovmLabel::identify_minus,
                      PovmLabel::inconclusive});
}

double conclusive_probability(const Povm& povm, const StateVector& state) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument(
            "conclusive_probability: expected a single-qubit state");
    }
    const Eigen::Vector2cd v(state.amplitude(0), state.amplitude(1));
    double p = 0.0;
    for (std::size_t i = 0; i < povm.effects.size(); ++i) {
        if (povm.labels[i] == PovmLabel::inconclusive) continue;
        p += (v.adjoint() * povm.effects[i] * v).value().real();
    }
    return p;
}

MeasurementOutcome povm_branch(const StateVector& state, const Povm& povm,
                               QubitLabel target, std::size_t outcome_index) {
    const auto& m = povm.measurement_ops.at(outcome_index);
    std::vector<cdouble> raw = apply_matrix(state, target, as_array(m));
    const double p = squared_norm_of(raw);
    if (p < kZeroBranch) {
        throw std::domain_error("povm_branch: zero-probability branch");
    }
    const double inv = 1.0 / std::sqrt(p);
    for (auto& a : raw) a *= inv;
    return {outcome_index, p, StateVector(state.num_qubits(), std::move(raw))};
}

MeasurementOutcome apply_povm(const StateVector& state, const Povm& povm,
                              QubitLabel target, RandomSource& randomness) {
    if (povm.measurement_ops.size() != povm.effects.size()) {
        throw std::invalid_argument("apply_povm: POVM missing measurement ops");
    }
    // ||M_i psi||^2 == <psi|E_i|psi> for the positive root M_i
    std::vector<double> probs;
    probs.reserve(povm.effects.size());
    for (std::size_t i = 0; i < povm.effects.size(); ++i) {
        probs.push_back(squared_norm_of(
            apply_matrix(state, target, as_array(povm.measurement_ops[i]))));
    }
    double sum = 0.0;
    for (double p : probs) sum += p;
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw std::logic_error(
            "apply_povm: outcome probabilities do not sum to 1 (broken POVM)");
    }
    const std::size_t idx = sample_index(probs, randomness.uniform());
    MeasurementOutcome out = povm_branch(state, povm, target, idx);
    out.probability = probs[idx];
    return out;
}

PovmValidation validate_povm(const Povm& povm) {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& e : povm.effects) {
        sum += e;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hermitize(e));
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    const Eigen::Matrix2cd residual = sum - Eigen::Matrix2cd::Identity();
    return {residual.cwiseAbs().maxCoeff(), min_eig};
}

StateVector orthogonal_qubit(const StateVector& q) {
    if (q.num_qubits() != 1) {
        throw std::invalid_argument("orthogonal_qubit: expected a qubit");
    }
    return StateVector::qubit(-std::conj(q.amplitude(1)),
                              std::conj(q.amplitude(0)));
}

}  // namespace telsim
