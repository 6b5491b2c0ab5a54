#include "telsim/verification.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "telsim/analysis.hpp"

namespace telsim {

namespace {

constexpr std::array<double, 6> kAlphaGrid = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

ChannelSpec random_channel(RandomSource& rs) {
    return ChannelSpec::from_alpha_sq(0.5 + 0.5 * rs.uniform());
}

double success_total(const std::vector<TeleportationRecord>& records) {
    double p = 0.0;
    for (const auto& r : records) {
        if (r.success) p += r.branch_probability;
    }
    return p;
}

// exact success probability equals 2 beta^2 on the whole grid
CheckResult check_exact_success_curve(std::uint64_t seed) {
    double max_dev = 0.0;
    for (const double alpha_sq : kAlphaGrid) {
        const ChannelSpec channel = ChannelSpec::from_alpha_sq(alpha_sq);
        const QubitAssistedPlan plan(channel);
        const double expected = 2.0 * channel.beta_sq();
        RandomSource rs(mix_seed(seed, 1));
        for (int i = 0; i < 20; ++i) {
            const InputQubit input = haar_random_input(rs);
            const double p = success_total(enumerate_branches(plan, input));
            max_dev = std::max(max_dev, std::abs(p - expected));
        }
    }
    return {"exact-success-curve", max_dev <= 1e-12,
            fmt("max |p_success - 2*beta_sq| = %.3g (tolerance 1e-12)",
                max_dev)};
}

// sampled success rate at alpha_sq = 0.8 within 4 sigma of 0.4
CheckResult check_sampled_success_rate(std::uint64_t seed, bool quick) {
    const std::size_t n = quick ? 10'000 : 1'000'000;
    const ChannelSpec channel = ChannelSpec::from_alpha_sq(0.8);
    const TrialSummary summary = monte_carlo(Protocol::qubit_assisted, channel,
                                             std::nullopt, n, seed);
    const double expected = 0.4;
    const double sigma =
        std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    const double dev = std::abs(summary.empirical_success - expected);
    return {"sampled-success-rate", dev <= 4.0 * sigma,
            fmt("rate %.6f vs 0.4, |dev| = %.3g (4 sigma = %.3g)",
                summary.empirical_success, dev, 4.0 * sigma)};
}

// constructed discrimination POVM reproduces 2 beta^4 / (alpha^4 + beta^4)
CheckResult check_conclusive_povm_value() {
    double max_dev = 0.0;
    for (const double alpha_sq : kAlphaGrid) {
        const ChannelSpec channel = ChannelSpec::from_alpha_sq(alpha_sq);
        const double a4 = channel.alpha_sq() * channel.alpha_sq();
        const double b4 = channel.beta_sq() * channel.beta_sq();
        const double expected = 2.0 * b4 / (a4 + b4);
        const QubitAssistedPlan plan(channel);
        for (const auto& d : plan.subspaces()) {
            for (const auto* u : {&d.u_plus, &d.u_minus}) {
                const double p = conclusive_probability(d.povm, *u);
                max_dev = std::max(max_dev, std::abs(p - expected));
            }
        }
    }
    return {"conclusive-povm-value", max_dev <= 1e-12,
            fmt("max |p_conclusive - 2b^4/(a^4+b^4)| = %.3g (tolerance 1e-12)",
                max_dev)};
}

// each direct branch carries alpha^2 beta^2 / 2 regardless of the input
CheckResult check_direct_branch_probabilities(std::uint64_t seed) {
    double max_dev = 0.0;
    RandomSource rs(mix_seed(seed, 4));
    for (const double alpha_sq : kAlphaGrid) {
        const ChannelSpec channel = ChannelSpec::from_alpha_sq(alpha_sq);
        const QubitAssistedPlan plan(channel);
        const double expected = channel.alpha_sq() * channel.beta_sq() / 2.0;
        for (int i = 0; i < 100; ++i) {
            const auto records =
                enumerate_branches(plan, haar_random_input(rs));
            for (int k = 0; k < 4; ++k) {
                max_dev = std::max(
                    max_dev,
                    std::abs(records[k].branch_probability - expected));
            }
        }
    }
    return {"direct-branch-probabilities", max_dev <= 1e-12,
            fmt("max |p - alpha_sq*beta_sq/2| = %.3g (tolerance 1e-12)",
                max_dev)};
}

// every success branch delivers the input exactly
CheckResult check_success_fidelity(std::uint64_t seed) {
    double max_dev = 0.0;
    RandomSource rs(mix_seed(seed, 5));
    for (int i = 0; i < 500; ++i) {
        const ChannelSpec channel = random_channel(rs);
        const InputQubit input = haar_random_input(rs);
        for (const auto& record : enumerate_branches(input, channel)) {
            if (!record.success) continue;
            const double f = fidelity(record.bob_state, input.state());
            max_dev = std::max(max_dev, std::abs(1.0 - f));
        }
    }
    return {"success-fidelity", max_dev <= 1e-10,
            fmt("max |1 - fidelity| = %.3g over 500 draws (tolerance 1e-10)",
                max_dev)};
}

// success probability matches the filtering baseline exactly
CheckResult check_baseline_equivalence(std::uint64_t seed) {
    double max_dev = 0.0;
    RandomSource rs(mix_seed(seed, 6));
    for (const double alpha_sq : kAlphaGrid) {
        const ChannelSpec channel = ChannelSpec::from_alpha_sq(alpha_sq);
        const QubitAssistedPlan plan(channel);
        const double mh = mor_horodecki_success_probability(channel);
        for (int i = 0; i < 3; ++i) {
            const double qa =
                success_total(enumerate_branches(plan, haar_random_input(rs)));
            max_dev = std::max(max_dev, std::abs(qa - mh));
        }
    }
    return {"baseline-equivalence", max_dev <= 1e-12,
            fmt("max |p_qa - p_mh| = %.3g (tolerance 1e-12)", max_dev)};
}

// the regrouped superposition over the measurement basis reproduces the
// prepared product state amplitude by amplitude
CheckResult check_decomposition_identity(std::uint64_t seed) {
    const PhiBasis basis = build_phi_basis();
    double max_dev = 0.0;
    RandomSource rs(mix_seed(seed, 7));
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelSpec channel = random_channel(rs);
        const InputQubit input = haar_random_input(rs);
        const double as = channel.alpha_sq();
        const double bs = channel.beta_sq();
        const double w = channel.alpha() * channel.beta() / std::sqrt(2.0);
        const cdouble a = input.a();
        const cdouble b = input.b();

        std::vector<cdouble> rebuilt(16, cdouble{0.0, 0.0});
        auto add = [&](int phi, cdouble coeff, cdouble bob0, cdouble bob1) {
            const auto& amps = basis.states[phi].amplitudes();
            for (std::size_t m = 0; m < 8; ++m) {
                rebuilt[2 * m] += coeff * amps[m] * bob0;
                rebuilt[2 * m + 1] += coeff * amps[m] * bob1;
            }
        };
        add(0, 0.5 * as, a, b);
        add(1, 0.5 * bs, a, b);
        add(0, 0.5 * as, a, -b);
        add(1, -0.5 * bs, a, -b);
        add(2, 0.5 * bs, b, a);
        add(3, 0.5 * as, b, a);
        add(2, 0.5 * bs, -b, a);
        add(3, -0.5 * as, -b, a);
        add(4, w, a, b);
        add(5, w, a, -b);
        add(6, w, b, a);
        add(7, w, -b, a);

        const StateVector product = prepare_joint_state(input, channel);
        for (std::size_t i = 0; i < 16; ++i) {
            max_dev = std::max(max_dev,
                               std::abs(rebuilt[i] - product.amplitude(i)));
        }
    }
    return {"decomposition-identity", max_dev <= 1e-12,
            fmt("max amplitude deviation = %.3g over 100 draws "
                "(tolerance 1e-12)",
                max_dev)};
}

// Gram matrix, projector completeness, POVM completeness and positivity
CheckResult check_structural_invariants() {
    const PhiBasis basis = build_phi_basis();
    double max_dev = 0.0;

    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const cdouble g =
                basis.states[i].inner_product(basis.states[j]);
            max_dev = std::max(max_dev, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }

    const ProjectorSet projectors = build_projectors(basis);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
    for (const auto& range : projectors.projectors()) {
        for (const auto& v : range) {
            Eigen::VectorXcd col(8);
            for (int i = 0; i < 8; ++i) col(i) = v.amplitude(i);
            sum += col * col.adjoint();
        }
    }
    max_dev = std::max(
        max_dev,
        (sum - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff());

    double min_eig = 0.0;
    for (const double alpha_sq : kAlphaGrid) {
        const QubitAssistedPlan plan(ChannelSpec::from_alpha_sq(alpha_sq));
        for (const auto& d : plan.subspaces()) {
            const PovmValidation v = validate_povm(d.povm);
            max_dev = std::max(max_dev, v.completeness_residual);
            min_eig = std::min(min_eig, v.min_effect_eigenvalue);
        }
    }

    const bool ok = max_dev < 1e-12 && min_eig >= -1e-12;
    return {"structural-invariants", ok,
            fmt("max residual = %.3g (tolerance 1e-12), min effect "
                "eigenvalue = %.3g (floor -1e-12)",
                max_dev, min_eig)};
}

// subspace-1 weight averaged over Haar inputs approaches
// (alpha^4 + beta^4) / 2
CheckResult check_subspace_haar_average(std::uint64_t seed, bool quick) {
    const std::size_t n = quick ? 10'000 : 100'000;
    const ChannelSpec channel = ChannelSpec::from_alpha_sq(0.8);
    const QubitAssistedPlan plan(channel);
    const double a4 = channel.alpha_sq() * channel.alpha_sq();
    const double b4 = channel.beta_sq() * channel.beta_sq();
    const double expected = (a4 + b4) / 2.0;

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource rs(mix_seed(seed, 0x900 + i));
        const StateVector joint =
            prepare_joint_state(haar_random_input(rs), channel);
        const double p = born_probabilities(joint, plan.projectors())[0];
        sum += p;
        sum_sq += p * p;
    }
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double variance = std::max(0.0, sum_sq / nd - mean * mean);
    const double stderr_mean = std::sqrt(variance / nd);
    const double dev = std::abs(mean - expected);
    return {"subspace-haar-average", dev <= 3.0 * stderr_mean,
            fmt("mean %.6f vs %.2f, |dev| = %.3g (3 SE = %.3g)", mean,
                expected, dev, 3.0 * stderr_mean)};
}

// closed-form distribution against state-vector enumeration, branch by branch
CheckResult check_analytic_vs_enumeration(std::uint64_t seed) {
    double max_dev = 0.0;
    RandomSource rs(mix_seed(seed, 10));
    for (int i = 0; i < 200; ++i) {
        const ChannelSpec channel = random_channel(rs);
        const InputQubit input = haar_random_input(rs);
        const AnalyticReport analytic = analytic_outcome_probs(channel, input);
        const auto records = enumerate_branches(input, channel);
        for (const auto& record : records) {
            const double expected = analytic.per_outcome.at(record.outcome_label);
            max_dev = std::max(
                max_dev, std::abs(record.branch_probability - expected));
        }
    }
    return {"analytic-vs-enumeration", max_dev <= 1e-10,
            fmt("max |p_analytic - p_enumerated| = %.3g over 200 draws "
                "(tolerance 1e-10)",
                max_dev)};
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& options) {
    std::vector<CheckResult> results;
    results.push_back(check_exact_success_curve(options.seed));
    results.push_back(check_sampled_success_rate(options.seed, options.quick));
    results.push_back(check_conclusive_povm_value());
    results.push_back(check_direct_branch_probabilities(options.seed));
    results.push_back(check_success_fidelity(options.seed));
    results.push_back(check_baseline_equivalence(options.seed));
    results.push_back(check_decomposition_identity(options.seed));
    results.push_back(check_structural_invariants());
    results.push_back(check_subspace_haar_average(options.seed, options.quick));
    results.push_back(check_analytic_vs_enumeration(options.seed));
    return results;
}

}  // namespace telsim
