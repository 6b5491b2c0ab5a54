// analysis.hpp
// Closed-form outcome probabilities, a seeded Monte Carlo harness, Haar
// input sampling and channel sweeps. The analytic layer and the state-vector
// enumeration in protocols are independent computations of the same
// distributions and are cross-checked against each other in the tests.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "telsim/protocols.hpp"

namespace telsim {

enum class Protocol { qubit_assisted, bbcjpw, mor_horodecki };

std::string_view to_string(Protocol protocol);
std::optional<Protocol> protocol_from_string(std::string_view name);

struct AnalyticReport {
    ChannelSpec channel;
    std::map<OutcomeLabel, double> per_outcome;
    double success_total;
    // conclusive probability of the discrimination stage, a property of the
    // channel: 2 beta^4 / (alpha^4 + beta^4)
    double conclusive_within_subspace;
};

// Exact branch distribution of the ancilla-assisted protocol for a concrete
// input. The direct branches carry alpha^2 beta^2 / 2 each; the subspace
// branches depend on the input through |a|^2, |b|^2 while their conclusive
// parts are input-independent (beta^4 / 2 each).
AnalyticReport analytic_outcome_probs(const ChannelSpec& channel,
                                      const InputQubit& input);

// Same, dispatched over the three protocols.
AnalyticReport analytic_report(Protocol protocol, const ChannelSpec& channel,
                               const InputQubit& input);

// Input-averaged report (|a|^2 -> 1/2), the distribution seen over
// Haar-random inputs.
AnalyticReport analytic_haar_mean(Protocol protocol,
                                  const ChannelSpec& channel);

// Uniformly distributed pure qubit, from a pair of complex Gaussians.
InputQubit haar_random_input(RandomSource& randomness);

struct TrialSummary {
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
    std::map<OutcomeLabel, double> empirical_frequencies;
    std::map<OutcomeLabel, double> standard_errors;
    double empirical_success = 0.0;
    // mean fidelity over successful trials; 1 by convention when no trial
    // succeeded
    double mean_success_fidelity = 1.0;
};

// Runs `protocol` n_trials times; trial i draws its randomness from
// mix_seed(seed, i), so summaries are a pure function of the arguments.
// A nullopt input draws a fresh Haar-random input per trial. bbcjpw always
// runs on the maximally entangled channel and ignores `channel`.
TrialSummary monte_carlo(Protocol protocol, const ChannelSpec& channel,
                         const std::optional<InputQubit>& input,
                         std::size_t n_trials, std::uint64_t seed);

struct SweepRow {
    double alpha_sq;
    double beta_sq;
    double analytic_success;
    double empirical_success;
    double std_err;
    double conclusive_within_subspace;
    double mean_success_fidelity;
};

// One Monte Carlo run per grid point; per-row seeds derive from the seed and
// the grid value itself, so a row's result does not depend on the rest of
// the grid. Grid values must lie in [0.5, 1].
std::vector<SweepRow> sweep_alpha(std::span<const double> alpha_sq_grid,
                                  Protocol protocol,
                                  const std::optional<InputQubit>& input,
                                  std::size_t n_trials, std::uint64_t seed);

}  // namespace telsim
