#include "telsim/analysis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace telsim {

namespace {

// the four Bell-type labels shared by all three protocols
constexpr std::array<OutcomeLabel, 4> kBellTypeLabels = {
    OutcomeLabel::phi5, OutcomeLabel::phi6, OutcomeLabel::phi7,
    OutcomeLabel::phi8};

std::map<OutcomeLabel, double> zero_outcome_map() {
    std::map<OutcomeLabel, double> m;
    for (const auto label : kAllOutcomeLabels) m[label] = 0.0;
    return m;
}

AnalyticReport bbcjpw_analytic(const ChannelSpec& channel) {
    AnalyticReport report{channel, zero_outcome_map(), 1.0, 0.0};
    for (const auto label : kBellTypeLabels) report.per_outcome[label] = 0.25;
    const double a4 = channel.alpha_sq() * channel.alpha_sq();
    const double b4 = channel.beta_sq() * channel.beta_sq();
    report.conclusive_within_subspace = 2.0 * b4 / (a4 + b4);
    return report;
}

AnalyticReport mor_horodecki_analytic(const ChannelSpec& channel) {
    const double p_succ = 2.0 * channel.beta_sq();
    AnalyticReport report{channel, zero_outcome_map(), p_succ, 0.0};
    for (const auto label : kBellTypeLabels) {
        report.per_outcome[label] = p_succ / 4.0;
    }
    report.per_outcome[OutcomeLabel::subspace1_fail] = 1.0 - p_succ;
    const double a4 = channel.alpha_sq() * channel.alpha_sq();
    const double b4 = channel.beta_sq() * channel.beta_sq();
    report.conclusive_within_subspace = 2.0 * b4 / (a4 + b4);
    return report;
}

}  // namespace

std::string_view to_string(Protocol protocol) {
    switch (protocol) {
        case Protocol::qubit_assisted: return "qubit-assisted";
        case Protocol::bbcjpw: return "bbcjpw";
        case Protocol::mor_horodecki: return "mor-horodecki";
    }
    return "unknown";
}

std::optional<Protocol> protocol_from_string(std::string_view name) {
    if (name == "qubit-assisted") return Protocol::qubit_assisted;
    if (name == "bbcjpw") return Protocol::bbcjpw;
    if (name == "mor-horodecki") return Protocol::mor_horodecki;
    return std::nullopt;
}

AnalyticReport analytic_outcome_probs(const ChannelSpec& channel,
                                      const InputQubit& input) {
    const double a2 = channel.alpha_sq();
    const double b2 = channel.beta_sq();
    const double a4 = a2 * a2;
    const double b4 = b2 * b2;
    const double wa = std::norm(input.a());
    const double wb = std::norm(input.b());

    const double phi_each = a2 * b2 / 2.0;
    const double sub1 = wa * a4 + wb * b4;
    const double sub2 = wa * b4 + wb * a4;

    AnalyticReport report{channel, zero_outcome_map(), 0.0, 0.0};
    report.per_outcome[OutcomeLabel::phi5] = phi_each;
    report.per_outcome[OutcomeLabel::phi6] = phi_each;
    report.per_outcome[OutcomeLabel::phi7] = phi_each;
    report.per_outcome[OutcomeLabel::phi8] = phi_each;
    report.per_outcome[OutcomeLabel::subspace1_plus] = b4 / 2.0;
    report.per_outcome[OutcomeLabel::subspace1_minus] = b4 / 2.0;
    report.per_outcome[OutcomeLabel::subspace1_fail] = sub1 - b4;
    report.per_outcome[OutcomeLabel::subspace2_plus] = b4 / 2.0;
    report.per_outcome[OutcomeLabel::subspace2_minus] = b4 / 2.0;
    report.per_outcome[OutcomeLabel::subspace2_fail] = sub2 - b4;

    report.success_total = 4.0 * phi_each + 2.0 * b4;
    report.conclusive_within_subspace = 2.0 * b4 / (a4 + b4);
    return report;
}

AnalyticReport analytic_report(Protocol protocol, const ChannelSpec& channel,
                               const InputQubit& input) {
    switch (protocol) {
        case Protocol::qubit_assisted:
            return analytic_outcome_probs(channel, input);
        case Protocol::bbcjpw:
            return bbcjpw_analytic(channel);
        case Protocol::mor_horodecki:
            return mor_horodecki_analytic(channel);
    }
    throw std::invalid_argument("unknown protocol");
}

AnalyticReport analytic_haar_mean(Protocol protocol,
                                  const ChannelSpec& channel) {
    // the formulas depend on the input only through |a|^2, whose Haar mean
    // is 1/2
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return analytic_report(protocol, channel,
                           InputQubit(inv_sqrt2, inv_sqrt2));
}

InputQubit haar_random_input(RandomSource& randomness) {
    const cdouble a{randomness.gaussian(), randomness.gaussian()};
    const cdouble b{randomness.gaussian(), randomness.gaussian()};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return InputQubit(a / norm, b / norm);
}

TrialSummary monte_carlo(Protocol protocol, const ChannelSpec& channel,
                         const std::optional<InputQubit>& input,
                         std::size_t n_trials, std::uint64_t seed) {
    if (n_trials < 1) {
        throw std::invalid_argument("monte_carlo: n_trials must be >= 1");
    }

    std::optional<QubitAssistedPlan> plan;
    if (protocol == Protocol::qubit_assisted) plan.emplace(channel);

    std::map<OutcomeLabel, std::size_t> counts;
    for (const auto label : kAllOutcomeLabels) counts[label] = 0;
    std::size_t successes = 0;
    double fidelity_sum = 0.0;

    for (std::size_t i = 0; i < n_trials; ++i) {
        RandomSource rs(mix_seed(seed, i));
        const InputQubit trial_input = input ? *input : haar_random_input(rs);
        TeleportationRecord record = [&] {
            switch (protocol) {
                case Protocol::qubit_assisted:
                    return run_qubit_assisted(*plan, trial_input, rs);
                case Protocol::bbcjpw:
                    return run_bbcjpw(trial_input, rs);
                case Protocol::mor_horodecki:
                    return run_mor_horodecki(trial_input, channel, rs);
            }
            throw std::invalid_argument("unknown protocol");
        }();
        ++counts[record.outcome_label];
        if (record.success) {
            ++successes;
            fidelity_sum += fidelity(record.bob_state, trial_input.state());
        }
    }

    TrialSummary summary;
    summary.n_trials = n_trials;
    summary.seed = seed;
    const double n = static_cast<double>(n_trials);
    for (const auto& [label, count] : counts) {
        const double f = static_cast<double>(count) / n;
        summary.empirical_frequencies[label] = f;
        summary.standard_errors[label] = std::sqrt(f * (1.0 - f) / n);
    }
    summary.empirical_success = static_cast<double>(successes) / n;
    summary.mean_success_fidelity =
        successes > 0 ? fidelity_sum / static_cast<double>(successes) : 1.0;
    return summary;
}

std::vector<SweepRow> sweep_alpha(std::span<const double> alpha_sq_grid,
                                  Protocol protocol,
                                  const std::optional<InputQubit>& input,
                                  std::size_t n_trials, std::uint64_t seed) {
    std::vector<SweepRow> rows;
    rows.reserve(alpha_sq_grid.size());
    for (const double alpha_sq : alpha_sq_grid) {
        const ChannelSpec channel = ChannelSpec::from_alpha_sq(alpha_sq);
        const std::uint64_t row_seed =
            mix_seed(seed, std::bit_cast<std::uint64_t>(alpha_sq));
        const TrialSummary summary =
            monte_carlo(protocol, channel, input, n_trials, row_seed);
        const AnalyticReport analytic =
            input ? analytic_report(protocol, channel, *input)
                  : analytic_haar_mean(protocol, channel);
        const double p = summary.empirical_success;
        rows.push_back({alpha_sq, channel.beta_sq(), analytic.success_total, p,
                        std::sqrt(p * (1.0 - p) /
                                  static_cast<double>(summary.n_trials)),
                        analytic.conclusive_within_subspace,
                        summary.mean_success_fidelity});
    }
    return rows;
}

}  // namespace telsim
