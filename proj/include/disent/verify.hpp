#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "disent/machine.hpp"

namespace disent {

struct SuiteResult {
    std::string name;
    bool passed;
    std::size_t count;   // draws, states or grid points checked
    double max_residual; // suite-specific, compared against `tolerance`
    double tolerance;
    std::string note;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    bool passed() const;
};

enum class SuiteSize { quick, full };

/// Random feasible machine: eta uniform in (0, 1], lambda uniform over the
/// Gram-feasible interval for that eta.
template <typename Rng>
MachineConfig sample_feasible_machine(Rng& rng);

SuiteResult suite_oracle_equivalence(std::size_t draws, std::uint64_t seed);
/// 5 x 5 grid of (eta, lambda / lambda_max(eta)), `per_point` Bloch vectors each.
SuiteResult suite_isotropy(std::size_t per_point, std::uint64_t seed);
SuiteResult suite_cross_validation(std::size_t draws, std::uint64_t seed);
SuiteResult suite_mixed_states(std::size_t samples, std::uint64_t seed);
SuiteResult suite_ta_marginal(std::size_t draws, std::uint64_t seed);
SuiteResult suite_footnote7(std::size_t samples, std::uint64_t seed);

VerifyReport run_verify(SuiteSize size, std::uint64_t seed);

// --- implementation ---

template <typename Rng>
MachineConfig sample_feasible_machine(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eta = 1.0 - unit(rng);
    const double bound = std::min(1.0, std::sqrt((1 - eta) / (1 + eta)));
    const double t = 2 * unit(rng) - 1;
    return {eta, t * bound};
}

} // namespace disent
