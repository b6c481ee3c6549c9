#include "disent/verify.hpp"

#include <limits>
#include <sstream>

#include "disent/channel.hpp"
#include "disent/frontier.hpp"
#include "disent/separability.hpp"

namespace disent {

bool VerifyReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

SuiteResult suite_oracle_equivalence(std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const MachineConfig x = sample_feasible_machine(rng);
        const MachineConfig y = sample_feasible_machine(rng);
        const Matrix4c rho = pure_state_density(st);
        Matrix4c closed, sim;
        switch (i % 3) {
        case 0:
            closed = closed_form_ta(st, y);
            sim = simulate_channel(rho, std::nullopt, realize(y));
            break;
        case 1:
            closed = closed_form_sym(st, x);
            sim = simulate_channel(rho, realize(x), realize(x));
            break;
        default:
            closed = closed_form_asym(st, x, y);
            sim = simulate_channel(rho, realize(x), realize(y));
            break;
        }
        worst = std::max(worst, (closed - sim).cwiseAbs().maxCoeff());
    }
    return {"oracle_equivalence", worst <= 1e-10, draws, worst, 1e-10, "closed form vs isometry simulation"};
}

SuiteResult suite_isotropy(std::size_t per_point, std::uint64_t seed) {
    const double etas[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double fractions[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    double worst = 0, worst_l0 = 0;
    std::size_t count = 0;
    std::uint64_t stream = seed;
    for (double eta : etas) {
        const double bound = std::min(1.0, std::sqrt((1 - eta) / (1 + eta)));
        for (double f : fractions) {
            const MachineConfig cfg(eta, f * bound);
            const MachineRealization r = realize(cfg);
            for (std::size_t k = 0; k < per_point; ++k, ++count) {
                const BlochVector s = sample_bloch_vector(stream++, false);
                const BlochVector out = density_to_bloch(apply_local_channel(r, bloch_to_density(s)));
                const double dev = (out - eta * s).cwiseAbs().maxCoeff();
                worst = std::max(worst, dev);
                if (f == 0.0) worst_l0 = std::max(worst_l0, dev);
            }
        }
    }
    std::ostringstream note;
    note << "max deviation at lambda = 0: " << worst_l0;
    return {"isotropy", worst <= 1e-10, count, worst, 1e-10, note.str()};
}

SuiteResult suite_cross_validation(std::size_t draws, std::uint64_t seed) {
    const CrossValidationSweep sweep = cross_validate_sweep(draws, seed, 1e-8);
    std::ostringstream note;
    note << "evaluated " << sweep.evaluated << ", infeasible " << sweep.skipped_infeasible << ", hard failures "
         << sweep.hard_failures << " (" << sweep.strict_hard_failures << " with all values >= 0), disagreements "
         << sweep.disagreements;
    return {"cross_validation", sweep.hard_failures == 0, sweep.draws, sweep.worst_satisfied_violation, 1e-8,
            note.str()};
}

SuiteResult suite_mixed_states(std::size_t samples, std::uint64_t seed) {
    const MixedStateReport r = mixed_state_experiment(samples, MachineConfig(0.8), MachineConfig(0.4), seed);
    std::ostringstream note;
    note << "degenerate " << r.degenerate << ", linearity residual " << r.max_decomposition_residual;
    return {"mixed_states", r.passed(), r.samples, r.max_eta_error, 1e-8, note.str()};
}

SuiteResult suite_ta_marginal(std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const Matrix4c out = closed_form_ta(st, sample_feasible_machine(rng));
        Matrix2c expected = Matrix2c::Zero();
        expected(0, 0) = st.alpha() * st.alpha();
        expected(1, 1) = st.beta() * st.beta();
        worst = std::max(worst, (reduced_state(out, Side::first) - expected).cwiseAbs().maxCoeff());
    }
    return {"ta_marginal", worst <= 1e-12, draws, worst, 1e-12, "Tr_y of the TA output vs diag(alpha^2, beta^2)"};
}

SuiteResult suite_footnote7(std::size_t samples, std::uint64_t seed) {
    ProbeOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    const ProbeReport r = footnote7_probe(opt);
    std::size_t covered = 0;
    double first_uncovered = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& b : r.buckets) {
        if (b.positive > 0) {
            ++covered;
        } else if (first_uncovered == 0) {
            first_uncovered = b.s;
        }
        best = std::max(best, b.max_residual);
    }
    std::ostringstream note;
    note << covered << "/" << r.buckets.size() << " buckets with a positive residual";
    if (first_uncovered > 0) note << ", first without: s = " << first_uncovered;
    return {"footnote7", r.every_bucket_positive(), r.draws, best, 0.0, note.str()};
}

VerifyReport run_verify(SuiteSize size, std::uint64_t seed) {
    const bool full = size == SuiteSize::full;
    VerifyReport report;
    report.suites.push_back(suite_oracle_equivalence(full ? 1000 : 200, seed));
    report.suites.push_back(suite_isotropy(full ? 50 : 10, seed));
    report.suites.push_back(suite_cross_validation(full ? 100000 : 10000, seed));
    report.suites.push_back(suite_mixed_states(full ? 200 : 50, seed));
    report.suites.push_back(suite_ta_marginal(100, seed));
    report.suites.push_back(suite_footnote7(full ? 10000 : 1000, seed));
    return report;
}

} // namespace disent
