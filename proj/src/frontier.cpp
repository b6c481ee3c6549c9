#include "disent/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "disent/channel.hpp"

namespace disent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool feasible(double eta, double lambda) {
    return gram_feasible(build_gram(MachineConfig(eta, lambda))).psd;
}

double Lambda_of(double eta, double lambda) {
    return lambda * std::sqrt((1 - eta * eta) / 4);
}

} // namespace

UniversalityGrid UniversalityGrid::uniform(std::size_t points, int refinement_depth) {
    points = std::max<std::size_t>(points, 2);
    UniversalityGrid grid;
    grid.refinement_depth = refinement_depth;
    grid.s.resize(points);
    for (std::size_t i = 0; i < points; ++i) grid.s[i] = 0.5 * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.s.back() = 0.5;
    return grid;
}

UniversalQuery UniversalQuery::ta(double eta_y, double lambda_y) {
    return {CaseTag::TA, 1, 0, eta_y, lambda_y};
}
UniversalQuery UniversalQuery::sym(double eta, double lambda) {
    return {CaseTag::SYM, eta, lambda, eta, lambda};
}
UniversalQuery UniversalQuery::sym_l0(double eta) {
    return {CaseTag::SYM_L0, eta, 0, eta, 0};
}
UniversalQuery UniversalQuery::maxent(double eta, double lambda) {
    return {CaseTag::SYM_MAXENT, eta, lambda, eta, lambda};
}
UniversalQuery UniversalQuery::asym(double eta_x, double lambda_x, double eta_y, double lambda_y) {
    return {CaseTag::ASYM, eta_x, lambda_x, eta_y, lambda_y};
}
UniversalQuery UniversalQuery::asym_l0(double eta_x, double eta_y) {
    return {CaseTag::ASYM_L0, eta_x, 0, eta_y, 0};
}

double condition_margin(const UniversalQuery& q, double s) {
    const double Lx = Lambda_of(q.eta_x, q.lambda_x);
    const double Ly = Lambda_of(q.eta_y, q.lambda_y);
    switch (q.tag) {
    case CaseTag::TA: return conditions_ta(s, q.eta_y, Ly).min_value();
    case CaseTag::SYM: return conditions_sym(s, q.eta_y, Ly).min_value();
    case CaseTag::SYM_L0: return conditions_sym_L0(s, q.eta_y).min_value();
    case CaseTag::SYM_MAXENT: return conditions_maxent(q.eta_y, Ly).min_value();
    case CaseTag::ASYM: return conditions_asym(s, q.eta_x, q.eta_y, Lx, Ly).min_value();
    case CaseTag::ASYM_L0: return conditions_asym_L0(s, q.eta_x, q.eta_y).min_value();
    }
    return kNaN;
}

UniversalResult universal_ok(const UniversalQuery& q, const UniversalityGrid& grid) {
    const bool uses_x = q.tag != CaseTag::TA;
    if ((uses_x && !feasible(q.eta_x, q.lambda_x)) || !feasible(q.eta_y, q.lambda_y)) {
        return {false, false, kNaN, kNaN};
    }
    if (q.tag == CaseTag::SYM_MAXENT) {
        const double m = condition_margin(q, 0.5);
        return {m >= -kConditionTol, true, m, 0.5};
    }

    std::size_t worst_i = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.s.size(); ++i) {
        const double m = condition_margin(q, grid.s[i]);
        if (m < worst) {
            worst = m;
            worst_i = i;
        }
    }
    double binding = grid.s[worst_i];

    // Golden-section search on the bracket around the grid minimum.
    double a = grid.s[worst_i == 0 ? 0 : worst_i - 1];
    double b = grid.s[std::min(worst_i + 1, grid.s.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = condition_margin(q, c), fd = condition_margin(q, d);
    for (int it = 0; it < grid.refinement_depth && b > a; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = condition_margin(q, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = condition_margin(q, d);
        }
    }
    for (auto [s, m] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (m < worst) {
            worst = m;
            binding = s;
        }
    }
    return {worst >= -kConditionTol, true, worst, binding};
}

EtaMax eta_max_ta(const UniversalityGrid& grid, double tol) {
    return bisect_eta([&](double eta) { return universal_ok(UniversalQuery::ta(eta), grid); }, tol);
}

EtaMax eta_max_sym(double lambda_sq, const UniversalityGrid& grid, double tol) {
    if (!(lambda_sq >= 0 && lambda_sq <= 1)) throw DomainError("lambda^2 = " + std::to_string(lambda_sq) + " outside [0, 1]");
    const double lambda = std::sqrt(lambda_sq);
    return bisect_eta([&](double eta) { return universal_ok(UniversalQuery::sym(eta, lambda), grid); }, tol);
}

FrontierPoint eta_y_frontier(double eta_x, double lambda_x, double lambda_y, const UniversalityGrid& grid,
                             double tol) {
    // Validates the domains up front.
    const MachineConfig x(eta_x, lambda_x);
    const MachineConfig y_probe(1.0, lambda_y);
    const EtaMax r = bisect_eta(
        [&](double eta_y) { return universal_ok(UniversalQuery::asym(x.eta(), x.lambda(), eta_y, lambda_y), grid); },
        tol);
    return {eta_x, lambda_x, y_probe.lambda(), r.eta_max, r.binding_s, r.feasibility_bound, r.infeasible_probes};
}

std::vector<double> figure1_default_grid(std::size_t points) {
    std::vector<double> out(std::max<std::size_t>(points, 2));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(i) / static_cast<double>(out.size() - 1);
    return out;
}

std::vector<ScanRow> figure1_scan(std::span<const double> lambda_sq, const UniversalityGrid& grid, double tol) {
    std::vector<ScanRow> rows;
    rows.reserve(lambda_sq.size());
    for (double l2 : lambda_sq) {
        const EtaMax r = eta_max_sym(l2, grid, tol);
        const double lambda = std::sqrt(l2);
        rows.push_back({CaseTag::SYM, lambda, lambda, l2, r.eta_max, r.binding_s, grid.s.size(), tol});
    }
    return rows;
}

std::vector<LambdaPair> figure2_default_pairs() {
    return {{0.0, 0.0}, {0.2, -0.2}, {0.5, -0.5}, {0.9, 0.1}};
}

std::vector<double> figure2_default_eta_x() {
    return {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

std::vector<ScanRow> figure2_scan(std::span<const double> eta_x, std::span<const LambdaPair> pairs,
                                  const UniversalityGrid& grid, double tol) {
    std::vector<ScanRow> rows;
    rows.reserve(eta_x.size() * pairs.size());
    for (const auto& [lx, ly] : pairs) {
        for (double ex : eta_x) {
            const FrontierPoint p = eta_y_frontier(ex, lx, ly, grid, tol);
            rows.push_back({CaseTag::ASYM, lx, ly, ex, p.eta_y_max, p.binding_s, grid.s.size(), tol});
        }
    }
    return rows;
}

bool ProbeReport::every_bucket_positive() const {
    return std::all_of(buckets.begin(), buckets.end(), [](const ProbeBucket& b) { return b.positive > 0; });
}

ProbeReport footnote7_probe(const ProbeOptions& options) {
    ProbeReport report;
    const std::size_t n = std::max<std::size_t>(options.buckets, 1);
    for (std::size_t k = 1; k <= n; ++k) {
        report.buckets.push_back({0.5 * static_cast<double>(k) / static_cast<double>(n), 0, 0, 0,
                                  -std::numeric_limits<double>::infinity()});
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lambda_lo = options.signed_lambda ? -1.0 : 0.0;
    std::uniform_real_distribution<double> lambda_dist(lambda_lo, 1.0);

    while (report.draws < options.samples) {
        const double ex = 1.0 - unit(rng);
        const double ey = 1.0 - unit(rng);
        double lx = lambda_dist(rng);
        double ly = lambda_dist(rng);
        if (options.zero_lambda) lx = ly = 0.0;
        if (options.feasible_only && !(feasible(ex, lx) && feasible(ey, ly))) {
            ++report.rejected;
            continue;
        }
        ++report.draws;
        const double Lx = Lambda_of(ex, lx), Ly = Lambda_of(ey, ly);
        for (auto& b : report.buckets) {
            const double r = asym_overlap_residual(b.s, ex, ey, Lx, Ly);
            b.max_residual = std::max(b.max_residual, r);
            if (r > 0) {
                ++b.positive;
            } else if (r < 0) {
                ++b.negative;
            } else {
                ++b.zero;
            }
        }
    }
    return report;
}

MixedStateReport mixed_state_experiment(std::span<const Matrix4c> states, const MachineConfig& cfg_x,
                                        const MachineConfig& cfg_y, double eta_tol, double linearity_tol) {
    const std::optional<MachineRealization> x = realize(cfg_x);
    const std::optional<MachineRealization> y = realize(cfg_y);

    MixedStateReport report;
    for (const Matrix4c& rho : states) {
        ++report.samples;
        const Matrix4c out = simulate_channel(rho, x, y);

        const MixedStateEnsemble ens = spectral_decompose(rho);
        Matrix4c mixed_out = Matrix4c::Zero();
        for (std::size_t i = 0; i < ens.weights.size(); ++i) {
            mixed_out += ens.weights[i] * simulate_channel(pure_state_density(ens.components[i]), x, y);
        }
        const double lin = (mixed_out - out).cwiseAbs().maxCoeff();
        report.max_decomposition_residual = std::max(report.max_decomposition_residual, lin);

        bool ok = lin <= linearity_tol;
        try {
            const ShrinkFit fit = reduced_shrink_factors(rho, out);
            const double err = std::max(std::abs(fit.eta_x - cfg_x.eta()), std::abs(fit.eta_y - cfg_y.eta()));
            report.max_eta_error = std::max(report.max_eta_error, err);
            report.max_fit_residual = std::max({report.max_fit_residual, fit.residual_x, fit.residual_y});
            ok = ok && err <= eta_tol;
            if (ok) ++report.matched;
        } catch (const DegenerateInput&) {
            ++report.degenerate;
        }
        if (!ok) ++report.failures;
    }
    return report;
}

MixedStateReport mixed_state_experiment(std::size_t samples, const MachineConfig& cfg_x, const MachineConfig& cfg_y,
                                        std::uint64_t seed, double eta_tol, double linearity_tol) {
    std::vector<Matrix4c> states;
    states.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) states.push_back(sample_random_state(StateKind::mixed, seed + i));
    return mixed_state_experiment(states, cfg_x, cfg_y, eta_tol, linearity_tol);
}

} // namespace disent
