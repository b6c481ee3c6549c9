#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "disent/machine.hpp"
#include "disent/separability.hpp"

namespace disent {

inline constexpr double kBisectionTol = 1e-6;

/// Schmidt products s = alpha beta at which universality is tested. The
/// minimum over the grid is refined by golden-section search.
struct UniversalityGrid {
    std::vector<double> s; // ascending, includes 0 and 1/2
    int refinement_depth = 40;

    static UniversalityGrid uniform(std::size_t points = 2001, int refinement_depth = 40);
};

/// Machines whose conditions must hold for every s on the grid.
struct UniversalQuery {
    CaseTag tag;
    double eta_x = 1, lambda_x = 0;
    double eta_y = 1, lambda_y = 0;

    static UniversalQuery ta(double eta_y, double lambda_y = 0);
    static UniversalQuery sym(double eta, double lambda = 0);
    static UniversalQuery sym_l0(double eta);
    static UniversalQuery maxent(double eta, double lambda = 0);
    static UniversalQuery asym(double eta_x, double lambda_x, double eta_y, double lambda_y);
    static UniversalQuery asym_l0(double eta_x, double eta_y);
};

struct UniversalResult {
    bool ok;
    bool machines_feasible; // false: some Gram is not PSD, conditions not evaluated
    double worst_margin;    // smallest condition value found over s
    double binding_s;       // where it occurs
};

/// Smallest condition value of the query's case at one Schmidt product.
double condition_margin(const UniversalQuery& q, double s);

UniversalResult universal_ok(const UniversalQuery& q, const UniversalityGrid& grid = UniversalityGrid::uniform());

struct EtaMax {
    double eta_max;
    double binding_s;       // worst s at the smallest rejected eta; NaN when it was rejected as infeasible
    bool feasibility_bound; // smallest rejected eta failed on Gram feasibility
    int probes;
    int infeasible_probes;
};

/// Largest eta in (0, 1] accepted by `predicate` (assumed monotone), to absolute tolerance `tol`.
template <typename Predicate>
EtaMax bisect_eta(Predicate&& predicate, double tol = kBisectionTol);

EtaMax eta_max_ta(const UniversalityGrid& grid = UniversalityGrid::uniform(), double tol = kBisectionTol);
EtaMax eta_max_sym(double lambda_sq, const UniversalityGrid& grid = UniversalityGrid::uniform(),
                   double tol = kBisectionTol);

struct FrontierPoint {
    double eta_x, lambda_x, lambda_y;
    double eta_y_max;
    double binding_s;
    bool feasibility_bound;
    int infeasible_probes;
};

FrontierPoint eta_y_frontier(double eta_x, double lambda_x, double lambda_y,
                             const UniversalityGrid& grid = UniversalityGrid::uniform(), double tol = kBisectionTol);

struct ScanRow {
    CaseTag tag;
    double lambda_x, lambda_y;
    double abscissa; // lambda^2 (symmetric scan) or eta_x (asymmetric scan)
    double ordinate; // eta_max or eta_y_max
    double binding_s;
    std::size_t grid_n;
    double tol;
};

std::vector<double> figure1_default_grid(std::size_t points = 21);
std::vector<ScanRow> figure1_scan(std::span<const double> lambda_sq,
                                  const UniversalityGrid& grid = UniversalityGrid::uniform(),
                                  double tol = kBisectionTol);

using LambdaPair = std::pair<double, double>;
std::vector<LambdaPair> figure2_default_pairs();
std::vector<double> figure2_default_eta_x();
/// One row per (pair, eta_x), pairs outermost.
std::vector<ScanRow> figure2_scan(std::span<const double> eta_x, std::span<const LambdaPair> pairs,
                                  const UniversalityGrid& grid = UniversalityGrid::uniform(),
                                  double tol = kBisectionTol);

struct ProbeOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 7;
    std::size_t buckets = 50; // s = 0.5 k / buckets, k = 1..buckets
    bool signed_lambda = true;
    bool feasible_only = true;
    bool zero_lambda = false;
};

struct ProbeBucket {
    double s;
    std::size_t positive = 0, negative = 0, zero = 0;
    double max_residual;
};

/// Samples machine parameters and records, for each s, the sign of the
/// overlap residual of the third asymmetric condition.
struct ProbeReport {
    std::vector<ProbeBucket> buckets;
    std::size_t draws = 0;
    std::size_t rejected = 0;

    /// Every bucket saw at least one strictly positive residual.
    bool every_bucket_positive() const;
};

ProbeReport footnote7_probe(const ProbeOptions& options = {});

struct MixedStateReport {
    std::size_t samples = 0;
    std::size_t matched = 0;
    std::size_t degenerate = 0;
    std::size_t failures = 0;
    double max_eta_error = 0;
    double max_fit_residual = 0;
    double max_decomposition_residual = 0; // channel(rho) vs sum_i mu_i channel(psi_i)

    bool passed() const { return failures == 0; }
};

/// Applies the machines to each state, fits the shrink factors, and checks
/// linearity over the spectral decomposition.
MixedStateReport mixed_state_experiment(std::span<const Matrix4c> states, const MachineConfig& cfg_x,
                                        const MachineConfig& cfg_y, double eta_tol = 1e-8,
                                        double linearity_tol = 1e-10);
MixedStateReport mixed_state_experiment(std::size_t samples, const MachineConfig& cfg_x, const MachineConfig& cfg_y,
                                        std::uint64_t seed, double eta_tol = 1e-8, double linearity_tol = 1e-10);

// --- implementation ---

template <typename Predicate>
EtaMax bisect_eta(Predicate&& predicate, double tol) {
    EtaMax out{0.0, 0.0, false, 0, 0};
    auto probe = [&](double eta) {
        const UniversalResult r = predicate(eta);
        ++out.probes;
        if (!r.machines_feasible) ++out.infeasible_probes;
        return r;
    };

    UniversalResult rejected = probe(1.0);
    if (rejected.ok) {
        out.eta_max = 1.0;
        out.binding_s = rejected.binding_s;
        return out;
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const UniversalResult r = probe(mid);
        if (r.ok) {
            lo = mid;
        } else {
            hi = mid;
            rejected = r;
        }
    }
    out.eta_max = lo;
    out.feasibility_bound = !rejected.machines_feasible;
    out.binding_s = rejected.binding_s;
    return out;
}

} // namespace disent
