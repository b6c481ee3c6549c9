#include <gtest/gtest.h>

#include <cmath>

#include "disent/error.hpp"
#include "disent/frontier.hpp"

using namespace disent;

namespace {

const double kRoot3 = 1 / std::sqrt(3.0);

const UniversalityGrid& grid() {
    static const UniversalityGrid g = UniversalityGrid::uniform();
    return g;
}

} // namespace

TEST(Grid, Uniform) {
    const auto g = UniversalityGrid::uniform(11, 5);
    ASSERT_EQ(g.s.size(), 11u);
    EXPECT_EQ(g.s.front(), 0);
    EXPECT_EQ(g.s.back(), 0.5);
    EXPECT_EQ(g.refinement_depth, 5);
    EXPECT_EQ(UniversalityGrid::uniform().s.size(), 2001u);
}

TEST(UniversalOk, TaExamples) {
    EXPECT_TRUE(universal_ok(UniversalQuery::ta(0.3), grid()).ok);
    const auto r = universal_ok(UniversalQuery::ta(0.34), grid());
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.machines_feasible);
    EXPECT_NEAR(r.binding_s, 0.5, 1e-9);
}

TEST(UniversalOk, SymZeroLambda) {
    EXPECT_FALSE(universal_ok(UniversalQuery::sym_l0(0.58), grid()).ok);
    EXPECT_TRUE(universal_ok(UniversalQuery::sym_l0(0.577), grid()).ok);
    EXPECT_EQ(universal_ok(UniversalQuery::sym_l0(0.5), grid()).ok, universal_ok(UniversalQuery::sym(0.5), grid()).ok);
}

TEST(UniversalOk, MaxentOnlyChecksHalf) {
    const auto r = universal_ok(UniversalQuery::maxent(0.5, 0.3), grid());
    EXPECT_EQ(r.binding_s, 0.5);
    EXPECT_EQ(r.ok, conditions_maxent(0.5, MachineConfig(0.5, 0.3).Lambda()).satisfied());
}

TEST(UniversalOk, InfeasibleMachine) {
    const auto r = universal_ok(UniversalQuery::sym(0.5, 0.9), grid());
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.machines_feasible);
    EXPECT_TRUE(std::isnan(r.binding_s));
}

TEST(UniversalOk, RefinementNeverRaisesTheMinimum) {
    const auto q = UniversalQuery::asym(0.7, 0.3, 0.45, -0.2);
    const auto coarse = universal_ok(q, UniversalityGrid::uniform(21, 0));
    const auto fine = universal_ok(q, UniversalityGrid::uniform(21, 40));
    EXPECT_LE(fine.worst_margin, coarse.worst_margin);
}

TEST(EtaMaxTa, Value) {
    const auto r = eta_max_ta(grid());
    EXPECT_NEAR(r.eta_max, 1.0 / 3, 1e-4);
    EXPECT_TRUE(universal_ok(UniversalQuery::ta(r.eta_max - 1e-5), grid()).ok);
    EXPECT_FALSE(universal_ok(UniversalQuery::ta(r.eta_max + 1e-4), grid()).ok);
    EXPECT_FALSE(r.feasibility_bound);
    EXPECT_EQ(r.infeasible_probes, 0);
}

TEST(EtaMaxSym, ValueAtZero) {
    const auto r = eta_max_sym(0, grid());
    EXPECT_NEAR(r.eta_max, kRoot3, 1e-4);
    EXPECT_NEAR(r.binding_s, 0.5, 1e-9);
}

TEST(EtaMaxSym, BisectionContract) {
    for (double l2 : {0.0, 0.1, 0.2, 0.5}) {
        const auto r = eta_max_sym(l2, grid());
        const double lambda = std::sqrt(l2);
        EXPECT_TRUE(universal_ok(UniversalQuery::sym(r.eta_max - 10 * kBisectionTol, lambda), grid()).ok) << l2;
        EXPECT_FALSE(universal_ok(UniversalQuery::sym(r.eta_max + 10 * kBisectionTol, lambda), grid()).ok) << l2;
    }
}

TEST(EtaMaxSym, NonIncreasing) {
    double previous = 1;
    for (int i = 0; i <= 20; ++i) {
        const double v = eta_max_sym(0.05 * i, grid()).eta_max;
        EXPECT_LE(v, previous + 1e-6) << "lambda^2 = " << 0.05 * i;
        previous = v;
    }
    EXPECT_GE(eta_max_sym(0, grid()).eta_max, eta_max_sym(1, grid()).eta_max);
}

// Beyond lambda^2 ~ 0.29 the limit comes from machine existence, not separability.
TEST(EtaMaxSym, FeasibilityTakesOver) {
    const auto r = eta_max_sym(0.5, grid());
    EXPECT_TRUE(r.feasibility_bound);
    EXPECT_TRUE(std::isnan(r.binding_s));
    EXPECT_NEAR(r.eta_max, 1.0 / 3, 1e-5); // (1 - eta) / (1 + eta) = 1/2
    EXPECT_FALSE(eta_max_sym(0.1, grid()).feasibility_bound);
}

TEST(EtaMaxSym, Domain) {
    EXPECT_THROW(eta_max_sym(-0.1), DomainError);
    EXPECT_THROW(eta_max_sym(1.5), DomainError);
}

TEST(Frontier, Examples) {
    EXPECT_NEAR(eta_y_frontier(1, 0, 0, grid()).eta_y_max, 1.0 / 3, 1e-4);
    EXPECT_NEAR(eta_y_frontier(0.6, 0, 0, grid()).eta_y_max, 1 / 1.8, 1e-3);
    EXPECT_LE(eta_y_frontier(0.7, 0.2, -0.2, grid()).eta_y_max, 1 / 2.1 + 1e-6);
}

TEST(Frontier, Hyperbola) {
    for (double ex : figure2_default_eta_x()) {
        EXPECT_NEAR(ex * eta_y_frontier(ex, 0, 0, grid()).eta_y_max, 1.0 / 3, 1e-3) << ex;
    }
}

TEST(Frontier, CornerConsistency) {
    EXPECT_NEAR(eta_y_frontier(1, 0, 0, grid()).eta_y_max, eta_max_ta(grid()).eta_max, 2e-4);
    // Fixed point eta_x = eta_y_max(eta_x) on the (0, 0) frontier.
    double lo = 0.4, hi = 0.8;
    while (hi - lo > 1e-6) {
        const double mid = (lo + hi) / 2;
        (eta_y_frontier(mid, 0, 0, grid(), 1e-7).eta_y_max > mid ? lo : hi) = mid;
    }
    EXPECT_NEAR(lo, eta_max_sym(0, grid()).eta_max, 2e-4);
}

TEST(Frontier, Dominance) {
    const auto eta_x = figure2_default_eta_x();
    for (const auto& [lx, ly] : figure2_default_pairs()) {
        for (double ex : eta_x) {
            EXPECT_LE(eta_y_frontier(ex, lx, ly, grid()).eta_y_max, eta_y_frontier(ex, 0, 0, grid()).eta_y_max + 1e-6)
                << lx << "," << ly << " at " << ex;
        }
    }
}

TEST(Frontier, SignOfLambdaMatters) {
    // Odd Lambda_x Lambda_y terms make (0.3, 0.3) and (0.3, -0.3) differ.
    const double a = eta_y_frontier(0.6, 0.3, 0.3, grid()).eta_y_max;
    const double b = eta_y_frontier(0.6, 0.3, -0.3, grid()).eta_y_max;
    EXPECT_GT(std::abs(a - b), 1e-4);
}

TEST(Frontier, Domain) {
    EXPECT_THROW(eta_y_frontier(0, 0, 0), DomainError);
    EXPECT_THROW(eta_y_frontier(0.5, 2, 0), DomainError);
    EXPECT_THROW(eta_y_frontier(0.5, 0, -2), DomainError);
}

TEST(Scans, Figure1) {
    const auto l2 = figure1_default_grid();
    ASSERT_EQ(l2.size(), 21u);
    const auto rows = figure1_scan(l2, grid());
    ASSERT_EQ(rows.size(), 21u);
    EXPECT_NEAR(rows.front().ordinate, 0.5774, 1e-4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].abscissa, l2[i]);
        if (i > 0) {
            EXPECT_LE(rows[i].ordinate, rows[i - 1].ordinate + 1e-6);
        }
        EXPECT_GE(rows[i].ordinate, 0);
        EXPECT_LT(rows[i].ordinate, 1);
        EXPECT_EQ(rows[i].grid_n, 2001u);
    }
    EXPECT_GT(rows[rows.size() - 2].ordinate, 0);
}

TEST(Scans, Figure2) {
    const auto pairs = figure2_default_pairs();
    ASSERT_EQ(pairs.size(), 4u);
    EXPECT_EQ(pairs[1], LambdaPair(0.2, -0.2));
    EXPECT_EQ(pairs[2], LambdaPair(0.5, -0.5));
    EXPECT_EQ(pairs[3], LambdaPair(0.9, 0.1));

    const double half[] = {0.5};
    const auto rows = figure2_scan(half, pairs, grid());
    ASSERT_EQ(rows.size(), pairs.size());
    EXPECT_NEAR(rows[0].ordinate, 0.6667, 1e-3);
    for (const auto& r : rows) EXPECT_LE(r.ordinate, rows[0].ordinate + 1e-6);
}

TEST(Probe, Deterministic) {
    ProbeOptions opt;
    opt.samples = 500;
    const auto a = footnote7_probe(opt), b = footnote7_probe(opt);
    ASSERT_EQ(a.buckets.size(), b.buckets.size());
    for (std::size_t i = 0; i < a.buckets.size(); ++i) {
        EXPECT_EQ(a.buckets[i].positive, b.buckets[i].positive);
        EXPECT_EQ(a.buckets[i].max_residual, b.buckets[i].max_residual);
    }
    EXPECT_EQ(a.rejected, b.rejected);
}

TEST(Probe, ZeroLambdaResidualVanishes) {
    ProbeOptions opt;
    opt.samples = 200;
    opt.zero_lambda = true;
    const auto r = footnote7_probe(opt);
    for (const auto& b : r.buckets) {
        EXPECT_EQ(b.zero, opt.samples);
        EXPECT_EQ(b.max_residual, 0);
    }
}

TEST(Probe, BucketCounts) {
    ProbeOptions opt;
    opt.samples = 300;
    opt.buckets = 10;
    const auto r = footnote7_probe(opt);
    ASSERT_EQ(r.buckets.size(), 10u);
    EXPECT_EQ(r.buckets.back().s, 0.5);
    for (const auto& b : r.buckets) EXPECT_EQ(b.positive + b.negative + b.zero, opt.samples);
}

// Small Schmidt products do admit a positive residual.
TEST(Probe, PositiveAtSmallSchmidtProduct) {
    const auto r = footnote7_probe();
    EXPECT_GT(r.buckets.front().positive, 0u);
}

TEST(MixedStates, ShrinkFactorsPreserved) {
    const auto r = mixed_state_experiment(200, MachineConfig(0.8), MachineConfig(0.4), 5);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.samples, 200u);
    EXPECT_EQ(r.matched, 200u);
    EXPECT_LT(r.max_eta_error, 1e-8);
    EXPECT_LT(r.max_decomposition_residual, 1e-10);
}

TEST(MixedStates, PureAndMaximallyMixed) {
    const std::vector<Matrix4c> states = {pure_state_density(sample_random_pure_vector(1)), Matrix4c::Identity() / 4};
    const auto r = mixed_state_experiment(states, MachineConfig(0.8), MachineConfig(0.4));
    EXPECT_EQ(r.degenerate, 1u);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.matched, 1u);
}
