#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "disent/channel.hpp"
#include "disent/error.hpp"
#include "disent/verify.hpp"
#include "oracles.hpp"

using namespace disent;

TEST(ClosedFormTa, IdentityMachine) {
    const auto st = TwoQubitPureState::from_alpha(0.6);
    EXPECT_LT(oracle::max_abs_diff(closed_form_ta(st, MachineConfig(1.0)), pure_state_density(st)), 1e-15);
}

TEST(ClosedFormTa, ProductInput) {
    const MachineConfig c(0.4, 0.5);
    const Matrix4c out = closed_form_ta(TwoQubitPureState(1, 0), c);
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = 0.7;
    expected(1, 1) = 0.3;
    EXPECT_LT(oracle::max_abs_diff(out, expected), 1e-15);
}

TEST(ClosedFormTa, LeavesXUntouched) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < 100; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const Matrix2c red = reduced_state(closed_form_ta(st, sample_feasible_machine(rng)), Side::first);
        Matrix2c expected = Matrix2c::Zero();
        expected(0, 0) = st.alpha() * st.alpha();
        expected(1, 1) = st.beta() * st.beta();
        EXPECT_LT(oracle::max_abs_diff(red, expected), 1e-12);
    }
}

TEST(ClosedFormSym, IdentityMachine) {
    const auto st = TwoQubitPureState::from_alpha(0.3);
    EXPECT_LT(oracle::max_abs_diff(closed_form_sym(st, MachineConfig(1.0)), pure_state_density(st)), 1e-15);
}

TEST(ClosedFormSym, ProductInputDiagonal) {
    const double eta = 0.45;
    const Matrix4c out = closed_form_sym(TwoQubitPureState(1, 0), MachineConfig(eta));
    const double expected[] = {(1 - eta) * (1 - eta) / 4 + eta, (1 - eta * eta) / 4, (1 - eta * eta) / 4,
                               (1 - eta) * (1 - eta) / 4};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(out(i, i).real(), expected[i], 1e-15);
    EXPECT_LT(oracle::max_abs_diff(out, Matrix4c(out.diagonal().asDiagonal())), 1e-15);
}

TEST(ClosedFormAsym, ReducesToTa) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < 100; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const MachineConfig y = sample_feasible_machine(rng);
        EXPECT_LT(oracle::max_abs_diff(closed_form_asym(st, MachineConfig(1.0), y), closed_form_ta(st, y)), 1e-12);
    }
}

TEST(ClosedFormAsym, ReducesToSym) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < 100; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const MachineConfig c = sample_feasible_machine(rng);
        EXPECT_LT(oracle::max_abs_diff(closed_form_asym(st, c, c), closed_form_sym(st, c)), 1e-12);
    }
}

TEST(Simulation, MatchesClosedForms) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0, 1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto st = TwoQubitPureState::from_alpha(unit(rng));
        const MachineConfig x = sample_feasible_machine(rng);
        const MachineConfig y = sample_feasible_machine(rng);
        const Matrix4c rho = pure_state_density(st);
        const auto rx = realize(x), ry = realize(y);
        worst = std::max(worst, oracle::max_abs_diff(closed_form_ta(st, y), simulate_channel(rho, std::nullopt, ry)));
        worst = std::max(worst, oracle::max_abs_diff(closed_form_sym(st, x), simulate_channel(rho, rx, rx)));
        worst = std::max(worst, oracle::max_abs_diff(closed_form_asym(st, x, y), simulate_channel(rho, rx, ry)));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(Simulation, NoMachines) {
    const Matrix4c rho = sample_random_state(StateKind::mixed, 9);
    EXPECT_LT(oracle::max_abs_diff(simulate_channel(rho, std::nullopt, std::nullopt), rho), 1e-15);
}

TEST(Simulation, XOnlyMirrorsYOnly) {
    // Swapping the qubits of a Schmidt state leaves it invariant, so a machine on
    // x alone produces the swapped TA output.
    const auto st = TwoQubitPureState::from_alpha(0.7);
    const MachineConfig c(0.4, 0.3);
    const Matrix4c out = simulate_channel(pure_state_density(st), realize(c), std::nullopt);
    Eigen::Matrix4d swap = Eigen::Matrix4d::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    const Matrix4c swapped = swap.cast<std::complex<double>>() * closed_form_ta(st, c) * swap.cast<std::complex<double>>();
    EXPECT_LT(oracle::max_abs_diff(out, swapped), 1e-12);
}

TEST(Simulation, MaximallyMixedIsFixed) {
    const Matrix4c rho = Matrix4c::Identity() / 4;
    const auto rx = realize(MachineConfig(0.3, 0.5)), ry = realize(MachineConfig(0.7, -0.2));
    EXPECT_LT(oracle::max_abs_diff(simulate_channel(rho, rx, ry), rho), 1e-14);
}

TEST(Simulation, Linearity) {
    const auto rx = realize(MachineConfig(0.6, 0.4)), ry = realize(MachineConfig(0.5, -0.3));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix4c r1 = sample_random_state(StateKind::mixed, seed);
        const Matrix4c r2 = sample_random_state(StateKind::pure, seed + 100);
        const double mu = 0.05 * static_cast<double>(seed);
        const Matrix4c lhs = simulate_channel(mu * r1 + (1 - mu) * r2, rx, ry);
        const Matrix4c rhs = mu * simulate_channel(r1, rx, ry) + (1 - mu) * simulate_channel(r2, rx, ry);
        EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-10);
    }
}

TEST(Simulation, OutputsAreDensityMatrices) {
    std::mt19937_64 rng(10);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Matrix4c out =
            simulate_channel(sample_random_state(StateKind::mixed, seed), realize(sample_feasible_machine(rng)),
                             realize(sample_feasible_machine(rng)));
        EXPECT_NEAR(std::abs(out.trace() - 1.0), 0, 1e-12);
        EXPECT_LT(oracle::max_abs_diff(out, out.adjoint()), 1e-12);
        EXPECT_GE(oracle::min_eigenvalue(out), -1e-12);
    }
}

TEST(ShrinkFactors, IdentityPair) {
    const Matrix4c rho = sample_random_state(StateKind::mixed, 4);
    const ShrinkFit fit = reduced_shrink_factors(rho, rho);
    EXPECT_NEAR(fit.eta_x, 1, 1e-12);
    EXPECT_NEAR(fit.eta_y, 1, 1e-12);
}

TEST(ShrinkFactors, TaAtThird) {
    const auto st = TwoQubitPureState::from_alpha(std::sqrt(0.7));
    const Matrix4c rho = pure_state_density(st);
    const Matrix4c out = simulate_channel(rho, std::nullopt, realize(MachineConfig(1.0 / 3)));
    const ShrinkFit fit = reduced_shrink_factors(rho, out);
    EXPECT_NEAR(fit.eta_x, 1, 1e-10);
    EXPECT_NEAR(fit.eta_y, 1.0 / 3, 1e-10);
    EXPECT_LT(std::max(fit.residual_x, fit.residual_y), 1e-10);
}

TEST(ShrinkFactors, MaximallyEntangledIsDegenerate) {
    const auto st = TwoQubitPureState::from_schmidt_product(0.5);
    const Matrix4c rho = pure_state_density(st);
    EXPECT_THROW(reduced_shrink_factors(rho, closed_form_sym(st, MachineConfig(0.5))), DegenerateInput);
}

TEST(ShrinkFactors, MixedInputsAtZeroLambda) {
    const auto rx = realize(MachineConfig(0.8)), ry = realize(MachineConfig(0.4));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Matrix4c rho = sample_random_state(StateKind::mixed, seed);
        const ShrinkFit fit = reduced_shrink_factors(rho, simulate_channel(rho, rx, ry));
        EXPECT_NEAR(fit.eta_x, 0.8, 1e-8);
        EXPECT_NEAR(fit.eta_y, 0.4, 1e-8);
    }
}
