#include "disent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace disent {

namespace {

void check_s(double s) {
    if (!(s >= 0 && s <= 0.5 + kNormTol)) {
        throw DomainError("Schmidt product " + std::to_string(s) + " outside [0, 1/2]");
    }
}

void check_machine(double eta, double Lambda) {
    if (!(eta > 0 && eta <= 1)) throw DomainError("eta = " + std::to_string(eta) + " outside (0, 1]");
    if (!(Lambda * Lambda <= (1 - eta * eta) / 4 + kNormTol)) {
        throw DomainError("Lambda = " + std::to_string(Lambda) + " exceeds sqrt((1 - eta^2)/4) for eta = " +
                          std::to_string(eta));
    }
}

// alpha^2 and beta^2 recovered from s = alpha beta (alpha >= beta; every
// evaluator is symmetric under the swap).
std::pair<double, double> squares_from_s(double s) {
    const double disc = std::sqrt(std::max(0.0, 1 - 4 * s * s));
    return {(1 + disc) / 2, (1 - disc) / 2};
}

struct Blocks {
    double b1, b2, b3, b4;
};

Blocks diagonal_blocks(double s, double ex, double ey) {
    const auto [a2, b2] = squares_from_s(s);
    return {
        (1 - ex) * (1 - ey) / 4 + a2 * (ex + ey) / 2,
        (1 - ex) * (1 + ey) / 4 + a2 * (ex - ey) / 2,
        (1 - ex) * (1 + ey) / 4 + b2 * (ex - ey) / 2,
        (1 - ex) * (1 - ey) / 4 + b2 * (ex + ey) / 2,
    };
}

std::array<double, 3> f_values(double s, double ex, double ey) {
    const auto [b1, b2, b3, b4] = diagonal_blocks(s, ex, ey);
    const double k = s * s * ex * ex * ey * ey;
    return {
        b1 * b2 + b1 * b3 + b1 * b4 + b2 * b3 + b2 * b4 + b3 * b4 - k,
        b1 * b2 * b3 + b1 * b2 * b4 + b1 * b3 * b4 + b2 * b3 * b4 - k * (b1 + b4),
        b1 * b2 * b3 * b4 - b1 * b4 * k,
    };
}

} // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::TA: return "TA";
    case CaseTag::SYM: return "SYM";
    case CaseTag::SYM_L0: return "SYM_L0";
    case CaseTag::SYM_MAXENT: return "SYM_MAXENT";
    case CaseTag::ASYM: return "ASYM";
    case CaseTag::ASYM_L0: return "ASYM_L0";
    }
    return "?";
}

double ConditionSet::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

SeparabilityVerdict ppt_verdict(const Matrix4c& rho, double tol) {
    require_density_matrix(rho);
    const auto check = is_psd(partial_transpose(rho, Side::second), tol);
    return {check.psd, check.min_eigenvalue, std::nullopt};
}

ConditionSet conditions_ta(double s, double eta_y, double Lambda_y) {
    check_s(s);
    check_machine(eta_y, Lambda_y);
    const double e = eta_y, L2 = Lambda_y * Lambda_y, s2 = s * s;
    return {CaseTag::TA,
            {
                1 - e * e + 2 * s2 * (1 - e * e - 4 * L2),
                s2 * ((1 + e) * (1 + e) * (1 - 2 * e) - 4 * L2),
                s2 * s2 * ((1 - 3 * e) * std::pow(1 + e, 3) + 8 * L2 * (2 * L2 - 1 + e * e)),
            }};
}

ConditionSet conditions_ta(double s, const MachineConfig& cfg_y) {
    return conditions_ta(s, cfg_y.eta(), cfg_y.Lambda());
}

ConditionSet conditions_sym(double s, double eta, double Lambda) {
    check_s(s);
    check_machine(eta, Lambda);
    const auto [alpha2, beta2] = squares_from_s(s);
    const double e = eta, L2 = Lambda * Lambda;
    const double a1 = (1 - e) * (1 - e) / 4 + alpha2 * e - 2 * s * L2;
    const double a2 = (1 - e * e) / 4 + 2 * s * L2;
    const double a3 = (1 - e) * (1 - e) / 4 + beta2 * e - 2 * s * L2;
    const double se2 = s * s * e * e;       // (alpha beta eta)^2
    const double s3e4 = s * s * s * std::pow(e, 4); // (alpha beta)^3 eta^4
    return {CaseTag::SYM,
            {
                a1 * (2 * a2 + a3) + a2 * (a2 + 2 * a3) - se2 * (4 * L2 + e * e),
                a1 * a2 * (a2 + 2 * a3) + a2 * a2 * a3 - (a1 + a3) * se2 * (2 * L2 + e * e) - 4 * a2 * se2 * L2 -
                    4 * s3e4 * L2,
                a1 * a2 * a2 * a3 - 2 * a2 * (a1 + a3) * se2 * L2 - a1 * a3 * s * s * std::pow(e, 4) -
                    2 * (a1 + a3) * s3e4 * L2,
            }};
}

ConditionSet conditions_sym(double s, const MachineConfig& cfg) {
    return conditions_sym(s, cfg.eta(), cfg.Lambda());
}

ConditionSet conditions_sym_L0(double s, double eta) {
    check_s(s);
    check_machine(eta, 0.0);
    const double e2 = eta * eta, se2 = s * s * e2, q = (1 - e2) * (1 - e2);
    return {CaseTag::SYM_L0,
            {
                (1 - e2) / 8 * (3 + e2 + 8 * se2),
                // Scaled by 1/16 so it coincides with the general symmetric evaluator.
                (q + 8 * se2 * (1 - 2 * e2 - e2 * e2)) / 16,
                (q / 16 + se2) * (q / 16 - s * s * e2 * e2),
            }};
}

ConditionSet conditions_maxent(double eta, double Lambda) {
    check_machine(eta, Lambda);
    const double e2 = eta * eta, e4 = e2 * e2, L2 = Lambda * Lambda, L4 = L2 * L2;
    return {CaseTag::SYM_MAXENT,
            {
                3.0 / 16 * (1 - e4) - L4,
                (1 - 3 * e4 - 2 * e4 * e2) / 16 - L4,
                (1 + e2 + 4 * L2) * (1 + e2 - 4 * L2) * (1 - 2 * e2 - 3 * e4 - 16 * L4),
            }};
}

double asym_overlap_residual(double s, double eta_x, double eta_y, double Lambda_x, double Lambda_y) {
    const double ex = eta_x, ey = eta_y, Lx = Lambda_x, Ly = Lambda_y;
    const double ex2 = ex * ex, ey2 = ey * ey;
    const double X = Lx * Lx * Ly * Ly;
    const double P = Lx * Lx * ey2 + Ly * Ly * ex2;
    const double Q = Lx * Lx * ey2 - Ly * Ly * ex2;
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    const double cross = Lx * Ly * ex * ey;
    return s4 / 2 * (4 * X * (ex2 + ey2 + 8 * X + 2 * ex2 * ey2) + 16 * X * P) +
           s4 / 2 * Q * (2 * Q + ex2 - ey2) +
           s3 * cross / 2 * ((2 - ex2 - ey2 - 16 * X) - 4 * P) -
           s2 / 8 * (4 * X * (1 + ex2 + ey2 - 3 * ex2 * ey2) + P * (1 - ex2 * ey2) + Q * (ex2 - ey2)) -
           s * cross * (1 - ex2) * (1 - ey2) / 8;
}

ConditionSet conditions_asym(double s, double eta_x, double eta_y, double Lambda_x, double Lambda_y) {
    check_s(s);
    check_machine(eta_x, Lambda_x);
    check_machine(eta_y, Lambda_y);
    const auto F = f_values(s, eta_x, eta_y);
    const double ex = eta_x, ey = eta_y, Lx = Lambda_x, Ly = Lambda_y;
    const double X = Lx * Lx * Ly * Ly;
    const double P = Lx * Lx * ey * ey + Ly * Ly * ex * ex;
    const double cross = ex * ey * Lx * Ly;
    return {CaseTag::ASYM,
            {
                F[0] + 2 * s * (cross - s * (4 * X + P)),
                F[1] + s * s * (4 * s * cross - P - 4 * X),
                F[2] + asym_overlap_residual(s, ex, ey, Lx, Ly),
            }};
}

ConditionSet conditions_asym(double s, const MachineConfig& cfg_x, const MachineConfig& cfg_y) {
    return conditions_asym(s, cfg_x.eta(), cfg_y.eta(), cfg_x.Lambda(), cfg_y.Lambda());
}

ConditionSet conditions_asym_L0(double s, double eta_x, double eta_y) {
    check_s(s);
    check_machine(eta_x, 0.0);
    check_machine(eta_y, 0.0);
    return {CaseTag::ASYM_L0, f_values(s, eta_x, eta_y)};
}

CrossValidation cross_validate(const TwoQubitPureState& st, const std::optional<MachineConfig>& cfg_x,
                               const std::optional<MachineConfig>& cfg_y, double tol) {
    if (!cfg_x && !cfg_y) throw DomainError("cross_validate needs at least one machine");

    CrossValidation out{};
    out.feasible = true;
    for (const auto* cfg : {&cfg_x, &cfg_y}) {
        if (*cfg && !gram_feasible(build_gram(**cfg)).psd) out.feasible = false;
    }
    const double s = st.schmidt_product();

    if (!cfg_x) {
        out.tag = CaseTag::TA;
        if (!out.feasible) return out;
        out.output = closed_form_ta(st, *cfg_y);
        out.conditions = conditions_ta(s, *cfg_y);
    } else {
        const MachineConfig x = *cfg_x;
        const MachineConfig y = cfg_y.value_or(MachineConfig::identity());
        if (cfg_y && x == y) {
            out.tag = x.lambda() == 0 ? CaseTag::SYM_L0 : std::abs(s - 0.5) <= kNormTol ? CaseTag::SYM_MAXENT : CaseTag::SYM;
            if (!out.feasible) return out;
            out.output = closed_form_sym(st, x);
            out.conditions = out.tag == CaseTag::SYM_L0       ? conditions_sym_L0(s, x.eta())
                             : out.tag == CaseTag::SYM_MAXENT ? conditions_maxent(x.eta(), x.Lambda())
                                                              : conditions_sym(s, x);
        } else {
            out.tag = (x.lambda() == 0 && y.lambda() == 0) ? CaseTag::ASYM_L0 : CaseTag::ASYM;
            if (!out.feasible) return out;
            out.output = closed_form_asym(st, x, y);
            out.conditions = out.tag == CaseTag::ASYM_L0 ? conditions_asym_L0(s, x.eta(), y.eta())
                                                         : conditions_asym(s, x, y);
        }
    }

    out.verdict = ppt_verdict(out.output, tol);
    out.verdict.conditions = out.conditions;
    const bool satisfied = out.conditions.satisfied();
    out.agree = satisfied == out.verdict.ppt;
    out.hard_failure = satisfied && out.verdict.min_pt_eigenvalue < -tol;
    return out;
}

CrossValidationSweep cross_validate_sweep(std::size_t draws, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> signed_unit(-1.0, 1.0);
    auto machine = [&] {
        const double e = 1.0 - unit(rng); // (0, 1]
        const double l = unit(rng) < 0.2 ? 0.0 : signed_unit(rng);
        return MachineConfig(e, l);
    };

    CrossValidationSweep sweep;
    for (std::size_t i = 0; i < draws; ++i) {
        const int kind = static_cast<int>(unit(rng) * 4);
        const TwoQubitPureState st = unit(rng) < 0.05 ? TwoQubitPureState::from_schmidt_product(0.5)
                                                      : TwoQubitPureState::from_alpha(unit(rng));
        std::optional<MachineConfig> x, y;
        switch (kind) {
        case 0: y = machine(); break;
        case 1: x = machine(); break;
        case 2: x = y = machine(); break;
        default:
            x = machine();
            y = machine();
            break;
        }
        ++sweep.draws;
        const auto cv = cross_validate(st, x, y, tol);
        if (!cv.feasible) {
            ++sweep.skipped_infeasible;
            continue;
        }
        ++sweep.evaluated;
        ++sweep.per_case[cv.tag];
        if (!cv.agree) ++sweep.disagreements;
        if (cv.hard_failure) {
            ++sweep.hard_failures;
            if (cv.conditions.satisfied(0.0)) ++sweep.strict_hard_failures;
        }
        if (cv.conditions.satisfied()) {
            sweep.worst_satisfied_violation = std::max(sweep.worst_satisfied_violation, -cv.verdict.min_pt_eigenvalue);
        }
    }
    return sweep;
}

} // namespace disent
