#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "disent/channel.hpp"
#include "disent/machine.hpp"
#include "disent/states.hpp"

namespace disent {

/// Satisfaction tolerance for condition values.
inline constexpr double kConditionTol = 1e-12;

/// Which closed-form condition family a ConditionSet belongs to.
///   TA          machine on y only
///   SYM         same machine on both qubits
///   SYM_L0      same machine, Lambda = 0
///   SYM_MAXENT  same machine, alpha beta = 1/2
///   ASYM        independent machines
///   ASYM_L0     independent machines, Lambda_x = Lambda_y = 0
enum class CaseTag { TA, SYM, SYM_L0, SYM_MAXENT, ASYM, ASYM_L0 };

std::string to_string(CaseTag tag);

/// Signed condition values; the output is certified separable when all are >= -tol.
struct ConditionSet {
    CaseTag tag;
    std::array<double, 3> values;

    double min_value() const;
    bool satisfied(double tol = kConditionTol) const { return min_value() >= -tol; }
};

struct SeparabilityVerdict {
    bool ppt;
    double min_pt_eigenvalue;
    std::optional<ConditionSet> conditions;
};

/// Peres-Horodecki test: PPT iff the partial transpose has min eigenvalue >= -tol.
/// Throws NotDensityMatrix for invalid input.
SeparabilityVerdict ppt_verdict(const Matrix4c& rho, double tol = kPsdTol);

// Closed-form condition evaluators. Every one depends on the Schmidt pair only
// through s = alpha * beta in [0, 1/2]. Throws DomainError on out-of-range
// arguments (including Lambda^2 > (1 - eta^2) / 4).

ConditionSet conditions_ta(double s, double eta_y, double Lambda_y);
ConditionSet conditions_ta(double s, const MachineConfig& cfg_y);

ConditionSet conditions_sym(double s, double eta, double Lambda);
ConditionSet conditions_sym(double s, const MachineConfig& cfg);

/// Values coincide with conditions_sym(s, eta, 0) entrywise.
ConditionSet conditions_sym_L0(double s, double eta);

/// Maximally entangled input (s = 1/2).
ConditionSet conditions_maxent(double eta, double Lambda);

ConditionSet conditions_asym(double s, double eta_x, double eta_y, double Lambda_x, double Lambda_y);
ConditionSet conditions_asym(double s, const MachineConfig& cfg_x, const MachineConfig& cfg_y);

/// (F1, F2, F3): the asymmetric conditions at Lambda_x = Lambda_y = 0.
ConditionSet conditions_asym_L0(double s, double eta_x, double eta_y);

/// Third asymmetric condition minus F3: the part carried by the overlap terms.
double asym_overlap_residual(double s, double eta_x, double eta_y, double Lambda_x, double Lambda_y);

struct CrossValidation {
    CaseTag tag;
    bool feasible;           // false: some machine Gram is not PSD; nothing else evaluated
    Matrix4c output;         // closed-form channel output
    ConditionSet conditions; // matching closed-form conditions
    SeparabilityVerdict verdict;
    bool agree;        // conditions satisfied <=> PPT
    bool hard_failure; // conditions satisfied but PT min eigenvalue < -tol
};

/// Builds the closed-form output for the attached machines, evaluates the
/// matching condition set and the PPT oracle, and compares them. A missing
/// x-machine selects TA; a missing y-machine is replaced by the identity.
/// Throws DomainError when neither machine is given.
CrossValidation cross_validate(const TwoQubitPureState& st, const std::optional<MachineConfig>& cfg_x,
                               const std::optional<MachineConfig>& cfg_y, double tol = 1e-8);

struct CrossValidationSweep {
    std::size_t draws = 0;
    std::size_t evaluated = 0;
    std::size_t skipped_infeasible = 0;
    std::size_t hard_failures = 0;
    /// Hard failures whose condition values are all >= 0 with no tolerance.
    std::size_t strict_hard_failures = 0;
    std::size_t disagreements = 0;
    /// Largest -min_pt_eigenvalue among draws whose conditions were satisfied.
    double worst_satisfied_violation = 0;
    std::map<CaseTag, std::size_t> per_case;
};

/// Random parameter sweep over all cases (deterministic per seed).
CrossValidationSweep cross_validate_sweep(std::size_t draws, std::uint64_t seed, double tol = 1e-8);

} // namespace disent
