#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "disent/numerics.hpp"
#include "disent/states.hpp"

namespace disent {

/// One local machine, parameterized by its reduction factor eta in (0, 1] and
/// the overlap parameter lambda = Im<M0|M~0> in [-1, 1].
///
/// The four amplitudes are taken real and non-negative:
///   m0 = m1t = sqrt((1 + eta) / 2),   m1 = m0t = sqrt((1 - eta) / 2).
class MachineConfig {
public:
    /// Throws DomainError outside eta in (0, 1], lambda in [-1, 1].
    MachineConfig(double eta, double lambda = 0.0);

    /// The trivial machine (eta = 1, lambda = 0): identity channel.
    static MachineConfig identity() { return {1.0, 0.0}; }

    double eta() const { return eta_; }
    double lambda() const { return lambda_; }

    double m0() const;
    double m1() const;
    double m0t() const;
    double m1t() const;
    /// Lambda = lambda * sqrt((1 - eta^2) / 4) = Im{m0* m0t <M0|M~0>}.
    double Lambda() const;

    friend bool operator==(const MachineConfig&, const MachineConfig&) = default;

private:
    double eta_;
    double lambda_;
};

/// Positions of the machine states in the Gram matrix and in MachineRealization::vectors.
enum MachineState : Index { M0 = 0, M1 = 1, M0t = 2, M1t = 3 };

/// g(a, b) = <a|b> over (M0, M1, M~0, M~1).
struct MachineGram {
    Matrix4c g;
};

struct MachineRealization {
    /// Column k is the machine state with MachineState index k (4-dim machine space).
    Matrix4c vectors;
    /// Amplitudes (m0, m1, m0t, m1t) used to assemble the isometry.
    Eigen::Vector4d amplitudes;
    /// qubit -> qubit (x) machine, row index = qubit * 4 + machine.
    Eigen::Matrix<std::complex<double>, 8, 2> isometry;
};

struct ConstraintResidual {
    std::string name;
    double value;
};

struct ConstraintReport {
    std::vector<ConstraintResidual> residuals;

    double max_residual() const;
    double residual(const std::string& name) const;
};

MachineGram build_gram(const MachineConfig& cfg);

/// PSD test of the Gram (tolerance relative to spectral radius, see is_psd).
PsdCheck<double> gram_feasible(const MachineGram& g, double tol = kPsdTol);

/// Factorizes the Gram with a pivoted Cholesky and assembles the isometry.
/// Throws InfeasibleMachine when the Gram is not PSD.
MachineRealization realize(const MachineConfig& cfg);

/// Numerical residuals of every machine constraint for a realization.
ConstraintReport verify_machine_constraints(const MachineRealization& r, const MachineConfig& cfg);

/// Tr_M[V rho V^dagger] for a single-qubit input.
Matrix2c apply_local_channel(const MachineRealization& r, const Matrix2c& rho);

} // namespace disent
