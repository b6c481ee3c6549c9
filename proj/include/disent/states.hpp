#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "disent/numerics.hpp"

namespace disent {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using BlochVector = Eigen::Vector3d;

inline constexpr double kNormTol = 1e-12;

/// alpha|00> + beta|11> with alpha, beta >= 0 and alpha^2 + beta^2 = 1.
class TwoQubitPureState {
public:
    /// Throws NormalizationError unless alpha, beta >= 0 and the pair is normalized.
    TwoQubitPureState(double alpha, double beta);

    /// beta = sqrt(1 - alpha^2); alpha must lie in [0, 1].
    static TwoQubitPureState from_alpha(double alpha);
    /// The state with Schmidt product alpha*beta = s in [0, 1/2] and alpha >= beta.
    static TwoQubitPureState from_schmidt_product(double s);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double schmidt_product() const { return alpha_ * beta_; }
    Vector4c vector() const;

private:
    double alpha_;
    double beta_;
};

/// Spectral ensemble sum_i weight_i |psi_i><psi_i|, weights descending.
struct MixedStateEnsemble {
    std::vector<double> weights;
    std::vector<Vector4c> components;

    Matrix4c density() const;
};

enum class StateKind { pure, mixed };

Matrix4c pure_state_density(const TwoQubitPureState& st);
Matrix4c pure_state_density(const Vector4c& psi);

/// rho = (I + s . sigma) / 2. Throws BlochNormError if |s| > 1 + 1e-12.
Matrix2c bloch_to_density(const BlochVector& s);
BlochVector density_to_bloch(const Matrix2c& rho);

/// Throws NotDensityMatrix unless rho is Hermitian, unit trace and PSD.
void require_density_matrix(const Eigen::Ref<const ComplexMatrix>& rho, double tol = kPsdTol);
bool is_density_matrix(const Eigen::Ref<const ComplexMatrix>& rho, double tol = kPsdTol);

/// Eigen-decomposition of a two-qubit density matrix, dropping weights below 1e-13.
MixedStateEnsemble spectral_decompose(const Matrix4c& rho);

/// Deterministic random two-qubit state. Pure states are Haar-uniform unit
/// 4-vectors (normalized complex Gaussian); mixed states are G G^dagger / tr
/// with G a 4x4 complex Gaussian matrix (Hilbert-Schmidt measure).
Matrix4c sample_random_state(StateKind kind, std::uint64_t seed);
Vector4c sample_random_pure_vector(std::uint64_t seed);

/// Uniform point on the unit sphere when `pure`, else uniform in the ball.
BlochVector sample_bloch_vector(std::uint64_t seed, bool pure);

/// Reduced state of qubit x (side first) or y (side second).
Matrix2c reduced_state(const Matrix4c& rho, Side keep);

} // namespace disent
