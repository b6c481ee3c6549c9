#include "disent/states.hpp"

#include <cmath>
#include <random>
#include <string>

namespace disent {

namespace {

const Matrix2c kPauliX = (Matrix2c() << 0, 1, 1, 0).finished();
const Matrix2c kPauliY = (Matrix2c() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0).finished();
const Matrix2c kPauliZ = (Matrix2c() << 1, 0, 0, -1).finished();

std::complex<double> complex_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

TwoQubitPureState::TwoQubitPureState(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha >= 0 && beta >= 0) || std::abs(alpha * alpha + beta * beta - 1) > kNormTol) {
        throw NormalizationError("Schmidt pair (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                                 ") must be non-negative with alpha^2 + beta^2 = 1");
    }
}

TwoQubitPureState TwoQubitPureState::from_alpha(double alpha) {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw NormalizationError("alpha = " + std::to_string(alpha) + " outside [0, 1]");
    }
    return {alpha, std::sqrt(std::max(0.0, 1 - alpha * alpha))};
}

TwoQubitPureState TwoQubitPureState::from_schmidt_product(double s) {
    if (!(s >= 0 && s <= 0.5 + kNormTol)) {
        throw NormalizationError("Schmidt product " + std::to_string(s) + " outside [0, 1/2]");
    }
    // alpha^2 and beta^2 are the roots of x^2 - x + s^2.
    const double disc = std::sqrt(std::max(0.0, 1 - 4 * s * s));
    return {std::sqrt((1 + disc) / 2), std::sqrt((1 - disc) / 2)};
}

Vector4c TwoQubitPureState::vector() const {
    return Vector4c(alpha_, 0, 0, beta_);
}

Matrix4c MixedStateEnsemble::density() const {
    Matrix4c rho = Matrix4c::Zero();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        rho += weights[i] * components[i] * components[i].adjoint();
    }
    return rho;
}

Matrix4c pure_state_density(const TwoQubitPureState& st) {
    return pure_state_density(st.vector());
}

Matrix4c pure_state_density(const Vector4c& psi) {
    if (std::abs(psi.squaredNorm() - 1) > kNormTol) {
        throw NormalizationError("state vector has squared norm " + std::to_string(psi.squaredNorm()));
    }
    return psi * psi.adjoint();
}

Matrix2c bloch_to_density(const BlochVector& s) {
    if (s.norm() > 1 + kNormTol) {
        throw BlochNormError("Bloch vector norm " + std::to_string(s.norm()) + " exceeds 1");
    }
    return 0.5 * (Matrix2c::Identity() + s.x() * kPauliX + s.y() * kPauliY + s.z() * kPauliZ);
}

BlochVector density_to_bloch(const Matrix2c& rho) {
    return {(rho * kPauliX).trace().real(), (rho * kPauliY).trace().real(), (rho * kPauliZ).trace().real()};
}

bool is_density_matrix(const Eigen::Ref<const ComplexMatrix>& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    if (hermiticity_deviation(rho) > kHermitianTol) return false;
    if (std::abs(rho.trace() - 1.0) > 1e-10) return false;
    return is_psd(rho, tol).psd;
}

void require_density_matrix(const Eigen::Ref<const ComplexMatrix>& rho, double tol) {
    if (!is_density_matrix(rho, tol)) {
        throw NotDensityMatrix("matrix is not a valid density matrix (Hermitian, unit trace, PSD)");
    }
}

MixedStateEnsemble spectral_decompose(const Matrix4c& rho) {
    require_density_matrix(rho);
    const auto eig = hermitian_eigen(rho);
    MixedStateEnsemble out;
    for (Index k = eig.eigenvalues.size() - 1; k >= 0; --k) {
        const double w = eig.eigenvalues(k);
        if (w <= 1e-13) continue;
        out.weights.push_back(w);
        out.components.push_back(eig.eigenvectors.col(k).normalized());
    }
    return out;
}

Vector4c sample_random_pure_vector(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vector4c psi;
    for (Index i = 0; i < 4; ++i) psi(i) = complex_gaussian(rng);
    return psi.normalized();
}

Matrix4c sample_random_state(StateKind kind, std::uint64_t seed) {
    if (kind == StateKind::pure) {
        const Vector4c psi = sample_random_pure_vector(seed);
        return psi * psi.adjoint();
    }
    std::mt19937_64 rng(seed);
    Matrix4c g;
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) g(i, j) = complex_gaussian(rng);
    }
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

BlochVector sample_bloch_vector(std::uint64_t seed, bool pure) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    BlochVector v;
    do {
        const double x = normal(rng);
        const double y = normal(rng);
        const double z = normal(rng);
        v = {x, y, z};
    } while (v.norm() < 1e-8);
    v.normalize();
    if (!pure) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        v *= std::cbrt(unit(rng));
    }
    return v;
}

Matrix2c reduced_state(const Matrix4c& rho, Side keep) {
    const Index sub = keep == Side::first ? 0 : 1;
    return partial_trace(rho, {2, 2}, {sub});
}

} // namespace disent
