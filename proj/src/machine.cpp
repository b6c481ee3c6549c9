#include "disent/machine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disent {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
constexpr double kPivotTol = 1e-10;

// Pivoted outer-product Cholesky of a Hermitian PSD matrix. Returns vectors
// x_k (columns) with x_a^dagger x_b = g(a, b); directions below the pivot
// tolerance are left as zero components.
Matrix4c gram_vectors(const Matrix4c& g) {
    Matrix4c a = g;
    Matrix4c lower = Matrix4c::Zero();
    std::array<Index, 4> perm{0, 1, 2, 3};

    for (Index k = 0; k < 4; ++k) {
        Index pivot = k;
        for (Index j = k + 1; j < 4; ++j) {
            if (a(j, j).real() > a(pivot, pivot).real()) pivot = j;
        }
        if (a(pivot, pivot).real() <= kPivotTol) break;
        if (pivot != k) {
            a.row(k).swap(a.row(pivot));
            a.col(k).swap(a.col(pivot));
            lower.row(k).swap(lower.row(pivot));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(pivot)]);
        }
        const double diag = std::sqrt(a(k, k).real());
        lower(k, k) = diag;
        for (Index i = k + 1; i < 4; ++i) lower(i, k) = a(i, k) / diag;
        for (Index i = k + 1; i < 4; ++i) {
            for (Index j = k + 1; j < 4; ++j) a(i, j) -= lower(i, k) * std::conj(lower(j, k));
        }
    }

    Matrix4c vectors;
    for (Index i = 0; i < 4; ++i) vectors.col(perm[static_cast<std::size_t>(i)]) = lower.row(i).adjoint();
    return vectors;
}

} // namespace

MachineConfig::MachineConfig(double eta, double lambda) : eta_(eta), lambda_(lambda) {
    if (!(eta > 0 && eta <= 1)) throw DomainError("eta = " + std::to_string(eta) + " outside (0, 1]");
    if (!(lambda >= -1 && lambda <= 1)) throw DomainError("lambda = " + std::to_string(lambda) + " outside [-1, 1]");
}

double MachineConfig::m0() const { return std::sqrt((1 + eta_) / 2); }
double MachineConfig::m1() const { return std::sqrt((1 - eta_) / 2); }
double MachineConfig::m0t() const { return std::sqrt((1 - eta_) / 2); }
double MachineConfig::m1t() const { return std::sqrt((1 + eta_) / 2); }
double MachineConfig::Lambda() const { return lambda_ * std::sqrt((1 - eta_ * eta_) / 4); }

double ConstraintReport::max_residual() const {
    double worst = 0;
    for (const auto& r : residuals) worst = std::max(worst, r.value);
    return worst;
}

double ConstraintReport::residual(const std::string& name) const {
    for (const auto& r : residuals) {
        if (r.name == name) return r.value;
    }
    throw std::out_of_range("no constraint residual named " + name);
}

MachineGram build_gram(const MachineConfig& cfg) {
    // Cross overlaps that would leak coherence into populations vanish; the
    // M0/M~0 and M1/M~1 overlaps are purely imaginary and opposite; <M~1|M0>
    // carries the reduction factor.
    const double shrink = 2 * cfg.eta() / (1 + cfg.eta());
    const Complex overlap = kI * cfg.lambda();
    Matrix4c g = Matrix4c::Identity();
    g(M0, M0t) = overlap;
    g(M1, M1t) = -overlap;
    g(M1t, M0) = shrink;
    g(M0t, M0) = std::conj(g(M0, M0t));
    g(M1t, M1) = std::conj(g(M1, M1t));
    g(M0, M1t) = std::conj(g(M1t, M0));
    return {g};
}

PsdCheck<double> gram_feasible(const MachineGram& g, double tol) {
    return is_psd(g.g, tol);
}

MachineRealization realize(const MachineConfig& cfg) {
    const MachineGram gram = build_gram(cfg);
    const auto check = gram_feasible(gram);
    if (!check.psd) {
        throw InfeasibleMachine("no machine states exist for eta = " + std::to_string(cfg.eta()) +
                                ", lambda = " + std::to_string(cfg.lambda()) +
                                " (Gram min eigenvalue " + std::to_string(check.min_eigenvalue) + ")");
    }

    MachineRealization r;
    r.vectors = gram_vectors(gram.g);
    r.amplitudes = {cfg.m0(), cfg.m1(), cfg.m0t(), cfg.m1t()};
    r.isometry.setZero();
    r.isometry.block<4, 1>(0, 0) = cfg.m0() * r.vectors.col(M0);
    r.isometry.block<4, 1>(4, 0) = cfg.m1() * r.vectors.col(M1);
    r.isometry.block<4, 1>(0, 1) = cfg.m0t() * r.vectors.col(M0t);
    r.isometry.block<4, 1>(4, 1) = cfg.m1t() * r.vectors.col(M1t);
    return r;
}

ConstraintReport verify_machine_constraints(const MachineRealization& r, const MachineConfig& cfg) {
    const auto& v = r.vectors;
    const double m0 = r.amplitudes(0), m1 = r.amplitudes(1), m0t = r.amplitudes(2), m1t = r.amplitudes(3);
    auto ip = [&](Index a, Index b) { return v.col(a).dot(v.col(b)); }; // <a|b>

    double norms = 0;
    for (Index k = 0; k < 4; ++k) norms = std::max(norms, std::abs(v.col(k).squaredNorm() - 1));

    ConstraintReport report;
    report.residuals = {
        {"state_norms", norms},
        {"amplitude_normalization",
         std::max(std::abs(m0 * m0 + m1 * m1 - 1), std::abs(m0t * m0t + m1t * m1t - 1))},
        {"column_orthogonality", std::abs(m0 * m0t * ip(M0, M0t) + m1 * m1t * ip(M1, M1t))},
        {"isotropy_cross_overlaps", std::max({std::abs(m0 * m1 * ip(M1, M0)), std::abs(m0t * m1t * ip(M1t, M0t)),
                                              std::abs(m1 * m0t * ip(M1, M0t))})},
        {"real_overlaps",
         std::max(std::abs((m0 * m0t * ip(M0, M0t)).real()), std::abs((m1 * m1t * ip(M1, M1t)).real()))},
        {"reduction_factor", std::abs(cfg.eta() - m0 * m1t * ip(M1t, M0))},
        {"amplitude_magnitudes",
         std::max({std::abs(m0 - cfg.m0()), std::abs(m1 - cfg.m1()), std::abs(m0t - cfg.m0t()),
                   std::abs(m1t - cfg.m1t())})},
        {"overlap_Lambda", std::abs((m0 * m0t * ip(M0, M0t)).imag() - cfg.Lambda())},
        {"isometry", (r.isometry.adjoint() * r.isometry - Matrix2c::Identity()).cwiseAbs().maxCoeff()},
    };
    return report;
}

Matrix2c apply_local_channel(const MachineRealization& r, const Matrix2c& rho) {
    const Eigen::Matrix<Complex, 8, 8> joint = r.isometry * rho * r.isometry.adjoint();
    return partial_trace(joint, {2, 4}, {0});
}

} // namespace disent
