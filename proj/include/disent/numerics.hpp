#pragma once

// Dense complex kernel: Kronecker products, Hermitian eigensolver, partial
// trace and partial transpose. Everything is templated on the real scalar and
// accepts arbitrary Eigen expressions; results are dynamic-size matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "disent/error.hpp"

namespace disent {

using Index = Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;

/// Absolute tolerance on |m - m^dagger| entries.
inline constexpr double kHermitianTol = 1e-10;
/// Default PSD tolerance, relative to max(1, spectral radius).
inline constexpr double kPsdTol = 1e-10;

template <typename Real>
struct HermitianSpectrum {
    RVector<Real> eigenvalues; // ascending
};

template <typename Real>
struct HermitianEigen {
    RVector<Real> eigenvalues;  // ascending
    CMatrix<Real> eigenvectors; // column k pairs with eigenvalues(k)
};

template <typename Real>
struct PsdCheck {
    bool psd;
    Real min_eigenvalue;
};

enum class Side { first, second };

namespace detail {

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
    }
}

} // namespace detail

/// Kronecker product a (x) b; basis index of the result is ia * dim(b) + ib.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>, "tensor: scalar types must match");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Largest entry of |m - m^dagger|.
template <typename Derived>
detail::RealOf<Derived> hermiticity_deviation(const Eigen::MatrixBase<Derived>& m) {
    detail::require_square(m, "hermiticity_deviation");
    if (m.size() == 0) return 0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
    detail::require_square(m, "require_hermitian");
    const auto dev = hermiticity_deviation(m);
    if (!(dev <= tol)) {
        throw NotHermitian("matrix deviates from Hermitian by " + std::to_string(static_cast<double>(dev)));
    }
}

/// Full Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as (m + m^dagger)/2 after the Hermiticity check,
/// so roundoff asymmetry never leaks into the spectrum.
template <typename Derived>
HermitianEigen<detail::RealOf<Derived>> hermitian_eigen(const Eigen::MatrixBase<Derived>& m,
                                                        double tol = kHermitianTol) {
    using Real = detail::RealOf<Derived>;
    using Complex = std::complex<Real>;
    require_hermitian(m, tol);

    const Index n = m.rows();
    CMatrix<Real> a = (m + m.adjoint()) / Real(2);
    CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real scale = std::max(a.norm(), std::numeric_limits<Real>::min());

    for (int sweep = 0; sweep < 64; ++sweep) {
        Real off = 0;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        }
        if (std::sqrt(off) <= eps * scale) break;

        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Real mag = std::abs(a(p, q));
                if (mag <= eps * eps * scale) continue;
                // Phase-rotate a(p,q) onto the positive real axis, then apply a
                // real Jacobi rotation that annihilates it.
                const Complex phase = a(p, q) / mag;
                const Real theta = (a(q, q).real() - a(p, p).real()) / (2 * mag);
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(1 + theta * theta));
                const Real c = 1 / std::sqrt(1 + t * t);
                const Real s = t * c;
                const Complex down = std::conj(phase);

                CVector<Real> colp = a.col(p);
                CVector<Real> colq = a.col(q);
                a.col(p) = c * colp - (s * down) * colq;
                a.col(q) = s * colp + (c * down) * colq;

                Eigen::Matrix<Complex, 1, Eigen::Dynamic> rowp = a.row(p);
                Eigen::Matrix<Complex, 1, Eigen::Dynamic> rowq = a.row(q);
                a.row(p) = c * rowp - (s * phase) * rowq;
                a.row(q) = s * rowp + (c * phase) * rowq;

                a(p, q) = a(q, p) = Complex(0);
                a(p, p) = Complex(a(p, p).real());
                a(q, q) = Complex(a(q, q).real());

                colp = v.col(p);
                colq = v.col(q);
                v.col(p) = c * colp - (s * down) * colq;
                v.col(q) = s * colp + (c * down) * colq;
            }
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.eigenvectors.col(k) = v.col(src);
    }
    return out;
}

template <typename Derived>
HermitianSpectrum<detail::RealOf<Derived>> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                                                                 double tol = kHermitianTol) {
    return {hermitian_eigen(m, tol).eigenvalues};
}

/// Trace over every subsystem not listed in `keep`.
///
/// `dims` lists subsystem dimensions with the first subsystem most
/// significant; `keep` lists subsystem indices to retain (any order, result is
/// in ascending subsystem order).
template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                                               std::span<const Index> keep) {
    using Real = detail::RealOf<Derived>;
    detail::require_square(m, "partial_trace");
    const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
    if (dims.empty() || total != m.rows()) {
        throw DimensionMismatch("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                                " but matrix dimension is " + std::to_string(m.rows()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (Index k : keep) {
        if (k < 0 || static_cast<std::size_t>(k) >= dims.size() || kept[static_cast<std::size_t>(k)]) {
            throw DimensionMismatch("partial_trace: invalid or repeated subsystem index " + std::to_string(k));
        }
        kept[static_cast<std::size_t>(k)] = true;
    }

    // Split every full index into (kept index, traced index).
    std::vector<Index> kept_of(static_cast<std::size_t>(total)), traced_of(static_cast<std::size_t>(total));
    Index kept_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        if (kept[s]) kept_dim *= dims[s];
    }
    for (Index full = 0; full < total; ++full) {
        Index rest = full, stride = total, ki = 0, ti = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            stride /= dims[s];
            const Index digit = rest / stride;
            rest %= stride;
            if (kept[s]) {
                ki = ki * dims[s] + digit;
            } else {
                ti = ti * dims[s] + digit;
            }
        }
        kept_of[static_cast<std::size_t>(full)] = ki;
        traced_of[static_cast<std::size_t>(full)] = ti;
    }

    CMatrix<Real> out = CMatrix<Real>::Zero(kept_dim, kept_dim);
    for (Index i = 0; i < total; ++i) {
        for (Index j = 0; j < total; ++j) {
            if (traced_of[static_cast<std::size_t>(i)] == traced_of[static_cast<std::size_t>(j)]) {
                out(kept_of[static_cast<std::size_t>(i)], kept_of[static_cast<std::size_t>(j)]) += m(i, j);
            }
        }
    }
    return out;
}

template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_trace(const Eigen::MatrixBase<Derived>& m, std::initializer_list<Index> dims,
                                               std::initializer_list<Index> keep) {
    return partial_trace(m, std::span<const Index>(dims.begin(), dims.size()),
                         std::span<const Index>(keep.begin(), keep.size()));
}

/// Transpose one factor of a bipartite matrix with factor dimensions `dims`.
template <typename Derived>
CMatrix<detail::RealOf<Derived>> partial_transpose(const Eigen::MatrixBase<Derived>& m, Side side,
                                                   std::array<Index, 2> dims = {2, 2}) {
    using Real = detail::RealOf<Derived>;
    detail::require_square(m, "partial_transpose");
    const Index da = dims[0], db = dims[1];
    if (da * db != m.rows()) {
        throw DimensionMismatch("partial_transpose: expected dimension " + std::to_string(da * db) + ", got " +
                                std::to_string(m.rows()));
    }
    CMatrix<Real> out(m.rows(), m.cols());
    for (Index i1 = 0; i1 < da; ++i1) {
        for (Index i2 = 0; i2 < db; ++i2) {
            for (Index j1 = 0; j1 < da; ++j1) {
                for (Index j2 = 0; j2 < db; ++j2) {
                    const Index row = i1 * db + i2, col = j1 * db + j2;
                    out(row, col) = side == Side::first ? m(j1 * db + i2, i1 * db + j2) : m(i1 * db + j2, j1 * db + i2);
                }
            }
        }
    }
    return out;
}

/// PSD test: true iff min eigenvalue >= -tol * max(1, spectral radius).
template <typename Derived>
PsdCheck<detail::RealOf<Derived>> is_psd(const Eigen::MatrixBase<Derived>& m, double tol = kPsdTol) {
    using Real = detail::RealOf<Derived>;
    const auto spectrum = hermitian_eigenvalues(m);
    if (spectrum.eigenvalues.size() == 0) return {true, Real(0)};
    const Real lo = spectrum.eigenvalues.minCoeff();
    const Real radius = spectrum.eigenvalues.cwiseAbs().maxCoeff();
    return {lo >= -Real(tol) * std::max(Real(1), radius), lo};
}

} // namespace disent
