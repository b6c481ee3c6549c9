#include "disent/channel.hpp"

#include <cmath>
#include <string>

namespace disent {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
constexpr double kDegenerateTol = 1e-12;

ComplexMatrix embed(const Matrix4c& rho, const std::optional<MachineRealization>& x,
                    const std::optional<MachineRealization>& y, Index& mx, Index& my) {
    const ComplexMatrix vx = x ? ComplexMatrix(x->isometry) : ComplexMatrix(Matrix2c::Identity());
    const ComplexMatrix vy = y ? ComplexMatrix(y->isometry) : ComplexMatrix(Matrix2c::Identity());
    mx = vx.rows() / 2;
    my = vy.rows() / 2;
    // Row index of tensor(vx, vy) is (qx * mx + machine_x) * 2 my + (qy * my + machine_y).
    const ComplexMatrix w = tensor(vx, vy);
    return w * rho * w.adjoint();
}

} // namespace

AsymmetricEntries asymmetric_entries(const TwoQubitPureState& st, const MachineConfig& cfg_x,
                                     const MachineConfig& cfg_y) {
    const double a2 = st.alpha() * st.alpha(), b2 = st.beta() * st.beta();
    const double ex = cfg_x.eta(), ey = cfg_y.eta();
    return {
        (1 - ex) * (1 - ey) / 4 + a2 * (ex + ey) / 2,
        (1 - ex) * (1 + ey) / 4 + a2 * (ex - ey) / 2,
        (1 - ex) * (1 + ey) / 4 + b2 * (ex - ey) / 2,
        (1 - ex) * (1 - ey) / 4 + b2 * (ex + ey) / 2,
        2 * st.schmidt_product() * cfg_x.Lambda() * cfg_y.Lambda(),
    };
}

Matrix4c closed_form_ta(const TwoQubitPureState& st, const MachineConfig& cfg_y) {
    const double a2 = st.alpha() * st.alpha(), b2 = st.beta() * st.beta();
    const double ab = st.schmidt_product();
    const double ey = cfg_y.eta();
    const Complex coh = kI * ab * cfg_y.Lambda();
    Matrix4c d;
    d << a2 * (1 + ey) / 2, 0, -coh, ab * ey,
         0, a2 * (1 - ey) / 2, 0, coh,
         coh, 0, b2 * (1 - ey) / 2, 0,
         ab * ey, -coh, 0, b2 * (1 + ey) / 2;
    return d;
}

Matrix4c closed_form_sym(const TwoQubitPureState& st, const MachineConfig& cfg) {
    const double a2 = st.alpha() * st.alpha(), b2 = st.beta() * st.beta();
    const double ab = st.schmidt_product();
    const double eta = cfg.eta(), lam = cfg.Lambda();
    const double outer = (1 - eta) * (1 - eta) / 4 - 2 * ab * lam * lam;
    const double inner = (1 - eta * eta) / 4 + 2 * ab * lam * lam;
    const Complex coh = kI * ab * lam * eta;
    Matrix4c d;
    d << outer + a2 * eta, -coh, -coh, ab * eta * eta,
         coh, inner, 0, coh,
         coh, 0, inner, coh,
         ab * eta * eta, -coh, -coh, outer + b2 * eta;
    return d;
}

Matrix4c closed_form_asym(const TwoQubitPureState& st, const MachineConfig& cfg_x, const MachineConfig& cfg_y) {
    const auto e = asymmetric_entries(st, cfg_x, cfg_y);
    const double ab = st.schmidt_product();
    const double ex = cfg_x.eta(), ey = cfg_y.eta();
    const Complex cx = kI * ab * cfg_x.Lambda() * ey;
    const Complex cy = kI * ab * cfg_y.Lambda() * ex;
    Matrix4c d;
    d << e.b1 - e.c, -cx, -cy, ab * ex * ey,
         cx, e.b2 + e.c, 0, cy,
         cy, 0, e.b3 + e.c, cx,
         ab * ex * ey, -cy, -cx, e.b4 - e.c;
    return d;
}

Matrix4c simulate_channel(const Matrix4c& rho_in, const std::optional<MachineRealization>& x,
                          const std::optional<MachineRealization>& y) {
    Index mx = 1, my = 1;
    const ComplexMatrix joint = embed(rho_in, x, y, mx, my);
    const std::array<Index, 4> dims{2, mx, 2, my};
    const std::array<Index, 2> keep{0, 2};
    const Matrix4c out = partial_trace(joint, dims, keep);
    return 0.5 * (out + out.adjoint());
}

ShrinkFit reduced_shrink_factors(const Matrix4c& rho_in, const Matrix4c& rho_out) {
    const Matrix2c half = 0.5 * Matrix2c::Identity();
    ShrinkFit fit{};
    for (Side side : {Side::first, Side::second}) {
        const Matrix2c din = reduced_state(rho_in, side) - half;
        const Matrix2c dout = reduced_state(rho_out, side) - half;
        const double norm2 = din.squaredNorm();
        if (din.cwiseAbs().maxCoeff() <= kDegenerateTol) {
            throw DegenerateInput(std::string("reduced input state of qubit ") + (side == Side::first ? "x" : "y") +
                                  " is maximally mixed; shrink factor undefined");
        }
        // <din, dout> is real for Hermitian arguments.
        const double eta = (din.adjoint() * dout).trace().real() / norm2;
        const double residual = (dout - eta * din).norm();
        if (side == Side::first) {
            fit.eta_x = eta;
            fit.residual_x = residual;
        } else {
            fit.eta_y = eta;
            fit.residual_y = residual;
        }
    }
    return fit;
}

} // namespace disent
