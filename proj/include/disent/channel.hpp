#pragma once

#include <optional>

#include "disent/machine.hpp"
#include "disent/states.hpp"

namespace disent {

// Two-qubit outputs are 4x4 matrices in the basis |00>, |01>, |10>, |11>
// (qubit x most significant).

/// Diagonal blocks and the Lambda-Lambda correction of the asymmetric output.
struct AsymmetricEntries {
    double b1, b2, b3, b4;
    double c; // 2 alpha beta Lambda_x Lambda_y
};

AsymmetricEntries asymmetric_entries(const TwoQubitPureState& st, const MachineConfig& cfg_x,
                                     const MachineConfig& cfg_y);

/// Machine on qubit y only.
Matrix4c closed_form_ta(const TwoQubitPureState& st, const MachineConfig& cfg_y);
/// The same machine on both qubits.
Matrix4c closed_form_sym(const TwoQubitPureState& st, const MachineConfig& cfg);
/// Independent machines on x and y.
Matrix4c closed_form_asym(const TwoQubitPureState& st, const MachineConfig& cfg_x, const MachineConfig& cfg_y);

/// Brute-force channel: embeds rho through each attached machine isometry
/// (independent 4-dim registers) and traces the registers out. A missing
/// machine leaves that qubit untouched.
Matrix4c simulate_channel(const Matrix4c& rho_in, const std::optional<MachineRealization>& x,
                          const std::optional<MachineRealization>& y);

struct ShrinkFit {
    double eta_x, eta_y;
    double residual_x, residual_y; // Frobenius norm of the fit residual
};

/// Least-squares shrink factor per qubit: Tr_other(out) - I/2 = eta * (Tr_other(in) - I/2).
/// Throws DegenerateInput when an input reduced state equals I/2 within 1e-12.
ShrinkFit reduced_shrink_factors(const Matrix4c& rho_in, const Matrix4c& rho_out);

} // namespace disent
