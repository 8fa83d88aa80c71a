#ifndef MOYALGP_WIGNER_HPP
#define MOYALGP_WIGNER_HPP

#include <string>

#include "moyalgp/grid.hpp"
#include "moyalgp/star.hpp"

namespace moyalgp {

/// Wigner function from a phase-space amplitude: f_W = psi * psi^dagger
/// (truncated Moyal product).
Field wigner_from_amplitude(const Field& psi, const StarParams& params);

/// Negativity parameter: after normalizing f to unit integral,
/// eta = integral of |f| minus 1. Requires a real-positive integral
/// (imaginary part at most 1e-8 of the magnitude); throws ZeroNormError
/// when the integral vanishes.
double negativity(const Field& f);

struct StarGenResidual {
    double left_l2 = 0.0;  // || H * f - E f ||, H applied as a star operator
    double right_l2 = 0.0; // || f * H - E f ||, H sampled as a symbol field
};

/// Two-sided star-genvalue residual at energy E for the free Hamiltonian
/// symbol p^2/2M. Interior (2-node margin) l2 norms.
StarGenResidual stargenvalue_residual(const Field& f, double E, const StarParams& params);

/// Least-squares projection gap of f*f onto f:
/// min_lambda ||f*f - lambda f|| / ||f||. Zero for exact star-projectors.
double idempotency_gap(const Field& f, const StarParams& params);
/// Same, also reporting the minimizing lambda.
double idempotency_gap(const Field& f, const StarParams& params, Complex& lambda_out);

struct WignerReport {
    double norm = 0.0; // integral of f_W before normalization
    double eta = 0.0;
    Profile marginal_q;
    Profile marginal_p;
    double stargen_left_l2 = 0.0;
    double stargen_right_l2 = 0.0;
    double idempotency_gap = 0.0;
    double psi_equals_fw_gap = 0.0; // relative l2 gap between psi and f_W
    double masked_fraction = 0.0;
    double fw_min = 0.0; // most negative value of Re f_W on the grid
    // The reality argument behind the solution assumes dpsi/dq small against
    // d2psi/dq2; both magnitudes are reported instead of enforced.
    double psi_dq_l2 = 0.0;
    double psi_dq2_l2 = 0.0;
    // max |psi(q_max, p)| over the grid: the box condition at q = L holds
    // exactly only on the p = 0 slice
    double boundary_defect_max = 0.0;
};

/// Full analysis bundle for one amplitude at energy E.
WignerReport analyze_amplitude(const Field& psi, double E, const StarParams& params,
                               double masked_fraction = 0.0);

/// JSON with keys norm, eta, stargen_left_l2, stargen_right_l2,
/// idempotency_gap, psi_equals_fw_gap, masked_fraction, fw_min, psi_dq_l2,
/// psi_dq2_l2, boundary_defect_max.
std::string report_json(const WignerReport& report);

} // namespace moyalgp

#endif
