#include "moyalgp/wigner.hpp"

#include <cmath>

#include <json.hpp>

namespace moyalgp {

Field wigner_from_amplitude(const Field& psi, const StarParams& params) {
    return moyal_star(psi, conjugate(psi), params);
}

double negativity(const Field& f) {
    const Complex total = integrate(f);
    const double total_abs = integrate(abs_field(f)).real();
    if (total_abs == 0.0 || std::abs(total) < 1e-12 * total_abs) {
        throw ZeroNormError("negativity: field integral vanishes");
    }
    if (std::abs(total.imag()) > 1e-8 * std::abs(total)) {
        throw DomainError("negativity: field integral is not real-positive");
    }
    if (total.real() <= 0.0) {
        throw DomainError("negativity: field integral must be positive");
    }
    return total_abs / total.real() - 1.0;
}

StarGenResidual stargenvalue_residual(const Field& f, double E, const StarParams& params) {
    params.validate();
    if (!std::isfinite(E)) throw NonFiniteError("stargenvalue_residual: E must be finite");

    StarGenResidual out;
    Field left = apply_free_hamiltonian(f, params) - Complex(E) * f;
    out.left_l2 = l2_norm(left);

    Field h_symbol = sample(f.grid, [&](double, double p) {
        return Complex(p * p / (2.0 * params.mass));
    });
    Field right = moyal_star(f, h_symbol, params) - Complex(E) * f;
    out.right_l2 = l2_norm(right);
    return out;
}

double idempotency_gap(const Field& f, const StarParams& params, Complex& lambda_out) {
    const double fnorm = l2_norm(f);
    if (fnorm == 0.0) throw ZeroNormError("idempotency_gap: field norm vanishes");

    Field ff = moyal_star(f, f, params);

    // least-squares lambda = <f, f*f> / <f, f> over the interior
    const PhaseSpaceGrid& g = f.grid;
    const int mg = (g.mode == BoundaryMode::clamped) ? 2 : 0;
    Complex num(0.0);
    double den = 0.0;
    for (int i = mg; i < g.nq - mg; ++i) {
        for (int j = mg; j < g.np - mg; ++j) {
            num += std::conj(f.at(i, j)) * ff.at(i, j);
            den += std::norm(f.at(i, j));
        }
    }
    lambda_out = num / den;
    return l2_norm(ff - lambda_out * f) / fnorm;
}

double idempotency_gap(const Field& f, const StarParams& params) {
    Complex lambda;
    return idempotency_gap(f, params, lambda);
}

WignerReport analyze_amplitude(const Field& psi, double E, const StarParams& params,
                               double masked_fraction) {
    WignerReport rep;
    rep.masked_fraction = masked_fraction;

    Field fw = wigner_from_amplitude(psi, params);
    rep.norm = integrate(fw).real();
    rep.eta = negativity(fw);
    rep.marginal_q = reduce_p(fw);
    rep.marginal_p = reduce_q(fw);

    const StarGenResidual sg = stargenvalue_residual(fw, E, params);
    rep.stargen_left_l2 = sg.left_l2;
    rep.stargen_right_l2 = sg.right_l2;
    rep.idempotency_gap = moyalgp::idempotency_gap(fw, params);

    const double psi_norm = l2_norm(psi);
    rep.psi_equals_fw_gap = (psi_norm > 0.0) ? l2_norm(fw - psi) / psi_norm
                                             : l2_norm(fw);

    double mn = 0.0;
    for (const Complex& v : fw.values) mn = std::min(mn, v.real());
    rep.fw_min = mn;

    rep.psi_dq_l2 = l2_norm(diff_q(psi, 1));
    rep.psi_dq2_l2 = l2_norm(diff_q(psi, 2));
    for (int j = 0; j < psi.grid.np; ++j) {
        rep.boundary_defect_max =
            std::max(rep.boundary_defect_max, std::abs(psi.at(psi.grid.nq - 1, j)));
    }
    return rep;
}

std::string report_json(const WignerReport& report) {
    nlohmann::json j;
    j["norm"] = report.norm;
    j["eta"] = report.eta;
    j["stargen_left_l2"] = report.stargen_left_l2;
    j["stargen_right_l2"] = report.stargen_right_l2;
    j["idempotency_gap"] = report.idempotency_gap;
    j["psi_equals_fw_gap"] = report.psi_equals_fw_gap;
    j["masked_fraction"] = report.masked_fraction;
    j["fw_min"] = report.fw_min;
    j["psi_dq_l2"] = report.psi_dq_l2;
    j["psi_dq2_l2"] = report.psi_dq2_l2;
    j["boundary_defect_max"] = report.boundary_defect_max;
    return j.dump(2);
}

} // namespace moyalgp
