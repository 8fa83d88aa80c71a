#ifndef MOYALGP_STAR_HPP
#define MOYALGP_STAR_HPP

#include <functional>
#include <string>

#include "moyalgp/grid.hpp"

namespace moyalgp {

/// Physical constants of the star algebra plus the truncation order of the
/// Moyal series (highest retained power of hbar).
struct StarParams {
    double hbar = 1.0;
    double mass = 1.0;
    int series_order = 2;

    void validate() const {
        if (!(hbar > 0.0)) throw DomainError("hbar must be > 0");
        if (!(mass > 0.0)) throw DomainError("mass must be > 0");
        if (series_order < 1 || series_order > 4) {
            throw DomainError("series_order must be in {1,2,3,4}");
        }
    }
};

/// Named map Field -> Field. Linear unless flagged otherwise.
struct StarOperator {
    std::string label;
    std::function<Field(const Field&)> apply;
    bool linear = true;
};

/// Bopp-shift position operator: q f + (i hbar/2) d f/dp.
Field bopp_q(const Field& f, const StarParams& params);
/// Bopp-shift momentum operator: p f - (i hbar/2) d f/dq.
Field bopp_p(const Field& f, const StarParams& params);

StarOperator make_bopp_q(const StarParams& params);
StarOperator make_bopp_p(const StarParams& params);
/// Galilei boost generator M Q - t P at the given time parameter.
StarOperator make_boost(const StarParams& params, double t);
StarOperator make_free_hamiltonian(const StarParams& params);

/// Truncated Moyal product
///   a * b = sum_{s=0..S} (1/s!) (i hbar/2)^s
///           sum_{j=0..s} (-1)^j C(s,j) (dq^{s-j} dp^j a)(dq^j dp^{s-j} b),
/// exact whenever a or b is a polynomial of total degree <= S.
Field moyal_star(const Field& a, const Field& b, const StarParams& params);

/// Free star-Hamiltonian P^2/2M expanded through the Bopp shift:
///   (p^2/2M) f - (hbar^2/8M) d2f/dq2 - (i hbar p/2M) df/dq.
Field apply_free_hamiltonian(const Field& f, const StarParams& params);

enum class Nonlinearity { pointwise, star };

struct ResidualNorms {
    double l2 = 0.0;
    double linf = 0.0;
    double l2_p0_slice = 0.0;
};

struct GpResidualResult {
    Field residual;
    ResidualNorms norms;
};

/// Stationary Gross-Pitaevskii residual H f + g |f|^2 f - E f. The cubic
/// term is the pointwise |f|^2 f by default; Nonlinearity::star uses
/// g (f * f^dagger) * f instead. Norms exclude a 2-node edge margin.
GpResidualResult gp_residual(const Field& psi, double E, double g,
                             const StarParams& params,
                             Nonlinearity nonlinearity = Nonlinearity::pointwise);

/// l2 norm (interior, 2-node margin by default) of
/// (A B - B A)(test) - expected.
double commutator_norm(const StarOperator& opA, const StarOperator& opB,
                       const Field& test, const Field& expected, int margin = 2);

} // namespace moyalgp

#endif
