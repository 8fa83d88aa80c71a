#include "moyalgp/elliptic.hpp"

#include <cmath>
#include <numbers>

namespace moyalgp::elliptic {

namespace {

constexpr int kMaxDescent = 32;
constexpr double kAgmRelTol = 1e-15;
// Below this parameter sn/cn/dn are trigonometric to better than 1e-15.
constexpr double kTrigThreshold = 1e-16;

void check_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
        throw DomainError("elliptic parameter m must satisfy 0 <= m < 1 (got m=" +
                          std::to_string(m) + ")");
    }
}

} // namespace

double complete_k(double m) {
    check_parameter(m);
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int it = 0; it < kMaxDescent; ++it) {
        if (std::abs(a - b) <= kAgmRelTol * a) {
            return std::numbers::pi / (2.0 * a);
        }
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    throw Error("AGM iteration for K(m) did not converge within 32 steps");
}

JacobiTriple jacobi_elliptic(double u, double m) {
    check_parameter(m);
    if (!std::isfinite(u)) {
        throw NonFiniteError("jacobi_elliptic argument u must be finite");
    }

    // Descending Landen chain: m -> m1 = k1^2 with k1 = (1-k')/(1+k'),
    // argument scaled by 1/(1+k1) at each level. Quadratic until the
    // parameter is negligible and sn, cn reduce to sin, cos.
    double k1s[kMaxDescent];
    int depth = 0;
    double mi = m;
    double ui = u;
    while (mi > kTrigThreshold) {
        if (depth >= kMaxDescent) {
            throw Error("Landen descent for Jacobi functions did not converge within 32 steps");
        }
        const double kp = std::sqrt(1.0 - mi);
        const double k1 = (1.0 - kp) / (1.0 + kp);
        k1s[depth++] = k1;
        ui /= (1.0 + k1);
        mi = k1 * k1;
    }

    double sn = std::sin(ui);
    double cn = std::cos(ui);
    for (int i = depth - 1; i >= 0; --i) {
        const double k1 = k1s[i];
        const double s = sn;
        const double c = cn;
        // dn at the descended level; 1 - k1^2 s^2 >= 1 - k1^2 > 0.
        const double d = std::sqrt(1.0 - k1 * k1 * s * s);
        const double denom = 1.0 + k1 * s * s;
        sn = (1.0 + k1) * s / denom;
        cn = c * d / denom;
    }
    // dn never vanishes for m < 1, so the identity dn^2 = 1 - m sn^2 gives
    // it directly with the correct (positive) sign.
    const double dn = std::sqrt(1.0 - m * sn * sn);
    return {sn, cn, dn};
}

double sn_second_derivative(double u, double m) {
    const double s = jacobi_elliptic(u, m).sn;
    return -(1.0 + m) * s + 2.0 * m * s * s * s;
}

} // namespace moyalgp::elliptic
