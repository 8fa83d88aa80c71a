#ifndef MOYALGP_ELLIPTIC_HPP
#define MOYALGP_ELLIPTIC_HPP

#include "moyalgp/errors.hpp"

namespace moyalgp::elliptic {

/// Complete elliptic integral of the first kind K(m), parameter convention
/// (m, not the modulus k = sqrt(m)). Arithmetic-geometric mean iteration,
/// relative error below 1e-13 on [0, 1).
double complete_k(double m);

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

/// Jacobi elliptic functions sn(u|m), cn(u|m), dn(u|m) by descending Landen
/// (Gauss) transformation down to the trigonometric base case. Absolute
/// error below 1e-12 for |u| <= 8 K(m).
JacobiTriple jacobi_elliptic(double u, double m);

/// d^2 sn/du^2 through the elliptic ODE identity
///   sn'' = -(1+m) sn + 2 m sn^3.
/// Exact up to the accuracy of sn itself; used as the coefficient-matching
/// oracle for the box solution.
double sn_second_derivative(double u, double m);

/// Validated elliptic parameter with its cached quarter period K(m).
class Modulus {
public:
    explicit Modulus(double m) : m_(m), k_complete_(complete_k(m)) {}

    double m() const { return m_; }
    double k_complete() const { return k_complete_; }

private:
    double m_;
    double k_complete_;
};

} // namespace moyalgp::elliptic

#endif
