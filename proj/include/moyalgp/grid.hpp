#ifndef MOYALGP_GRID_HPP
#define MOYALGP_GRID_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "moyalgp/errors.hpp"

namespace moyalgp {

using Complex = std::complex<double>;

enum class BoundaryMode { clamped, periodic };

/// Rectangular (q,p) lattice. Clamped grids include both endpoints and
/// carry composite-Simpson quadrature; periodic grids exclude the right
/// endpoint and use the rectangle rule with wraparound stencils.
///
/// Point counts are rounded up to odd so the Simpson rule always applies.
/// fd_accuracy selects the interior central-difference order (2, 4, 6 or 8;
/// default 4). Near clamped edges the widest fitting central stencil is
/// used, with one-sided second-order stencils on the outermost nodes.
struct PhaseSpaceGrid {
    double q_min = 0.0, q_max = 1.0;
    double p_min = 0.0, p_max = 1.0;
    int nq = 0, np = 0;
    double dq = 0.0, dp = 0.0;
    BoundaryMode mode = BoundaryMode::clamped;
    int fd_accuracy = 4;

    static PhaseSpaceGrid make(double q_min, double q_max,
                               double p_min, double p_max,
                               int nq, int np,
                               BoundaryMode mode = BoundaryMode::clamped,
                               int fd_accuracy = 4);

    double q(int i) const { return q_min + i * dq; }
    double p(int j) const { return p_min + j * dp; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(np) + j;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(nq) * static_cast<std::size_t>(np);
    }
    /// Index of the grid line closest to p = 0.
    int p0_index() const;
    bool same_layout(const PhaseSpaceGrid& other) const;
};

/// Complex samples on a PhaseSpaceGrid, row-major in q then p.
struct Field {
    PhaseSpaceGrid grid;
    std::vector<Complex> values;

    Field() = default;
    explicit Field(const PhaseSpaceGrid& g) : grid(g), values(g.size(), Complex(0.0)) {}

    Complex& at(int i, int j) { return values[grid.index(i, j)]; }
    const Complex& at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// 1D profile along one axis (node coordinates plus values), remembering
/// the spacing and boundary mode of the axis it lives on.
struct Profile {
    std::vector<double> x;
    std::vector<Complex> values;
    double dx = 0.0;
    BoundaryMode mode = BoundaryMode::clamped;
};

/// Samples f(q,p) on every node. Throws NonFiniteError if any sample is
/// NaN or infinite.
Field sample(const PhaseSpaceGrid& grid, const std::function<Complex(double, double)>& f);

/// Central finite differences along q (resp. p) of order 1 or 2.
Field diff_q(const Field& field, int order);
Field diff_p(const Field& field, int order);

/// 2D quadrature: composite Simpson (clamped) or rectangle rule (periodic).
Complex integrate(const Field& field);

/// Quadrature along p only, giving a profile over q (and symmetrically).
Profile reduce_p(const Field& field);
Profile reduce_q(const Field& field);

/// 1D quadrature of a profile with the rule matching its boundary mode.
Complex integrate(const Profile& profile);

/// l2 norm sqrt(sum |v|^2 dq dp) excluding `margin` nodes on each clamped
/// edge (margin ignored on periodic grids).
double l2_norm(const Field& field, int margin = 2);
double linf_norm(const Field& field, int margin = 2);
/// l2 norm along the p = p(j_slice) line, 1D measure, same margin rule in q.
double l2_norm_slice_q(const Field& field, int j_slice, int margin = 2);

// Pointwise field algebra (grids must share layout).
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(Complex scale, const Field& a);
Field hadamard(const Field& a, const Field& b);
Field conjugate(const Field& a);
Field abs_field(const Field& a);

/// CSV dump `q,p,re,im`, row-major in q then p, 17 significant digits.
void write_field_csv(const Field& field, std::ostream& os);
/// CSV dump `x,value` (real part), 17 significant digits.
void write_profile_csv(const Profile& profile, std::ostream& os);

} // namespace moyalgp

#endif
