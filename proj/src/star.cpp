#include "moyalgp/star.hpp"

#include <array>
#include <cmath>

namespace moyalgp {

namespace {

using moyalgp::Complex;

Field scale_by_q(const Field& f) {
    Field out(f.grid);
    for (int i = 0; i < f.grid.nq; ++i) {
        const double qi = f.grid.q(i);
        for (int j = 0; j < f.grid.np; ++j) out.at(i, j) = qi * f.at(i, j);
    }
    return out;
}

Field scale_by_p(const Field& f) {
    Field out(f.grid);
    for (int i = 0; i < f.grid.nq; ++i) {
        for (int j = 0; j < f.grid.np; ++j) out.at(i, j) = f.grid.p(j) * f.at(i, j);
    }
    return out;
}

// Mixed-derivative table d[r][c] = dq^r dp^c f for r + c <= order.
// Pure second derivatives go through the dedicated stencil; higher orders
// are built by composition.
struct DerivativeTable {
    std::array<std::array<Field, 5>, 5> d;

    DerivativeTable(const Field& f, int order) {
        d[0][0] = f;
        for (int c = 1; c <= order; ++c) {
            d[0][c] = (c >= 2) ? diff_p(d[0][c - 2], 2) : diff_p(d[0][c - 1], 1);
        }
        for (int r = 1; r <= order; ++r) {
            for (int c = 0; c + r <= order; ++c) {
                d[r][c] = (r >= 2) ? diff_q(d[r - 2][c], 2) : diff_q(d[r - 1][c], 1);
            }
        }
    }
};

constexpr double kBinomial[5][5] = {
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
};
constexpr double kFactorial[5] = {1, 1, 2, 6, 24};

} // namespace

Field bopp_q(const Field& f, const StarParams& params) {
    params.validate();
    return scale_by_q(f) + Complex(0.0, 0.5 * params.hbar) * diff_p(f, 1);
}

Field bopp_p(const Field& f, const StarParams& params) {
    params.validate();
    return scale_by_p(f) - Complex(0.0, 0.5 * params.hbar) * diff_q(f, 1);
}

StarOperator make_bopp_q(const StarParams& params) {
    return {"Q = q*", [params](const Field& f) { return bopp_q(f, params); }, true};
}

StarOperator make_bopp_p(const StarParams& params) {
    return {"P = p*", [params](const Field& f) { return bopp_p(f, params); }, true};
}

StarOperator make_boost(const StarParams& params, double t) {
    return {"K = M Q - t P",
            [params, t](const Field& f) {
                return Complex(params.mass) * bopp_q(f, params) +
                       Complex(-t) * bopp_p(f, params);
            },
            true};
}

StarOperator make_free_hamiltonian(const StarParams& params) {
    return {"H = P^2/2M",
            [params](const Field& f) { return apply_free_hamiltonian(f, params); },
            true};
}

Field moyal_star(const Field& a, const Field& b, const StarParams& params) {
    params.validate();
    if (!a.grid.same_layout(b.grid)) {
        throw GridMismatchError("moyal_star: operand grids differ");
    }
    const int order = params.series_order;
    DerivativeTable da(a, order);
    DerivativeTable db(b, order);

    Field result = hadamard(a, b);
    Complex prefactor(1.0);
    const Complex ih2(0.0, 0.5 * params.hbar);
    for (int s = 1; s <= order; ++s) {
        prefactor *= ih2;
        Field term(a.grid);
        for (int j = 0; j <= s; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            const double w = sign * kBinomial[s][j];
            const Field& fa = da.d[s - j][j];
            const Field& fb = db.d[j][s - j];
            for (std::size_t idx = 0; idx < term.values.size(); ++idx) {
                term.values[idx] += w * fa.values[idx] * fb.values[idx];
            }
        }
        result = result + (prefactor / kFactorial[s]) * term;
    }
    return result;
}

Field apply_free_hamiltonian(const Field& f, const StarParams& params) {
    params.validate();
    const double M = params.mass;
    const double hb = params.hbar;
    Field d1 = diff_q(f, 1);
    Field d2 = diff_q(f, 2);
    Field out(f.grid);
    for (int i = 0; i < f.grid.nq; ++i) {
        for (int j = 0; j < f.grid.np; ++j) {
            const double p = f.grid.p(j);
            out.at(i, j) = (p * p / (2.0 * M)) * f.at(i, j)
                         - (hb * hb / (8.0 * M)) * d2.at(i, j)
                         - Complex(0.0, hb * p / (2.0 * M)) * d1.at(i, j);
        }
    }
    return out;
}

GpResidualResult gp_residual(const Field& psi, double E, double g,
                             const StarParams& params, Nonlinearity nonlinearity) {
    params.validate();
    if (!std::isfinite(E)) throw NonFiniteError("gp_residual: E must be finite");
    if (!(g >= 0.0)) throw DomainError("gp_residual: g must be >= 0");

    Field residual = apply_free_hamiltonian(psi, params);
    if (g != 0.0) {
        if (nonlinearity == Nonlinearity::pointwise) {
            for (std::size_t i = 0; i < residual.values.size(); ++i) {
                residual.values[i] += g * std::norm(psi.values[i]) * psi.values[i];
            }
        } else {
            Field density = moyal_star(psi, conjugate(psi), params);
            Field cubic = moyal_star(density, psi, params);
            residual = residual + Complex(g) * cubic;
        }
    }
    residual = residual - Complex(E) * psi;

    GpResidualResult out{std::move(residual), {}};
    out.norms.l2 = l2_norm(out.residual);
    out.norms.linf = linf_norm(out.residual);
    out.norms.l2_p0_slice = l2_norm_slice_q(out.residual, psi.grid.p0_index());
    return out;
}

double commutator_norm(const StarOperator& opA, const StarOperator& opB,
                       const Field& test, const Field& expected, int margin) {
    if (!test.grid.same_layout(expected.grid)) {
        throw GridMismatchError("commutator_norm: test/expected grids differ");
    }
    Field ab = opA.apply(opB.apply(test));
    Field ba = opB.apply(opA.apply(test));
    return l2_norm(ab - ba - expected, margin);
}

} // namespace moyalgp
