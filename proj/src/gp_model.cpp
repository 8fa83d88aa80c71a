#include "moyalgp/gp_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "moyalgp/elliptic.hpp"

namespace moyalgp {

namespace {

constexpr double kPi = std::numbers::pi;

double square(double x) { return x * x; }

} // namespace

GpSolution build_solution(int n, double L, double m, double g, const StarParams& params) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(L > 0.0)) throw DomainError("L must be > 0");
    if (!(g >= 0.0)) throw DomainError("g must be >= 0");
    params.validate();

    GpSolution sol;
    sol.n = n;
    sol.L = L;
    sol.m = m; // validated by complete_k below
    sol.g = g;
    sol.params = params;
    sol.k_complete = elliptic::complete_k(m);
    sol.k = 2.0 * n * sol.k_complete / L;
    sol.A = std::sqrt(2.0 * m) * sol.k;
    sol.E = 0.5 * square(sol.k) * (1.0 + m);
    return sol;
}

double eval_psi(const GpSolution& sol, double q, double p) {
    if (!(q >= 0.0 && q <= sol.L)) {
        throw DomainError("q must lie in [0, L]");
    }
    if (!(std::abs(p) < sol.k)) {
        throw MomentumOutOfBandError("|p| must be < k = " + std::to_string(sol.k));
    }
    const double w = std::sqrt(sol.k * sol.k - p * p);
    return sol.A * elliptic::jacobi_elliptic(w * q, sol.m).sn;
}

SampledPsi sample_psi(const GpSolution& sol, const PhaseSpaceGrid& grid) {
    const double slack = 1e-12 * sol.L;
    if (grid.q_min < -slack || grid.q_max > sol.L + slack) {
        throw DomainError("grid q-range must lie inside [0, L]");
    }
    SampledPsi out{Field(grid), 0.0};
    std::size_t masked = 0;
    for (int j = 0; j < grid.np; ++j) {
        const double p = grid.p(j);
        if (!(std::abs(p) < sol.k)) {
            masked += grid.nq;
            continue; // values stay 0
        }
        const double w = std::sqrt(sol.k * sol.k - p * p);
        for (int i = 0; i < grid.nq; ++i) {
            out.field.at(i, j) = sol.A * elliptic::jacobi_elliptic(w * grid.q(i), sol.m).sn;
        }
    }
    out.masked_fraction = static_cast<double>(masked) / static_cast<double>(grid.size());
    return out;
}

CoefficientMatch coefficient_match(double m, double k, double g, const StarParams& params) {
    params.validate();
    if (!(m >= 0.0 && m < 1.0)) throw DomainError("m must satisfy 0 <= m < 1");
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    if (!(g >= 0.0)) throw DomainError("g must be >= 0");
    if (g == 0.0 && m > 0.0) {
        throw DegenerateMatchError(
            "the sn^3 coefficient cannot be zeroed with g = 0 and m > 0");
    }
    const double hb2 = square(params.hbar);
    const double M = params.mass;

    CoefficientMatch out;
    out.A2_matched = (m == 0.0) ? 0.0 : hb2 * m * square(k) / (4.0 * M * g);
    out.E_matched = hb2 * square(k) * (1.0 + m) / (8.0 * M);
    out.A2_paper = 2.0 * m * square(k);
    out.E_paper = 0.5 * square(k) * (1.0 + m);
    out.A2_ratio = 8.0 * M * g / hb2;
    out.E_ratio = 4.0 * M / hb2;

    // Verify the closure numerically over one sn period via the ODE identity.
    const double A = std::sqrt(out.A2_matched);
    const double period = 4.0 * elliptic::complete_k(m);
    const int samples = 257;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double u = period * i / (samples - 1);
        const double s = elliptic::jacobi_elliptic(u, m).sn;
        const double sdd = elliptic::sn_second_derivative(u, m);
        const double r = -(hb2 / (8.0 * M)) * A * square(k) * sdd +
                         g * A * A * A * s * s * s - out.E_matched * A * s;
        worst = std::max(worst, std::abs(r));
    }
    out.identity_residual_max = worst;
    return out;
}

std::vector<BoxLimitRow> box_limit_scan(int n, double L, std::span<const double> m_values) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(L > 0.0)) throw DomainError("L must be > 0");
    std::vector<BoxLimitRow> rows;
    rows.reserve(m_values.size());
    for (double m : m_values) {
        if (!(m >= 0.0 && m <= 0.1)) {
            throw DomainError("box-limit scan requires m in [0, 0.1] (got m=" +
                              std::to_string(m) + ")");
        }
        BoxLimitRow row;
        row.m = m;
        const double k = 2.0 * n * elliptic::complete_k(m) / L;
        const double k_box = n * kPi / L;
        row.E = 0.5 * square(k) * (1.0 + m);
        row.E_expansion = 0.5 * square(k_box) * (1.0 + 1.5 * m);
        row.gap_rel = std::abs(row.E - row.E_expansion) / row.E;
        rows.push_back(row);
    }
    return rows;
}

double norm_p0(const GpSolution& sol) {
    // 1D composite Simpson over [0, L] on the p = 0 slice.
    const int n = 4097;
    const double h = sol.L / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = sol.A * elliptic::jacobi_elliptic(sol.k * (i * h), sol.m).sn;
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * s * s;
    }
    return acc * h / 3.0;
}

std::string solution_summary_json(const GpSolution& sol) {
    const CoefficientMatch match = coefficient_match(sol.m, sol.k, sol.g, sol.params);
    nlohmann::json j;
    j["n"] = sol.n;
    j["L"] = sol.L;
    j["m"] = sol.m;
    j["g"] = sol.g;
    j["hbar"] = sol.params.hbar;
    j["mass"] = sol.params.mass;
    j["k"] = sol.k;
    j["A2"] = sol.A * sol.A;
    j["E"] = sol.E;
    j["A2_matched"] = match.A2_matched;
    j["E_matched"] = match.E_matched;
    j["A2_paper_over_matched"] = match.A2_ratio;
    j["E_paper_over_matched"] = match.E_ratio;
    j["norm_p0"] = norm_p0(sol);
    return j.dump(2);
}

} // namespace moyalgp
