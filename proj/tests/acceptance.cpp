// Acceptance suite: one numbered criterion per invocation (all when none
// given). Prints one pass/fail line per criterion plus the measured values
// behind it. Usage: acceptance [--cli <path-to-moyal_gp>] [criterion ...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/stat.h>
#include <sys/wait.h>

#include "moyalgp/elliptic.hpp"
#include "moyalgp/gp_model.hpp"
#include "moyalgp/grid.hpp"
#include "moyalgp/star.hpp"
#include "moyalgp/wigner.hpp"
#include "oracles.hpp"

using namespace moyalgp;

namespace {

constexpr double kPi = std::numbers::pi;
std::string g_cli;

struct Tally {
    bool pass = true;
    void expect(bool ok, const char* fmt, double value, double bound) {
        std::printf("    %s %s (value=%.6e, bound=%.1e)\n", ok ? "ok  " : "FAIL",
                    fmt, value, bound);
        pass &= ok;
    }
    void require_le(double value, double bound, const char* what) {
        expect(std::isfinite(value) && std::abs(value) <= bound, what, value, bound);
    }
    void note(const char* fmt, double value) {
        std::printf("    note %s = %.6e\n", fmt, value);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------- criteria ----

bool criterion_1() {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();

    t.require_le(elliptic::complete_k(0.0) - kPi / 2.0, 1e-13, "K(0) = pi/2");
    for (double m : {0.1, 0.3, 0.5, 0.7}) {
        const double oracle = oracles::maclaurin_complete_k(m);
        t.require_le((elliptic::complete_k(m) - oracle) / oracle, 1e-12,
                     "K(m) vs Maclaurin oracle");
    }

    double worst_pyth = 0.0, worst_dn = 0.0, worst_period = 0.0;
    for (int im = 0; im < 10; ++im) {
        const double m = 0.95 * im / 9.0;
        const double K = elliptic::complete_k(m);
        for (int iu = 0; iu < 10; ++iu) {
            const double u = -8.0 * K + 16.0 * K * iu / 9.0;
            const auto j = elliptic::jacobi_elliptic(u, m);
            worst_pyth = std::max(worst_pyth, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
            worst_dn = std::max(worst_dn, std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0));
            worst_period = std::max(
                worst_period, std::abs(elliptic::jacobi_elliptic(u + 4.0 * K, m).sn - j.sn));
        }
    }
    t.require_le(worst_pyth, 1e-11, "sn^2 + cn^2 = 1 on 10x10 lattice");
    t.require_le(worst_dn, 1e-11, "dn^2 + m sn^2 = 1 on 10x10 lattice");
    t.require_le(worst_period, 1e-11, "period 4K on 10x10 lattice");

    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 1.0, "runtime < 1 s", elapsed, 1.0);
    return t.pass;
}

bool criterion_2() {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    const StarParams params;

    const auto g = PhaseSpaceGrid::make(-6.0, 6.0, -6.0, 6.0, 257, 257,
                                        BoundaryMode::clamped, 8);
    const Field f = sample(g, [](double q, double p) {
        return Complex(std::exp(-q * q - p * p));
    });

    const Field ihf = Complex(0.0, params.hbar) * f;
    t.require_le(commutator_norm(make_bopp_q(params), make_bopp_p(params), f, ihf),
                 1e-8, "[Q,P] f = i hbar f (Gaussian, 257x257)");

    const Field ihPf = Complex(0.0, params.hbar) * bopp_p(f, params);
    t.require_le(commutator_norm(make_boost(params, 0.7), make_free_hamiltonian(params),
                                 f, ihPf),
                 1e-7, "[K,H] f = i hbar P f");

    const auto gp = PhaseSpaceGrid::make(-2.0, 2.0, -2.0, 2.0, 65, 65);
    const Field qf = sample(gp, [](double q, double) { return Complex(q); });
    const Field pf = sample(gp, [](double, double p) { return Complex(p); });
    const Field ih = sample(gp, [&](double, double) { return Complex(0.0, params.hbar); });
    const Field comm = moyal_star(qf, pf, params) - moyal_star(pf, qf, params);
    t.require_le(linf_norm(comm - ih, 2), 1e-12, "q*p - p*q = i hbar on polynomials");

    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 10.0, "runtime < 10 s", elapsed, 10.0);
    return t.pass;
}

bool criterion_3() {
    Tally t;
    StarParams params;
    params.series_order = 4;
    // Small instances on purpose: both routes are exact on these
    // polynomials, and a coarse grid keeps the 1/h^4 rounding
    // amplification of the chained stencils below the bound.
    const auto g = PhaseSpaceGrid::make(0.0, 1.0, 0.0, 1.0, 41, 41,
                                        BoundaryMode::clamped, 8);
    const int margin = 17;

    double worst = 0.0;
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; a + b <= 4; ++b) {
            // Weyl symbol of Q^a P^b is the terminating star polynomial
            // q^a * p^b; multiplying by it must equal the Bopp composition.
            const Field symbol = sample(g, [&](double q, double p) {
                return oracles::star_monomial_qp(a, b, params.hbar, q, p);
            });
            for (int c = 0; c <= 4; ++c) {
                for (int d = 0; c + d <= 4; ++d) {
                    const Field mono = sample(g, [&](double q, double p) {
                        return Complex(std::pow(q, c) * std::pow(p, d));
                    });
                    Field bopp = mono;
                    for (int i = 0; i < b; ++i) bopp = bopp_p(bopp, params);
                    for (int i = 0; i < a; ++i) bopp = bopp_q(bopp, params);
                    const Field series = moyal_star(symbol, mono, params);
                    worst = std::max(worst, linf_norm(series - bopp, margin));
                }
            }
        }
    }
    t.require_le(worst, 1e-9, "moyal_star vs Bopp composition, all monomials deg <= 4");
    return t.pass;
}

bool criterion_4() {
    Tally t;
    const double ms[] = {0.0, 1e-3, 5e-4, 2.5e-4};
    const auto rows = box_limit_scan(1, 1.0, ms);

    t.require_le(rows[0].E - kPi * kPi / 2.0, 1e-12, "E(m=0) = pi^2/2");
    const double g1 = std::abs(rows[1].E - rows[1].E_expansion);
    const double g2 = std::abs(rows[2].E - rows[2].E_expansion);
    const double g3 = std::abs(rows[3].E - rows[3].E_expansion);
    t.expect(std::abs(g1 / g2 - 4.0) <= 0.3, "gap ratio at m=1e-3 -> 5e-4", g1 / g2, 4.3);
    t.expect(std::abs(g2 / g3 - 4.0) <= 0.3, "gap ratio at m=5e-4 -> 2.5e-4", g2 / g3, 4.3);
    return t.pass;
}

bool criterion_5() {
    Tally t;
    const StarParams params;
    for (int n = 1; n <= 6; ++n) {
        for (double m : {0.1, 0.5}) {
            const auto sol = build_solution(n, 1.0, m, 1.0, params);
            const int nodes = oracles::count_sign_changes(
                [&](double q) { return eval_psi(sol, q, 0.0); },
                0.0, 1.0, 20001, 1e-9 * sol.A);
            t.expect(nodes == n - 1, "p=0 node count = n-1", nodes, n - 1.0);
        }
    }
    const auto sol = build_solution(4, 1.0, 0.5, 1.0, params);
    bool zero_at_origin = true;
    for (double p : {0.0, 0.25 * sol.k, -0.7 * sol.k}) {
        zero_at_origin &= (eval_psi(sol, 0.0, p) == 0.0);
    }
    t.expect(zero_at_origin, "psi(0,p) = 0 exactly", 0.0, 0.0);
    t.require_le(eval_psi(sol, 1.0, 0.0), 1e-10, "psi(L,0) = 0");
    return t.pass;
}

bool criterion_6() {
    Tally t;
    const StarParams params;
    for (int n : {1, 2}) {
        for (double m : {0.1, 0.5}) {
            for (double g : {0.5, 1.0}) {
                const auto sol = build_solution(n, 1.0, m, g, params);
                const auto match = coefficient_match(m, sol.k, g, params);
                const auto grid = PhaseSpaceGrid::make(0.0, 1.0, -0.3 * sol.k,
                                                       0.3 * sol.k, 513, 33);
                const double A = std::sqrt(match.A2_matched);
                const Field psi = sample(grid, [&](double q, double) {
                    return Complex(A * elliptic::jacobi_elliptic(sol.k * q, m).sn);
                });
                const auto r = gp_residual(psi, match.E_matched, g, params);
                char what[96];
                std::snprintf(what, sizeof what,
                              "matched closure n=%d m=%.1f g=%.1f", n, m, g);
                t.require_le(r.norms.l2_p0_slice, 1e-6, what);

                // closed-form constants: residual reported, no threshold
                // (their provenance is uncertain; the ratio to the matched
                // ones is exactly 8Mg/hbar^2 and 4M/hbar^2)
                const auto paper = sample_psi(sol, grid);
                const auto rp = gp_residual(paper.field, sol.E, g, params);
                std::printf("    note closed-form constants residual "
                            "n=%d m=%.1f g=%.1f: slice=%.6e l2=%.6e\n",
                            n, m, g, rp.norms.l2_p0_slice, rp.norms.l2);
            }
        }
    }
    return t.pass;
}

bool criterion_7() {
    Tally t;
    const StarParams params;

    // (a) whenever f_W >= 0 on the grid, eta = 0 within 1e-8: for n = 1 a
    // narrow momentum window keeps the hbar^2 corrections positive.
    for (double m : {0.1, 0.5}) {
        const auto sol = build_solution(1, 1.0, m, 1.0, params);
        const auto g = PhaseSpaceGrid::make(0.0, 1.0, -0.3 * sol.k, 0.3 * sol.k,
                                            129, 65, BoundaryMode::clamped, 8);
        const auto psi = sample_psi(sol, g);
        const Field fw = wigner_from_amplitude(psi.field, params);
        double mn = 0.0;
        for (const auto& v : fw.values) mn = std::min(mn, v.real());
        const double eta = negativity(fw);
        t.expect(mn >= -1e-10, "n=1 narrow-span f_W >= 0 on grid", mn, 0.0);
        t.require_le(eta, 1e-8, "n=1: f_W >= 0 gives eta = 0");
    }

    // consistency in the other direction: a sign-indefinite f_W must show
    // eta > 0 (the invariant eta = 0 iff f_W >= 0)
    {
        const auto sol = build_solution(2, 1.0, 0.5, 1.0, params);
        const auto g = PhaseSpaceGrid::make(0.0, 1.0, -0.95 * sol.k, 0.95 * sol.k,
                                            257, 129);
        const auto psi = sample_psi(sol, g);
        const Field fw = wigner_from_amplitude(psi.field, params);
        double mn = 0.0;
        for (const auto& v : fw.values) mn = std::min(mn, v.real());
        const double eta = negativity(fw);
        t.expect(mn < 0.0 && eta > 1e-8, "sign-indefinite f_W has eta > 0", eta, 1e-8);
    }

    // (b) Table-1 reproduction at n = 100 (m at the paper's large-n scale
    // 1/(n^2 pi^2), 513x257, < 60 s). The hbar^2 corrections to psi * psi
    // scale like k q <= 2 n K(m) for every m and L, so at n = 100 they
    // dominate psi^2 by two orders of magnitude and f_W is strongly
    // sign-indefinite: the table's eta = 0 is NOT reproduced by Eq.-(14)
    // evaluation of the elliptic solution. Kept faithful and red; see the
    // decisions ledger. The p-independent p=0-profile lift (for which
    // f_W = psi^2 exactly) is printed for contrast.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const int n = 100;
        const double m = 1.0 / (double(n) * n * kPi * kPi);
        const auto sol = build_solution(n, 1.0, m, 1.0, params);
        const auto g = PhaseSpaceGrid::make(0.0, 1.0, -0.95 * sol.k, 0.95 * sol.k,
                                            513, 257);
        const auto psi = sample_psi(sol, g);
        const Field fw = wigner_from_amplitude(psi.field, params);
        double mn = 0.0;
        for (const auto& v : fw.values) mn = std::min(mn, v.real());
        double eta = std::nan("");
        std::string eta_error;
        try {
            eta = negativity(fw);
        } catch (const Error& e) {
            eta_error = e.what();
        }
        const double elapsed = seconds_since(t0);

        t.note("n=100 min f_W", mn);
        t.note("n=100 integral of f_W", integrate(fw).real());
        if (eta_error.empty()) {
            t.note("n=100 eta from Eq.-(14) Wigner field", eta);
        } else {
            std::printf("    note n=100 negativity precondition failed: %s\n",
                        eta_error.c_str());
        }
        const Field lift = sample(g, [&](double q, double) {
            return Complex(eval_psi(sol, q, 0.0));
        });
        const Field lift_fw = wigner_from_amplitude(lift, params);
        t.note("n=100 eta of p-independent p=0 profile lift", negativity(lift_fw));
        t.expect(elapsed < 60.0, "n=100 runtime < 60 s", elapsed, 60.0);
        t.require_le(eta, 1e-8, "n=100 reproduces Table-1 eta = 0");
    }

    // (c) n >= 2: sign-changing sn, eta reported (property-only)
    for (int n : {2, 3}) {
        const auto sol = build_solution(n, 1.0, 0.5, 1.0, params);
        const auto g = PhaseSpaceGrid::make(0.0, 1.0, -0.95 * sol.k, 0.95 * sol.k,
                                            257, 129);
        const auto psi = sample_psi(sol, g);
        const double eta = negativity(wigner_from_amplitude(psi.field, params));
        t.expect(std::isfinite(eta) && eta >= 0.0, "n>=2 eta reported", eta, 0.0);
    }
    return t.pass;
}

bool criterion_8() {
    Tally t;
    const StarParams params;
    const auto sol = build_solution(1, 1.0, 0.5, 1.0, params);
    const auto g = PhaseSpaceGrid::make(0.0, 1.0, -0.5 * sol.k, 0.5 * sol.k, 129, 65);
    const auto psi = sample_psi(sol, g);
    const Field fw = wigner_from_amplitude(psi.field, params);

    const double total = integrate(fw).real();
    t.require_le(integrate(reduce_p(fw)).real() - total, 1e-10,
                 "q-marginal integral = 2D quadrature");
    t.require_le(integrate(reduce_q(fw)).real() - total, 1e-10,
                 "p-marginal integral = 2D quadrature");

    const double eta = negativity(fw);
    t.expect(negativity(4.0 * fw) == eta, "eta exactly invariant under f -> 4f",
             negativity(4.0 * fw) - eta, 0.0);
    t.expect(negativity(0.25 * fw) == eta, "eta exactly invariant under f -> f/4",
             negativity(0.25 * fw) - eta, 0.0);
    return t.pass;
}

bool criterion_9() {
    Tally t;
    if (g_cli.empty()) {
        std::printf("    FAIL no --cli path given\n");
        return false;
    }
    ::mkdir("acceptance_scratch", 0755);
    auto slurp = [](const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    auto run_once = [&](const std::string& base, const char* threads) {
        const std::string cmd = "MOYAL_GP_THREADS=" + std::string(threads) + " " + g_cli +
                                " wigner --n 2 --L 1 --m 0.4 --nq 65 --np 33 --out " +
                                base + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    const std::string a = "acceptance_scratch/run_a";
    const std::string b = "acceptance_scratch/run_b";
    const std::string c = "acceptance_scratch/run_c";
    bool ok = run_once(a, "1") && run_once(b, "1") && run_once(c, "4");
    t.expect(ok, "cmd_wigner runs complete", ok ? 1.0 : 0.0, 1.0);
    for (const char* suffix : {".csv", ".json", "_marginal_q.csv", "_marginal_p.csv"}) {
        const bool same = slurp(a + suffix) == slurp(b + suffix);
        t.expect(same, (std::string("byte-identical reruns ") + suffix).c_str(),
                 same ? 0.0 : 1.0, 0.0);
        const bool same_threads = slurp(a + suffix) == slurp(c + suffix);
        t.expect(same_threads,
                 (std::string("thread count does not change bytes ") + suffix).c_str(),
                 same_threads ? 0.0 : 1.0, 0.0);
    }
    return t.pass;
}

struct Criterion {
    int id;
    const char* title;
    bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "elliptic kernel", criterion_1},
    {2, "star algebra commutators", criterion_2},
    {3, "Moyal / Bopp oracle equivalence", criterion_3},
    {4, "particle-in-a-box limit", criterion_4},
    {5, "solution structure", criterion_5},
    {6, "residual closure", criterion_6},
    {7, "Wigner negativity / Table 1", criterion_7},
    {8, "Wigner marginals and rescaling", criterion_8},
    {9, "deterministic outputs", criterion_9},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            g_cli = argv[++i];
        } else {
            selected.push_back(std::atoi(arg.c_str()));
        }
    }

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        std::printf("criterion %d: %s\n", c.id, c.title);
        const bool ok = c.run();
        std::printf("criterion %d: %s — %s\n", c.id, ok ? "PASS" : "FAIL", c.title);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
