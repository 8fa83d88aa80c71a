// moyal_gp: command-line front end for the phase-space Gross-Pitaevskii
// toolkit. Subcommands:
//   solve   print the closed-form solution constants plus the
//           coefficient-matched ones as JSON
//   wigner  dump the Wigner function grid (CSV) and its analysis (JSON)
//   verify  run the algebra/identity check suite
//   limit   scan the small-m particle-in-a-box limit (CSV)
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error,
// 3 I/O error.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moyalgp/elliptic.hpp"
#include "moyalgp/gp_model.hpp"
#include "moyalgp/grid.hpp"
#include "moyalgp/star.hpp"
#include "moyalgp/wigner.hpp"

namespace {

using namespace moyalgp;

constexpr double kPi = std::numbers::pi;

struct RunConfig {
    int n = 1;
    double L = 1.0;
    double m = 0.5;
    double g = 1.0;
    double hbar = 1.0;
    double mass = 1.0;
    int series_order = 2;
    int nq = 257;
    int np = 129;
    double p_span = 0.95; // p-range is [-p_span*k, p_span*k]
    std::string out;
    std::string nonlinearity = "pointwise";
    std::vector<double> m_list;
    std::vector<std::string> checks;
    std::map<std::string, double> tol;

    StarParams star_params() const { return {hbar, mass, series_order}; }
    Nonlinearity nonlinearity_mode() const {
        return nonlinearity == "star" ? Nonlinearity::star : Nonlinearity::pointwise;
    }
};

void add_physics_flags(CLI::App* cmd, RunConfig& cfg, bool need_m) {
    cmd->add_option("--n", cfg.n, "quantum label n >= 1");
    cmd->add_option("--L", cfg.L, "box length (default 1)");
    auto* mopt = cmd->add_option("--m", cfg.m, "elliptic parameter in [0,1)");
    if (need_m) mopt->required();
    cmd->add_option("--g", cfg.g, "interaction strength >= 0 (default 1)");
    cmd->add_option("--hbar", cfg.hbar, "hbar (default 1)");
    cmd->add_option("--mass", cfg.mass, "mass M (default 1)");
    cmd->add_option("--series-order", cfg.series_order, "Moyal series order 1..4");
}

void add_grid_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--nq", cfg.nq, "q points (rounded up to odd)");
    cmd->add_option("--np", cfg.np, "p points (rounded up to odd)");
    cmd->add_option("--p-span", cfg.p_span, "p-range as a fraction of k (default 0.95)");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open output file: " + path);
    return os;
}

// ---------------------------------------------------------------- solve ----

int cmd_solve(const RunConfig& cfg) {
    const GpSolution sol = build_solution(cfg.n, cfg.L, cfg.m, cfg.g, cfg.star_params());
    const std::string summary = solution_summary_json(sol);
    if (cfg.out.empty()) {
        std::cout << summary << "\n";
    } else {
        auto os = open_output(cfg.out);
        os << summary << "\n";
        if (!os.good()) throw std::ios_base::failure("write failed: " + cfg.out);
    }
    return 0;
}

// --------------------------------------------------------------- wigner ----

void write_wigner_csv(const Field& fw, std::ostream& os) {
    const PhaseSpaceGrid& g = fw.grid;
    std::string buf;
    buf.reserve(g.size() * 40);
    buf += "q,p,f\n";
    char num[96];
    for (int i = 0; i < g.nq; ++i) {
        for (int j = 0; j < g.np; ++j) {
            std::snprintf(num, sizeof num, "%.17g,%.17g,%.17g\n",
                          g.q(i), g.p(j), fw.at(i, j).real());
            buf += num;
        }
    }
    os << buf;
}

int cmd_wigner(const RunConfig& cfg, const std::string& dump_psi_path) {
    const GpSolution sol = build_solution(cfg.n, cfg.L, cfg.m, cfg.g, cfg.star_params());
    const double pmax = cfg.p_span * sol.k;
    const auto grid = PhaseSpaceGrid::make(0.0, cfg.L, -pmax, pmax, cfg.nq, cfg.np);
    const SampledPsi psi = sample_psi(sol, grid);

    const Field fw = wigner_from_amplitude(psi.field, cfg.star_params());
    const WignerReport report =
        analyze_amplitude(psi.field, sol.E, cfg.star_params(), psi.masked_fraction);

    {
        auto os = open_output(cfg.out + ".csv");
        write_wigner_csv(fw, os);
        if (!os.good()) throw std::ios_base::failure("write failed: " + cfg.out + ".csv");
    }
    {
        auto os = open_output(cfg.out + ".json");
        os << report_json(report) << "\n";
        if (!os.good()) throw std::ios_base::failure("write failed: " + cfg.out + ".json");
    }
    {
        auto os = open_output(cfg.out + "_marginal_q.csv");
        write_profile_csv(report.marginal_q, os);
    }
    {
        auto os = open_output(cfg.out + "_marginal_p.csv");
        write_profile_csv(report.marginal_p, os);
    }
    if (!dump_psi_path.empty()) {
        auto os = open_output(dump_psi_path);
        write_field_csv(psi.field, os);
    }
    std::cout << "wigner: wrote " << cfg.out << ".csv (" << grid.nq << "x" << grid.np
              << " nodes), eta=" << report.eta
              << ", masked_fraction=" << report.masked_fraction << "\n";
    return 0;
}

// ---------------------------------------------------------------- limit ----

int cmd_limit(const RunConfig& cfg) {
    std::vector<double> ms = cfg.m_list;
    if (ms.empty()) {
        // default halving sequence plus the exact limit point
        ms = {1e-3, 5e-4, 2.5e-4, 1.25e-4, 0.0};
    }
    const auto rows = box_limit_scan(cfg.n, cfg.L, ms);

    std::string buf = "m,E,E_expansion,gap\n";
    char num[160];
    for (const auto& row : rows) {
        std::snprintf(num, sizeof num, "%.17g,%.17g,%.17g,%.17g\n",
                      row.m, row.E, row.E_expansion, row.gap_rel);
        buf += num;
    }
    if (cfg.out.empty()) {
        std::cout << buf;
    } else {
        auto os = open_output(cfg.out);
        os << buf;
        if (!os.good()) throw std::ios_base::failure("write failed: " + cfg.out);
    }

    const double paper_scale = 1.0 / (double(cfg.n) * cfg.n * kPi * kPi);
    for (const auto& row : rows) {
        if (row.m > 0.0 && std::abs(row.m - paper_scale) <= 1e-9 * paper_scale) {
            std::printf("note: m=%.9g is the large-n limit scale 1/(n^2 pi^2) for n=%d\n",
                        row.m, cfg.n);
        }
    }
    return 0;
}

// --------------------------------------------------------------- verify ----

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string extra;
};

Field gaussian_field(const PhaseSpaceGrid& g) {
    return sample(g, [](double q, double p) {
        return Complex(std::exp(-q * q - p * p));
    });
}

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
    std::vector<CheckResult> results;
    const StarParams params = cfg.star_params();

    auto tol_for = [&](const std::string& name, double fallback) {
        auto it = cfg.tol.find(name);
        return it == cfg.tol.end() ? fallback : it->second;
    };
    auto wanted = [&](const std::string& name) {
        if (cfg.checks.empty()) return true;
        for (const auto& c : cfg.checks) {
            if (c == name) return true;
        }
        return false;
    };
    auto push = [&](const std::string& name, double value, double tol,
                    const std::string& extra = "") {
        results.push_back({name, value, tol, std::abs(value) <= tol, extra});
    };

    if (wanted("elliptic-identities")) {
        double worst = 0.0;
        for (int im = 0; im < 10; ++im) {
            const double m = 0.95 * im / 9.0;
            const double K = elliptic::complete_k(m);
            for (int iu = 0; iu < 10; ++iu) {
                const double u = -8.0 * K + 16.0 * K * iu / 9.0;
                const auto t = elliptic::jacobi_elliptic(u, m);
                worst = std::max(worst, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
                worst = std::max(worst, std::abs(t.dn * t.dn + m * t.sn * t.sn - 1.0));
                worst = std::max(worst,
                                 std::abs(elliptic::jacobi_elliptic(u + 4.0 * K, m).sn - t.sn));
            }
        }
        push("elliptic-identities", worst, tol_for("elliptic-identities", 1e-11));
    }

    if (wanted("elliptic-k-series")) {
        // Maclaurin series of K(m), summed to machine convergence
        auto series_k = [](double m) {
            double term = 1.0, sum = 1.0;
            for (int j = 1; j < 100000; ++j) {
                const double r = (2.0 * j - 1.0) / (2.0 * j);
                term *= r * r * m;
                sum += term;
                if (term < 1e-18 * sum) break;
            }
            return 0.5 * kPi * sum;
        };
        double worst = std::abs(elliptic::complete_k(0.0) - kPi / 2.0) / (kPi / 2.0);
        for (double m : {0.1, 0.3, 0.5, 0.7}) {
            const double oracle = series_k(m);
            worst = std::max(worst, std::abs(elliptic::complete_k(m) - oracle) / oracle);
        }
        push("elliptic-k-series", worst, tol_for("elliptic-k-series", 1e-12));
    }

    if (wanted("star-polynomial")) {
        const auto g = PhaseSpaceGrid::make(-2.0, 2.0, -2.0, 2.0, 65, 65);
        const Field qf = sample(g, [](double q, double) { return Complex(q); });
        const Field pf = sample(g, [](double, double p) { return Complex(p); });
        const Field ih = sample(g, [&](double, double) {
            return Complex(0.0, params.hbar);
        });
        const Field comm = moyal_star(qf, pf, params) - moyal_star(pf, qf, params);
        push("star-polynomial", linf_norm(comm - ih, 2), tol_for("star-polynomial", 1e-12));
    }

    const bool want_qp = wanted("commutator-qp");
    const bool want_kh = wanted("commutator-kh");
    if (want_qp || want_kh) {
        const auto g = PhaseSpaceGrid::make(-6.0, 6.0, -6.0, 6.0, 257, 257,
                                            BoundaryMode::clamped, 8);
        const Field f = gaussian_field(g);
        if (want_qp) {
            const Field expected = Complex(0.0, params.hbar) * f;
            const double v = commutator_norm(make_bopp_q(params), make_bopp_p(params),
                                             f, expected);
            push("commutator-qp", v, tol_for("commutator-qp", 1e-8));
        }
        if (want_kh) {
            const Field expected = Complex(0.0, params.hbar) * bopp_p(f, params);
            const double v = commutator_norm(make_boost(params, 0.7),
                                             make_free_hamiltonian(params), f, expected);
            push("commutator-kh", v, tol_for("commutator-kh", 1e-7));
        }
    }

    if (wanted("moyal-bopp")) {
        const auto g = PhaseSpaceGrid::make(-2.0, 2.0, -2.0, 2.0, 65, 65);
        const Field q2 = sample(g, [](double q, double) { return Complex(q * q); });
        const Field p2 = sample(g, [](double, double p) { return Complex(p * p); });
        const Field series = moyal_star(q2, p2, params);
        const Field bopp = bopp_q(bopp_q(p2, params), params);
        push("moyal-bopp", linf_norm(series - bopp, 8), tol_for("moyal-bopp", 1e-9));
    }

    if (wanted("gp-residual")) {
        const GpSolution sol = build_solution(cfg.n, cfg.L, cfg.m, cfg.g, params);
        const auto match = coefficient_match(cfg.m, sol.k, cfg.g, params);
        const double A = std::sqrt(match.A2_matched);
        const auto g = PhaseSpaceGrid::make(0.0, cfg.L, -0.3 * sol.k, 0.3 * sol.k, 513, 33);
        const double m = cfg.m;
        const double k = sol.k;
        const Field psi = sample(g, [&](double q, double) {
            return Complex(A * elliptic::jacobi_elliptic(k * q, m).sn);
        });
        const auto r = gp_residual(psi, match.E_matched, cfg.g, params,
                                   cfg.nonlinearity_mode());
        push("gp-residual", r.norms.l2_p0_slice, tol_for("gp-residual", 1e-6));
    }

    if (wanted("box-limit")) {
        const double m0 = std::min(cfg.m, 0.05) > 0.0 ? std::min(cfg.m, 0.05) : 1e-3;
        const double ms[] = {m0, 0.5 * m0};
        const auto rows = box_limit_scan(cfg.n, cfg.L, ms);
        const double gap1 = std::abs(rows[0].E - rows[0].E_expansion);
        const double gap2 = std::abs(rows[1].E - rows[1].E_expansion);
        const double ratio = gap1 / gap2;
        char extra[160];
        std::snprintf(extra, sizeof extra,
                      "gap(m=%.3g)=%.6e, gap(m/2)=%.6e, ratio=%.4f", m0, gap1, gap2, ratio);
        push("box-limit", ratio - 4.0, tol_for("box-limit", 0.3), extra);
    }

    if (wanted("wigner-marginals")) {
        const GpSolution sol = build_solution(cfg.n, cfg.L, cfg.m, cfg.g, params);
        const auto g = PhaseSpaceGrid::make(0.0, cfg.L, -0.5 * sol.k, 0.5 * sol.k, 129, 65);
        const auto psi = sample_psi(sol, g);
        const Field fw = wigner_from_amplitude(psi.field, params);
        const double total = integrate(fw).real();
        const double dq_gap = std::abs(integrate(reduce_p(fw)).real() - total);
        const double dp_gap = std::abs(integrate(reduce_q(fw)).real() - total);
        push("wigner-marginals", std::max(dq_gap, dp_gap),
             tol_for("wigner-marginals", 1e-10));
    }

    if (wanted("negativity-scale")) {
        const GpSolution sol = build_solution(cfg.n, cfg.L, cfg.m, cfg.g, params);
        const auto g = PhaseSpaceGrid::make(0.0, cfg.L, -0.5 * sol.k, 0.5 * sol.k, 65, 33);
        const auto psi = sample_psi(sol, g);
        const Field fw = wigner_from_amplitude(psi.field, params);
        const double eta = negativity(fw);
        const double eta2 = negativity(4.0 * fw);
        push("negativity-scale", eta2 - eta, tol_for("negativity-scale", 0.0));
    }

    return results;
}

int cmd_verify(const RunConfig& cfg) {
    const auto results = run_checks(cfg);
    if (results.empty()) {
        std::cerr << "verify: no checks selected\n";
        return 2;
    }
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%s: %s (value=%.3e, tol=%.3e)%s%s\n", r.name.c_str(),
                    r.pass ? "pass" : "fail", r.value, r.tol,
                    r.extra.empty() ? "" : " ", r.extra.c_str());
        all_pass &= r.pass;
    }
    return all_pass ? 0 : 1;
}

const char* kCheckNames[] = {
    "elliptic-identities", "elliptic-k-series", "star-polynomial",
    "commutator-qp", "commutator-kh", "moyal-bopp", "gp-residual",
    "box-limit", "wigner-marginals", "negativity-scale",
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space Gross-Pitaevskii toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string dump_psi;

    auto* solve = app.add_subcommand("solve", "solution constants as JSON");
    add_physics_flags(solve, cfg, true);
    solve->add_option("--out", cfg.out, "write JSON here instead of stdout");

    auto* wigner = app.add_subcommand("wigner", "Wigner function grid dump + report");
    add_physics_flags(wigner, cfg, true);
    add_grid_flags(wigner, cfg);
    wigner->add_option("--out", cfg.out, "output basename")->required();
    wigner->add_option("--dump-psi", dump_psi, "also dump psi as q,p,re,im CSV");

    auto* verify = app.add_subcommand("verify", "run the identity/algebra checks");
    add_physics_flags(verify, cfg, false);
    add_grid_flags(verify, cfg);
    verify->add_option("--nonlinearity", cfg.nonlinearity,
                       "gp-residual cubic term: pointwise|star")
        ->check(CLI::IsMember({"pointwise", "star"}));
    verify->add_option("--check", cfg.checks, "run only the named checks")
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCheckNames),
                                                       std::end(kCheckNames))));
    for (const char* name : kCheckNames) {
        verify->add_option_function<double>(
            std::string("--tol-") + name,
            [&cfg, name](double v) { cfg.tol[name] = v; },
            std::string("tolerance override for ") + name);
    }

    auto* limit = app.add_subcommand("limit", "small-m box-limit scan (CSV)");
    limit->add_option("--n", cfg.n, "quantum label n >= 1");
    limit->add_option("--L", cfg.L, "box length (default 1)");
    limit->add_option("--m", cfg.m_list, "m values in [0, 0.1] (repeatable)");
    limit->add_option("--out", cfg.out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // keep --help at 0, any usage error at 2
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (wigner->parsed()) return cmd_wigner(cfg, dump_psi);
        if (verify->parsed()) return cmd_verify(cfg);
        if (limit->parsed()) return cmd_limit(cfg);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
