#include "moyalgp/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "moyalgp/parallel.hpp"

namespace moyalgp {

namespace {

// Central first-derivative coefficients c_l (antisymmetric), l = 1..hw.
const double kD1C2[] = {1.0 / 2.0};
const double kD1C4[] = {2.0 / 3.0, -1.0 / 12.0};
const double kD1C6[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
const double kD1C8[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};

// Central second-derivative coefficients: center c0, then c_l (symmetric).
const double kD2C2[] = {-2.0, 1.0};
const double kD2C4[] = {-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
const double kD2C6[] = {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
const double kD2C8[] = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};

const double* d1_coeffs(int accuracy) {
    switch (accuracy) {
        case 2: return kD1C2;
        case 4: return kD1C4;
        case 6: return kD1C6;
        default: return kD1C8;
    }
}

const double* d2_coeffs(int accuracy) {
    switch (accuracy) {
        case 2: return kD2C2;
        case 4: return kD2C4;
        case 6: return kD2C6;
        default: return kD2C8;
    }
}

int round_up_to_odd(int n) { return (n % 2 == 0) ? n + 1 : n; }

void check_layout(const Field& a, const Field& b, const char* where) {
    if (!a.grid.same_layout(b.grid)) {
        throw GridMismatchError(std::string(where) + ": fields live on different grids");
    }
}

// Differentiates one line of `n` values with stride `stride`.
// r is the distance to the nearest clamped edge (irrelevant when periodic).
struct LineDiff {
    const Complex* in;
    Complex* out;
    int n;
    std::ptrdiff_t stride;
    double h;
    int accuracy;
    bool periodic;

    Complex get(int i) const {
        if (periodic) {
            i %= n;
            if (i < 0) i += n;
        }
        return in[static_cast<std::ptrdiff_t>(i) * stride];
    }

    void first_derivative() const {
        for (int i = 0; i < n; ++i) {
            int acc = accuracy;
            if (!periodic) {
                const int r = std::min(i, n - 1 - i);
                if (r == 0) {
                    // one-sided second-order
                    Complex v;
                    if (i == 0) {
                        v = (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
                    } else {
                        v = (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
                    }
                    out[static_cast<std::ptrdiff_t>(i) * stride] = v;
                    continue;
                }
                acc = std::min(acc, 2 * r);
            }
            const double* c = d1_coeffs(acc);
            const int hw = acc / 2;
            Complex v(0.0);
            for (int l = hw; l >= 1; --l) {
                v += c[l - 1] * (get(i + l) - get(i - l));
            }
            out[static_cast<std::ptrdiff_t>(i) * stride] = v / h;
        }
    }

    void second_derivative() const {
        const double h2 = h * h;
        for (int i = 0; i < n; ++i) {
            int acc = accuracy;
            if (!periodic) {
                const int r = std::min(i, n - 1 - i);
                if (r == 0) {
                    Complex v;
                    if (i == 0) {
                        v = (2.0 * get(0) - 5.0 * get(1) + 4.0 * get(2) - get(3)) / h2;
                    } else {
                        v = (2.0 * get(n - 1) - 5.0 * get(n - 2) + 4.0 * get(n - 3) - get(n - 4)) / h2;
                    }
                    out[static_cast<std::ptrdiff_t>(i) * stride] = v;
                    continue;
                }
                acc = std::min(acc, 2 * r);
            }
            const double* c = d2_coeffs(acc);
            const int hw = acc / 2;
            Complex v = c[0] * get(i);
            for (int l = 1; l <= hw; ++l) {
                v += c[l] * (get(i + l) + get(i - l));
            }
            out[static_cast<std::ptrdiff_t>(i) * stride] = v / h2;
        }
    }
};

Field diff_axis(const Field& field, int order, bool along_q) {
    if (order != 1 && order != 2) {
        throw DomainError("derivative order must be 1 or 2");
    }
    const PhaseSpaceGrid& g = field.grid;
    const int n = along_q ? g.nq : g.np;
    const int m = along_q ? g.np : g.nq;
    const int need = std::max(g.fd_accuracy + 1, 4);
    if (n < need) {
        throw GridTooSmallError("axis has " + std::to_string(n) +
                                " points, need at least " + std::to_string(need));
    }
    Field out(g);
    const double h = along_q ? g.dq : g.dp;
    const std::ptrdiff_t stride = along_q ? g.np : 1;
    const bool periodic = (g.mode == BoundaryMode::periodic);
    parallel_for(m, [&](int line) {
        const std::ptrdiff_t base = along_q ? line : static_cast<std::ptrdiff_t>(line) * g.np;
        LineDiff ld{field.values.data() + base, out.values.data() + base,
                    n, stride, h, g.fd_accuracy, periodic};
        if (order == 1) {
            ld.first_derivative();
        } else {
            ld.second_derivative();
        }
    });
    return out;
}

std::vector<double> quadrature_weights(int n, double h, BoundaryMode mode) {
    std::vector<double> w(n);
    if (mode == BoundaryMode::periodic) {
        for (int i = 0; i < n; ++i) w[i] = h;
        return w;
    }
    // composite Simpson; n is odd by construction
    w[0] = w[n - 1] = h / 3.0;
    for (int i = 1; i < n - 1; ++i) {
        w[i] = (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
    }
    return w;
}

void append_g17(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

} // namespace

PhaseSpaceGrid PhaseSpaceGrid::make(double q_min, double q_max,
                                    double p_min, double p_max,
                                    int nq, int np,
                                    BoundaryMode mode, int fd_accuracy) {
    if (!(q_max > q_min) || !(p_max > p_min)) {
        throw DomainError("grid bounds must satisfy q_max > q_min and p_max > p_min");
    }
    if (nq < 8 || np < 8) {
        throw DomainError("grid needs nq >= 8 and np >= 8");
    }
    if (fd_accuracy != 2 && fd_accuracy != 4 && fd_accuracy != 6 && fd_accuracy != 8) {
        throw DomainError("fd_accuracy must be 2, 4, 6 or 8");
    }
    PhaseSpaceGrid g;
    g.q_min = q_min;
    g.q_max = q_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.nq = round_up_to_odd(nq);
    g.np = round_up_to_odd(np);
    g.mode = mode;
    g.fd_accuracy = fd_accuracy;
    const double denom_q = (mode == BoundaryMode::clamped) ? g.nq - 1 : g.nq;
    const double denom_p = (mode == BoundaryMode::clamped) ? g.np - 1 : g.np;
    g.dq = (q_max - q_min) / denom_q;
    g.dp = (p_max - p_min) / denom_p;
    return g;
}

int PhaseSpaceGrid::p0_index() const {
    int best = 0;
    double bestv = std::abs(p(0));
    for (int j = 1; j < np; ++j) {
        const double v = std::abs(p(j));
        if (v < bestv) {
            bestv = v;
            best = j;
        }
    }
    return best;
}

bool PhaseSpaceGrid::same_layout(const PhaseSpaceGrid& o) const {
    return nq == o.nq && np == o.np && q_min == o.q_min && q_max == o.q_max &&
           p_min == o.p_min && p_max == o.p_max && mode == o.mode;
}

Field sample(const PhaseSpaceGrid& grid, const std::function<Complex(double, double)>& f) {
    Field out(grid);
    std::vector<int> bad(grid.nq, -1);
    parallel_for(grid.nq, [&](int i) {
        const double qi = grid.q(i);
        for (int j = 0; j < grid.np; ++j) {
            const Complex v = f(qi, grid.p(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                bad[i] = j;
                return;
            }
            out.at(i, j) = v;
        }
    });
    for (int i = 0; i < grid.nq; ++i) {
        if (bad[i] >= 0) {
            throw NonFiniteError("sample: non-finite value at node (q=" +
                                 std::to_string(grid.q(i)) + ", p=" +
                                 std::to_string(grid.p(bad[i])) + ")");
        }
    }
    return out;
}

Field diff_q(const Field& field, int order) { return diff_axis(field, order, true); }
Field diff_p(const Field& field, int order) { return diff_axis(field, order, false); }

Complex integrate(const Field& field) {
    const PhaseSpaceGrid& g = field.grid;
    const auto wq = quadrature_weights(g.nq, g.dq, g.mode);
    const auto wp = quadrature_weights(g.np, g.dp, g.mode);
    Complex total(0.0);
    for (int i = 0; i < g.nq; ++i) {
        Complex row(0.0);
        for (int j = 0; j < g.np; ++j) {
            row += wp[j] * field.at(i, j);
        }
        total += wq[i] * row;
    }
    return total;
}

Profile reduce_p(const Field& field) {
    const PhaseSpaceGrid& g = field.grid;
    const auto wp = quadrature_weights(g.np, g.dp, g.mode);
    Profile prof;
    prof.x.resize(g.nq);
    prof.values.resize(g.nq);
    prof.dx = g.dq;
    prof.mode = g.mode;
    for (int i = 0; i < g.nq; ++i) {
        prof.x[i] = g.q(i);
        Complex acc(0.0);
        for (int j = 0; j < g.np; ++j) acc += wp[j] * field.at(i, j);
        prof.values[i] = acc;
    }
    return prof;
}

Profile reduce_q(const Field& field) {
    const PhaseSpaceGrid& g = field.grid;
    const auto wq = quadrature_weights(g.nq, g.dq, g.mode);
    Profile prof;
    prof.x.resize(g.np);
    prof.values.resize(g.np);
    prof.dx = g.dp;
    prof.mode = g.mode;
    for (int j = 0; j < g.np; ++j) {
        prof.x[j] = g.p(j);
        Complex acc(0.0);
        for (int i = 0; i < g.nq; ++i) acc += wq[i] * field.at(i, j);
        prof.values[j] = acc;
    }
    return prof;
}

Complex integrate(const Profile& profile) {
    const int n = static_cast<int>(profile.values.size());
    const auto w = quadrature_weights(n, profile.dx, profile.mode);
    Complex total(0.0);
    for (int i = 0; i < n; ++i) total += w[i] * profile.values[i];
    return total;
}

double l2_norm(const Field& field, int margin) {
    const PhaseSpaceGrid& g = field.grid;
    const int mg = (g.mode == BoundaryMode::clamped) ? margin : 0;
    double acc = 0.0;
    for (int i = mg; i < g.nq - mg; ++i) {
        for (int j = mg; j < g.np - mg; ++j) {
            acc += std::norm(field.at(i, j));
        }
    }
    return std::sqrt(acc * g.dq * g.dp);
}

double linf_norm(const Field& field, int margin) {
    const PhaseSpaceGrid& g = field.grid;
    const int mg = (g.mode == BoundaryMode::clamped) ? margin : 0;
    double best = 0.0;
    for (int i = mg; i < g.nq - mg; ++i) {
        for (int j = mg; j < g.np - mg; ++j) {
            best = std::max(best, std::abs(field.at(i, j)));
        }
    }
    return best;
}

double l2_norm_slice_q(const Field& field, int j_slice, int margin) {
    const PhaseSpaceGrid& g = field.grid;
    if (j_slice < 0 || j_slice >= g.np) {
        throw DomainError("slice index out of range");
    }
    const int mg = (g.mode == BoundaryMode::clamped) ? margin : 0;
    double acc = 0.0;
    for (int i = mg; i < g.nq - mg; ++i) {
        acc += std::norm(field.at(i, j_slice));
    }
    return std::sqrt(acc * g.dq);
}

Field operator+(const Field& a, const Field& b) {
    check_layout(a, b, "operator+");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    check_layout(a, b, "operator-");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
    return out;
}

Field operator*(Complex scale, const Field& a) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scale * a.values[i];
    return out;
}

Field hadamard(const Field& a, const Field& b) {
    check_layout(a, b, "hadamard");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

Field conjugate(const Field& a) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::conj(a.values[i]);
    return out;
}

Field abs_field(const Field& a) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::abs(a.values[i]);
    return out;
}

void write_field_csv(const Field& field, std::ostream& os) {
    const PhaseSpaceGrid& g = field.grid;
    std::string buf;
    buf.reserve(g.size() * 48);
    buf += "q,p,re,im\n";
    for (int i = 0; i < g.nq; ++i) {
        for (int j = 0; j < g.np; ++j) {
            append_g17(buf, g.q(i));
            buf += ',';
            append_g17(buf, g.p(j));
            buf += ',';
            append_g17(buf, field.at(i, j).real());
            buf += ',';
            append_g17(buf, field.at(i, j).imag());
            buf += '\n';
        }
    }
    os << buf;
}

void write_profile_csv(const Profile& profile, std::ostream& os) {
    std::string buf;
    buf += "x,value\n";
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        append_g17(buf, profile.x[i]);
        buf += ',';
        append_g17(buf, profile.values[i].real());
        buf += '\n';
    }
    os << buf;
}

} // namespace moyalgp
