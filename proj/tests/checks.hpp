// Minimal pass/fail harness shared by the test programs. Each check prints
// one line; the suite returns a nonzero exit code if anything failed.
#ifndef MOYALGP_TESTS_CHECKS_HPP
#define MOYALGP_TESTS_CHECKS_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace checks {

inline int g_total = 0;
inline int g_failed = 0;

inline bool record(bool ok, const std::string& label, const std::string& detail) {
    ++g_total;
    if (!ok) ++g_failed;
    std::printf("%s %s%s%s\n", ok ? "  ok " : "FAIL ", label.c_str(),
                detail.empty() ? "" : " ", detail.c_str());
    return ok;
}

inline bool check(bool ok, const std::string& label) {
    return record(ok, label, "");
}

/// |value| <= tol
inline bool check_le(double value, double tol, const std::string& label) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(value=%.3e, tol=%.3e)", value, tol);
    return record(std::abs(value) <= tol, label, buf);
}

/// |a - b| <= tol
inline bool check_close(double a, double b, double tol, const std::string& label) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(a=%.17g, b=%.17g, tol=%.3e)", a, b, tol);
    return record(std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= tol, label, buf);
}

/// |a - b| <= tol * max(|a|, |b|)
inline bool check_rel(double a, double b, double tol, const std::string& label) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    char buf[128];
    std::snprintf(buf, sizeof buf, "(a=%.17g, b=%.17g, rtol=%.3e)", a, b, tol);
    const bool ok = std::isfinite(a) && std::isfinite(b) &&
                    (scale == 0.0 || std::abs(a - b) <= tol * scale);
    return record(ok, label, buf);
}

template <class Exception, class Fn>
bool check_throws(Fn&& fn, const std::string& label) {
    bool threw = false;
    try {
        fn();
    } catch (const Exception&) {
        threw = true;
    } catch (...) {
    }
    return record(threw, label, threw ? "" : "(expected exception not thrown)");
}

inline int summary(const char* suite) {
    std::printf("%s: %d checks, %d failed\n", suite, g_total, g_failed);
    return g_failed == 0 ? 0 : 1;
}

} // namespace checks

#endif
