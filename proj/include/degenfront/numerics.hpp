#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace degenfront {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// log(exp(a) + exp(b)), safe for -inf operands.
inline double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double log_sum(const std::vector<double>& logs) {
    double m = -kInf;
    for (double v : logs) m = std::max(m, v);
    if (m == -kInf) return -kInf;
    double acc = 0.0;
    for (double v : logs) acc += std::exp(v - m);
    return m + std::log(acc);
}

// Central difference with one Richardson extrapolation, relative step.
// Used for laws whose derivative is supplied only numerically.
inline double central_diff_richardson(const std::function<double(double)>& f, double s,
                                      double rel_step = 1e-6) {
    const double h = std::max(std::abs(s), 1e-300) * rel_step;
    auto d = [&](double hh) { return (f(s + hh) - f(s - hh)) / (2.0 * hh); };
    const double d1 = d(h);
    const double d2 = d(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

// Logarithmically spaced grid, inclusive of both ends.
inline std::vector<double> log_space(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
        const double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        g[static_cast<std::size_t>(i)] = std::exp(llo + t * (lhi - llo));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> lin_space(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        g[static_cast<std::size_t>(i)] = lo + t * (hi - lo);
    }
    return g;
}

// FNV-1a, used for config/output fingerprints.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& bytes);

// Thread cap honoring DEGEN_FRONT_THREADS (>=1). Parallel map over [0,n)
// with deterministic, index-ordered results.
unsigned thread_cap();
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace degenfront
