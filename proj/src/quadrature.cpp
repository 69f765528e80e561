#include "degenfront/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "degenfront/errors.hpp"
#include "degenfront/numerics.hpp"

namespace degenfront {
namespace {

// QUADPACK qk15 nodes/weights on [-1, 1]; odd-indexed abscissae carry the
// embedded 7-point Gauss rule, the center node is shared.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double kronrod;
    double gauss;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = kXgk[static_cast<std::size_t>(i)];
        const double fsum = f(c - h * x) + f(c + h * x);
        k += kWgk[static_cast<std::size_t>(i)] * fsum;
        if (i % 2 == 1) g += kWg[static_cast<std::size_t>(i / 2)] * fsum;
    }
    return {k * h, g * h};
}

[[noreturn]] void fail(const QuadratureOptions& opt, double a, double b, double err) {
    std::ostringstream os;
    os << "quadrature did not converge" << (opt.what.empty() ? "" : " (" + opt.what + ")")
       << ": panel [" << a << ", " << b << "] residual " << err << " at max depth "
       << opt.max_depth;
    throw quadrature_failure(os.str());
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth, const QuadratureOptions& opt) {
    const Panel p = eval_panel(f, a, b);
    const double err = std::abs(p.kronrod - p.gauss);
    if (err <= tol || err <= opt.rel_tol * std::abs(p.kronrod)) return p.kronrod;
    if (depth >= opt.max_depth) fail(opt, a, b, err);
    const double m = 0.5 * (a + b);
    return integrate_rec(f, a, m, tol / 2.0, depth + 1, opt) +
           integrate_rec(f, m, b, tol / 2.0, depth + 1, opt);
}

struct LogPanel {
    double log_kronrod;
    double log_gauss;
};

// Same rule with the integrand given by its log; sums taken via log-sum-exp
// (all K15/G7 weights are positive).
LogPanel eval_log_panel(const std::function<double(double)>& log_f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double lh = std::log(h);
    std::vector<double> lk, lg;
    lk.reserve(15);
    lg.reserve(7);
    const double lfc = log_f(c);
    lk.push_back(std::log(kWgk[7]) + lfc);
    lg.push_back(std::log(kWg[3]) + lfc);
    for (int i = 0; i < 7; ++i) {
        const double x = kXgk[static_cast<std::size_t>(i)];
        const double l1 = log_f(c - h * x);
        const double l2 = log_f(c + h * x);
        const double lw = std::log(kWgk[static_cast<std::size_t>(i)]);
        lk.push_back(lw + l1);
        lk.push_back(lw + l2);
        if (i % 2 == 1) {
            const double lwg = std::log(kWg[static_cast<std::size_t>(i / 2)]);
            lg.push_back(lwg + l1);
            lg.push_back(lwg + l2);
        }
    }
    return {log_sum(lk) + lh, log_sum(lg) + lh};
}

double log_integrate_rec(const std::function<double(double)>& log_f, double a, double b,
                         double tol, int depth, const QuadratureOptions& opt) {
    const LogPanel p = eval_log_panel(log_f, a, b);
    if (p.log_kronrod == -kInf) return -kInf;
    // Panel relative error: |exp(lG - lK) - 1|.
    const double err = std::abs(std::expm1(p.log_gauss - p.log_kronrod));
    if (err <= tol) return p.log_kronrod;
    if (depth >= opt.max_depth) fail(opt, a, b, err);
    const double m = 0.5 * (a + b);
    return log_add(log_integrate_rec(log_f, a, m, tol, depth + 1, opt),
                   log_integrate_rec(log_f, m, b, tol, depth + 1, opt));
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, opt);
    return integrate_rec(f, a, b, opt.abs_tol, 0, opt);
}

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const QuadratureOptions& opt) {
    if (a >= b) return -kInf;
    return log_integrate_rec(log_f, a, b, std::max(opt.rel_tol, 1e-14), 0, opt);
}

} // namespace degenfront
