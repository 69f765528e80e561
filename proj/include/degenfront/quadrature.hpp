#pragma once

#include <functional>
#include <string>

namespace degenfront {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;
    // Context string carried into quadrature_failure diagnostics.
    std::string what = "";
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Throws quadrature_failure when a
// panel still misses the tolerance at max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same scheme, but the integrand is given by its logarithm and the returned
// value is log(integral). Requires a nonnegative integrand; log_f may return
// -inf. Keeps I(s)-type integrals representable when exp(log_f) overflows.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     const QuadratureOptions& opt = {});

} // namespace degenfront
