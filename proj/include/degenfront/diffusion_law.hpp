#pragma once

#include <functional>
#include <limits>
#include <string>

namespace degenfront {

enum class DerivativeKind { Analytic, Numeric };
enum class ZetaKind { Bounded, Unbounded };

// Concentration-dependent diffusion coefficient a(s), s in (0, s_max).
// log_a is always usable; for the exp-type laws it is the exact exponent, so
// validators can form a*I, s*a'*I products far below the double underflow
// threshold of a itself. Immutable after construction.
struct DiffusionLaw {
    std::string name;
    std::function<double(double)> a;
    std::function<double(double)> a_prime;
    DerivativeKind a_prime_kind = DerivativeKind::Numeric;
    double s_max = std::numeric_limits<double>::infinity();
    std::function<double(double)> analytic_I;     // empty when no closed form
    std::function<double(double)> analytic_log_I; // log companion of analytic_I
    std::function<double(double)> log_a;
    std::function<double(double)> log_a_prime; // empty -> log(a_prime(s))
    bool degenerate = true;

    double log_a_prime_at(double s) const;
};

// a(s) = s^beta on (0, inf); I(s) = s^-beta / beta.
DiffusionLaw make_power(double beta);

// a(s) = exp(-s^-beta) on (0, 1].
DiffusionLaw make_exp_inv(double beta);

// a(s) = exp(-int_s^1 zeta(tau)/tau dtau) on (0, 1]. For ZetaKind::Bounded the
// caller supplies bracketing constants 0 < k1 < zeta < k2, checked on a probe
// grid together with positivity; violations raise invalid_law.
DiffusionLaw make_zeta(std::function<double(double)> zeta, ZetaKind kind,
                       double k1 = 0.0, double k2 = 0.0,
                       const std::string& name = "zeta");

// a == a0 on (0, 1]; non-degenerate (finite-speed theory inapplicable).
DiffusionLaw make_constant(double a0);

// Attach a central-difference (Richardson-extrapolated) derivative to a law
// built without one.
void attach_numeric_derivative(DiffusionLaw& law);

// CLI grammar: "power:beta=2", "expinv:beta=1", "zeta:preset=log|sin",
// "const:a0=0.5". Unknown families or keys rejected.
DiffusionLaw parse_law_spec(const std::string& spec);

} // namespace degenfront
