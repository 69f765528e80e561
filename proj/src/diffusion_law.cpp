#include "degenfront/diffusion_law.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "degenfront/errors.hpp"
#include "degenfront/numerics.hpp"
#include "degenfront/quadrature.hpp"

namespace degenfront {

double DiffusionLaw::log_a_prime_at(double s) const {
    if (log_a_prime) return log_a_prime(s);
    const double v = a_prime(s);
    return v > 0.0 ? std::log(v) : -kInf;
}

DiffusionLaw make_power(double beta) {
    if (!(beta > 0.0)) throw invalid_parameter("power law: beta must be > 0");
    DiffusionLaw law;
    std::ostringstream name;
    name << "power:beta=" << beta;
    law.name = name.str();
    law.a = [beta](double s) { return std::pow(s, beta); };
    law.a_prime = [beta](double s) { return beta * std::pow(s, beta - 1.0); };
    law.a_prime_kind = DerivativeKind::Analytic;
    law.s_max = kInf;
    law.analytic_I = [beta](double s) { return std::pow(s, -beta) / beta; };
    law.analytic_log_I = [beta](double s) {
        return -beta * std::log(s) - std::log(beta);
    };
    law.log_a = [beta](double s) { return beta * std::log(s); };
    law.log_a_prime = [beta](double s) {
        return std::log(beta) + (beta - 1.0) * std::log(s);
    };
    law.degenerate = true;
    return law;
}

DiffusionLaw make_exp_inv(double beta) {
    if (!(beta > 0.0)) throw invalid_parameter("expinv law: beta must be > 0");
    DiffusionLaw law;
    std::ostringstream name;
    name << "expinv:beta=" << beta;
    law.name = name.str();
    law.a = [beta](double s) { return std::exp(-std::pow(s, -beta)); };
    // a'(s) = beta s^(-beta-1) exp(-s^-beta)
    law.a_prime = [beta](double s) {
        return beta * std::pow(s, -beta - 1.0) * std::exp(-std::pow(s, -beta));
    };
    law.a_prime_kind = DerivativeKind::Analytic;
    law.s_max = 1.0;
    law.log_a = [beta](double s) { return -std::pow(s, -beta); };
    law.log_a_prime = [beta](double s) {
        return std::log(beta) - (beta + 1.0) * std::log(s) - std::pow(s, -beta);
    };
    law.degenerate = true;
    return law;
}

namespace {

// int_s^1 zeta(tau)/tau dtau under tau = e^-x: int_0^{ln(1/s)} zeta(e^-x) dx.
double zeta_exponent(const std::function<double(double)>& zeta, double s) {
    if (s >= 1.0) return 0.0;
    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    opt.what = "zeta law exponent";
    return integrate([&zeta](double x) { return zeta(std::exp(-x)); }, 0.0,
                     std::log(1.0 / s), opt);
}

} // namespace

DiffusionLaw make_zeta(std::function<double(double)> zeta, ZetaKind kind,
                       double k1, double k2, const std::string& name) {
    if (!zeta) throw invalid_parameter("zeta law: missing zeta function");
    if (kind == ZetaKind::Bounded && !(0.0 < k1 && k1 < k2))
        throw invalid_parameter("zeta law: bounded kind needs 0 < k1 < k2");

    // Probe grid: positivity always, brackets when bounded.
    for (double s : log_space(1e-4, 1.0, 200)) {
        double z;
        try {
            z = zeta(s);
        } catch (const std::exception& e) {
            throw invalid_law(std::string("zeta evaluation failed at s=") +
                              std::to_string(s) + ": " + e.what());
        }
        if (!(z > 0.0) || !std::isfinite(z))
            throw invalid_law("zeta must be positive and finite on (0, 1]");
        if (kind == ZetaKind::Bounded && !(k1 < z && z < k2))
            throw invalid_law("zeta leaves the declared (k1, k2) bracket");
    }

    auto shared = std::make_shared<std::function<double(double)>>(std::move(zeta));
    DiffusionLaw law;
    law.name = name;
    law.log_a = [shared](double s) { return -zeta_exponent(*shared, s); };
    law.a = [shared](double s) { return std::exp(-zeta_exponent(*shared, s)); };
    // a'(s) = a(s) zeta(s) / s
    law.a_prime = [shared](double s) {
        return std::exp(-zeta_exponent(*shared, s)) * (*shared)(s) / s;
    };
    law.log_a_prime = [shared](double s) {
        return -zeta_exponent(*shared, s) + std::log((*shared)(s)) - std::log(s);
    };
    law.a_prime_kind = DerivativeKind::Analytic;
    law.s_max = 1.0;
    law.degenerate = true;
    return law;
}

DiffusionLaw make_constant(double a0) {
    if (!(a0 > 0.0)) throw invalid_parameter("constant law: a0 must be > 0");
    DiffusionLaw law;
    std::ostringstream name;
    name << "const:a0=" << a0;
    law.name = name.str();
    law.a = [a0](double) { return a0; };
    law.a_prime = [](double) { return 0.0; };
    law.a_prime_kind = DerivativeKind::Analytic;
    law.s_max = 1.0; // I diverges at infinity otherwise
    law.analytic_I = [a0](double s) { return std::log(1.0 / s) / a0; };
    law.analytic_log_I = [a0](double s) {
        const double v = std::log(1.0 / s) / a0;
        return v > 0.0 ? std::log(v) : -kInf;
    };
    law.log_a = [a0](double) { return std::log(a0); };
    law.log_a_prime = [](double) { return -kInf; };
    law.degenerate = false;
    return law;
}

void attach_numeric_derivative(DiffusionLaw& law) {
    auto f = law.a;
    law.a_prime = [f](double s) { return central_diff_richardson(f, s); };
    law.a_prime_kind = DerivativeKind::Numeric;
    law.log_a_prime = nullptr;
}

namespace {

double parse_positive(const std::string& spec, const std::string& key,
                      const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size() || !(v > 0.0))
        throw invalid_parameter("law spec '" + spec + "': " + key + " must be > 0");
    return v;
}

} // namespace

DiffusionLaw parse_law_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto eq = args.find('=');
    if (args.empty() || eq == std::string::npos || args.find(',') != std::string::npos)
        throw invalid_parameter("law spec '" + spec +
                                "': expected exactly one key=value argument");
    const std::string key = args.substr(0, eq);
    const std::string value = args.substr(eq + 1);

    if (family == "power") {
        if (key != "beta")
            throw invalid_parameter("law spec '" + spec + "': unknown key '" + key + "'");
        return make_power(parse_positive(spec, key, value));
    }
    if (family == "expinv") {
        if (key != "beta")
            throw invalid_parameter("law spec '" + spec + "': unknown key '" + key + "'");
        return make_exp_inv(parse_positive(spec, key, value));
    }
    if (family == "const") {
        if (key != "a0")
            throw invalid_parameter("law spec '" + spec + "': unknown key '" + key + "'");
        return make_constant(parse_positive(spec, key, value));
    }
    if (family == "zeta") {
        if (key != "preset")
            throw invalid_parameter("law spec '" + spec + "': unknown key '" + key + "'");
        if (value == "log") {
            // zeta(s) = ln(1/s) + 1, unbounded near 0
            return make_zeta([](double s) { return std::log(1.0 / s) + 1.0; },
                             ZetaKind::Unbounded, 0.0, 0.0, "zeta:preset=log");
        }
        if (value == "sin") {
            // zeta(s) = 2 + sin(1/s), bracketed by (1, 3)
            return make_zeta([](double s) { return 2.0 + std::sin(1.0 / s); },
                             ZetaKind::Bounded, 1.0, 3.0, "zeta:preset=sin");
        }
        throw invalid_parameter("law spec '" + spec + "': unknown preset '" + value + "'");
    }
    throw invalid_parameter("law spec '" + spec + "': unknown family '" + family + "'");
}

} // namespace degenfront
