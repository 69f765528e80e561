#include "degenfront/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenfront/errors.hpp"
#include "degenfront/numerics.hpp"
#include "degenfront/quadrature.hpp"

namespace degenfront {
namespace {

// Segment of the I-integral in log space: int_{lo}^{hi} dv/(v a(v)) under
// v = e^-x, giving int dx / a(e^-x) over x in [ln(1/hi), ln(1/lo)].
double log_I_segment(const DiffusionLaw& law, double lo, double hi) {
    if (!(lo < hi)) return -kInf;
    QuadratureOptions opt;
    opt.what = "I(s) segment for law " + law.name;
    return log_integrate([&law](double x) { return -law.log_a(std::exp(-x)); },
                         std::log(1.0 / hi), std::log(1.0 / lo), opt);
}

// Tail int_V^inf dv/(v a(v)) bounded by 1/(sigma a(V)) when a grows with
// local log-slope sigma = V a'(V)/a(V) > 0 past V. Extends V until the tail
// is negligible; refuses instead of silently truncating.
double log_I_infinite_tail(const DiffusionLaw& law, double s) {
    double V = std::max(10.0 * s, 10.0);
    double acc = log_I_segment(law, s, V);
    for (int iter = 0; iter < 12; ++iter) {
        const double sigma =
            std::exp(std::log(V) + law.log_a_prime_at(V) - law.log_a(V));
        if (sigma > 0.05) {
            const double log_tail = -law.log_a(V) - std::log(sigma);
            if (log_tail <= acc + std::log(1e-11)) return acc;
        }
        const double W = V * 1e3;
        acc = log_add(acc, log_I_segment(law, V, W));
        V = W;
        if (V > 1e30) break;
    }
    std::ostringstream os;
    os << "I(" << s << ") for law " << law.name
       << ": tail bound past V=" << V
       << " not controlled by the growth of a (condition at infinity)";
    throw quadrature_failure(os.str());
}

} // namespace

double compute_log_I(const DiffusionLaw& law, double s) {
    if (!(s > 0.0)) throw domain_error("I(s): s must be > 0");
    if (s > law.s_max) throw domain_error("I(s): s beyond s_max");
    if (law.analytic_log_I) return law.analytic_log_I(s);
    if (law.analytic_I) {
        const double v = law.analytic_I(s);
        return v > 0.0 ? std::log(v) : -kInf;
    }
    if (s == law.s_max) return -kInf; // empty interval
    if (std::isinf(law.s_max)) return log_I_infinite_tail(law, s);
    return log_I_segment(law, s, law.s_max);
}

double compute_I(const DiffusionLaw& law, double s) {
    return std::exp(compute_log_I(law, s));
}

namespace {

struct AiProbe {
    std::vector<double> s;
    std::vector<double> log_I;
    std::vector<double> aI;
    std::vector<double> saI_prime;
    double sup_aI = 0.0;
    double sup_aI_location = 0.0;
    double sup_B = 0.0;
    bool aI_diverges_at_zero = false;
    bool aI_diverges_at_top = false;
    bool B_diverges_at_zero = false;
};

// Decade trend: divergence means the per-decade maxima keep growing toward
// the relevant end, by more than 15% across the last four decades.
bool decade_divergence(const std::vector<double>& s, const std::vector<double>& v,
                       bool toward_zero) {
    std::vector<std::pair<int, double>> decade_max;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int d = static_cast<int>(std::floor(std::log10(s[i]) + 1e-12));
        if (!decade_max.empty() && decade_max.back().first == d)
            decade_max.back().second = std::max(decade_max.back().second, v[i]);
        else
            decade_max.emplace_back(d, v[i]);
    }
    if (decade_max.size() < 4) return false;
    // Orient so index 0 is the end being probed.
    if (!toward_zero) std::reverse(decade_max.begin(), decade_max.end());
    bool increasing = true;
    for (int i = 0; i < 3; ++i)
        increasing = increasing &&
                     decade_max[static_cast<std::size_t>(i)].second >
                         decade_max[static_cast<std::size_t>(i + 1)].second;
    if (!increasing) return false;
    const double inner = decade_max[3].second;
    const double outer = decade_max[0].second;
    return inner > 0.0 ? (outer / inner - 1.0) > 0.15 : outer > 0.0;
}

AiProbe probe_law(const DiffusionLaw& law, const ValidationProbeSpec& spec) {
    AiProbe p;
    double s_hi = spec.s_hi;
    if (s_hi <= 0.0) s_hi = std::min(law.s_max, 10.0);
    const int decades = std::max(
        1, static_cast<int>(std::ceil(std::log10(s_hi / spec.s_lo))));
    const int n = decades * spec.per_decade + 1;
    p.s = log_space(spec.s_lo, s_hi, n);

    // I on the probe grid, accumulated from the top.
    p.log_I.assign(p.s.size(), -kInf);
    if (law.analytic_log_I) {
        for (std::size_t i = 0; i < p.s.size(); ++i)
            p.log_I[i] = law.analytic_log_I(p.s[i]);
    } else {
        p.log_I.back() = compute_log_I(law, p.s.back());
        for (std::size_t i = p.s.size() - 1; i-- > 0;)
            p.log_I[i] = log_add(p.log_I[i + 1], log_I_segment(law, p.s[i], p.s[i + 1]));
    }

    p.aI.resize(p.s.size());
    p.saI_prime.resize(p.s.size());
    for (std::size_t j = p.s.size(); j-- > 0;) {
        // Downward scan so sup ties resolve to the smallest probe, which
        // flags a limsup attained at 0.
        p.aI[j] = std::exp(law.log_a(p.s[j]) + p.log_I[j]);
        p.saI_prime[j] =
            std::exp(std::log(p.s[j]) + law.log_a_prime_at(p.s[j]) + p.log_I[j]);
        if (p.aI[j] >= p.sup_aI) {
            p.sup_aI = p.aI[j];
            p.sup_aI_location = p.s[j];
        }
        p.sup_B = std::max(p.sup_B, p.saI_prime[j]);
    }

    p.aI_diverges_at_zero = decade_divergence(p.s, p.aI, true);
    p.B_diverges_at_zero = decade_divergence(p.s, p.saI_prime, true);
    if (std::isinf(law.s_max))
        p.aI_diverges_at_top = decade_divergence(p.s, p.aI, false);
    return p;
}

} // namespace

double choose_lambda(const DiffusionLaw& law) {
    ValidationProbeSpec spec;
    const AiProbe p = probe_law(law, spec);
    if (p.aI_diverges_at_zero || !std::isfinite(p.sup_aI))
        throw inadmissible_law("choose_lambda: sup a(s)I(s) diverges as s -> 0 "
                               "(condition at zero fails) for law " + law.name);
    if (p.sup_aI <= 1e-14) return 1.0;
    return std::min(1.0, 1.0 / (2.0 * p.sup_aI));
}

StructureSet::StructureSet(DiffusionLaw law, double lambda_cap, StructureGridSpec spec)
    : law_(std::move(law)), lambda_cap_(lambda_cap) {
    if (!(lambda_cap_ > 0.0))
        throw invalid_parameter("structure set: Lambda must be > 0");
    double s_hi = spec.s_hi;
    if (s_hi <= 0.0)
        s_hi = std::isinf(law_.s_max) ? 10.0 : law_.s_max * (1.0 - 1.0 / 1024.0);
    if (!(spec.s_lo > 0.0) || !(spec.s_lo < s_hi))
        throw invalid_parameter("structure set: need 0 < s_lo < s_hi");
    if (s_hi >= law_.s_max)
        throw invalid_parameter("structure set: grid must end strictly below s_max "
                                "(I vanishes there and H blows up)");
    if (spec.points < 33)
        throw invalid_parameter("structure set: need at least 33 grid points");

    const std::size_t n = static_cast<std::size_t>(spec.points);
    s_ = log_space(spec.s_lo, s_hi, spec.points);
    log_s_.resize(n);
    for (std::size_t i = 0; i < n; ++i) log_s_[i] = std::log(s_[i]);

    // I tabulation: top-down accumulation keeps one quadrature per segment.
    log_I_.assign(n, -kInf);
    log_I_.back() = compute_log_I(law_, s_.back());
    for (std::size_t i = n - 1; i-- > 0;) {
        if (law_.analytic_log_I) {
            log_I_[i] = law_.analytic_log_I(s_[i]);
        } else {
            log_I_[i] = log_add(log_I_[i + 1], log_I_segment(law_, s_[i], s_[i + 1]));
        }
    }

    // H = (Lambda I)^(-1/Lambda); F = H^(Lambda+1)/s, all in logs.
    const double log_lambda = std::log(lambda_cap_);
    log_H_.resize(n);
    log_F_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_H_[i] = -(log_lambda + log_I_[i]) / lambda_cap_;
        log_F_[i] = (lambda_cap_ + 1.0) * log_H_[i] - log_s_[i];
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(log_F_[i] < log_F_[i + 1])) {
            std::ostringstream os;
            os << "structure set: F tabulation not strictly increasing near s="
               << s_[i] << " for law " << law_.name << " with Lambda=" << lambda_cap_
               << " (Lambda outside the admissible range, or the law violates "
                  "the hypotheses)";
            throw inadmissible_law(os.str());
        }
    }

    interp_log_I_ = Pchip(log_s_, log_I_);
    interp_log_F_ = Pchip(log_s_, log_F_);

    // G = int_0^s sqrt(F'). F' = F phi'/s with phi' = dlogF/dlogs from the
    // monotone interpolant, never finite differences of the raw table.
    auto log_sqrt_Fprime = [this](double x) {
        const double phi = std::max(interp_log_F_.derivative(x), 1e-300);
        return 0.5 * (interp_log_F_(x) + std::log(phi) - x);
    };
    log_G_.assign(n, -kInf);
    {
        // Below-grid part, assuming the local power behavior F ~ A s^p:
        // int_0^{s_lo} sqrt(F') = 2 s_lo sqrt(F'(s_lo)) / (p + 1).
        const double p0 = std::max(interp_log_F_.derivative(log_s_[0]), 1e-12);
        log_G_[0] = std::log(2.0) + log_s_[0] + log_sqrt_Fprime(log_s_[0]) -
                    std::log(p0 + 1.0);
    }
    QuadratureOptions gopt;
    gopt.rel_tol = 1e-11;
    gopt.what = "G segment for law " + law_.name;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // int_{s_i}^{s_{i+1}} sqrt(F'(sigma)) dsigma, sigma = e^x
        const double seg = log_integrate(
            [&](double x) { return log_sqrt_Fprime(x) + x; }, log_s_[i],
            log_s_[i + 1], gopt);
        log_G_[i + 1] = log_add(log_G_[i], seg);
    }
    interp_log_G_ = Pchip(log_s_, log_G_);
}

void StructureSet::check_domain(double s, const char* who) const {
    if (!(s >= 0.0) || s >= law_.s_max) {
        std::ostringstream os;
        os << who << ": s=" << s << " outside [0, s_max) for law " << law_.name;
        throw domain_error(os.str());
    }
}

double StructureSet::log_I(double s) const {
    check_domain(s, "I");
    if (s == 0.0) throw domain_error("I(0) diverges");
    return interp_log_I_(std::log(s));
}

double StructureSet::log_H(double s) const {
    check_domain(s, "H");
    if (s == 0.0) return -kInf;
    return -(std::log(lambda_cap_) + interp_log_I_(std::log(s))) / lambda_cap_;
}

double StructureSet::log_F(double s) const {
    check_domain(s, "F");
    if (s == 0.0) return -kInf;
    return interp_log_F_(std::log(s));
}

double StructureSet::log_G(double s) const {
    check_domain(s, "G");
    if (s == 0.0) return -kInf;
    return interp_log_G_(std::log(s));
}

double StructureSet::I(double s) const { return std::exp(log_I(s)); }
double StructureSet::H(double s) const { return s == 0.0 ? 0.0 : std::exp(log_H(s)); }
double StructureSet::F(double s) const { return s == 0.0 ? 0.0 : std::exp(log_F(s)); }
double StructureSet::G(double s) const { return s == 0.0 ? 0.0 : std::exp(log_G(s)); }

double StructureSet::h(double s) const {
    check_domain(s, "h");
    if (s == 0.0) throw domain_error("h(0) is not defined");
    return std::exp(log_F(s) - law_.log_a(s));
}

double StructureSet::F_prime(double s) const {
    check_domain(s, "F'");
    if (s == 0.0) return 0.0;
    const double x = std::log(s);
    const double phi = std::max(interp_log_F_.derivative(x), 0.0);
    return std::exp(interp_log_F_(x) - x) * phi;
}

double StructureSet::G_prime(double s) const {
    return std::sqrt(F_prime(s));
}

StructureSet build_structure_set(const DiffusionLaw& law, double lambda_cap,
                                 StructureGridSpec spec) {
    return StructureSet(law, lambda_cap, spec);
}

ValidationReport validate(const DiffusionLaw& law, double lambda_cap,
                          ValidationProbeSpec probe) {
    ValidationReport rep;
    rep.law_name = law.name;
    rep.degenerate = law.degenerate;
    rep.lambda_cap = lambda_cap;

    const AiProbe p = probe_law(law, probe);
    rep.probe_s = p.s;
    rep.probe_aI = p.aI;
    rep.probe_saI_prime = p.saI_prime;
    rep.sup_aI = p.sup_aI;
    rep.sup_aI_location = p.sup_aI_location;
    rep.cond_a_holds = !p.aI_diverges_at_zero && std::isfinite(p.sup_aI);
    rep.cond_infty_holds = std::isinf(law.s_max) ? !p.aI_diverges_at_top : true;
    if (!std::isinf(law.s_max))
        rep.notes.push_back("s_max finite: condition at infinity vacuous");

    rep.B = p.sup_B;
    if (p.B_diverges_at_zero)
        rep.notes.push_back("s a'(s) I(s) grows across decades: sufficient "
                            "condition of the C1-equivalent test fails");
    rep.mu = std::max(1, static_cast<int>(std::ceil(rep.B - 1e-9)));

    // Quasi-monotonicity constant: inf over ordered probe pairs u < v of
    // [a I^mu](u) / [a I^mu](v), via a prefix minimum of the logs.
    {
        double worst = kInf;
        double prefix_min = kInf;
        for (std::size_t i = 0; i < p.s.size(); ++i) {
            const double w = law.log_a(p.s[i]) + rep.mu * p.log_I[i];
            if (i > 0) worst = std::min(worst, prefix_min - w);
            prefix_min = std::min(prefix_min, w);
        }
        rep.c_adecr = std::min(1.0, std::exp(worst));
    }

    if (!rep.degenerate)
        rep.notes.push_back("non-degenerate: finite-speed theory inapplicable");
    if (!rep.cond_a_holds)
        rep.notes.push_back("sup a(s)I(s) grows without bound toward s=0 "
                            "(probe-grid evidence, not a proof)");

    rep.lambda_range_ok =
        rep.cond_a_holds &&
        (rep.sup_aI <= 1e-14 || lambda_cap < 1.0 / rep.sup_aI) && lambda_cap > 0.0;

    rep.c_A1 = kNaN;
    rep.C_cacc = 1.0;
    if (rep.lambda_range_ok) {
        try {
            StructureGridSpec gs;
            gs.s_lo = std::max(probe.s_lo, 1e-6);
            const StructureSet set = build_structure_set(law, lambda_cap, gs);
            const auto& s = set.grid_s();
            const auto& lF = set.grid_log_F();
            const auto& lG = set.grid_log_G();
            double sup = -kInf;
            for (std::size_t i = 1; i + 1 < s.size(); ++i) {
                const double lGp = std::log(set.G_prime(s[i]));
                sup = std::max(sup, lF[i] - lG[i] - lGp);
            }
            rep.c_A1 = std::exp(sup);
            const double c = rep.c_A1;
            rep.C_cacc = std::max(1.0, 1.0 + 2.0 * c * c - 2.0 * c);
        } catch (const std::exception& e) {
            rep.notes.push_back(std::string("structure build failed: ") + e.what());
        }
    } else {
        rep.notes.push_back("Lambda range violated or condition at zero fails: "
                            "structure constants not computed");
    }
    return rep;
}

} // namespace degenfront
