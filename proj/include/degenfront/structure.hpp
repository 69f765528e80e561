#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degenfront/diffusion_law.hpp"
#include "degenfront/pchip.hpp"

namespace degenfront {

// I(s) = int_s^{s_max} dv / (v a(v)). Evaluated under v = e^-x in the log
// domain, so exp-type laws stay representable; compute_I may overflow to +inf
// for extreme s while compute_log_I never does. Tolerances are 1e-10.
double compute_log_I(const DiffusionLaw& law, double s);
double compute_I(const DiffusionLaw& law, double s);

// Lambda selection: min(1, 1/(2 sup aI)), strictly inside the admissible
// range 0 < Lambda < 1/sup aI; returns 1 when the sup estimates to 0.
double choose_lambda(const DiffusionLaw& law);

struct StructureGridSpec {
    double s_lo = 1e-6;
    double s_hi = 0.0; // 0 -> min(s_max, 10)
    int points = 1025;
};

// Tabulated structure functions for one (law, Lambda):
//   H = (Lambda I)^(-1/Lambda),  F = H^(Lambda+1)/s,  h = F/a,
//   G = int_0^s sqrt(F') dsigma,  lambda = 2/(Lambda+1).
// All tabulations live in log-log space; pointwise identities among the logs
// hold by construction, and values below the double range degrade to 0 (their
// true limit) instead of NaN.
class StructureSet {
public:
    StructureSet(DiffusionLaw law, double lambda_cap, StructureGridSpec spec);

    const DiffusionLaw& law() const { return law_; }
    double lambda_cap() const { return lambda_cap_; }
    double lambda_small() const { return 2.0 / (lambda_cap_ + 1.0); }

    double log_I(double s) const;
    double log_H(double s) const;
    double log_F(double s) const;
    double log_G(double s) const;

    double I(double s) const;
    double H(double s) const; // H(0) = 0 by continuity
    double h(double s) const; // rejects s = 0
    double F(double s) const; // F(0) = 0
    double G(double s) const; // G(0) = 0
    double F_prime(double s) const;
    double G_prime(double s) const; // sqrt(F')

    const std::vector<double>& grid_s() const { return s_; }
    const std::vector<double>& grid_log_I() const { return log_I_; }
    const std::vector<double>& grid_log_H() const { return log_H_; }
    const std::vector<double>& grid_log_F() const { return log_F_; }
    const std::vector<double>& grid_log_G() const { return log_G_; }

private:
    void check_domain(double s, const char* who) const;

    DiffusionLaw law_;
    double lambda_cap_;
    std::vector<double> s_, log_s_;
    std::vector<double> log_I_, log_H_, log_F_, log_G_;
    Pchip interp_log_I_, interp_log_F_, interp_log_G_;
};

StructureSet build_structure_set(const DiffusionLaw& law, double lambda_cap,
                                 StructureGridSpec spec = {});

struct ValidationProbeSpec {
    double s_lo = 1e-8;
    double s_hi = 0.0; // 0 -> min(s_max, 10)
    int per_decade = 16;
};

struct ValidationReport {
    std::string law_name;
    bool degenerate = true;

    double sup_aI = 0.0;
    double sup_aI_location = 0.0;
    bool cond_a_holds = false;     // limsup_{s->0} a I < inf
    bool cond_infty_holds = false; // limsup_{s->inf} a I < inf (s_hi proxy)

    double B = 0.0;                // sup s a'(s) I(s)
    int mu = 1;                    // max(1, ceil(B))
    double c_adecr = 0.0;          // inf_{u<v} [a I^mu](u) / [a I^mu](v), clamped to 1
    double c_A1 = 0.0;             // sup F / (G G')
    double C_cacc = 1.0;           // max{1, 1 + 2c^2 - 2c}, c = c_A1
    double lambda_cap = 0.0;
    bool lambda_range_ok = false;

    std::vector<double> probe_s;
    std::vector<double> probe_aI;
    std::vector<double> probe_saI_prime;
    std::vector<std::string> notes;
};

// Hypothesis audit on a log probe grid extended toward 0, with decade-trend
// divergence detection. Never throws for inadmissible laws; the report
// carries the failure flags.
ValidationReport validate(const DiffusionLaw& law, double lambda_cap,
                          ValidationProbeSpec probe = {});

} // namespace degenfront
