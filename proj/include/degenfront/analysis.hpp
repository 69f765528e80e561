#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degenfront/solver.hpp"
#include "degenfront/structure.hpp"

namespace degenfront {

// --- Front diagnostics -----------------------------------------------------

// sup of |x| (or r) over cells with u > eps; 0 when no cell qualifies.
double support_radius(const Field& field, const Grid& grid, double eps);

// First time u(x0, .) exceeds eps, linearly interpolated between snapshots;
// nullopt if it never does. Rejects x0 already above eps at t = 0.
std::optional<double> waiting_time(const SnapshotSeries& series, double x0, double eps);

enum class Propagation { FiniteSpeed, InfiniteSpeed, Inconclusive };

const char* to_string(Propagation p);

// Decision rule (stated explicitly, configurable):
//  - all thresholds arrive: finite-speed when the last two waiting times
//    agree within spread_tol and sit above dt_floor_mult * mean dt;
//    infinite-speed when t* collapses by >= collapse_factor down the ladder;
//  - no threshold ever arrives and the solution stayed exactly zero at x0 for
//    a degenerate law: the void persisted for the whole horizon, which is the
//    finite-speed conclusion itself (the scheme freezes void cells, so
//    degenerate-law arrivals cannot occur at all);
//  - otherwise inconclusive (e.g. t_end too small, no data).
struct ClassifyPolicy {
    double spread_tol = 0.25;
    double collapse_factor = 4.0;
    double dt_floor_mult = 10.0;
};

struct WaitingEntry {
    double eps = 0.0;
    bool arrived = false;
    double t_star = 0.0;      // arrival time, or the censoring horizon
    bool censored = false;    // true when t_star is the horizon, not an arrival
};

struct FrontReport {
    std::vector<double> thresholds;
    std::vector<double> times;
    // radii[k][j]: support radius at times[j] for thresholds[k]
    std::vector<std::vector<double>> radii;
    double probe_x0 = 0.0;
    std::vector<WaitingEntry> waiting;
    Propagation classification = Propagation::Inconclusive;
    std::string rationale;
};

Propagation classify_propagation(const SnapshotSeries& series, double x0,
                                 const std::vector<double>& eps_ladder,
                                 ClassifyPolicy policy = {},
                                 std::string* rationale = nullptr);

FrontReport front_report(const SnapshotSeries& series, double x0,
                         const std::vector<double>& eps_ladder,
                         ClassifyPolicy policy = {});

// --- Iteration lemma ---------------------------------------------------------

// Bound of the recursion y_{n+1} <= c b^n y_n^{1+delta}:
//   y_n <= c^{((1+d)^n - 1)/d} b^{((1+d)^n - 1)/d^2 - n/d} y_0^{(1+d)^n},
// evaluated in log space; +inf when even the log overflows.
double lady_bound(double c, double b, double delta, double y0, int n);

// theta_L = c^{-1/delta} b^{-1/delta^2}.
double lady_threshold(double c, double b, double delta);

// --- Exponents and constants -------------------------------------------------

struct IterationParams {
    int N = 3;
    double j = 0.0;           // 2/(N-2)
    double k = 0.0;           // Lambda/(Lambda + j + j Lambda)
    double lambda_cap = 0.0;
    double lambda_small = 0.0; // 2/(Lambda+1) == (2 - 2(1+j)k)/(1-k)
    double beta_time = 0.0;    // (1 - (1+j)k)/(k j)
    double eps_target = 0.0;
    double b = 0.0;            // 1 + 1/(1 - eps_target)
    double ball_radius = 1.0;
    double K = 1.0;            // cutoff-gradient constant, 1/R^2
    double S = 0.0;            // Sobolev constant
    double C = 1.0;            // Caccioppoli constant
    double D = 0.0;            // C S^{k(1+j)}

    double eps_n(int n) const; // (b - 2 + b^-n)/(b - 1)
};

IterationParams make_iteration_params(int N, double lambda_cap, double eps_target,
                                      double C_cacc, double S,
                                      double ball_radius = 1.0);

// Sobolev constant for ||psi||^2_{2+2j} <= S ||grad psi||^2_2 on R^N, N >= 3,
// from the Rayleigh quotient of the radial bubble family
// psi_mu(r) = (1 + (r/mu)^2)^{-(N-2)/2}, times a 1.05 safety factor.
double estimate_sobolev_constant(int N);

// --- Cutoffs -----------------------------------------------------------------

// Radial tent: 1 on [0, plateau], linear down to 0 at support, 0 beyond.
// Applied to |x| on interval grids.
struct TentCutoff {
    double plateau = 0.0;
    double support = 0.0;

    double operator()(double x) const;
    double grad_inf() const { return 1.0 / (support - plateau); }
};

// --- Inequality audits ---------------------------------------------------------

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;      // lhs/rhs where meaningful
    double min_slack = 0.0;  // pointwise audits
    double tol = 0.0;
    bool pass = false;
    std::string details;
};

// Pointwise Caccioppoli audit of
//   grad u . grad(theta^2 F(u)) >= 1/2 |grad(theta G(u))|^2 - C G^2(u)|grad theta|^2
// with both sides from central differences of the composite fields. The
// chain-rule form (exact where theta is flat) is reported alongside.
struct CaccioppoliReport {
    InequalityReport composite;
    InequalityReport chain_rule;
    std::size_t violations = 0;
};

CaccioppoliReport check_caccioppoli(const Field& field, const Grid& grid,
                                    const StructureSet& set, const TentCutoff& theta,
                                    double C);

// Parabolic Sobolev audit at time t:
//   int_0^t int_K G^2(u) <= S^{k(1+j)} t^{1-(1+j)k}
//     [ sup_tau int theta^2 H(u) + int_0^t int |grad(theta G(u))|^2 ]^{1+jk}
// with K the ball of radius K_radius inside {theta = 1}.
InequalityReport check_parabolic_sobolev(const SnapshotSeries& series,
                                         const StructureSet& set,
                                         const IterationParams& params,
                                         const TentCutoff& theta, double K_radius,
                                         double t);

// Discrete residual of the weak form int grad u . grad(F(u) phi) = int phi_t H(u)
// for phi = theta^2(x) zeta(t), zeta a trapezoid on [0, t_hi] with ramps of
// length ramp; equality case, so the residual is O(dx^2 + dt) evidence.
InequalityReport weak_form_residual(const SnapshotSeries& series,
                                    const StructureSet& set, const TentCutoff& theta,
                                    double t_hi, double ramp);

// --- Energy iteration ----------------------------------------------------------

struct EnergyTrace {
    double s = 0.0;
    std::vector<double> eps_n;
    std::vector<double> Y;        // Y_n[s], n = 0..n_max
    std::vector<double> ratios;   // Y_{n+1} / (D K b^4 b^{2n} Y_n^{1+kj})
    double threshold = 0.0;       // (D K b^4)^{-1/(kj)} b^{-2/(k^2 j^2)}
    bool threshold_holds = false; // Y_0[s] <= threshold
    double void_ball_sup = 0.0;   // sup_{tau<=s} int_{eps B} H(u(tau))
    bool void_ball_holds = false; // sup == 0 at the 1e-30 floor
};

// Theorem-20 style iteration on a radial series whose initial data vanishes
// on the ball of radius params.ball_radius. n_max = 6: deeper tents alias the
// mesh. The support floor for "vanishes" is 1e-30.
EnergyTrace energy_iteration(const SnapshotSeries& series, const StructureSet& set,
                             const IterationParams& params, double s, int n_max = 6);

} // namespace degenfront
