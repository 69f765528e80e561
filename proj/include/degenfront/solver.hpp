#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degenfront/diffusion_law.hpp"

namespace degenfront {

enum class Geometry { Interval, RadialBall };
enum class Boundary { Neumann, Dirichlet };

// Uniform 1D interval [-L, L] or radially symmetric N-dim ball [0, R]
// (grid includes r = 0). Carries the stencil weights of the discrete
// Laplacian and trapezoid volume weights for integrals over the domain.
class Grid {
public:
    Grid(Geometry geometry, double extent, int dimension, int points);

    Geometry geometry() const { return geometry_; }
    double extent() const { return extent_; }
    int dimension() const { return dimension_; }
    int points() const { return points_; }
    double spacing() const { return dx_; }

    double coord(std::size_t i) const; // x (signed) or r
    const std::vector<double>& coords() const { return coord_; }

    // Neighbor weights of the Laplacian stencil:
    //   Lap_i = w_minus[i] (u_{i-1} - u_i) + w_plus[i] (u_{i+1} - u_i).
    // Interval: 1/dx^2 (mirror ghost at Neumann ends). Radial: conservative
    // half-point form r^{1-N} (r^{N-1} u_r)_r, the symmetry stencil
    // 2N (u_1 - u_0)/dr^2 at r = 0, zero outer flux at r = R.
    const std::vector<double>& w_minus() const { return w_minus_; }
    const std::vector<double>& w_plus() const { return w_plus_; }

    // Trapezoid volume weights: sum_i f_i volume_weight(i) ~ int f dx
    // (surface measure of the unit sphere included for radial grids).
    const std::vector<double>& volume_weights() const { return volume_; }

    // Linear interpolation of nodal values at x0 (signed coordinate for
    // intervals, radius for balls). Throws domain_error outside the grid.
    double interpolate(const std::vector<double>& values, double x0) const;

    bool is_dirichlet_cell(std::size_t i) const;

private:
    Geometry geometry_;
    double extent_;
    int dimension_;
    int points_;
    double dx_;
    std::vector<double> coord_, w_minus_, w_plus_, volume_;
};

struct Field {
    std::vector<double> u;
    double time = 0.0;
};

struct SimConfig {
    DiffusionLaw law;
    double cfl_safety = 0.5; // <= 0.9 enforced
    double t_end = 0.1;
    double snapshot_stride = 0.01;
    Boundary boundary = Boundary::Neumann;
    std::string profile_spec = "bump";
    std::int64_t max_steps = 50'000'000;
};

// Largest explicit step keeping every update a convex combination:
//   dt = cfl_safety / max_i [ a(u_i) (w_minus_i + w_plus_i) ].
// Equals cfl_safety dx^2 / (2 d_eff max a) with d_eff = 1 (interval) and
// d_eff = N (radial, center cell) where those stencils dominate. Returns
// fallback_dt when a(u_i) = 0 everywhere (nothing moves).
double stable_dt(const Field& field, const DiffusionLaw& law, const Grid& grid,
                 double cfl_safety, double fallback_dt);

// One explicit update u_i <- u_i + dt a(u_i) Lap(u)_i, arranged as
// u_i + c_i (avg_i - u_i) so the discrete maximum principle holds exactly in
// floating point. Cells with a(u_i) = 0 are bitwise frozen.
Field step_explicit(const Field& field, const DiffusionLaw& law, const Grid& grid,
                    double dt, Boundary boundary = Boundary::Neumann);

std::vector<double> make_initial_profile(const std::string& spec, const Grid& grid);

struct SnapshotSeries {
    explicit SnapshotSeries(Grid g) : grid(std::move(g)) {}

    Grid grid;
    std::vector<Field> snapshots;
    std::string law_name;
    bool law_degenerate = true;
    Boundary boundary = Boundary::Neumann;
    double mean_dt = 0.0;
    double max_dt = 0.0;

    std::vector<double> times() const;
    // u(x0, t_k) for all snapshots, linearly interpolated in space.
    std::vector<double> probe(double x0) const;
};

struct RunResult {
    explicit RunResult(Grid g) : series(std::move(g)) {}

    SnapshotSeries series;
    bool completed = true;
    std::int64_t steps = 0;
    std::vector<double> step_min; // per-step traces
    std::vector<double> step_max;
    std::vector<double> dirichlet_energy; // per snapshot: int |grad u|^2
    std::vector<std::string> warnings;
};

RunResult run(const SimConfig& config, const Grid& grid);

// Central-difference gradient (one-sided at the ends).
std::vector<double> gradient(const std::vector<double>& values, const Grid& grid);

} // namespace degenfront
