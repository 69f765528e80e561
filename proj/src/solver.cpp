#include "degenfront/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "degenfront/errors.hpp"
#include "degenfront/numerics.hpp"

namespace degenfront {

namespace {

double unit_sphere_area(int n) {
    // omega_{N-1} = 2 pi^{N/2} / Gamma(N/2); equals 2 for N = 1 (two rays).
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

} // namespace

Grid::Grid(Geometry geometry, double extent, int dimension, int points)
    : geometry_(geometry), extent_(extent), dimension_(dimension), points_(points) {
    if (!(extent > 0.0)) throw invalid_parameter("grid: extent must be > 0");
    if (points < 16) throw invalid_parameter("grid: need at least 16 points");
    if (geometry == Geometry::Interval && dimension != 1)
        throw invalid_parameter("grid: interval geometry is one-dimensional");
    if (geometry == Geometry::RadialBall && dimension < 1)
        throw invalid_parameter("grid: radial dimension must be >= 1");

    const std::size_t m = static_cast<std::size_t>(points);
    coord_.resize(m);
    if (geometry == Geometry::Interval) {
        dx_ = 2.0 * extent / (points - 1);
        for (std::size_t i = 0; i < m; ++i) coord_[i] = -extent + dx_ * static_cast<double>(i);
    } else {
        dx_ = extent / (points - 1);
        for (std::size_t i = 0; i < m; ++i) coord_[i] = dx_ * static_cast<double>(i);
    }

    w_minus_.assign(m, 0.0);
    w_plus_.assign(m, 0.0);
    const double inv_dx2 = 1.0 / (dx_ * dx_);
    if (geometry == Geometry::Interval) {
        for (std::size_t i = 1; i + 1 < m; ++i) {
            w_minus_[i] = inv_dx2;
            w_plus_[i] = inv_dx2;
        }
        // Mirror ghost: Lap_0 = 2 (u_1 - u_0)/dx^2.
        w_plus_[0] = 2.0 * inv_dx2;
        w_minus_[m - 1] = 2.0 * inv_dx2;
    } else {
        const int nm1 = dimension_ - 1;
        w_plus_[0] = 2.0 * dimension_ * inv_dx2; // r = 0 symmetry stencil
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double r = coord_[i];
            const double rp = std::pow(r + 0.5 * dx_, nm1);
            const double rm = std::pow(r - 0.5 * dx_, nm1);
            const double rc = std::pow(r, nm1);
            w_minus_[i] = rm / rc * inv_dx2;
            w_plus_[i] = rp / rc * inv_dx2;
        }
        // Outer face: zero flux.
        {
            const double r = coord_[m - 1];
            const double rm = std::pow(r - 0.5 * dx_, nm1);
            w_minus_[m - 1] = rm / std::pow(r, nm1) * inv_dx2;
        }
    }

    volume_.assign(m, 0.0);
    if (geometry == Geometry::Interval) {
        for (std::size_t i = 0; i < m; ++i)
            volume_[i] = dx_ * ((i == 0 || i + 1 == m) ? 0.5 : 1.0);
    } else {
        const double omega = unit_sphere_area(dimension_);
        for (std::size_t i = 0; i < m; ++i) {
            const double w = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
            volume_[i] = omega * std::pow(coord_[i], dimension_ - 1) * dx_ * w;
        }
    }
}

double Grid::coord(std::size_t i) const { return coord_[i]; }

bool Grid::is_dirichlet_cell(std::size_t i) const {
    if (geometry_ == Geometry::Interval) return i == 0 || i + 1 == coord_.size();
    return i + 1 == coord_.size(); // r = 0 is interior for a ball
}

double Grid::interpolate(const std::vector<double>& values, double x0) const {
    const double lo = coord_.front(), hi = coord_.back();
    if (!(x0 >= lo && x0 <= hi)) {
        std::ostringstream os;
        os << "coordinate " << x0 << " outside grid [" << lo << ", " << hi << "]";
        throw domain_error(os.str());
    }
    const double t = (x0 - lo) / dx_;
    const std::size_t i = std::min(static_cast<std::size_t>(t), coord_.size() - 2);
    const double frac = t - static_cast<double>(i);
    return values[i] + frac * (values[i + 1] - values[i]);
}

double stable_dt(const Field& field, const DiffusionLaw& law, const Grid& grid,
                 double cfl_safety, double fallback_dt) {
    if (!(cfl_safety > 0.0 && cfl_safety <= 0.9))
        throw invalid_parameter("cfl_safety must lie in (0, 0.9]");
    double worst = 0.0;
    const std::size_t m = field.u.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double ui = field.u[i];
        const double ai = (ui == 0.0 && law.degenerate) ? 0.0 : law.a(ui);
        if (!std::isfinite(ai) || ai < 0.0)
            throw stability_violation("a(u) must be finite and nonnegative");
        worst = std::max(worst, ai * (grid.w_minus()[i] + grid.w_plus()[i]));
    }
    if (worst == 0.0) return fallback_dt;
    return cfl_safety / worst;
}

Field step_explicit(const Field& field, const DiffusionLaw& law, const Grid& grid,
                    double dt, Boundary boundary) {
    const std::size_t m = field.u.size();
    if (m != static_cast<std::size_t>(grid.points()))
        throw invalid_parameter("field/grid size mismatch");
    if (!(dt > 0.0)) throw invalid_parameter("dt must be > 0");

    Field next;
    next.u.resize(m);
    next.time = field.time + dt;
    const auto& u = field.u;
    const auto& wm = grid.w_minus();
    const auto& wp = grid.w_plus();

    for (std::size_t i = 0; i < m; ++i) {
        if (boundary == Boundary::Dirichlet && grid.is_dirichlet_cell(i)) {
            next.u[i] = 0.0;
            continue;
        }
        const double ui = u[i];
        // a evaluated exactly at u_i, a(0) = 0 for degenerate laws: no floor.
        const double ai = (ui == 0.0 && law.degenerate) ? 0.0 : law.a(ui);
        if (ai == 0.0) {
            next.u[i] = ui; // frozen void cell
            continue;
        }
        const double tot = wm[i] + wp[i];
        const double c = dt * ai * tot;
        if (!(c <= 1.0))
            throw stability_violation("update coefficient exceeds the convex bound; "
                                      "dt violates the stable_dt contract");
        const double uL = wm[i] > 0.0 ? u[i - 1] : ui;
        const double uR = wp[i] > 0.0 ? u[i + 1] : ui;
        const double q = wp[i] / tot;
        // avg in [min(uL,uR), max(uL,uR)] and u + c (avg - u) in
        // [min(u,avg), max(u,avg)], both exactly in floating point.
        const double avg = uL + q * (uR - uL);
        next.u[i] = ui + c * (avg - ui);
        if (!(next.u[i] >= 0.0) || !std::isfinite(next.u[i]))
            throw stability_violation("negative or non-finite value produced; "
                                      "unreachable under the dt contract");
    }
    return next;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& args) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw invalid_parameter("profile spec: expected key=value, got '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

double to_number(const std::string& spec, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size())
        throw invalid_parameter("profile spec '" + spec + "': bad number '" + v + "'");
    return x;
}

} // namespace

std::vector<double> make_initial_profile(const std::string& spec, const Grid& grid) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const std::size_t m = static_cast<std::size_t>(grid.points());
    std::vector<double> u(m, 0.0);

    if (kind == "bump") {
        double c = 0.0, r = 1.0, h = 1.0;
        for (const auto& [k, v] : parse_kv_list(args)) {
            if (k == "c") c = to_number(spec, v);
            else if (k == "r") r = to_number(spec, v);
            else if (k == "h") h = to_number(spec, v);
            else throw invalid_parameter("profile spec '" + spec + "': unknown key '" + k + "'");
        }
        if (!(r > 0.0) || !(h > 0.0))
            throw invalid_parameter("profile spec '" + spec + "': r, h must be > 0");
        for (std::size_t i = 0; i < m; ++i) {
            const double z = (grid.coord(i) - c) / r;
            u[i] = h * std::max(0.0, 1.0 - z * z);
        }
        return u;
    }
    if (kind == "gaussian") {
        double t0 = 0.1;
        for (const auto& [k, v] : parse_kv_list(args)) {
            if (k == "t0") t0 = to_number(spec, v);
            else throw invalid_parameter("profile spec '" + spec + "': unknown key '" + k + "'");
        }
        if (!(t0 > 0.0))
            throw invalid_parameter("profile spec '" + spec + "': t0 must be > 0");
        const int n = grid.dimension();
        const double norm = std::pow(2.0 * M_PI * t0, -0.5 * n);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = grid.coord(i);
            u[i] = norm * std::exp(-x * x / (2.0 * t0));
        }
        return u;
    }
    if (kind == "ring") {
        double r0 = 1.5, w = 0.4, h = 1.0;
        for (const auto& [k, v] : parse_kv_list(args)) {
            if (k == "r0") r0 = to_number(spec, v);
            else if (k == "w") w = to_number(spec, v);
            else if (k == "h") h = to_number(spec, v);
            else throw invalid_parameter("profile spec '" + spec + "': unknown key '" + k + "'");
        }
        if (!(w > 0.0) || !(r0 > 0.0) || !(h > 0.0))
            throw invalid_parameter("profile spec '" + spec + "': r0, w, h must be > 0");
        for (std::size_t i = 0; i < m; ++i) {
            const double z = (std::abs(grid.coord(i)) - r0) / w;
            u[i] = h * std::max(0.0, 1.0 - z * z);
        }
        return u;
    }
    if (kind == "file") {
        std::ifstream in(args);
        if (!in) throw invalid_parameter("profile spec '" + spec + "': cannot open file");
        std::vector<double> xs, vs;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double x, v;
            if (!(ls >> x >> v))
                throw invalid_parameter("profile spec '" + spec + "': bad row '" + line + "'");
            xs.push_back(x);
            vs.push_back(v);
        }
        if (xs.size() < 2)
            throw invalid_parameter("profile spec '" + spec + "': need >= 2 samples");
        for (std::size_t i = 0; i < m; ++i) {
            const double x = grid.coord(i);
            if (x <= xs.front() || x >= xs.back()) {
                u[i] = 0.0;
                continue;
            }
            const auto it = std::upper_bound(xs.begin(), xs.end(), x);
            const std::size_t j = static_cast<std::size_t>(it - xs.begin()) - 1;
            const double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
            u[i] = vs[j] + t * (vs[j + 1] - vs[j]);
        }
        for (double v : u)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw invalid_parameter("profile spec '" + spec + "': values must be finite and >= 0");
        return u;
    }
    throw invalid_parameter("profile spec '" + spec + "': unknown kind '" + kind + "'");
}

std::vector<double> SnapshotSeries::times() const {
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& f : snapshots) t.push_back(f.time);
    return t;
}

std::vector<double> SnapshotSeries::probe(double x0) const {
    std::vector<double> v;
    v.reserve(snapshots.size());
    for (const auto& f : snapshots) v.push_back(grid.interpolate(f.u, x0));
    return v;
}

std::vector<double> gradient(const std::vector<double>& values, const Grid& grid) {
    const std::size_t m = values.size();
    std::vector<double> g(m, 0.0);
    const double dx = grid.spacing();
    for (std::size_t i = 1; i + 1 < m; ++i)
        g[i] = (values[i + 1] - values[i - 1]) / (2.0 * dx);
    if (m >= 2) {
        g[0] = (values[1] - values[0]) / dx;
        g[m - 1] = (values[m - 1] - values[m - 2]) / dx;
    }
    return g;
}

RunResult run(const SimConfig& config, const Grid& grid) {
    if (!(config.t_end > 0.0)) throw invalid_parameter("t_end must be > 0");
    if (!(config.snapshot_stride > 0.0))
        throw invalid_parameter("snapshot_stride must be > 0");
    if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 0.9))
        throw invalid_parameter("cfl_safety must lie in (0, 0.9]");

    RunResult result(grid);
    result.series.law_name = config.law.name;
    result.series.law_degenerate = config.law.degenerate;
    result.series.boundary = config.boundary;

    Field field;
    field.u = make_initial_profile(config.profile_spec, grid);
    field.time = 0.0;
    if (config.boundary == Boundary::Dirichlet)
        for (std::size_t i = 0; i < field.u.size(); ++i)
            if (grid.is_dirichlet_cell(i)) field.u[i] = 0.0;

    const double initial_max = *std::max_element(field.u.begin(), field.u.end());
    if (!(initial_max >= 0.0) || !std::isfinite(initial_max))
        throw invalid_parameter("initial profile must be finite and nonnegative");

    auto dirichlet_energy = [&grid](const std::vector<double>& u) {
        const auto g = gradient(u, grid);
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            e += g[i] * g[i] * grid.volume_weights()[i];
        return e;
    };

    result.series.snapshots.push_back(field);
    result.dirichlet_energy.push_back(dirichlet_energy(field.u));

    bool boundary_warned = false;
    auto check_boundary_activation = [&](const Field& f) {
        if (config.boundary != Boundary::Neumann || boundary_warned) return;
        const double left = grid.geometry() == Geometry::Interval ? f.u.front() : 0.0;
        const double right = f.u.back();
        if (left > 1e-12 || right > 1e-12) {
            std::ostringstream os;
            os << "boundary cells active above 1e-12 at t=" << f.time
               << "; domain may be too small for the configured t_end";
            result.warnings.push_back(os.str());
            boundary_warned = true;
        }
    };
    check_boundary_activation(field);

    const double eps_t = 1e-12 * config.t_end;
    double next_snap = config.snapshot_stride;
    double dt_sum = 0.0;
    while (field.time < config.t_end - eps_t) {
        if (result.steps >= config.max_steps) {
            result.completed = false;
            result.warnings.push_back("step budget exceeded; series is partial");
            break;
        }
        double dt = stable_dt(field, config.law, grid, config.cfl_safety,
                              config.snapshot_stride);
        dt = std::min(dt, next_snap - field.time);
        dt = std::min(dt, config.t_end - field.time);
        field = step_explicit(field, config.law, grid, dt, config.boundary);
        ++result.steps;
        dt_sum += dt;
        result.series.max_dt = std::max(result.series.max_dt, dt);

        const auto [lo, hi] = std::minmax_element(field.u.begin(), field.u.end());
        result.step_min.push_back(*lo);
        result.step_max.push_back(*hi);
        if (!(*lo >= 0.0) || !std::isfinite(*hi))
            throw stability_violation("field left [0, inf) during the run");

        if (field.time >= next_snap - eps_t) {
            result.series.snapshots.push_back(field);
            result.dirichlet_energy.push_back(dirichlet_energy(field.u));
            check_boundary_activation(field);
            next_snap += config.snapshot_stride;
        }
    }
    if (field.time > result.series.snapshots.back().time + eps_t) {
        result.series.snapshots.push_back(field);
        result.dirichlet_energy.push_back(dirichlet_energy(field.u));
        check_boundary_activation(field);
    }
    result.series.mean_dt =
        result.steps > 0 ? dt_sum / static_cast<double>(result.steps) : 0.0;
    return result;
}

} // namespace degenfront
