#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "urel/errors.hpp"
#include "urel/state.hpp"

// Staggered-grid scheme for the radially symmetric ultra-relativistic Euler
// equations on the quarter plane t >= 0, x >= 0:
//
//     d_t (x^{d-1} a) + d_x (x^{d-1} b) = 0
//     d_t (x^{d-1} b) + d_x (x^{d-1} c) = (d-1)/2 x^{d-2} (a - c)
//
// Each update integrates the balance laws over a triangular space-time region
// whose chord midpoints are grid points of alternating node/midpoint levels.
// The x = 0 boundary is handled by reflection (a even, b odd).

namespace urel::radial {

/// Discretization of the trapezoidal computational domain
/// D = { 0 <= t <= t*, 0 <= x <= x* + lambda (t* - t) }.
struct StaggeredGrid {
    double t_star = 0.0;
    double x_star = 0.0;
    int n_half_steps = 0; ///< N; the run spans 2N time steps
    int m_cells = 0;      ///< M = floor((x*/t*) N)
    double dt = 0.0;      ///< t* / (2N)
    double dx = 0.0;      ///< x* / M
    double lambda = 0.0;  ///< dx / (2 dt) >= 1
    int dim = 2;          ///< spatial dimension d (2 or 3)

    int level_count() const { return 2 * n_half_steps + 1; }
    /// Number of grid points on level n (1-based).
    int points_on_level(int n) const { return m_cells + n_half_steps - (n - 1) / 2; }
    double level_time(int n) const { return (n - 1) * dt; }
    /// Position of point j (1-based) on level n: midpoints on odd levels, nodes on even.
    double position(int n, int j) const {
        return (n % 2 == 1) ? (j - 0.5) * dx : (j - 1) * dx;
    }
};

inline StaggeredGrid build_grid(double t_star, double x_star, int n_half_steps, int dim = 2) {
    if (!(t_star > 0.0) || !(x_star > 0.0))
        throw grid_error("build_grid: t* and x* must be positive");
    if (n_half_steps < 1)
        throw grid_error("build_grid: N must be a positive integer");
    if (dim != 2 && dim != 3)
        throw grid_error("build_grid: dimension must be 2 or 3");
    if (!(static_cast<double>(n_half_steps) * x_star >= t_star))
        throw grid_error("build_grid: N x* < t* violates the CFL condition (lambda < 1)");
    StaggeredGrid g;
    g.t_star = t_star;
    g.x_star = x_star;
    g.n_half_steps = n_half_steps;
    g.dt = t_star / (2.0 * n_half_steps);
    g.m_cells = static_cast<int>(std::floor(x_star / t_star * n_half_steps));
    g.dx = x_star / g.m_cells;
    g.lambda = g.dx / (2.0 * g.dt);
    g.dim = dim;
    return g;
}

/// Reflection at x = 0: a is even, b is odd.
inline ConservedPair reflect_boundary(const ConservedPair& s) {
    return {s.a, -s.b};
}

namespace detail {

/// Chord and area moments of the weight x^{d-1} over the balance triangle
/// centered at x_bar. t_minus/t_plus are the time integrals of the weight
/// along the two slanted chords, w0 the space integral along the vertical
/// chord, q the area integral of x^{d-2} over the triangle. All integrals
/// are exact for polynomial weights.
struct BalanceMoments {
    double t_minus, t_plus, w0, q;
};

inline BalanceMoments moments(double x_bar, double dx, double dt, int dim) {
    const double xm = x_bar - 0.5 * dx; // midpoint of the left chord
    const double xp = x_bar + 0.5 * dx; // midpoint of the right chord
    if (dim == 2) {
        return {2.0 * dt * xm, 2.0 * dt * xp, 2.0 * x_bar * dx, 2.0 * dt * dx};
    }
    // d = 3: weight x^2 is quadratic along the chords, midpoint value plus
    // the exact second-moment correction dx^2/12; the source integral uses
    // the triangle centroid.
    const double corr = dx * dx / 12.0;
    const double xo = x_bar - dx;
    const double xi = x_bar + dx;
    return {2.0 * dt * (xm * xm + corr), 2.0 * dt * (xp * xp + corr),
            (xi * xi * xi - xo * xo * xo) / 3.0, 2.0 * dt * dx * x_bar};
}

} // namespace detail

/// Single-cell update: given the states at the two chord midpoints of the
/// previous level and the target position x_bar, return the state at the apex
/// midpoint. Preserves |b'| < a' for lambda >= 1 (the positive-root branch of
/// the implicit momentum balance).
inline ConservedPair euler_update(double a_minus, double b_minus, double a_plus, double b_plus,
                                  double x_bar, double dx, double lambda, int dim = 2) {
    const ConservedPair sm{a_minus, b_minus};
    const ConservedPair sp{a_plus, b_plus};
    require_valid(sm);
    require_valid(sp);
    if (!(lambda >= 1.0))
        throw grid_error("euler_update: lambda < 1");
    if (x_bar < 0.0)
        throw grid_error("euler_update: x_bar < 0");

    // Boundary balance region: reflection makes the odd moments vanish and
    // the update collapses to a' = a+ - b+/lambda, b' = 0.
    if (x_bar == 0.0)
        return {a_plus - b_plus / lambda, 0.0};

    const double q_tilde = dx / (2.0 * x_bar);
    if (q_tilde > 1.0)
        throw grid_error("euler_update: dx/(2 x_bar) > 1");

    // A constant rest state is a fixed point of the exact update; return it
    // bit-identically so long runs do not accumulate drift.
    if (b_minus == 0.0 && b_plus == 0.0 && a_minus == a_plus)
        return {a_plus, 0.0};

    const double c_minus = flux_c(sm);
    const double c_plus = flux_c(sp);
    const double dt = dx / (2.0 * lambda);
    const auto [t_m, t_p, w0, q] = detail::moments(x_bar, dx, dt, dim);

    const double a_new = ((lambda * a_plus - b_plus) * t_p + (lambda * a_minus + b_minus) * t_m) / w0;
    const double eta = (dim - 1) * q / (3.0 * w0);
    const double xi =
        ((lambda * b_plus - c_plus) * t_p + (lambda * b_minus + c_minus) * t_m) / w0 - a_new * eta;
    const double root2 = 4.0 * a_new * a_new * (1.0 + 3.0 * eta * eta) - 3.0 * xi * xi;
    const double b_new = (xi + eta * std::sqrt(root2)) / (1.0 + 3.0 * eta * eta);

    const ConservedPair out{a_new, b_new};
    require_valid(out); // Theorem-level guarantee; trips only on NaN/overflow inputs
    return out;
}

inline ConservedPair euler_update(const ConservedPair& minus, const ConservedPair& plus,
                                  double x_bar, double dx, double lambda, int dim = 2) {
    return euler_update(minus.a, minus.b, plus.a, plus.b, x_bar, dx, lambda, dim);
}

/// Numerical solution on one time level of the staggered grid.
struct LevelSolution {
    int n = 1; ///< level index, 1-based
    std::vector<double> positions;
    std::vector<ConservedPair> states;
};

/// Initial pressure and velocity profile. The velocity may be given either as
/// the physical speed v (|v| < 1) or as the four-velocity component u.
struct InitialData {
    std::function<double(double)> pressure;
    std::function<double(double)> velocity;
    bool velocity_is_four_velocity = false;
};

inline LevelSolution initialize(const StaggeredGrid& grid, const InitialData& data) {
    LevelSolution lvl;
    lvl.n = 1;
    const int count = grid.points_on_level(1);
    lvl.positions.resize(count);
    lvl.states.resize(count);
    for (int j = 1; j <= count; ++j) {
        const double x = grid.position(1, j);
        const double p = data.pressure(x);
        const double vel = data.velocity(x);
        if (!(p > 0.0) || !std::isfinite(vel))
            throw invalid_state_error("initialize: invalid initial data at x=" + std::to_string(x));
        double u;
        if (data.velocity_is_four_velocity) {
            u = vel;
        } else {
            if (!(std::abs(vel) < 1.0))
                throw invalid_state_error("initialize: |v0| >= 1 at x=" + std::to_string(x));
            u = four_velocity(vel);
        }
        lvl.positions[j - 1] = x;
        lvl.states[j - 1] = to_conserved({p, u});
    }
    return lvl;
}

inline LevelSolution initialize(const StaggeredGrid& grid, std::function<double(double)> p0,
                                std::function<double(double)> v0) {
    return initialize(grid, InitialData{std::move(p0), std::move(v0), false});
}

namespace detail {

inline void advance_into(const StaggeredGrid& grid, const LevelSolution& in, LevelSolution& out) {
    const int n = in.n;
    const int count_out = grid.points_on_level(n + 1);
    out.n = n + 1;
    out.positions.resize(count_out);
    out.states.resize(count_out);
    const double dx = grid.dx;
    const double lam = grid.lambda;
    const int dim = grid.dim;
    const auto& s = in.states;
    if (n % 2 == 1) {
        // odd -> even: first point sits on the boundary x = 0, reflected data
        const ConservedPair refl = reflect_boundary(s[0]);
        out.positions[0] = 0.0;
        out.states[0] = euler_update(refl, s[0], 0.0, dx, lam, dim);
        for (int j = 2; j <= count_out; ++j) {
            const double x_bar = (j - 1) * dx;
            out.positions[j - 1] = x_bar;
            out.states[j - 1] = euler_update(s[j - 2], s[j - 1], x_bar, dx, lam, dim);
        }
    } else {
        // even -> odd: all targets are cell midpoints
        for (int j = 1; j <= count_out; ++j) {
            const double x_bar = (j - 0.5) * dx;
            out.positions[j - 1] = x_bar;
            out.states[j - 1] = euler_update(s[j - 1], s[j], x_bar, dx, lam, dim);
        }
    }
}

} // namespace detail

/// Snapshot view of one level as a radial field a(t,·), b(t,·).
inline RadialField to_field(const StaggeredGrid& grid, const LevelSolution& level) {
    RadialField f;
    f.positions = level.positions;
    f.states = level.states;
    f.time = grid.level_time(level.n);
    return f;
}

inline LevelSolution advance_level(const StaggeredGrid& grid, const LevelSolution& level) {
    if (level.n < 1 || level.n > 2 * grid.n_half_steps)
        throw grid_error("advance_level: level index out of range");
    if (static_cast<int>(level.states.size()) != grid.points_on_level(level.n))
        throw grid_error("advance_level: level point count does not match the grid");
    LevelSolution out;
    detail::advance_into(grid, level, out);
    return out;
}

/// Time-marching record: thinned levels for t-x plane output, plus a dense
/// on-axis pressure trace (one sample per level) for focus diagnostics.
struct SpaceTimeRecord {
    StaggeredGrid grid;
    std::vector<LevelSolution> levels;
    std::vector<double> axis_time;
    std::vector<double> axis_pressure;

    const LevelSolution& final_level() const { return levels.back(); }
};

/// Drive the scheme over all 2N steps. Levels with (n-1) % record_stride == 0
/// are stored, and the final level always is.
inline SpaceTimeRecord run(const StaggeredGrid& grid, const InitialData& data,
                           int record_stride = 1) {
    if (record_stride < 1)
        throw grid_error("run: record_stride must be >= 1");
    SpaceTimeRecord rec;
    rec.grid = grid;
    const int total = grid.level_count();
    rec.axis_time.reserve(total);
    rec.axis_pressure.reserve(total);

    LevelSolution cur = initialize(grid, data);
    LevelSolution next;
    auto note = [&](const LevelSolution& lvl) {
        rec.axis_time.push_back(grid.level_time(lvl.n));
        rec.axis_pressure.push_back(to_primitive(lvl.states.front()).p);
        if ((lvl.n - 1) % record_stride == 0 || lvl.n == total)
            rec.levels.push_back(lvl);
    };
    note(cur);
    for (int n = 1; n <= 2 * grid.n_half_steps; ++n) {
        detail::advance_into(grid, cur, next);
        std::swap(cur, next);
        note(cur);
    }
    return rec;
}

inline SpaceTimeRecord run(const StaggeredGrid& grid, std::function<double(double)> p0,
                           std::function<double(double)> v0, int record_stride = 1) {
    return run(grid, InitialData{std::move(p0), std::move(v0), false}, record_stride);
}

} // namespace urel::radial
