#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "urel/eigensystem.hpp"
#include "urel/errors.hpp"

// Two-dimensional Cartesian finite-volume solver for the ultra-relativistic
// Euler system, used to cross-validate the radially symmetric scheme. Local
// Lax-Friedrichs interface fluxes; either first order or minmod-limited
// MUSCL reconstruction in primitive variables with two-stage SSP time
// stepping. Free outflow on all sides.

namespace urel::euler2d {

using State = eig::State<2>;
using Vec2 = eig::Vec<2>;

struct CartesianGrid2D {
    double x_lo, x_hi, y_lo, y_hi;
    int nx, ny;

    double hx() const { return (x_hi - x_lo) / nx; }
    double hy() const { return (y_hi - y_lo) / ny; }
    double cx(int i) const { return x_lo + (i + 0.5) * hx(); }
    double cy(int j) const { return y_lo + (j + 0.5) * hy(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
};

inline CartesianGrid2D make_grid(double x_lo, double x_hi, double y_lo, double y_hi, int nx,
                                 int ny) {
    if (nx < 4 || ny < 4)
        throw grid_error("make_grid: need at least 4 cells per direction");
    if (!(x_hi > x_lo) || !(y_hi > y_lo))
        throw grid_error("make_grid: empty domain");
    return {x_lo, x_hi, y_lo, y_hi, nx, ny};
}

struct FieldState2D {
    CartesianGrid2D grid{};
    std::vector<State> w;
    double time = 0.0;
    long floored_cells = 0; ///< cumulative pressure-floor interventions
};

enum class RadialKind { velocity, four_velocity };

/// Cell-centered sampling of a radial profile p0(r), v0(r) or u0(r); the
/// velocity points along x̂ = x/|x| and vanishes at the origin.
inline FieldState2D init_radial(const CartesianGrid2D& grid,
                                const std::function<double(double)>& p0,
                                const std::function<double(double)>& profile,
                                RadialKind kind = RadialKind::velocity) {
    FieldState2D f;
    f.grid = grid;
    f.w.resize(grid.cell_count());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.cx(i), y = grid.cy(j);
            const double r = std::hypot(x, y);
            const double p = p0(r);
            if (!(p > 0.0))
                throw invalid_state_error("init_radial: non-positive pressure sample");
            Vec2 u{0.0, 0.0};
            if (r > 0.0) {
                const double s = profile(r);
                double u_r;
                if (kind == RadialKind::velocity) {
                    if (!(std::abs(s) < 1.0))
                        throw invalid_state_error("init_radial: |v0| >= 1 sample");
                    u_r = s / std::sqrt(1.0 - s * s);
                } else {
                    if (!std::isfinite(s))
                        throw invalid_state_error("init_radial: non-finite u0 sample");
                    u_r = s;
                }
                u = {u_r * x / r, u_r * y / r};
            }
            f.w[grid.index(i, j)] = eig::conserved<2>(p, u);
        }
    }
    return f;
}

/// Local Lax-Friedrichs flux through a face with unit normal n̄.
inline State llf_flux(const State& wl, const State& wr, const Vec2& n) {
    const State fl = eig::normal_flux<2>(wl, n);
    const State fr = eig::normal_flux<2>(wr, n);
    const double s = std::max(eig::max_wave_speed<2>(wl, n), eig::max_wave_speed<2>(wr, n));
    State out;
    for (int c = 0; c < 3; ++c)
        out[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * s * (wr[c] - wl[c]);
    return out;
}

struct StepOptions {
    double cfl = 0.45;
    int order = 1;                 ///< 1 = first order, 2 = minmod MUSCL + SSP2
    double pressure_floor = 1e-12; ///< restore p to this when the inverse map fails
};

namespace detail {

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

struct Prim {
    double p, ux, uy;
};

inline Prim prim_of(const State& w) {
    const auto pr = eig::primitive_from_conserved<2>(w);
    return {pr.p, pr.u[0], pr.u[1]};
}

inline State cons_of(const Prim& q) {
    return eig::conserved<2>(q.p, {q.ux, q.uy});
}

/// State together with its pressure; avoids re-inverting the state at every
/// face the cell touches.
struct Face {
    State w;
    double p;
};

/// Largest |lambda| through an axis-aligned face, from (w, p) alone:
/// u_n g = w_n/(4p), |ū|² = w₃/(4p) - 1.
inline double axis_speed(const Face& f, int axis) {
    const double inv4p = 1.0 / (4.0 * f.p);
    const double ung = f.w[axis] * inv4p;
    const double uu = (f.w[2] + f.p) * inv4p - 1.0;
    const double un2 = ung * ung / (1.0 + uu);
    const double disc = std::sqrt(std::max(0.0, 2.0 * (uu - un2) + 3.0));
    const double denom = 3.0 + 2.0 * uu;
    return (2.0 * std::abs(ung) + disc) / denom;
}

inline State axis_flux(const Face& f, int axis) {
    const double e = f.w[2] + f.p;
    State out;
    out[0] = f.w[0] * f.w[axis] / e;
    out[1] = f.w[1] * f.w[axis] / e;
    out[axis] += f.p;
    out[2] = f.w[axis];
    return out;
}

inline State llf_axis(const Face& l, const Face& r, int axis) {
    const State fl = axis_flux(l, axis);
    const State fr = axis_flux(r, axis);
    const double s = std::max(axis_speed(l, axis), axis_speed(r, axis));
    State out;
    for (int c = 0; c < 3; ++c) out[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * s * (r.w[c] - l.w[c]);
    return out;
}

/// Largest |lambda| across both coordinate normals, for the global CFL bound.
inline double cell_signal_speed(const State& w) {
    const Face f{w, eig::pressure<2>(w)};
    return std::max(axis_speed(f, 0), axis_speed(f, 1));
}

inline void apply_floor(FieldState2D& f, double floor_p) {
    for (auto& w : f.w) {
        if (!(w[2] > 0.0))
            throw blowup_error("euler2d: non-positive energy density");
        const double mm = w[0] * w[0] + w[1] * w[1];
        const double e = w[2];
        // p > floor_p iff |w̄|^2 < (4 e^2 - (3 floor_p + e)^2)/3
        const double lim = (4.0 * e * e - (3.0 * floor_p + e) * (3.0 * floor_p + e)) / 3.0;
        if (mm > lim) {
            if (!(lim > 0.0))
                throw blowup_error("euler2d: energy below the pressure floor");
            const double scale = std::sqrt(lim / mm);
            w[0] *= scale;
            w[1] *= scale;
            ++f.floored_cells;
        }
    }
}

/// One forward-Euler stage: out = in - dt * div F(in). Fluxes use outflow
/// ghosts; the x and y contributions are combined in a single symmetric sum
/// so that grid-symmetric data stays symmetric to the last bit.
inline void flux_stage(const FieldState2D& in, double dt, int order, FieldState2D& out) {
    const auto& g = in.grid;
    const int nx = g.nx, ny = g.ny;
    const double cx = dt / g.hx(), cy = dt / g.hy();
    out.grid = g;
    out.w.resize(in.w.size());

    std::vector<Prim> prim(in.w.size());
    for (std::size_t k = 0; k < in.w.size(); ++k) prim[k] = prim_of(in.w[k]);

    std::vector<Prim> slope_x, slope_y;
    if (order >= 2) {
        slope_x.assign(in.w.size(), {0.0, 0.0, 0.0});
        slope_y.assign(in.w.size(), {0.0, 0.0, 0.0});
        auto mm3 = [](const Prim& lo, const Prim& mid, const Prim& hi) -> Prim {
            return {minmod(mid.p - lo.p, hi.p - mid.p), minmod(mid.ux - lo.ux, hi.ux - mid.ux),
                    minmod(mid.uy - lo.uy, hi.uy - mid.uy)};
        };
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const auto k = g.index(i, j);
                slope_x[k] = mm3(prim[g.index(std::max(i - 1, 0), j)], prim[k],
                                 prim[g.index(std::min(i + 1, nx - 1), j)]);
                slope_y[k] = mm3(prim[g.index(i, std::max(j - 1, 0))], prim[k],
                                 prim[g.index(i, std::min(j + 1, ny - 1))]);
            }
    }

    auto face = [&](std::size_t k, int axis, double side) -> Face {
        if (order < 2) return {in.w[k], prim[k].p};
        const Prim& q = prim[k];
        const Prim& s = (axis == 0) ? slope_x[k] : slope_y[k];
        const Prim fq{q.p + side * 0.5 * s.p, q.ux + side * 0.5 * s.ux,
                      q.uy + side * 0.5 * s.uy};
        return {cons_of(fq), fq.p};
    };

    // x-direction flux differences
    std::vector<State> div(in.w.size());
    for (int j = 0; j < ny; ++j) {
        Face ghost = face(g.index(0, j), 0, -1.0);
        State f_prev = llf_axis(ghost, ghost, 0);
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = g.index(i, j);
            const Face wl = face(k, 0, +1.0);
            const Face wr = (i + 1 < nx) ? face(g.index(i + 1, j), 0, -1.0) : wl;
            const State f_next = llf_axis(wl, wr, 0);
            for (int c = 0; c < 3; ++c) div[k][c] = cx * (f_next[c] - f_prev[c]);
            f_prev = f_next;
        }
    }
    // y-direction flux differences, added symmetrically
    for (int i = 0; i < nx; ++i) {
        Face ghost = face(g.index(i, 0), 1, -1.0);
        State f_prev = llf_axis(ghost, ghost, 1);
        for (int j = 0; j < ny; ++j) {
            const std::size_t k = g.index(i, j);
            const Face wl = face(k, 1, +1.0);
            const Face wr = (j + 1 < ny) ? face(g.index(i, j + 1), 1, -1.0) : wl;
            const State f_next = llf_axis(wl, wr, 1);
            for (int c = 0; c < 3; ++c) div[k][c] += cy * (f_next[c] - f_prev[c]);
            f_prev = f_next;
        }
    }
    for (std::size_t k = 0; k < in.w.size(); ++k)
        for (int c = 0; c < 3; ++c) out.w[k][c] = in.w[k][c] - div[k][c];
}

} // namespace detail

inline double max_signal_speed(const FieldState2D& f) {
    double s = 0.0;
    for (const auto& w : f.w) s = std::max(s, detail::cell_signal_speed(w));
    return s;
}

/// Advance one time step with dt = cfl * min(hx, hy) / s_max.
inline FieldState2D step(const FieldState2D& state, const StepOptions& opt = {}) {
    if (!(opt.cfl > 0.0 && opt.cfl < 1.0))
        throw grid_error("step: cfl must lie in (0,1)");
    const double s_max = max_signal_speed(state);
    if (!(s_max > 0.0))
        throw blowup_error("step: vanishing signal speed");
    const double dt = opt.cfl * std::min(state.grid.hx(), state.grid.hy()) / s_max;

    FieldState2D out;
    out.floored_cells = state.floored_cells;
    if (opt.order < 2) {
        detail::flux_stage(state, dt, 1, out);
        detail::apply_floor(out, opt.pressure_floor);
    } else {
        FieldState2D mid;
        detail::flux_stage(state, dt, 2, mid);
        mid.floored_cells = state.floored_cells;
        detail::apply_floor(mid, opt.pressure_floor);
        FieldState2D two;
        detail::flux_stage(mid, dt, 2, two);
        out.grid = state.grid;
        out.w.resize(state.w.size());
        for (std::size_t k = 0; k < state.w.size(); ++k)
            for (int c = 0; c < 3; ++c)
                out.w[k][c] = 0.5 * state.w[k][c] + 0.5 * two.w[k][c];
        out.floored_cells = mid.floored_cells;
        detail::apply_floor(out, opt.pressure_floor);
    }
    out.time = state.time + dt;
    return out;
}

inline FieldState2D step(const FieldState2D& state, double cfl) {
    StepOptions opt;
    opt.cfl = cfl;
    return step(state, opt);
}

/// Run to the requested time, shortening the last step to land on it exactly.
inline FieldState2D run_to_time(FieldState2D state, double t_end, const StepOptions& opt = {}) {
    while (state.time < t_end) {
        const double s_max = max_signal_speed(state);
        const double dt_full = opt.cfl * std::min(state.grid.hx(), state.grid.hy()) / s_max;
        StepOptions local = opt;
        if (state.time + dt_full > t_end)
            local.cfl = opt.cfl * (t_end - state.time) / dt_full;
        if (local.cfl <= 0.0) break;
        state = step(state, local);
    }
    return state;
}

struct RadialBins {
    std::vector<double> r;  ///< bin centers
    std::vector<double> p;  ///< bin mean pressure
    std::vector<double> v;  ///< bin mean radial velocity
    std::vector<long> count;
    std::vector<double> p_std; ///< in-bin standard deviation of p
    std::vector<double> v_std;
};

/// Equal-width bins in r over [0, r_max], r_max being the largest radius whose
/// full circle stays inside the domain. Cells beyond r_max are ignored.
inline RadialBins radial_profile(const FieldState2D& f, int nbins) {
    if (nbins < 1)
        throw error("radial_profile: nbins must be positive");
    const auto& g = f.grid;
    const double r_max = std::min(std::min(-g.x_lo, g.x_hi), std::min(-g.y_lo, g.y_hi));
    if (!(r_max > 0.0))
        throw error("radial_profile: domain does not contain the origin");
    RadialBins bins;
    bins.r.resize(nbins);
    bins.p.assign(nbins, 0.0);
    bins.v.assign(nbins, 0.0);
    bins.count.assign(nbins, 0);
    bins.p_std.assign(nbins, 0.0);
    bins.v_std.assign(nbins, 0.0);
    std::vector<double> p2(nbins, 0.0), v2(nbins, 0.0);
    const double width = r_max / nbins;
    for (int i = 0; i < nbins; ++i) bins.r[i] = (i + 0.5) * width;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.cx(i), y = g.cy(j);
            const double r = std::hypot(x, y);
            if (r >= r_max) continue;
            const int b = std::min(static_cast<int>(r / width), nbins - 1);
            const auto prim = eig::primitive_from_conserved<2>(f.w[g.index(i, j)]);
            const double uu = prim.u[0] * prim.u[0] + prim.u[1] * prim.u[1];
            double vr = 0.0;
            if (r > 0.0)
                vr = (prim.u[0] * x + prim.u[1] * y) / (r * std::sqrt(1.0 + uu));
            bins.p[b] += prim.p;
            bins.v[b] += vr;
            p2[b] += prim.p * prim.p;
            v2[b] += vr * vr;
            ++bins.count[b];
        }
    }
    for (int b = 0; b < nbins; ++b) {
        if (bins.count[b] == 0) continue;
        const double inv = 1.0 / bins.count[b];
        bins.p[b] *= inv;
        bins.v[b] *= inv;
        bins.p_std[b] = std::sqrt(std::max(0.0, p2[b] * inv - bins.p[b] * bins.p[b]));
        bins.v_std[b] = std::sqrt(std::max(0.0, v2[b] * inv - bins.v[b] * bins.v[b]));
    }
    return bins;
}

/// Sum of a conserved component over interior cells (margin cells skipped),
/// times the cell area; for conservation bookkeeping in tests.
inline double interior_total(const FieldState2D& f, int component, int margin = 0) {
    const auto& g = f.grid;
    double total = 0.0;
    for (int j = margin; j < g.ny - margin; ++j)
        for (int i = margin; i < g.nx - margin; ++i) total += f.w[g.index(i, j)][component];
    return total * g.hx() * g.hy();
}

} // namespace urel::euler2d
