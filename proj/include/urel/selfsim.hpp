#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "urel/errors.hpp"
#include "urel/state.hpp"

// Self-similar reference solutions in the variable theta = t/x.
//
// For constant initial data (p0 = 1, v0) the radial solution depends on theta
// alone and satisfies
//
//   V'(th) = (d-1) V (V - th) (1 - V^2) / f(th, V)
//   P'(th) = (d-1) 4 P V (th V - 1)    / f(th, V),   f = 3 (th V - 1)^2 - (V - th)^2
//
// with V(0) = v0, P(0) = 1. For v0 < 0 a 3-shock with constant speed
// s = 1/theta_tilde forms, where theta_tilde solves V(th) = 3/(2 th) - th/2;
// the plateau state behind it follows from the jump relations. For v0 > 0 the
// solution is a smooth expansion integrated up to a configured theta cap.

namespace urel::selfsim {

/// Denominator f(theta, V); vanishes only on the sonic curves.
inline double sonic_denominator(double theta, double v) {
    const double a = theta * v - 1.0;
    const double b = v - theta;
    return 3.0 * a * a - b * b;
}

/// Lower sonic curve for theta > sqrt(3); the solution for v0 < 0 stays above it.
inline double blowup_boundary(double theta) {
    return -(theta - std::sqrt(3.0)) / (std::sqrt(3.0) * theta - 1.0);
}

struct OdeSettings {
    double step = 1e-6;            ///< fixed RK4 step in theta
    double theta_cap = 10.0;       ///< stop for v0 > 0 once theta exceeds this
    int store_stride = 1000;       ///< keep every k-th step as a profile sample
    double shock_tol = 1e-9;       ///< |g(theta_tilde)| target for the shock fit
    double singularity_eps = 1e-10;///< abort when |f| < eps (1 + theta^2)
};

inline std::pair<double, double> ode_rhs(int dim, double theta, double v, double p,
                                         double singularity_eps = 1e-10) {
    const double f = sonic_denominator(theta, v);
    if (std::abs(f) < singularity_eps * (1.0 + theta * theta))
        throw integration_error("ode_rhs: sonic denominator vanished at theta=" +
                                std::to_string(theta));
    const double dv = (dim - 1) * v * (v - theta) * (1.0 - v * v) / f;
    const double dp = (dim - 1) * 4.0 * p * v * (theta * v - 1.0) / f;
    return {dv, dp};
}

struct ShockData {
    double theta_tilde = 0.0;
    double s_tilde = 0.0; ///< shock speed, 1/theta_tilde
    double p_plus = 0.0;
    double v_plus = 0.0;
    double p_minus = 0.0;
    double v_minus = 0.0; ///< identically zero on the plateau
};

struct SelfSimilarProfile {
    int dim = 2;
    double v0 = 0.0;
    std::vector<double> theta;
    std::vector<double> v;
    std::vector<double> p;
    std::optional<ShockData> shock;

    struct Bracket {
        double theta_lo, v_lo, p_lo; ///< last state with g < 0
        double theta_hi;             ///< first theta with g >= 0
    };
    std::optional<Bracket> bracket;
};

namespace detail {

struct OdeState {
    double theta, v, p;
};

inline OdeState rk4_step(int dim, const OdeState& s, double h, double eps) {
    const auto [k1v, k1p] = ode_rhs(dim, s.theta, s.v, s.p, eps);
    const auto [k2v, k2p] = ode_rhs(dim, s.theta + 0.5 * h, s.v + 0.5 * h * k1v, s.p + 0.5 * h * k1p, eps);
    const auto [k3v, k3p] = ode_rhs(dim, s.theta + 0.5 * h, s.v + 0.5 * h * k2v, s.p + 0.5 * h * k2p, eps);
    const auto [k4v, k4p] = ode_rhs(dim, s.theta + h, s.v + h * k3v, s.p + h * k3p, eps);
    return {s.theta + h, s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
            s.p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

/// Shock-fit defect g(theta) = V(theta) - (3/(2 theta) - theta/2).
inline double shock_defect(double theta, double v) {
    return v - (1.5 / theta - 0.5 * theta);
}

} // namespace detail

/// March the ODE from theta = 0 with fixed-step RK4. For v0 < 0 the run stops
/// at the first step where the shock condition changes sign (the bracket is
/// recorded for fit_shock); for v0 > 0 it stops at the theta cap, at
/// V -> 1, or where the singularity guard trips.
inline SelfSimilarProfile integrate(int dim, double v0, const OdeSettings& opt = {}) {
    if (dim != 2 && dim != 3)
        throw integration_error("integrate: dimension must be 2 or 3");
    if (!(std::abs(v0) < 1.0) || v0 == 0.0)
        throw integration_error("integrate: v0 must lie in (-1,1) \\ {0}");
    if (!(opt.step > 0.0))
        throw integration_error("integrate: step must be positive");

    SelfSimilarProfile prof;
    prof.dim = dim;
    prof.v0 = v0;
    prof.theta.push_back(0.0);
    prof.v.push_back(v0);
    prof.p.push_back(1.0);

    detail::OdeState s{0.0, v0, 1.0};
    const double sqrt3 = std::sqrt(3.0);
    long step_index = 0;
    while (true) {
        detail::OdeState next;
        try {
            next = detail::rk4_step(dim, s, opt.step, opt.singularity_eps);
        } catch (const integration_error&) {
            if (v0 < 0.0)
                throw integration_error("integrate: singularity reached before the shock bracket");
            break; // smooth expansion: cut the profile at the guard
        }
        ++step_index;

        if (v0 < 0.0 && next.theta > sqrt3 &&
            detail::shock_defect(next.theta, next.v) >= 0.0) {
            // bracket found; keep the left state as the last proper sample
            if (prof.theta.back() != s.theta) {
                prof.theta.push_back(s.theta);
                prof.v.push_back(s.v);
                prof.p.push_back(s.p);
            }
            prof.bracket = SelfSimilarProfile::Bracket{s.theta, s.v, s.p, next.theta};
            return prof;
        }

        s = next;
        if (!(s.p > 0.0))
            throw integration_error("integrate: pressure lost positivity");
        if (step_index % opt.store_stride == 0) {
            prof.theta.push_back(s.theta);
            prof.v.push_back(s.v);
            prof.p.push_back(s.p);
        }
        if (v0 > 0.0 && (s.theta >= opt.theta_cap || s.v >= 1.0 - 1e-12))
            break;
        if (v0 < 0.0 && s.theta >= opt.theta_cap)
            throw integration_error("integrate: no shock bracket below the theta cap");
    }
    if (prof.theta.back() != s.theta) {
        prof.theta.push_back(s.theta);
        prof.v.push_back(s.v);
        prof.p.push_back(s.p);
    }
    return prof;
}

/// Polish theta_tilde inside the recorded bracket by bisection, evaluating
/// V(theta) with a single high-order local step from the bracket-left state,
/// then evaluate the jump relations. Appends the fitted point to the profile
/// samples and stores the shock data.
inline ShockData fit_shock(SelfSimilarProfile& prof, double tol = 1e-9) {
    if (!prof.bracket)
        throw integration_error("fit_shock: profile has no shock bracket");
    const auto br = *prof.bracket;

    auto eval = [&](double theta) -> detail::OdeState {
        detail::OdeState s{br.theta_lo, br.v_lo, br.p_lo};
        if (theta == br.theta_lo)
            return s;
        return detail::rk4_step(prof.dim, s, theta - br.theta_lo, 1e-14);
    };

    // Bisect well past the defect tolerance so theta_tilde itself is pinned
    // to ~1e-13; the defect then lands far below tol.
    double lo = br.theta_lo, hi = br.theta_hi;
    detail::OdeState best = eval(hi);
    double g_best = detail::shock_defect(best.theta, best.v);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const detail::OdeState sm = eval(mid);
        const double gm = detail::shock_defect(sm.theta, sm.v);
        if (std::abs(gm) < std::abs(g_best)) {
            best = sm;
            g_best = gm;
        }
        if (gm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (std::abs(g_best) > tol)
        throw integration_error("fit_shock: bisection did not reach the shock tolerance");

    ShockData sh;
    sh.theta_tilde = best.theta;
    sh.s_tilde = 1.0 / best.theta;
    sh.v_plus = best.v;
    sh.p_plus = best.p;
    sh.v_minus = 0.0;
    sh.p_minus = best.p * 3.0 * (1.0 - sh.s_tilde * sh.s_tilde) /
                 (9.0 * sh.s_tilde * sh.s_tilde - 1.0);

    const double sqrt3 = std::sqrt(3.0);
    const double upper = std::sqrt(prof.v0 * prof.v0 + 3.0) - prof.v0;
    if (!(sh.theta_tilde > sqrt3 && sh.theta_tilde < upper))
        throw integration_error("fit_shock: theta_tilde escaped its admissible bracket");
    if (!(sh.p_plus > 0.0 && sh.p_plus < sh.p_minus))
        throw integration_error("fit_shock: jump inequalities violated");

    if (sh.theta_tilde > prof.theta.back()) {
        prof.theta.push_back(sh.theta_tilde);
        prof.v.push_back(sh.v_plus);
        prof.p.push_back(sh.p_plus);
    } else {
        prof.v.back() = sh.v_plus;
        prof.p.back() = sh.p_plus;
    }
    prof.shock = sh;
    return sh;
}

/// Sample p(t, x), v(t, x) on given radii. Behind the shock (x < s t) the
/// plateau state applies; beyond the sampled range the profile is continued
/// by its end values (far field at theta -> 0).
inline std::pair<std::vector<double>, std::vector<double>>
profile_at_time(const SelfSimilarProfile& prof, double t, const std::vector<double>& radii) {
    if (!(t > 0.0))
        throw error("profile_at_time: t must be positive");
    std::vector<double> p_out(radii.size()), v_out(radii.size());
    const double theta_last = prof.theta.back();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double x = radii[i];
        if (!(x > 0.0))
            throw error("profile_at_time: radii must be positive");
        if (prof.shock && x < prof.shock->s_tilde * t) {
            p_out[i] = prof.shock->p_minus;
            v_out[i] = 0.0;
            continue;
        }
        const double theta = std::min(t / x, theta_last);
        const auto it = std::lower_bound(prof.theta.begin(), prof.theta.end(), theta);
        if (it == prof.theta.begin()) {
            p_out[i] = prof.p.front();
            v_out[i] = prof.v.front();
            continue;
        }
        const std::size_t k = static_cast<std::size_t>(it - prof.theta.begin());
        if (k == prof.theta.size()) {
            p_out[i] = prof.p.back();
            v_out[i] = prof.v.back();
            continue;
        }
        const double t0 = prof.theta[k - 1], t1 = prof.theta[k];
        const double w = (theta - t0) / (t1 - t0);
        p_out[i] = prof.p[k - 1] + w * (prof.p[k] - prof.p[k - 1]);
        v_out[i] = prof.v[k - 1] + w * (prof.v[k] - prof.v[k - 1]);
    }
    return {std::move(p_out), std::move(v_out)};
}

/// A single shock from (p-, u-) to (p+, u+) is entropy admissible iff u- > u+.
inline bool entropy_check(double p_minus, double u_minus, double p_plus, double u_plus) {
    if (!(p_minus > 0.0) || !(p_plus > 0.0))
        throw invalid_state_error("entropy_check: pressures must be positive");
    return u_minus > u_plus;
}

} // namespace urel::selfsim
