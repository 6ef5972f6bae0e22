#pragma once

#include <cmath>
#include <vector>

#include "urel/errors.hpp"

// Algebraic state space of the radially symmetric ultra-relativistic gas.
//
// Physical unknowns are the pressure p > 0 and the radial component u of the
// spatial four-velocity (unbounded; the physical speed is v = u/sqrt(1+u^2)).
// The scheme evolves the conserved pair
//     a = p (3 + 4 u^2),   b = 4 p u sqrt(1 + u^2),
// which lives in { (a,b) : |b| < a }.

namespace urel {

struct PrimitiveState {
    double p; ///< pressure, > 0
    double u; ///< radial four-velocity component
};

struct ConservedPair {
    double a; ///< energy-like conserved variable
    double b; ///< momentum-like conserved variable
};

/// Carrier for one radial snapshot a(t,·), b(t,·) on ordered radii.
struct RadialField {
    std::vector<double> positions;     // strictly increasing, >= 0
    std::vector<ConservedPair> states; // one per position
    double time = 0.0;
};

inline bool is_valid(const ConservedPair& c) {
    return std::abs(c.b) < c.a;
}

inline void require_valid(const ConservedPair& c) {
    if (!(std::abs(c.b) < c.a))
        throw invalid_state_error("conserved pair outside state space: |b| >= a");
}

/// Theta(p,u) = (p(3+4u^2), 4pu sqrt(1+u^2)).
inline ConservedPair to_conserved(const PrimitiveState& s) {
    if (!(s.p > 0.0))
        throw invalid_state_error("non-positive pressure");
    const double u2 = s.u * s.u;
    return {s.p * (3.0 + 4.0 * u2), 4.0 * s.p * s.u * std::sqrt(1.0 + u2)};
}

/// Inverse transform: p = (sqrt(4a^2-3b^2) - a)/3, u = b/sqrt(4p(p+a)).
inline PrimitiveState to_primitive(const ConservedPair& c) {
    require_valid(c);
    const double disc = 4.0 * c.a * c.a - 3.0 * c.b * c.b; // > a^2 > 0 inside the state space
    const double p = (std::sqrt(disc) - c.a) / 3.0;
    if (c.b == 0.0)
        return {p, 0.0};
    const double denom = 4.0 * p * (p + c.a);
    if (!(denom > 0.0))
        throw invalid_state_error("degenerate inverse: 4p(p+a) underflowed with b != 0");
    return {p, c.b / std::sqrt(denom)};
}

/// Momentum flux closure c(a,b) = (5/3) a - (2/3) sqrt(4a^2 - 3b^2).
inline double flux_c(const ConservedPair& c) {
    require_valid(c);
    return (5.0 / 3.0) * c.a - (2.0 / 3.0) * std::sqrt(4.0 * c.a * c.a - 3.0 * c.b * c.b);
}

/// v = u/sqrt(1+u^2), always in (-1,1).
inline double velocity(const PrimitiveState& s) {
    return s.u / std::sqrt(1.0 + s.u * s.u);
}

/// u = v/sqrt(1-v^2); inverse of velocity().
inline double four_velocity(double v) {
    if (!(std::abs(v) < 1.0))
        throw invalid_state_error("speed |v| >= 1");
    return v / std::sqrt(1.0 - v * v);
}

inline PrimitiveState primitive_from_pv(double p, double v) {
    return {p, four_velocity(v)};
}

} // namespace urel
