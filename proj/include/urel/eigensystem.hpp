#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "urel/errors.hpp"

// Eigenstructure of the d-dimensional ultra-relativistic Euler system in
// conserved variables w = (w_1..w_d, w_{d+1}) (momentum, energy), closed by
//
//   p(w) = (1/3) ( -w_{d+1} + sqrt(4 w_{d+1}^2 - 3 |w̄|^2) ).
//
// For a unit normal n̄ the flux Jacobian of f_n̄ has the contact eigenvalue
// λ0 = w_n/(w_{d+1}+p) with multiplicity d-1 and the acoustic pair
//
//   λ± = ( 2 u_n sqrt(1+|ū|²) ± sqrt(2(|ū|²-u_n²)+3) ) / (3+2|ū|²),
//
// the relativistic composition of the flow speed with the sound speed
// 1/sqrt(3). All speeds are strictly below the (normalized) speed of light.

namespace urel::eig {

template <int D> using Vec = std::array<double, D>;
template <int D> using State = std::array<double, D + 1>;
template <int D> using Matrix = std::array<std::array<double, D + 1>, D + 1>;

template <int D>
inline double pressure(const State<D>& w) {
    double mm = 0.0;
    for (int i = 0; i < D; ++i) mm += w[i] * w[i];
    const double e = w[D];
    if (!(mm < e * e))
        throw invalid_state_error("conserved vector outside state space: |w̄| >= w_{d+1}");
    return (-e + std::sqrt(4.0 * e * e - 3.0 * mm)) / 3.0;
}

template <int D>
inline State<D> conserved(double p, const Vec<D>& u) {
    if (!(p > 0.0))
        throw invalid_state_error("non-positive pressure");
    double uu = 0.0;
    for (int i = 0; i < D; ++i) uu += u[i] * u[i];
    const double g = std::sqrt(1.0 + uu);
    State<D> w{};
    for (int i = 0; i < D; ++i) w[i] = 4.0 * p * u[i] * g;
    w[D] = p * (3.0 + 4.0 * uu);
    return w;
}

template <int D>
struct Primitive {
    double p;
    Vec<D> u;
};

template <int D>
inline Primitive<D> primitive_from_conserved(const State<D>& w) {
    const double p = pressure<D>(w);
    Primitive<D> out;
    out.p = p;
    const double denom = std::sqrt(4.0 * p * (w[D] + p));
    if (!(denom > 0.0)) {
        bool all_zero = true;
        for (int i = 0; i < D; ++i) all_zero = all_zero && w[i] == 0.0;
        if (!all_zero)
            throw invalid_state_error("primitive_from_conserved: degenerate momentum map");
        out.u = Vec<D>{};
        return out;
    }
    for (int i = 0; i < D; ++i) out.u[i] = (w[i] == 0.0) ? 0.0 : w[i] / denom;
    return out;
}

/// Gradient of p(w): dp/dw_j = -w_j/(w_{d+1}+3p) for momenta,
/// (w_{d+1}-p)/(w_{d+1}+3p) for the energy slot.
template <int D>
inline State<D> pressure_gradient(const State<D>& w) {
    const double p = pressure<D>(w);
    const double denom = w[D] + 3.0 * p;
    State<D> g{};
    for (int i = 0; i < D; ++i) g[i] = -w[i] / denom;
    g[D] = (w[D] - p) / denom;
    return g;
}

/// Flux in coordinate direction k: f_k = p e_k + w̄ w_k/(w_{d+1}+p) + w_k e_{d+1}.
template <int D>
inline State<D> flux(const State<D>& w, int k) {
    if (k < 0 || k >= D)
        throw error("flux: direction index out of range");
    const double p = pressure<D>(w);
    const double e = w[D] + p;
    State<D> f{};
    for (int i = 0; i < D; ++i) f[i] = w[i] * w[k] / e;
    f[k] += p;
    f[D] = w[k];
    return f;
}

template <int D>
inline State<D> normal_flux(const State<D>& w, const Vec<D>& n) {
    const double p = pressure<D>(w);
    const double e = w[D] + p;
    double wn = 0.0;
    for (int i = 0; i < D; ++i) wn += w[i] * n[i];
    State<D> f{};
    for (int i = 0; i < D; ++i) f[i] = p * n[i] + w[i] * wn / e;
    f[D] = wn;
    return f;
}

/// Deterministic orthonormal completion of a unit normal: seed with the
/// coordinate axis least aligned with n̄, Gram-Schmidt the remaining axes in
/// index order.
template <int D>
inline std::array<Vec<D>, D - 1> tangent_frame(const Vec<D>& n) {
    double nn = 0.0;
    for (int i = 0; i < D; ++i) nn += n[i] * n[i];
    if (!(nn > 0.0))
        throw error("tangent_frame: zero normal");
    if (std::abs(nn - 1.0) > 1e-12)
        throw error("tangent_frame: normal must be unit length");
    std::array<Vec<D>, D - 1> frame{};
    if constexpr (D == 1)
        return frame;
    int seed = 0;
    for (int i = 1; i < D; ++i)
        if (std::abs(n[i]) < std::abs(n[seed])) seed = i;
    std::array<Vec<D>, D> basis{}; // n followed by found tangents
    basis[0] = n;
    int found = 0;
    for (int pass = 0; pass < D && found < D - 1; ++pass) {
        const int axis = (pass == 0) ? seed : (pass <= seed ? pass - 1 : pass);
        Vec<D> v{};
        v[axis] = 1.0;
        for (int t = 0; t <= found; ++t) {
            double dot = 0.0;
            for (int i = 0; i < D; ++i) dot += v[i] * basis[t][i];
            for (int i = 0; i < D; ++i) v[i] -= dot * basis[t][i];
        }
        double norm = 0.0;
        for (int i = 0; i < D; ++i) norm += v[i] * v[i];
        norm = std::sqrt(norm);
        if (norm > 1e-8) {
            for (int i = 0; i < D; ++i) v[i] /= norm;
            basis[found + 1] = v;
            frame[found] = v;
            ++found;
        }
    }
    return frame;
}

/// Largest characteristic speed through a face with normal n̄ (used for the
/// local Lax-Friedrichs dissipation).
template <int D>
inline double max_wave_speed(const State<D>& w, const Vec<D>& n) {
    const auto prim = primitive_from_conserved<D>(w);
    double uu = 0.0, un = 0.0;
    for (int i = 0; i < D; ++i) {
        uu += prim.u[i] * prim.u[i];
        un += prim.u[i] * n[i];
    }
    const double g = std::sqrt(1.0 + uu);
    const double disc = std::sqrt(2.0 * (uu - un * un) + 3.0);
    const double denom = 3.0 + 2.0 * uu;
    const double lp = (2.0 * un * g + disc) / denom;
    const double lm = (2.0 * un * g - disc) / denom;
    const double l0 = std::abs(un) / g;
    return std::max({std::abs(lp), std::abs(lm), l0});
}

template <int D>
struct EigenDecomposition {
    Vec<D> normal{};
    std::array<Vec<D>, D - 1> tangents{};
    State<D> lambda{};  ///< (λ-, λ0 ... λ0, λ+)
    Matrix<D> right{};  ///< columns are r-, r0_2..r0_d, r+
    Matrix<D> left{};   ///< rows are l-, l0_2..l0_d, l+; left * right = I
};

template <int D>
inline EigenDecomposition<D> eigen(const State<D>& w, const Vec<D>& n) {
    EigenDecomposition<D> out;
    out.normal = n;
    out.tangents = tangent_frame<D>(n);

    const auto prim = primitive_from_conserved<D>(w);
    const double p = prim.p;
    const double e = w[D] + p;
    double uu = 0.0, un = 0.0, wn = 0.0;
    for (int i = 0; i < D; ++i) {
        uu += prim.u[i] * prim.u[i];
        un += prim.u[i] * n[i];
        wn += w[i] * n[i];
    }
    const double g = std::sqrt(1.0 + uu);
    const double disc = std::sqrt(2.0 * (uu - un * un) + 3.0);
    const double denom = 3.0 + 2.0 * uu;
    const double lam_m = (2.0 * un * g - disc) / denom;
    const double lam_p = (2.0 * un * g + disc) / denom;
    const double lam_0 = wn / e;
    if (std::abs(lam_p - lam_0) < 1e-12 || std::abs(lam_0 - lam_m) < 1e-12)
        throw degenerate_frame_error("eigen: coincident characteristic speeds");

    out.lambda[0] = lam_m;
    for (int i = 1; i < D; ++i) out.lambda[i] = lam_0;
    out.lambda[D] = lam_p;

    const State<D> gp = pressure_gradient<D>(w);
    double dp_n = 0.0;
    for (int i = 0; i < D; ++i) dp_n += gp[i] * n[i];
    const double dp_e = gp[D];

    std::array<double, (D > 1 ? D - 1 : 1)> dp_t{}, w_t{}, alpha{};
    for (int t = 0; t < D - 1; ++t) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < D; ++i) {
            a += gp[i] * out.tangents[t][i];
            b += w[i] * out.tangents[t][i];
        }
        dp_t[t] = a;
        w_t[t] = b;
        alpha[t] = a / (dp_e + lam_0 * dp_n);
    }
    auto alpha_pm = [&](double lam) { return e / (e * e - wn * wn) * (1.0 - wn * lam / e); };
    const double a_m = alpha_pm(lam_m);
    const double a_p = alpha_pm(lam_p);

    // right eigenvectors (columns)
    auto set_col = [&](int col, const State<D>& v) {
        for (int i = 0; i <= D; ++i) out.right[i][col] = v[i];
    };
    State<D> r{};
    for (int i = 0; i < D; ++i) r[i] = lam_m * n[i];
    for (int t = 0; t < D - 1; ++t)
        for (int i = 0; i < D; ++i) r[i] += a_m * w_t[t] * out.tangents[t][i];
    r[D] = 1.0;
    set_col(0, r);
    for (int t = 0; t < D - 1; ++t) {
        State<D> r0{};
        for (int i = 0; i < D; ++i) r0[i] = out.tangents[t][i] - alpha[t] * lam_0 * n[i];
        r0[D] = -alpha[t];
        set_col(1 + t, r0);
    }
    for (int i = 0; i < D; ++i) r[i] = lam_p * n[i];
    for (int t = 0; t < D - 1; ++t)
        for (int i = 0; i < D; ++i) r[i] += a_p * w_t[t] * out.tangents[t][i];
    r[D] = 1.0;
    set_col(1 + (D - 1), r);

    // left eigenvectors (rows), normalized so that L R = I
    double s_sum = 0.0;
    for (int t = 0; t < D - 1; ++t) s_sum += alpha[t] * w_t[t];
    const double det = (lam_m + a_m * lam_0 * s_sum) * (1.0 + a_p * s_sum) -
                       (lam_p + a_p * lam_0 * s_sum) * (1.0 + a_m * s_sum);
    if (std::abs(det) < 1e-300)
        throw degenerate_frame_error("eigen: singular left-eigenvector normalization");
    const double beta = a_p * (lam_m - lam_0) + a_m * (lam_0 - lam_p);

    auto set_row = [&](int row, const State<D>& v) {
        for (int i = 0; i <= D; ++i) out.left[row][i] = v[i];
    };
    State<D> l{};
    for (int i = 0; i < D; ++i) {
        l[i] = (1.0 + a_p * s_sum) * n[i];
        for (int t = 0; t < D - 1; ++t) l[i] += alpha[t] * (lam_0 - lam_p) * out.tangents[t][i];
        l[i] /= det;
    }
    l[D] = -(a_p * lam_0 * s_sum + lam_p) / det;
    set_row(0, l);
    for (int t = 0; t < D - 1; ++t) {
        State<D> l0{};
        for (int i = 0; i < D; ++i) {
            l0[i] = w_t[t] * (a_p - a_m) * n[i];
            for (int s = 0; s < D - 1; ++s) {
                const double delta = (s == t) ? det : 0.0;
                l0[i] += (delta - alpha[s] * w_t[t] * beta) * out.tangents[s][i];
            }
            l0[i] /= det;
        }
        l0[D] = -w_t[t] * (a_p * lam_m - a_m * lam_p) / det;
        set_row(1 + t, l0);
    }
    for (int i = 0; i < D; ++i) {
        l[i] = (1.0 + a_m * s_sum) * n[i];
        for (int t = 0; t < D - 1; ++t) l[i] += alpha[t] * (lam_0 - lam_m) * out.tangents[t][i];
        l[i] /= -det;
    }
    l[D] = (a_m * lam_0 * s_sum + lam_m) / det;
    set_row(1 + (D - 1), l);
    return out;
}

} // namespace urel::eig
