#pragma once

// Convex flux abstraction and the flux-level building blocks of the solver:
// the hysteresis-modified fluxes (half-slope branches glued at w -+ a), the
// Godunov two-point flux, the elementary shock speeds of the right- and
// left-moving wave families, and the entropy potential G(u) = int_0^u s f'(s) ds.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace playfv {

struct ConvexFlux {
    std::string id;
    std::function<double(double)> eval;   // f
    std::function<double(double)> deriv;  // f'
    std::optional<double> analytic_argmin;            // u with f'(u) = 0, if known
    std::function<double(double)> antiderivative;     // int_0^u f, optional

    double operator()(double u) const { return eval(u); }
};

namespace detail {
inline double rel_tol(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }
inline bool near(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}
}  // namespace detail

/// max |f'| on [lo, hi]; f' is monotone for convex f, so the endpoints decide.
inline double lipschitz_on(const ConvexFlux& f, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("lipschitz_on: lo > hi");
    return std::max(std::abs(f.deriv(lo)), std::abs(f.deriv(hi)));
}

/// Minimizer of f on [lo, hi]: the clamped root of f', by bisection when no
/// analytic stationary point is supplied.
inline double argmin_on(const ConvexFlux& f, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("argmin_on: lo > hi");
    if (f.analytic_argmin) return std::clamp(*f.analytic_argmin, lo, hi);
    if (f.deriv(lo) >= 0.0) return lo;
    if (f.deriv(hi) <= 0.0) return hi;
    double a = lo, b = hi;
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    for (int it = 0; it < 64 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        (f.deriv(m) <= 0.0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

inline double min_on(const ConvexFlux& f, double lo, double hi) {
    return f.eval(argmin_on(f, lo, hi));
}

/// Godunov two-point flux: min of f over [u_l, u_r] when u_l <= u_r, max of f
/// over [u_r, u_l] otherwise (the max sits at an endpoint for convex f).
inline double godunov_two_point(const ConvexFlux& f, double u_l, double u_r) {
    if (u_l <= u_r) return min_on(f, u_l, u_r);
    return std::max(f.eval(u_l), f.eval(u_r));
}

// ---------------------------------------------------------------------------
// Modified fluxes: the effective flux seen by u when w is frozen (factor 1)
// vs coupled to u along a strip boundary (factor 1/2).

struct ModifiedFluxKind {
    enum class Tag { bar, hat, tilde };
    Tag tag;
    double w;

    static ModifiedFluxKind bar(double w_r) { return {Tag::bar, w_r}; }     // kink at w_r - a
    static ModifiedFluxKind hat(double w_l) { return {Tag::hat, w_l}; }     // kink at w_l + a
    static ModifiedFluxKind tilde(double w) { return {Tag::tilde, w}; }     // both kinks
};

/// Piecewise value: half-slope branch plus the additive constant making the
/// flux continuous at the kink(s).
inline double modified_eval(const ConvexFlux& f, ModifiedFluxKind kind, double a, double u) {
    if (!(a > 0.0)) throw std::invalid_argument("modified_eval: a must be > 0");
    using Tag = ModifiedFluxKind::Tag;
    const double w = kind.w;
    const bool lower = (kind.tag == Tag::bar || kind.tag == Tag::tilde);
    const bool upper = (kind.tag == Tag::hat || kind.tag == Tag::tilde);
    if (lower && u < w - a) return 0.5 * f.eval(u) + 0.5 * f.eval(w - a);
    if (upper && u > w + a) return 0.5 * f.eval(u) + 0.5 * f.eval(w + a);
    return f.eval(u);
}

// ---------------------------------------------------------------------------
// Elementary shock speeds.  Right-moving family (data u_r <= w_r + a <= u_l):
//   mu_r : full-slope chord over [u_r, w_r + a]   (w frozen)
//   mu_l : half-slope chord over [w_r + a, u_l]   (u and w coupled)
//   mu   : Rankine-Hugoniot speed of the merged ("fast") discontinuity,
//          the I-weighted average of mu_r and mu_l.
// Left-moving family mirrors with nu_l, nu_r, nu and J_l, J_r.

struct ShockSpeeds {
    double mu_r = 0.0, mu_l = 0.0, mu = 0.0;
    double nu_l = 0.0, nu_r = 0.0, nu = 0.0;
    double I_r = 0.0, I_l = 0.0, J_r = 0.0, J_l = 0.0;
};

inline ShockSpeeds speeds_right(const ConvexFlux& f, double u_l, double u_r, double w_r,
                                double a) {
    const double k = w_r + a;
    const double slack = detail::rel_tol(std::max({std::abs(u_l), std::abs(u_r), std::abs(k)}));
    if (!(u_l > u_r) || u_r > k + slack || k > u_l + slack)
        throw std::invalid_argument("speeds_right: requires u_r <= w_r + a <= u_l and u_l > u_r");
    ShockSpeeds s;
    s.I_r = std::max(0.0, k - u_r);
    s.I_l = std::max(0.0, u_l - k);
    s.mu_r = s.I_r > slack ? (f.eval(k) - f.eval(u_r)) / s.I_r : f.deriv(u_r);
    s.mu_l = s.I_l > slack ? 0.5 * (f.eval(u_l) - f.eval(k)) / s.I_l : 0.5 * f.deriv(u_l);
    const double weight = s.I_r + 2.0 * s.I_l;
    s.mu = weight > 0.0 ? (s.mu_r * s.I_r + 2.0 * s.mu_l * s.I_l) / weight : s.mu_r;
    return s;
}

inline ShockSpeeds speeds_left(const ConvexFlux& f, double u_l, double u_r, double w_l,
                               double a) {
    const double k = w_l - a;
    const double slack = detail::rel_tol(std::max({std::abs(u_l), std::abs(u_r), std::abs(k)}));
    if (!(u_l > u_r) || u_r > k + slack || k > u_l + slack)
        throw std::invalid_argument("speeds_left: requires u_r <= w_l - a <= u_l and u_l > u_r");
    ShockSpeeds s;
    s.J_l = std::max(0.0, u_l - k);
    s.J_r = std::max(0.0, k - u_r);
    s.nu_l = s.J_l > slack ? (f.eval(u_l) - f.eval(k)) / s.J_l : f.deriv(u_l);
    s.nu_r = s.J_r > slack ? 0.5 * (f.eval(k) - f.eval(u_r)) / s.J_r : 0.5 * f.deriv(u_r);
    const double weight = s.J_l + 2.0 * s.J_r;
    s.nu = weight > 0.0 ? (s.nu_l * s.J_l + 2.0 * s.nu_r * s.J_r) / weight : s.nu_l;
    return s;
}

// ---------------------------------------------------------------------------
// Entropy potential G(u) = u f(u) - int_0^u f.

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of g over [a, b], relative tolerance rtol.
inline double integrate(const std::function<double(double)>& g, double a, double b,
                        double rtol = 1e-10) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    const double whole = simpson(a, b, fa, fm, fb);
    const double tol = rtol * std::max(1.0, std::abs(whole));
    return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace detail

inline double entropy_potential_G(const ConvexFlux& f, double u) {
    const double primitive =
        f.antiderivative ? f.antiderivative(u) - f.antiderivative(0.0)
                         : detail::integrate(f.eval, 0.0, u);
    return u * f.eval(u) - primitive;
}

// ---------------------------------------------------------------------------
// Built-in fluxes and the registry.

inline ConvexFlux burgers_flux() {
    return {"burgers",
            [](double u) { return 0.5 * u * u; },
            [](double u) { return u; },
            0.0,
            [](double u) { return u * u * u / 6.0; }};
}

inline ConvexFlux quartic_flux() {
    return {"quartic",
            [](double u) { return 0.25 * u * u * u * u; },
            [](double u) { return u * u * u; },
            0.0,
            [](double u) { return std::pow(u, 5) / 20.0; }};
}

inline ConvexFlux linear_flux() {
    return {"linear",
            [](double u) { return u; },
            [](double) { return 1.0; },
            std::nullopt,
            [](double u) { return 0.5 * u * u; }};
}

/// Uniformly scaled flux c*f (same kinks, same argmin).
inline ConvexFlux scaled_flux(const ConvexFlux& f, double c, std::string id) {
    ConvexFlux g;
    g.id = std::move(id);
    g.eval = [f = f.eval, c](double u) { return c * f(u); };
    g.deriv = [df = f.deriv, c](double u) { return c * df(u); };
    g.analytic_argmin = f.analytic_argmin;
    if (f.antiderivative)
        g.antiderivative = [F = f.antiderivative, c](double u) { return c * F(u); };
    return g;
}

inline std::map<std::string, ConvexFlux>& flux_registry() {
    static std::map<std::string, ConvexFlux> reg = {
        {"burgers", burgers_flux()}, {"quartic", quartic_flux()}, {"linear", linear_flux()}};
    return reg;
}

inline void register_flux(const ConvexFlux& f) { flux_registry()[f.id] = f; }

inline ConvexFlux flux_by_id(const std::string& id) {
    const auto& reg = flux_registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw std::invalid_argument("unknown flux id: " + id);
    return it->second;
}

/// Sampling check of convexity and derivative consistency on [lo, hi];
/// fluxes are user-supplied code, so this is validated numerically.
inline bool validate_convex_flux(const ConvexFlux& f, double lo, double hi, int samples = 64) {
    const double scale = std::max({1.0, std::abs(f.eval(lo)), std::abs(f.eval(hi))});
    const double h = (hi - lo) / samples;
    for (int i = 0; i + 2 <= samples; ++i) {
        const double x = lo + i * h, y = x + h, z = x + 2 * h;
        const double chord = ((z - y) * f.eval(x) + (y - x) * f.eval(z)) / (z - x);
        if (f.eval(y) > chord + 1e-10 * scale) return false;
    }
    const double dh = 1e-5;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + i * h;
        const double fd = (f.eval(x + dh) - f.eval(x - dh)) / (2.0 * dh);
        if (std::abs(f.deriv(x) - fd) > 1e-6 * std::max(1.0, std::abs(f.deriv(x)))) return false;
    }
    return true;
}

}  // namespace playfv
