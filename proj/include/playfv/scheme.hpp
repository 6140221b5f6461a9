#pragma once

// Godunov-type finite volume scheme for d_t u + d_t w + d_x f(u) = 0 with
// w = Play_a(u).  The conserved quantity u + w is updated with the classical
// Godunov two-point flux; u is updated with the closed-form interface fluxes
// h1-+ below, which evaluate the w-modified flux at the exact local Riemann
// trace and fall back to the merged-shock ("fast") flux when the elementary
// shock speeds cross; w then follows from conservation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "playfv/flux.hpp"
#include "playfv/riemann.hpp"

namespace playfv {

struct Grid1D {
    double x_min = 0.0;
    double dx = 1.0;
    int n_cells = 0;

    double x_center(int i) const { return x_min + (i + 0.5) * dx; }
    double x_interface(int i) const { return x_min + i * dx; }
    double x_max() const { return x_min + n_cells * dx; }
};

struct FieldState {
    std::vector<double> u, w;
    double t = 0.0;
    long step_index = 0;
};

struct SchemeConfig {
    ConvexFlux flux;
    double a = 1.0;
    double cfl_fraction = 1.0;  // fraction of the bound dx / (2L)
    // boundary handling is constant extension (ghost cells copy the edge cell)
};

// ---------------------------------------------------------------------------
// Interface fluxes.  Arguments follow the stencil
//   h1_plus (alpha, beta, gamma) = flux into cell holding (beta, gamma) from
//                                  its LEFT interface, alpha = left neighbour u
//   h1_minus(alpha, beta, gamma) = flux out of cell holding (alpha, gamma)
//                                  through its RIGHT interface, beta = right neighbour u
// h2 -+ are the w-fluxes, h2 = g - h1 with g the Godunov flux.

namespace sdetail {

inline void require_strip(double u, double w, double a, const char* who) {
    const double slack = 1e-9 * std::max(1.0, std::abs(u) + std::abs(w)) + 1e-12;
    if (std::abs(u - w) > a + slack)
        throw std::invalid_argument(std::string(who) + ": cell pair outside the strip");
}

}  // namespace sdetail

inline double h1_plus(const ConvexFlux& f, double a, double alpha, double beta, double gamma) {
    sdetail::require_strip(beta, gamma, a, "h1_plus");
    if (alpha <= beta) {  // rarefaction side
        const double kink = gamma - a;
        if (kink <= alpha) return min_on(f, alpha, beta);
        if (f.deriv(kink) <= 0.0) return min_on(f, alpha, beta);
        return 0.5 * min_on(f, alpha, beta) + 0.5 * f.eval(kink);
    }
    const double fa = f.eval(alpha), fb = f.eval(beta);
    const double kink = gamma + a;
    if (kink >= alpha) return std::max(fa, fb);
    if (fa <= fb) return std::max(fa, fb);
    const ShockSpeeds s = speeds_right(f, alpha, beta, gamma, a);
    if (rdetail::fast_shock_right(s)) return s.mu * (alpha - beta) + fb;
    return 0.5 * std::max(fa, fb) + 0.5 * f.eval(kink);
}

inline double h1_minus(const ConvexFlux& f, double a, double alpha, double beta, double gamma) {
    sdetail::require_strip(alpha, gamma, a, "h1_minus");
    if (alpha <= beta) {
        const double kink = gamma + a;
        if (kink >= beta) return min_on(f, alpha, beta);
        if (f.deriv(kink) >= 0.0) return min_on(f, alpha, beta);
        return 0.5 * min_on(f, alpha, beta) + 0.5 * f.eval(kink);
    }
    const double fa = f.eval(alpha), fb = f.eval(beta);
    const double kink = gamma - a;
    if (kink <= beta) return std::max(fa, fb);
    if (fa >= fb) return std::max(fa, fb);
    const ShockSpeeds s = speeds_left(f, alpha, beta, gamma, a);
    if (rdetail::fast_shock_left(s)) return -s.nu * (alpha - beta) + fa;
    return 0.5 * std::max(fa, fb) + 0.5 * f.eval(kink);
}

inline double h2_plus(const ConvexFlux& f, double a, double alpha, double beta, double gamma) {
    sdetail::require_strip(beta, gamma, a, "h2_plus");
    if (alpha <= beta) {
        const double kink = gamma - a;
        if (kink <= alpha) return 0.0;
        if (f.deriv(kink) <= 0.0) return 0.0;
        return 0.5 * min_on(f, alpha, beta) - 0.5 * f.eval(kink);
    }
    const double fa = f.eval(alpha), fb = f.eval(beta);
    const double kink = gamma + a;
    if (kink >= alpha) return 0.0;
    if (fa <= fb) return 0.0;
    const ShockSpeeds s = speeds_right(f, alpha, beta, gamma, a);
    if (rdetail::fast_shock_right(s)) return s.I_l * s.mu;
    return 0.5 * std::max(fa, fb) - 0.5 * f.eval(kink);
}

inline double h2_minus(const ConvexFlux& f, double a, double alpha, double beta, double gamma) {
    sdetail::require_strip(alpha, gamma, a, "h2_minus");
    if (alpha <= beta) {
        const double kink = gamma + a;
        if (kink >= beta) return 0.0;
        if (f.deriv(kink) >= 0.0) return 0.0;
        return 0.5 * min_on(f, alpha, beta) - 0.5 * f.eval(kink);
    }
    const double fa = f.eval(alpha), fb = f.eval(beta);
    const double kink = gamma - a;
    if (kink <= beta) return 0.0;
    if (fa >= fb) return 0.0;
    const ShockSpeeds s = speeds_left(f, alpha, beta, gamma, a);
    if (rdetail::fast_shock_left(s)) return -s.J_r * s.nu;
    return 0.5 * std::max(fa, fb) - 0.5 * f.eval(kink);
}

/// The four interface flux contributions plus the Godunov flux at one
/// interface between (uL, wL) and (uR, wR).
struct FluxTriple {
    double h1_plus = 0.0, h1_minus = 0.0;
    double h2_plus = 0.0, h2_minus = 0.0;
    double g = 0.0;
};

inline FluxTriple interface_fluxes(const ConvexFlux& f, double a, double uL, double wL,
                                   double uR, double wR) {
    FluxTriple t;
    t.g = godunov_two_point(f, uL, uR);
    t.h1_minus = h1_minus(f, a, uL, uR, wL);
    t.h1_plus = h1_plus(f, a, uL, uR, wR);
    t.h2_minus = t.g - t.h1_minus;
    t.h2_plus = t.g - t.h1_plus;
    return t;
}

/// Exact u-traces of the interface Riemann fan just left/right of xi = 0.
/// They differ only across a stationary u-shock (f(u_l) = f(u_r), u_l > u_r);
/// the Godunov flux equals f at either trace.
inline std::pair<double, double> interface_traces(const ConvexFlux& f, double u_l, double u_r) {
    if (u_l < u_r) {
        const double u_star = argmin_on(f, u_l, u_r);
        return {u_star, u_star};
    }
    if (u_l == u_r) return {u_l, u_r};
    const double fl = f.eval(u_l), fr = f.eval(u_r);
    const double tol = 1e-12 * std::max({1.0, std::abs(fl), std::abs(fr)});
    if (std::abs(fl - fr) <= tol) return {u_l, u_r};
    return fl > fr ? std::pair{u_l, u_l} : std::pair{u_r, u_r};
}

// ---------------------------------------------------------------------------
// Grid projection, CFL, time stepping.

/// Cell averages of (u0, w0) by 3-point Gauss-Legendre quadrature per cell.
/// Exact for piecewise-constant data aligned with interfaces and O(dx^6)
/// accurate for smooth data.
inline FieldState project_initial(const std::function<double(double)>& u0,
                                  const std::function<double(double)>& w0, const Grid1D& grid,
                                  double a) {
    static const double node = std::sqrt(3.0 / 5.0);
    static const double xs[3] = {-node, 0.0, node};
    static const double ws[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    FieldState state;
    state.u.resize(grid.n_cells);
    state.w.resize(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
        const double xc = grid.x_center(i);
        double ub = 0.0, wb = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double x = xc + 0.5 * grid.dx * xs[q];
            const double uv = u0(x), wv = w0(x);
            if (std::abs(uv - wv) > a + 1e-12 * std::max(1.0, std::abs(uv) + std::abs(wv)))
                throw std::invalid_argument("project_initial: |u0 - w0| > a in cell " +
                                            std::to_string(i));
            ub += ws[q] * uv;
            wb += ws[q] * wv;
        }
        state.u[i] = ub;
        state.w[i] = wb;
    }
    return state;
}

/// dt = cfl_fraction * dx / (2L), L = max |f'| over the data range.  L is
/// taken from the given state's range; the scheme never enlarges the range,
/// so the value computed from the initial data stays valid for the whole run.
inline double cfl_dt(const SchemeConfig& cfg, const Grid1D& grid, const FieldState& state) {
    if (state.u.empty()) throw std::invalid_argument("cfl_dt: empty state");
    if (!(cfg.cfl_fraction > 0.0 && cfg.cfl_fraction <= 1.0))
        throw std::invalid_argument("cfl_dt: cfl_fraction must be in (0, 1]");
    double um = state.u[0], uM = state.u[0];
    for (double v : state.u) {
        um = std::min(um, v);
        uM = std::max(uM, v);
    }
    const double L = lipschitz_on(cfg.flux, um, uM);
    if (!(L > 0.0)) throw std::invalid_argument("cfl_dt: degenerate flux (L = 0) on data range");
    return cfg.cfl_fraction * grid.dx / (2.0 * L);
}

struct StepReport {
    double dt = 0.0;
    // per interface (n_cells + 1 entries, constant-extension ghosts at the ends)
    std::vector<double> g, h1p, h1m, h2p, h2m;
    // per cell: increment coefficients of the two incremental forms
    std::vector<double> coef_a, coef_b, coef_c, coef_d;
    // per interface: exact Riemann traces of u at xi = 0-, 0+ (when recorded)
    bool has_traces = false;
    std::vector<double> trace_left, trace_right;
};

struct StepOptions {
    bool record_coefficients = false;
    bool record_traces = false;
};

/// One conservative update.  All interface quantities are computed from the
/// immutable previous layer, then the new layer is written.
inline FieldState step(const FieldState& state, const SchemeConfig& cfg, const Grid1D& grid,
                       double dt, StepReport* report = nullptr, StepOptions opts = {}) {
    const int n = grid.n_cells;
    if (static_cast<int>(state.u.size()) != n || static_cast<int>(state.w.size()) != n)
        throw std::invalid_argument("step: state/grid size mismatch");
    const double lambda = dt / grid.dx;
    const ConvexFlux& f = cfg.flux;

    const auto uat = [&](int i) { return state.u[std::clamp(i, 0, n - 1)]; };
    const auto wat = [&](int i) { return state.w[std::clamp(i, 0, n - 1)]; };

    std::vector<double> g(n + 1), h1p(n + 1), h1m(n + 1), h2p(n + 1), h2m(n + 1);
    std::vector<double> trl, trr;
    if (opts.record_traces) {
        trl.resize(n + 1);
        trr.resize(n + 1);
    }
    for (int j = 0; j <= n; ++j) {  // interface j sits between cells j-1 and j
        const double uL = uat(j - 1), wL = wat(j - 1);
        const double uR = uat(j), wR = wat(j);
        const FluxTriple t = interface_fluxes(f, cfg.a, uL, wL, uR, wR);
        g[j] = t.g;
        h1m[j] = t.h1_minus;
        h1p[j] = t.h1_plus;
        h2m[j] = t.h2_minus;
        h2p[j] = t.h2_plus;
        if (opts.record_traces) {
            auto [tl, tr] = interface_traces(f, uL, uR);
            trl[j] = tl;
            trr[j] = tr;
        }
    }

    FieldState next;
    next.u.resize(n);
    next.w.resize(n);
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    for (int i = 0; i < n; ++i) {
        const double du = lambda * (h1m[i + 1] - h1p[i]);
        const double dtotal = lambda * (g[i + 1] - g[i]);
        next.u[i] = state.u[i] - du;
        next.w[i] = state.w[i] - (dtotal - du);
        const double slack = 1e-10 * std::max(1.0, std::abs(next.u[i]) + std::abs(next.w[i]));
        if (std::abs(next.u[i] - next.w[i]) > cfg.a + slack)
            throw std::logic_error("step: strip condition violated at cell " + std::to_string(i));
    }

    if (report) {
        report->dt = dt;
        report->g = std::move(g);
        report->h1p = std::move(h1p);
        report->h1m = std::move(h1m);
        report->h2p = std::move(h2p);
        report->h2m = std::move(h2m);
        report->has_traces = opts.record_traces;
        report->trace_left = std::move(trl);
        report->trace_right = std::move(trr);
        if (opts.record_coefficients) {
            report->coef_a.assign(n, 0.0);
            report->coef_b.assign(n, 0.0);
            report->coef_c.assign(n, 0.0);
            report->coef_d.assign(n, 0.0);
            for (int i = 0; i < n; ++i) {
                const double du_m = uat(i - 1) - state.u[i];
                const double du_p = state.u[i] - uat(i + 1);
                const double dw_m = wat(i - 1) - state.w[i];
                const double dw_p = state.w[i] - wat(i + 1);
                const double fu = f.eval(state.u[i]);
                if (du_m != 0.0) report->coef_a[i] = lambda * (report->h1p[i] - fu) / du_m;
                if (du_p != 0.0) report->coef_b[i] = lambda * (report->h1m[i + 1] - fu) / du_p;
                if (dw_m != 0.0) report->coef_c[i] = lambda * report->h2p[i] / dw_m;
                if (dw_p != 0.0) report->coef_d[i] = lambda * report->h2m[i + 1] / dw_p;
            }
        }
    }
    return next;
}

using Observer = std::function<void(const FieldState& prev, const FieldState& next,
                                    const StepReport& report)>;

/// Time loop with fixed dt; the final step shrinks to land exactly on t_end.
/// dt defaults to the CFL bound computed from the given state; pass dt_fixed
/// to keep the time step of an earlier segment (L never grows along a run,
/// so a dt valid at t = 0 stays valid).
inline FieldState run(FieldState state, const SchemeConfig& cfg, const Grid1D& grid,
                      double t_end, const std::vector<Observer>& observers = {},
                      StepOptions opts = {}, double dt_fixed = 0.0) {
    if (t_end < state.t) throw std::invalid_argument("run: t_end before state time");
    if (t_end == state.t) return state;
    const double dt = dt_fixed > 0.0 ? dt_fixed : cfl_dt(cfg, grid, state);
    const double t0 = state.t;
    const double span = t_end - t0;
    const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
    // whole steps of exactly dt, then one shortened step onto t_end; the dt
    // sequence depends only on (span, dt), so aligned segments compose bitwise
    const long n_full = static_cast<long>(std::floor(span / dt + 1e-9));
    const double rem = span - n_full * dt;
    StepReport report;
    for (long k = 1; k <= n_full; ++k) {
        FieldState next = step(state, cfg, grid, dt, &report, opts);
        next.t = t0 + k * dt;
        for (const auto& obs : observers) obs(state, next, report);
        state = std::move(next);
    }
    if (rem > t_eps) {
        FieldState next = step(state, cfg, grid, rem, &report, opts);
        next.t = t_end;
        for (const auto& obs : observers) obs(state, next, report);
        state = std::move(next);
    }
    state.t = t_end;
    return state;
}

/// Upwind specialization for the linear flux f(u) = u: every wave moves
/// right, so the interface value is the left datum and the u-flux is the
/// w_i-modified linear flux.
inline FieldState linear_step(const FieldState& state, const SchemeConfig& cfg,
                              const Grid1D& grid, double dt) {
    if (cfg.flux.id != "linear")
        throw std::invalid_argument("linear_step: requires the linear flux");
    const int n = grid.n_cells;
    const double lambda = dt / grid.dx;
    const auto uat = [&](int i) { return state.u[std::clamp(i, 0, n - 1)]; };
    FieldState next;
    next.u.resize(n);
    next.w.resize(n);
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    for (int i = 0; i < n; ++i) {
        const auto ftilde = [&](double u) {
            return modified_eval(cfg.flux, ModifiedFluxKind::tilde(state.w[i]), cfg.a, u);
        };
        next.u[i] = state.u[i] - lambda * (ftilde(state.u[i]) - ftilde(uat(i - 1)));
        next.w[i] = state.u[i] + state.w[i] - lambda * (state.u[i] - uat(i - 1)) - next.u[i];
    }
    return next;
}

// ---------------------------------------------------------------------------
// Small helpers shared by diagnostics and the CLI.

inline double total_variation(std::span<const double> v) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
    return tv;
}

inline double l2_squared(std::span<const double> v, double dx) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return dx * s;
}

inline double mass(const FieldState& state, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) s += state.u[i] + state.w[i];
    return dx * s;
}

}  // namespace playfv
