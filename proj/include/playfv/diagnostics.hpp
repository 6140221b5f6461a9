#pragma once

// Machine checks of the discrete inequalities the scheme satisfies: the
// Kruzhkov-type entropy residual with pair constants from the strip, the
// hysteresis energy ledger (L2 masses pay for the variation of w at rate a),
// its sharp per-cell form using interface traces, L1 contraction between two
// runs, and the compactness monitors (TV, ranges, L1 continuity in time).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "playfv/flux.hpp"
#include "playfv/scheme.hpp"

namespace playfv {

struct EntropyPair {
    double k = 0.0;
    double k_hat = 0.0;
};

/// 9x9 grid over [um,uM] x [wm,wM] clipped to the strip, plus the points
/// where the strip boundaries meet the u-range.
inline std::vector<EntropyPair> make_entropy_pairs(double um, double uM, double wm, double wM,
                                                   double a, int n = 9) {
    std::vector<EntropyPair> pairs;
    const auto push = [&](double k, double kh) {
        if (std::abs(k - kh) <= a) pairs.push_back({k, kh});
    };
    for (int i = 0; i < n; ++i) {
        const double k = n == 1 ? um : um + (uM - um) * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double kh = n == 1 ? wm : wm + (wM - wm) * j / (n - 1);
            push(k, kh);
        }
    }
    push(um, um - a);
    push(um, um + a);
    push(uM, uM - a);
    push(uM, uM + a);
    return pairs;
}

/// Max over cells of the discrete entropy expression
///   |u'-k| - |u-k| + |w'-kh| - |w-kh|
///   + (dt/dx) (G_k(u_i,u_{i+1}) - G_k(u_{i-1},u_i)),
/// G_k(a,b) = g(a v k, b v k) - g(a ^ k, b ^ k).  The scheme keeps this <= 0
/// up to roundoff.
inline double entropy_residual(const FieldState& prev, const FieldState& next,
                               const EntropyPair& pair, const ConvexFlux& f, double a,
                               double dt, double dx) {
    if (std::abs(pair.k - pair.k_hat) > a + 1e-12 * std::max(1.0, std::abs(pair.k)))
        throw std::invalid_argument("entropy_residual: pair outside the strip");
    const int n = static_cast<int>(prev.u.size());
    const double lambda = dt / dx;
    const auto uat = [&](int i) { return prev.u[std::clamp(i, 0, n - 1)]; };

    std::vector<double> Gk(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double uL = uat(j - 1), uR = uat(j);
        Gk[j] = godunov_two_point(f, std::max(uL, pair.k), std::max(uR, pair.k)) -
                godunov_two_point(f, std::min(uL, pair.k), std::min(uR, pair.k));
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double r = std::abs(next.u[i] - pair.k) - std::abs(prev.u[i] - pair.k) +
                         std::abs(next.w[i] - pair.k_hat) - std::abs(prev.w[i] - pair.k_hat) +
                         lambda * (Gk[i + 1] - Gk[i]);
        worst = std::max(worst, r);
    }
    return worst;
}

inline double entropy_residual_max(const FieldState& prev, const FieldState& next,
                                   const std::vector<EntropyPair>& pairs, const ConvexFlux& f,
                                   double a, double dt, double dx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : pairs)
        worst = std::max(worst, entropy_residual(prev, next, p, f, a, dt, dx));
    return worst;
}

// ---------------------------------------------------------------------------
// Hysteresis energy ledger.

/// Slack of the one-step energy inequality on the computational window,
///   1/2 d(|u|_2^2) + 1/2 d(|w|_2^2)
///     <= -a * dx * sum |w' - w| - dt (G(u_right) - G(u_left));
/// non-negative up to roundoff for the scheme.  The G terms are the entropy
/// flux through the quiet window edges; they vanish for decaying data.
inline double ledger_step_slack(const FieldState& prev, const FieldState& next,
                                const ConvexFlux& f, double dx, double dt, double a) {
    double du2 = 0.0, dw2 = 0.0, var_w = 0.0;
    for (std::size_t i = 0; i < prev.u.size(); ++i) {
        du2 += next.u[i] * next.u[i] - prev.u[i] * prev.u[i];
        dw2 += next.w[i] * next.w[i] - prev.w[i] * prev.w[i];
        var_w += std::abs(next.w[i] - prev.w[i]);
    }
    const double g_boundary =
        entropy_potential_G(f, prev.u.back()) - entropy_potential_G(f, prev.u.front());
    return -dt * g_boundary - 0.5 * dx * du2 - 0.5 * dx * dw2 - a * dx * var_w;
}

struct LedgerCheckReport {
    bool ok = true;
    double worst_slack = 0.0;
    long worst_step = -1;
};

inline LedgerCheckReport hysteresis_ledger_check(const std::vector<FieldState>& history,
                                                 const ConvexFlux& f, double dx, double a,
                                                 double tol) {
    if (history.size() < 2)
        throw std::invalid_argument("hysteresis_ledger_check: need at least 2 layers");
    LedgerCheckReport rep;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n + 1 < history.size(); ++n) {
        const double dt = history[n + 1].t - history[n].t;
        const double s = ledger_step_slack(history[n], history[n + 1], f, dx, dt, a);
        if (s < rep.worst_slack) {
            rep.worst_slack = s;
            rep.worst_step = static_cast<long>(n);
        }
    }
    rep.ok = rep.worst_slack >= -tol;
    return rep;
}

/// Sharp per-cell energy slack using the exact interface traces recorded by
/// step(): for each cell,
///   -dt (G(trace at right interface-) - G(trace at left interface+))
///   - dx/2 * d(u_i^2 + w_i^2) - a dx |w_i' - w_i|  >=  0.
inline std::vector<double> per_cell_dissipation(const FieldState& prev, const FieldState& next,
                                                const StepReport& report, const ConvexFlux& f,
                                                double a, double dt, double dx) {
    if (!report.has_traces)
        throw std::invalid_argument("per_cell_dissipation: step report has no traces");
    const int n = static_cast<int>(prev.u.size());
    std::vector<double> slack(n);
    std::vector<double> G_left(n + 1), G_right(n + 1);
    for (int j = 0; j <= n; ++j) {
        G_left[j] = entropy_potential_G(f, report.trace_left[j]);
        G_right[j] = entropy_potential_G(f, report.trace_right[j]);
    }
    for (int i = 0; i < n; ++i) {
        const double du2 = next.u[i] * next.u[i] - prev.u[i] * prev.u[i];
        const double dw2 = next.w[i] * next.w[i] - prev.w[i] * prev.w[i];
        slack[i] = -dt * (G_left[i + 1] - G_right[i]) - 0.5 * dx * (du2 + dw2) -
                   a * dx * std::abs(next.w[i] - prev.w[i]);
    }
    return slack;
}

// ---------------------------------------------------------------------------
// L1 contraction between two runs on a common grid.

inline double l1_distance(const FieldState& sa, const FieldState& sb, double dx) {
    if (sa.u.size() != sb.u.size())
        throw std::invalid_argument("l1_distance: grid mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < sa.u.size(); ++i)
        d += std::abs(sa.u[i] - sb.u[i]) + std::abs(sa.w[i] - sb.w[i]);
    return dx * d;
}

struct L1ContractionReport {
    bool ok = true;
    double d0 = 0.0;
    double max_increase = 0.0;  // worst D(n+1) - D(n)
    long worst_step = -1;
};

inline L1ContractionReport l1_contraction_check(const std::vector<FieldState>& run_a,
                                                const std::vector<FieldState>& run_b,
                                                double dx, double rel_tol = 1e-10) {
    if (run_a.size() != run_b.size() || run_a.empty())
        throw std::invalid_argument("l1_contraction_check: histories must align");
    L1ContractionReport rep;
    rep.d0 = l1_distance(run_a[0], run_b[0], dx);
    double prev = rep.d0;
    for (std::size_t n = 1; n < run_a.size(); ++n) {
        const double d = l1_distance(run_a[n], run_b[n], dx);
        if (d - prev > rep.max_increase) {
            rep.max_increase = d - prev;
            rep.worst_step = static_cast<long>(n);
        }
        prev = d;
    }
    rep.ok = rep.max_increase <= rel_tol * std::max(rep.d0, 1e-300);
    return rep;
}

// ---------------------------------------------------------------------------
// Compactness monitors.

struct CompactnessReport {
    bool tv_ok = true, range_ok = true, strip_ok = true, l1_time_ok = true;
    double worst_tv_increase = 0.0;
    double worst_range_excess = 0.0;
    double worst_strip_excess = 0.0;
    double worst_l1_time_ratio = 0.0;  // observed / bound, should stay <= 1

    bool ok() const { return tv_ok && range_ok && strip_ok && l1_time_ok; }
};

inline CompactnessReport compactness_monitors(const std::vector<FieldState>& history, double dx,
                                              double dt, double L, double tv0_u, double tv0_w,
                                              double a) {
    if (history.empty()) throw std::invalid_argument("compactness_monitors: empty history");
    CompactnessReport rep;
    const auto minmax_u = std::minmax_element(history[0].u.begin(), history[0].u.end());
    const auto minmax_w = std::minmax_element(history[0].w.begin(), history[0].w.end());
    const double um = *minmax_u.first, uM = *minmax_u.second;
    const double wm = *minmax_w.first, wM = *minmax_w.second;
    double tv_u = total_variation(history[0].u), tv_w = total_variation(history[0].w);
    const double tv_tol = 1e-12 * std::max({1.0, tv0_u, tv0_w});
    const double range_tol = 1e-12 * std::max({1.0, std::abs(um), std::abs(uM)});

    for (std::size_t n = 1; n < history.size(); ++n) {
        const FieldState& s = history[n];
        const double tvu = total_variation(s.u), tvw = total_variation(s.w);
        rep.worst_tv_increase =
            std::max({rep.worst_tv_increase, tvu - tv_u, tvw - tv_w});
        if (tvu > tv_u + tv_tol || tvw > tv_w + tv_tol) rep.tv_ok = false;
        tv_u = tvu;
        tv_w = tvw;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            const double re = std::max({um - s.u[i], s.u[i] - uM, wm - s.w[i], s.w[i] - wM});
            rep.worst_range_excess = std::max(rep.worst_range_excess, re);
            if (re > range_tol) rep.range_ok = false;
            const double se = std::abs(s.u[i] - s.w[i]) - a;
            rep.worst_strip_excess = std::max(rep.worst_strip_excess, se);
            if (se > 1e-12) rep.strip_ok = false;
        }
        // L1 continuity in time: each component against the previous and
        // initial layers, bound 2 L TV(v_0) (|t - s| + dt)
        double du_prev = 0.0, dw_prev = 0.0, du_init = 0.0, dw_init = 0.0;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            du_prev += std::abs(history[n].u[i] - history[n - 1].u[i]);
            dw_prev += std::abs(history[n].w[i] - history[n - 1].w[i]);
            du_init += std::abs(history[n].u[i] - history[0].u[i]);
            dw_init += std::abs(history[n].w[i] - history[0].w[i]);
        }
        const double gap_prev = (history[n].t - history[n - 1].t) + dt;
        const double gap_init = (history[n].t - history[0].t) + dt;
        const auto ratio = [](double num, double den) {
            return den > 0.0 ? num / den
                             : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        };
        const double r = std::max({ratio(dx * du_prev, 2.0 * L * tv0_u * gap_prev),
                                   ratio(dx * dw_prev, 2.0 * L * tv0_w * gap_prev),
                                   ratio(dx * du_init, 2.0 * L * tv0_u * gap_init),
                                   ratio(dx * dw_init, 2.0 * L * tv0_w * gap_init)});
        rep.worst_l1_time_ratio = std::max(rep.worst_l1_time_ratio, r);
        if (r > 1.0 + 1e-10) rep.l1_time_ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Streaming ledger of per-step diagnostics (the CSV emitted by the CLI).

struct LedgerRow {
    long n = 0;
    double t = 0.0;
    double tv_u = 0.0, tv_w = 0.0;
    double mass = 0.0;
    double l2_u = 0.0, l2_w = 0.0, l2_sum = 0.0;
    double dissipation = 0.0;          // accumulated a * dx * sum |dw| over steps
    double entropy_residual_max = 0.0;  // NaN when not computed
};

class Ledger {
  public:
    Ledger(double dx, double a) : dx_(dx), a_(a) {}

    void record_initial(const FieldState& s) { rows_.push_back(make_row(s, 0.0)); }

    void record_step(const FieldState& prev, const FieldState& next, double entropy_max) {
        double var_w = 0.0;
        for (std::size_t i = 0; i < prev.w.size(); ++i)
            var_w += std::abs(next.w[i] - prev.w[i]);
        dissipation_ += a_ * dx_ * var_w;
        rows_.push_back(make_row(next, entropy_max));
    }

    const std::vector<LedgerRow>& rows() const { return rows_; }

  private:
    LedgerRow make_row(const FieldState& s, double entropy_max) const {
        LedgerRow r;
        r.n = s.step_index;
        r.t = s.t;
        r.tv_u = total_variation(s.u);
        r.tv_w = total_variation(s.w);
        r.mass = mass(s, dx_);
        r.l2_u = l2_squared(s.u, dx_);
        r.l2_w = l2_squared(s.w, dx_);
        r.l2_sum = r.l2_u + r.l2_w;
        r.dissipation = dissipation_;
        r.entropy_residual_max = entropy_max;
        return r;
    }

    double dx_;
    double a_;
    double dissipation_ = 0.0;
    std::vector<LedgerRow> rows_;
};

}  // namespace playfv
