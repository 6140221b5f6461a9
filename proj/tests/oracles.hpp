#pragma once

// Test-only oracles, independent of the library's implementation paths:
//  - epsilon-fill Play operator (differential update along a monotone fill)
//  - dense-sampling extrema
//  - trapezoid-refinement quadrature
//  - a tiny deterministic RNG wrapper

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

/// Play output across a jump from (u_prev, w_prev) to u_next, computed by
/// filling the jump monotonically in steps of `fill_step` and applying the
/// differential law: w moves only when the pair is pushed across a strip
/// boundary, and then follows it.
inline double play_fill(double w_prev, double u_prev, double u_next, double a,
                        double fill_step = 1e-4) {
    double w = w_prev;
    const double dir = u_next >= u_prev ? 1.0 : -1.0;
    double u = u_prev;
    while (dir * (u_next - u) > 0.0) {
        u += dir * std::min(fill_step, dir * (u_next - u));
        if (u - w > a) w = u - a;
        if (w - u > a) w = u + a;
    }
    return w;
}

inline std::vector<double> play_fill_trajectory(const std::vector<double>& u_samples, double w0,
                                                double a, double fill_step = 1e-4) {
    std::vector<double> w;
    if (u_samples.empty()) return w;
    double cur = std::clamp(w0, u_samples[0] - a, u_samples[0] + a);
    w.push_back(cur);
    for (std::size_t j = 1; j < u_samples.size(); ++j) {
        cur = play_fill(cur, u_samples[j - 1], u_samples[j], a, fill_step);
        w.push_back(cur);
    }
    return w;
}

inline double max_abs_on(const std::function<double(double)>& g, double lo, double hi,
                         int samples = 20001) {
    double m = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        m = std::max(m, std::abs(g(x)));
    }
    return m;
}

inline double argmin_dense(const std::function<double(double)>& g, double lo, double hi,
                           int samples = 200001) {
    double best_x = lo, best = g(lo);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double v = g(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

/// Trapezoid rule with Richardson refinement until two successive halvings
/// agree to rel_tol.
inline double integrate_trapezoid(const std::function<double(double)>& g, double lo, double hi,
                                  double rel_tol = 1e-11) {
    int n = 64;
    auto trap = [&](int m) {
        const double h = (hi - lo) / m;
        double s = 0.5 * (g(lo) + g(hi));
        for (int i = 1; i < m; ++i) s += g(lo + i * h);
        return s * h;
    };
    double prev = trap(n);
    for (int it = 0; it < 20; ++it) {
        n *= 2;
        const double cur = trap(n);
        if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

}  // namespace oracles
