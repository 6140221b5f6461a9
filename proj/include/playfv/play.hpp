#pragma once

// Scalar Play operator with amplitude a: the output w tracks the input u
// inside the strip |u - w| <= a, moving only when the pair sits on a strip
// boundary and u pushes outward.  Jump inputs are handled by the
// rate-independent monotone-fill limit, whose closed form is a clamp of the
// previous output into [u - a, u + a].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace playfv {

struct PlayConfig {
    double a = 1.0;  // hysteresis half-width, > 0
};

inline void validate(const PlayConfig& cfg) {
    if (!(cfg.a > 0.0)) throw std::invalid_argument("PlayConfig: a must be > 0");
}

/// Pair (u, w); feasible states satisfy |u - w| <= a.
struct PlayState {
    double u = 0.0;
    double w = 0.0;
};

inline bool in_strip(double u, double w, double a, double tol = 1e-12) {
    return std::abs(u - w) <= a + tol;
}

/// Advance the Play output across an input jump (or move) to u_next.
/// Rate-independent limit of any monotone fill of the jump: clamp w_prev
/// into [u_next - a, u_next + a].
inline double play_project(double w_prev, double u_next, const PlayConfig& cfg) {
    validate(cfg);
    return std::clamp(w_prev, u_next - cfg.a, u_next + cfg.a);
}

/// Run the Play operator over a sampled input.  w0 is clamped to be
/// compatible with the first sample.  The result is invariant under
/// duplication of consecutive equal samples (rate independence).
///
/// For sampled sequences the discrete trajectory coincides with the
/// continuous-time operator on piecewise monotone inputs; between samples the
/// fill is assumed monotone.
inline std::vector<double> play_trajectory(std::span<const double> u_samples, double w0,
                                           const PlayConfig& cfg) {
    validate(cfg);
    std::vector<double> w;
    w.reserve(u_samples.size());
    if (u_samples.empty()) return w;
    double cur = std::clamp(w0, u_samples[0] - cfg.a, u_samples[0] + cfg.a);
    w.push_back(cur);
    for (std::size_t j = 1; j < u_samples.size(); ++j) {
        cur = play_project(cur, u_samples[j], cfg);
        w.push_back(cur);
    }
    return w;
}

/// Discrete right-continuous form of the weak hysteresis variational
/// inequality: w stays in the strip around u and
///   sum (u_{j+1} - w_{j+1}) (w_{j+1} - w_j)  >=  a * sum |w_{j+1} - w_j|.
inline bool verify_weak_play(std::span<const double> u_samples, std::span<const double> w_samples,
                             const PlayConfig& cfg, double tol) {
    validate(cfg);
    if (u_samples.size() != w_samples.size())
        throw std::invalid_argument("verify_weak_play: length mismatch");
    if (u_samples.size() < 2)
        throw std::invalid_argument("verify_weak_play: need at least 2 samples");
    for (std::size_t j = 0; j < u_samples.size(); ++j)
        if (std::abs(w_samples[j] - u_samples[j]) > cfg.a + tol) return false;
    double pairing = 0.0;
    double variation = 0.0;
    for (std::size_t j = 0; j + 1 < u_samples.size(); ++j) {
        const double dw = w_samples[j + 1] - w_samples[j];
        pairing += (u_samples[j + 1] - w_samples[j + 1]) * dw;
        variation += std::abs(dw);
    }
    return pairing >= cfg.a * variation - tol;
}

}  // namespace playfv
