#pragma once

// Exact self-similar solution of the Riemann problem for
//   d_t u + d_t w + d_x f(u) = 0,   w = Play_a(u),
// with convex f.  Rarefaction fans split at the strip kinks w -+ a into a
// frozen-w part (full characteristic speed f') and a boundary-coupled part
// (half speed f'/2).  Compressive data produce either a two-shock structure
// (u-only shock plus boundary-coupled shock) or, when the elementary speeds
// cross, a single merged "fast" shock whose speed is fixed by the
// Rankine-Hugoniot condition with the w-jump included.  Stationary contacts
// in w (u continuous) glue mismatched w-states at x = 0.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "playfv/flux.hpp"
#include "playfv/play.hpp"

namespace playfv {

struct RiemannProblem {
    PlayState left;
    PlayState right;
    double a = 1.0;
    ConvexFlux flux;
};

enum class WMode { frozen, coupled_lower, coupled_upper };  // w = const, u - a, u + a
enum class ShockKind { classical, coupled, fast };

struct Rarefaction {
    double u_from = 0.0, u_to = 0.0;  // u at the slow and fast edge; u_from <= u_to
    WMode w_mode = WMode::frozen;
    double w_value = 0.0;             // used when w_mode == frozen
    double speed_from = 0.0, speed_to = 0.0;
};

struct Shock {
    PlayState left, right;
    double sigma = 0.0;
    ShockKind kind = ShockKind::classical;
};

struct StationaryWContact {
    double u = 0.0;
    double w_left = 0.0, w_right = 0.0;
};

using Wave = std::variant<Rarefaction, Shock, StationaryWContact>;

inline std::pair<double, double> speed_range(const Wave& wave) {
    if (const auto* r = std::get_if<Rarefaction>(&wave)) return {r->speed_from, r->speed_to};
    if (const auto* s = std::get_if<Shock>(&wave)) return {s->sigma, s->sigma};
    return {0.0, 0.0};
}

struct WaveFan {
    PlayState left, right;
    std::vector<Wave> waves;
};

/// Rankine-Hugoniot speed (f(u-) - f(u+)) / (u- - u+ + w- - w+); empty when
/// the denominator vanishes (then admissibility forces f(u-) = f(u+), sigma = 0).
inline std::optional<double> rh_speed(const PlayState& left, const PlayState& right,
                                      const ConvexFlux& f) {
    const double den = left.u - right.u + left.w - right.w;
    const double scale = std::max({1.0, std::abs(left.u), std::abs(right.u), std::abs(left.w),
                                   std::abs(right.w)});
    if (std::abs(den) <= 1e-12 * scale) return std::nullopt;
    return (f.eval(left.u) - f.eval(right.u)) / den;
}

// ---------------------------------------------------------------------------
// Entropy admissibility of a single shock (both states in the strip).

enum class AdmissibleCase { none, i, ii, iii, iv, v, vi };

struct Admissibility {
    bool ok = false;
    AdmissibleCase label = AdmissibleCase::none;
};

inline const char* to_string(AdmissibleCase c) {
    switch (c) {
        case AdmissibleCase::i: return "i";
        case AdmissibleCase::ii: return "ii";
        case AdmissibleCase::iii: return "iii";
        case AdmissibleCase::iv: return "iv";
        case AdmissibleCase::v: return "v";
        case AdmissibleCase::vi: return "vi";
        default: return "none";
    }
}

inline Admissibility admissible(const PlayState& left, const PlayState& right, double sigma,
                                const ConvexFlux& f, double a) {
    const double scale = std::max({1.0, std::abs(left.u), std::abs(right.u), std::abs(left.w),
                                   std::abs(right.w), a});
    const double tol = 1e-10 * scale;
    if (!in_strip(left.u, left.w, a, tol) || !in_strip(right.u, right.w, a, tol))
        throw std::invalid_argument("admissible: states must lie in the strip");

    const double fm = f.eval(left.u), fp = f.eval(right.u);
    const double den = left.u - right.u + left.w - right.w;
    // Rankine-Hugoniot first.
    if (std::abs(fm - fp - sigma * den) > tol * std::max(1.0, std::abs(fm) + std::abs(fp)))
        return {};
    if (left.u < right.u - tol) return {};

    if (std::abs(left.w - right.w) <= tol) return {true, AdmissibleCase::i};
    if (std::abs(fm - fp) <= tol && std::abs(sigma) <= tol) return {true, AdmissibleCase::ii};
    if (!(left.w > right.w)) return {};

    const auto half_chord = [&](double x, double y) {  // 0.5 * (f(y) - f(x)) / (y - x)
        return std::abs(y - x) <= tol ? 0.5 * f.deriv(x) : 0.5 * (f.eval(y) - f.eval(x)) / (y - x);
    };
    const auto full_chord = [&](double x, double y) {
        return std::abs(y - x) <= tol ? f.deriv(x) : (f.eval(y) - f.eval(x)) / (y - x);
    };

    if (fm > fp + tol) {
        if (std::abs(left.w - (left.u - a)) > tol) return {};
        if (std::abs(right.w - (right.u - a)) <= tol) return {true, AdmissibleCase::iii};
        const double k = right.w + a;
        const double mu_plus = full_chord(right.u, k);
        const double mu_minus = half_chord(k, left.u);
        if (mu_plus <= mu_minus + tol) return {true, AdmissibleCase::iv};
        return {};
    }
    if (fm < fp - tol) {
        if (std::abs(right.w - (right.u + a)) > tol) return {};
        if (std::abs(left.w - (left.u + a)) <= tol) return {true, AdmissibleCase::v};
        const double k = left.w - a;
        const double nu_minus = full_chord(k, left.u);
        const double nu_plus = half_chord(right.u, k);
        if (nu_plus <= nu_minus + tol) return {true, AdmissibleCase::vi};
        return {};
    }
    return {};  // f(u-) = f(u+) but sigma != 0
}

// ---------------------------------------------------------------------------
// solve()

namespace rdetail {

inline bool near(double x, double y, double scale) {
    return std::abs(x - y) <= 1e-12 * std::max(1.0, scale);
}

/// Shared fast-shock predicate: the two-shock construction degenerates into a
/// single merged shock exactly when the frozen-branch chord is slower than
/// the coupled-branch chord.  Ties route to the two-shock branch (the two
/// constructions coincide there).
inline bool fast_shock_right(const ShockSpeeds& s) { return s.mu_r < s.mu_l; }
inline bool fast_shock_left(const ShockSpeeds& s) { return s.nu_l > s.nu_r; }

struct HalfFan {
    std::vector<Wave> waves;  // ordered, one side of x = 0
    double w_at_zero = 0.0;   // w-limit at xi -> 0 from this side
};

/// Right-going rarefaction part from u_start up to u_r, governed by the
/// w_r-modified flux with kink at w_r - a (frozen above the kink, coupled on
/// the upper strip boundary below it).
inline HalfFan rarefactions_right(const ConvexFlux& f, double u_start, double u_r, double w_r,
                                  double a, double scale) {
    HalfFan out;
    const double kink = w_r - a;
    if (kink <= u_start || near(kink, u_start, scale)) {
        out.w_at_zero = w_r;
        if (!near(u_start, u_r, scale))
            out.waves.push_back(Rarefaction{u_start, u_r, WMode::frozen, w_r,
                                            f.deriv(u_start), f.deriv(u_r)});
        return out;
    }
    out.w_at_zero = u_start + a;
    if (kink >= u_r || near(kink, u_r, scale)) {
        out.waves.push_back(Rarefaction{u_start, u_r, WMode::coupled_upper, 0.0,
                                        0.5 * f.deriv(u_start), 0.5 * f.deriv(u_r)});
        return out;
    }
    out.waves.push_back(Rarefaction{u_start, kink, WMode::coupled_upper, 0.0,
                                    0.5 * f.deriv(u_start), 0.5 * f.deriv(kink)});
    out.waves.push_back(Rarefaction{kink, u_r, WMode::frozen, w_r, f.deriv(kink), f.deriv(u_r)});
    return out;
}

/// Left-going rarefaction part from u_l up to u_end, governed by the
/// w_l-modified flux with kink at w_l + a (frozen below the kink, coupled on
/// the lower strip boundary above it).
inline HalfFan rarefactions_left(const ConvexFlux& f, double u_l, double u_end, double w_l,
                                 double a, double scale) {
    HalfFan out;
    const double kink = w_l + a;
    if (kink >= u_end || near(kink, u_end, scale)) {
        out.w_at_zero = w_l;
        if (!near(u_l, u_end, scale))
            out.waves.push_back(Rarefaction{u_l, u_end, WMode::frozen, w_l,
                                            f.deriv(u_l), f.deriv(u_end)});
        return out;
    }
    out.w_at_zero = u_end - a;
    if (kink <= u_l || near(kink, u_l, scale)) {
        out.waves.push_back(Rarefaction{u_l, u_end, WMode::coupled_lower, 0.0,
                                        0.5 * f.deriv(u_l), 0.5 * f.deriv(u_end)});
        return out;
    }
    out.waves.push_back(Rarefaction{u_l, kink, WMode::frozen, w_l, f.deriv(u_l), f.deriv(kink)});
    out.waves.push_back(Rarefaction{kink, u_end, WMode::coupled_lower, 0.0,
                                    0.5 * f.deriv(kink), 0.5 * f.deriv(u_end)});
    return out;
}

}  // namespace rdetail

inline WaveFan solve(const RiemannProblem& p) {
    const double u_l = p.left.u, w_l = p.left.w, u_r = p.right.u, w_r = p.right.w;
    const double a = p.a;
    const ConvexFlux& f = p.flux;
    const double scale = std::max({std::abs(u_l), std::abs(u_r), std::abs(w_l), std::abs(w_r), a});
    if (!in_strip(u_l, w_l, a, 1e-12 * std::max(1.0, scale)) ||
        !in_strip(u_r, w_r, a, 1e-12 * std::max(1.0, scale)))
        throw std::invalid_argument("riemann::solve: data outside the strip");

    WaveFan fan;
    fan.left = p.left;
    fan.right = p.right;
    const auto near0 = [&](double x, double y) { return rdetail::near(x, y, scale); };
    const auto push_contact = [&](double u, double wl, double wr) {
        if (!near0(wl, wr)) fan.waves.push_back(StationaryWContact{u, wl, wr});
    };

    if (near0(u_l, u_r)) {
        push_contact(u_l, w_l, w_r);
        return fan;
    }

    if (u_l < u_r) {
        const double u_star = argmin_on(f, u_l, u_r);
        rdetail::HalfFan left_part{{}, w_l};
        rdetail::HalfFan right_part{{}, w_r};
        if (!near0(u_star, u_l)) left_part = rdetail::rarefactions_left(f, u_l, u_star, w_l, a, scale);
        if (!near0(u_star, u_r))
            right_part = rdetail::rarefactions_right(f, u_star, u_r, w_r, a, scale);
        // the glue joins at the sonic value; pin the junction speeds to the
        // correct side of 0 (the bisected argmin leaves f' a few ulp off)
        if (!left_part.waves.empty()) {
            auto& r = std::get<Rarefaction>(left_part.waves.back());
            r.speed_to = std::min(r.speed_to, 0.0);
            r.speed_from = std::min(r.speed_from, r.speed_to);
        }
        if (!right_part.waves.empty()) {
            auto& r = std::get<Rarefaction>(right_part.waves.front());
            r.speed_from = std::max(r.speed_from, 0.0);
            r.speed_to = std::max(r.speed_to, r.speed_from);
        }
        for (auto& w : left_part.waves) fan.waves.push_back(std::move(w));
        push_contact(u_star, left_part.w_at_zero, right_part.w_at_zero);
        for (auto& w : right_part.waves) fan.waves.push_back(std::move(w));
        return fan;
    }

    // u_l > u_r: shocks.
    const double fl = f.eval(u_l), fr = f.eval(u_r);
    if (near0(fl, fr)) {
        fan.waves.push_back(Shock{p.left, p.right, 0.0,
                                  near0(w_l, w_r) ? ShockKind::classical : ShockKind::coupled});
        return fan;
    }

    if (fl > fr) {  // right-moving family, governed by w_r
        const double k = w_r + a;
        if (u_l <= k || near0(u_l, k)) {  // pair never leaves the strip: u-only shock
            push_contact(u_l, w_l, w_r);
            fan.waves.push_back(
                Shock{{u_l, w_r}, {u_r, w_r}, (fl - fr) / (u_l - u_r), ShockKind::classical});
            return fan;
        }
        push_contact(u_l, w_l, u_l - a);
        if (near0(u_r, k)) {  // data on the lower boundary: single coupled shock
            const double sigma = 0.5 * (fl - fr) / (u_l - u_r);
            fan.waves.push_back(Shock{{u_l, u_l - a}, {u_r, w_r}, sigma, ShockKind::coupled});
            return fan;
        }
        const ShockSpeeds s = speeds_right(f, u_l, u_r, w_r, a);
        if (rdetail::fast_shock_right(s)) {
            fan.waves.push_back(Shock{{u_l, u_l - a}, {u_r, w_r}, s.mu, ShockKind::fast});
        } else {
            fan.waves.push_back(Shock{{u_l, u_l - a}, {k, w_r}, s.mu_l, ShockKind::coupled});
            fan.waves.push_back(Shock{{k, w_r}, {u_r, w_r}, s.mu_r, ShockKind::classical});
        }
        return fan;
    }

    // fl < fr: left-moving family, governed by w_l
    const double k = w_l - a;
    if (u_r >= k || near0(u_r, k)) {
        fan.waves.push_back(
            Shock{{u_l, w_l}, {u_r, w_l}, (fl - fr) / (u_l - u_r), ShockKind::classical});
        push_contact(u_r, w_l, w_r);
        return fan;
    }
    if (near0(u_l, k)) {  // data on the upper boundary: single coupled shock
        const double sigma = 0.5 * (fl - fr) / (u_l - u_r);
        fan.waves.push_back(Shock{{u_l, w_l}, {u_r, u_r + a}, sigma, ShockKind::coupled});
        push_contact(u_r, u_r + a, w_r);
        return fan;
    }
    const ShockSpeeds s = speeds_left(f, u_l, u_r, w_l, a);
    if (rdetail::fast_shock_left(s)) {
        fan.waves.push_back(Shock{{u_l, w_l}, {u_r, u_r + a}, s.nu, ShockKind::fast});
    } else {
        fan.waves.push_back(Shock{{u_l, w_l}, {k, w_l}, s.nu_l, ShockKind::classical});
        fan.waves.push_back(Shock{{k, w_l}, {u_r, u_r + a}, s.nu_r, ShockKind::coupled});
    }
    push_contact(u_r, u_r + a, w_r);
    return fan;
}

// ---------------------------------------------------------------------------
// sample()

namespace rdetail {

/// Invert the characteristic speed inside a rarefaction: solve c * f'(u) = xi
/// on [u_from, u_to] by bisection (f' monotone for convex f).
inline double invert_speed(const ConvexFlux& f, double c, double xi, double u_from,
                           double u_to) {
    double lo = u_from, hi = u_to;
    const double tol = 1e-14 * std::max(1.0, std::abs(u_from) + std::abs(u_to));
    for (int it = 0; it < 64 && (hi - lo) > tol; ++it) {
        const double m = 0.5 * (lo + hi);
        (c * f.deriv(m) < xi ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rdetail

/// State of the fan at similarity coordinate xi = x / t.  At a wave's exact
/// speed the right limit is returned.
inline PlayState sample(const WaveFan& fan, double xi, const ConvexFlux& f, double a) {
    PlayState current = fan.left;
    for (const Wave& wave : fan.waves) {
        const auto [s0, s1] = speed_range(wave);
        if (xi < s0) return current;
        if (const auto* r = std::get_if<Rarefaction>(&wave)) {
            if (xi < s1) {
                const double c = r->w_mode == WMode::frozen ? 1.0 : 0.5;
                const double u = rdetail::invert_speed(f, c, xi, r->u_from, r->u_to);
                if (r->w_mode == WMode::frozen) return {u, r->w_value};
                return {u, r->w_mode == WMode::coupled_upper ? u + a : u - a};
            }
            const double u_end = r->u_to;
            current = {u_end, r->w_mode == WMode::frozen
                                  ? r->w_value
                                  : (r->w_mode == WMode::coupled_upper ? u_end + a : u_end - a)};
        } else if (const auto* s = std::get_if<Shock>(&wave)) {
            current = s->right;
        } else {
            const auto* c = std::get_if<StationaryWContact>(&wave);
            current = {c->u, c->w_right};
        }
    }
    return current;
}

/// Convenience overload when the problem is at hand.
inline PlayState sample(const WaveFan& fan, double xi, const RiemannProblem& p) {
    return sample(fan, xi, p.flux, p.a);
}

}  // namespace playfv
