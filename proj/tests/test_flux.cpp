#include <catch2/catch.hpp>

#include "playfv/flux.hpp"

#include <cmath>

#include "oracles.hpp"

using namespace playfv;

namespace {
ConvexFlux quartic_plus_linear() {
    ConvexFlux f;
    f.id = "quartic+u";
    f.eval = [](double u) { return 0.25 * u * u * u * u + u; };
    f.deriv = [](double u) { return u * u * u + 1.0; };
    return f;
}
}  // namespace

TEST_CASE("builtin fluxes are convex with consistent derivatives") {
    for (const char* id : {"burgers", "quartic", "linear"})
        CHECK(validate_convex_flux(flux_by_id(id), -3.0, 3.0));
    CHECK_THROWS_AS(flux_by_id("cubic"), std::invalid_argument);
}

TEST_CASE("lipschitz_on picks the endpoint slope") {
    const auto burgers = flux_by_id("burgers");
    CHECK(lipschitz_on(burgers, -2, 3) == Approx(3.0));
    CHECK(lipschitz_on(burgers, 1, 3) == Approx(3.0));
    const auto quartic = flux_by_id("quartic");
    CHECK(lipschitz_on(quartic, -2, 1) == Approx(8.0));
    CHECK(lipschitz_on(quartic, -2, 1) ==
          Approx(oracles::max_abs_on(quartic.deriv, -2, 1)).epsilon(1e-6));
    CHECK_THROWS_AS(lipschitz_on(burgers, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("argmin_on clamps the stationary point and bisects otherwise") {
    const auto burgers = flux_by_id("burgers");
    CHECK(argmin_on(burgers, -2, 1) == Approx(0.0));
    CHECK(argmin_on(burgers, 1, 3) == Approx(1.0));
    const auto f = quartic_plus_linear();
    CHECK(argmin_on(f, -2, 2) == Approx(-1.0).margin(1e-11));
    CHECK(argmin_on(f, -2, 2) ==
          Approx(oracles::argmin_dense(f.eval, -2, 2)).margin(1e-4));
}

TEST_CASE("godunov_two_point") {
    const auto f = flux_by_id("burgers");
    for (double u : {-1.5, 0.0, 2.0}) CHECK(godunov_two_point(f, u, u) == Approx(f.eval(u)));
    CHECK(godunov_two_point(f, -1, 2) == Approx(0.0));
    CHECK(godunov_two_point(f, 2, -1) == Approx(2.0));

    oracles::Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const double ul = rng.uniform(-3, 3), ur = rng.uniform(-3, 3);
        const double d = rng.uniform(0, 1);
        CHECK(godunov_two_point(f, ul + d, ur) >= godunov_two_point(f, ul, ur) - 1e-14);
        CHECK(godunov_two_point(f, ul, ur + d) <= godunov_two_point(f, ul, ur) + 1e-14);
    }
}

TEST_CASE("modified_eval branches and continuity at the kinks") {
    const auto f = flux_by_id("burgers");
    CHECK(modified_eval(f, ModifiedFluxKind::tilde(0.0), 1.0, 0.5) == Approx(0.125));
    CHECK(modified_eval(f, ModifiedFluxKind::tilde(0.0), 1.0, 2.0) == Approx(1.25));
    CHECK(modified_eval(f, ModifiedFluxKind::bar(3.0), 1.0, 1.0) == Approx(1.25));

    // tilde restricted to one side of the strip coincides with bar / hat
    oracles::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double w = rng.uniform(-2, 2), a = rng.uniform(0.2, 2.0);
        const double u_low = rng.uniform(w - 5, w + a);
        const double u_high = rng.uniform(w - a, w + 5);
        CHECK(modified_eval(f, ModifiedFluxKind::tilde(w), a, u_low) ==
              Approx(modified_eval(f, ModifiedFluxKind::bar(w), a, u_low)).margin(1e-14));
        CHECK(modified_eval(f, ModifiedFluxKind::tilde(w), a, u_high) ==
              Approx(modified_eval(f, ModifiedFluxKind::hat(w), a, u_high)).margin(1e-14));
        // continuity across both kinks
        for (double kink : {w - a, w + a}) {
            const double below = modified_eval(f, ModifiedFluxKind::tilde(w), a, kink - 1e-9);
            const double above = modified_eval(f, ModifiedFluxKind::tilde(w), a, kink + 1e-9);
            CHECK(below == Approx(above).margin(1e-7));
        }
    }
    CHECK_THROWS_AS(modified_eval(f, ModifiedFluxKind::tilde(0.0), -1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("modified flux convexity where the construction uses it") {
    const auto f = flux_by_id("burgers");
    // bar(w) is convex across its kink w - a when f'(w - a) >= 0 (right-going
    // rarefaction regime), hat(w) across w + a when f'(w + a) <= 0
    const auto convex_on = [&](ModifiedFluxKind kind, double lo, double hi) {
        const auto tf = [&](double u) { return modified_eval(f, kind, 1.0, u); };
        for (double x = lo; x + 0.1 <= hi; x += 0.05) {
            const double chord = 0.5 * (tf(x) + tf(x + 0.1));
            if (tf(x + 0.05) > chord + 1e-12) return false;
        }
        return true;
    };
    CHECK(convex_on(ModifiedFluxKind::bar(2.0), 0.0, 4.0));    // kink at 1, f'(1) > 0
    CHECK(convex_on(ModifiedFluxKind::hat(-2.0), -4.0, 0.0));  // kink at -1, f'(-1) < 0
}

TEST_CASE("speeds_right matches chord arithmetic") {
    const auto f = flux_by_id("burgers");

    const ShockSpeeds s1 = speeds_right(f, 1.5, 0.5, 0.0, 1.0);
    CHECK(s1.mu_r == Approx(0.75));
    CHECK(s1.mu_l == Approx(0.625));
    CHECK(s1.mu == Approx(2.0 / 3.0));
    CHECK(s1.mu == Approx((s1.mu_r * s1.I_r + 2 * s1.mu_l * s1.I_l) / (s1.I_r + 2 * s1.I_l)));

    const ShockSpeeds s2 = speeds_right(f, 3.5, -1.0, -1.0, 1.0);
    CHECK(s2.mu_r == Approx(-0.5));
    CHECK(s2.mu_l == Approx(0.875));
    CHECK(s2.mu == Approx(0.703125));
    CHECK(s2.mu_r < s2.mu_l);  // fast-shock regime

    const ShockSpeeds s3 = speeds_right(f, 2.0, 0.0, 1.0, 1.0);
    CHECK(s3.I_r == Approx(2.0));
    CHECK(s3.I_l == Approx(0.0));
    CHECK(s3.mu == Approx(s3.mu_r));

    CHECK_THROWS_AS(speeds_right(f, 0.5, 1.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(speeds_right(f, 1.5, 0.5, 3.0, 1.0), std::invalid_argument);
}

TEST_CASE("speeds_left mirrors speeds_right") {
    const auto f = flux_by_id("burgers");

    const ShockSpeeds s1 = speeds_left(f, -0.5, -1.5, 0.0, 1.0);
    CHECK(s1.nu_l == Approx(-0.75));
    CHECK(s1.nu_r == Approx(-0.625));
    CHECK(s1.nu == Approx(-2.0 / 3.0));

    const ShockSpeeds s2 = speeds_left(f, 1.0, -1.0, 1.0, 1.0);
    CHECK(s2.J_l == Approx(1.0));
    CHECK(s2.J_r == Approx(1.0));
    CHECK(s2.nu == Approx((s2.nu_l + 2 * s2.nu_r) / 3.0));

    oracles::Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(0.2, 1.5);
        const double ur = rng.uniform(-3, 1);
        const double k = ur + rng.uniform(0, 2);        // k = w_r + a
        const double ul = k + rng.uniform(0, 2) + 1e-6;
        const ShockSpeeds r = speeds_right(f, ul, ur, k - a, a);
        const ShockSpeeds l = speeds_left(f, -ur, -ul, -(k - a), a);
        CHECK(l.nu_l == Approx(-r.mu_r).margin(1e-12));
        CHECK(l.nu_r == Approx(-r.mu_l).margin(1e-12));
        CHECK(l.nu == Approx(-r.mu).margin(1e-12));
        // ordering: mu between the elementary speeds
        CHECK(r.mu >= std::min(r.mu_r, r.mu_l) - 1e-12);
        CHECK(r.mu <= std::max(r.mu_r, r.mu_l) + 1e-12);
    }
}

TEST_CASE("entropy potential G") {
    const auto f = flux_by_id("burgers");
    CHECK(entropy_potential_G(f, 0.0) == 0.0);
    CHECK(entropy_potential_G(f, 2.0) == Approx(8.0 / 3.0));
    CHECK(entropy_potential_G(f, -1.0) == Approx(-1.0 / 3.0));

    // quadrature route (no antiderivative supplied) against the closed form
    ConvexFlux fq = f;
    fq.antiderivative = nullptr;
    for (double u : {-2.5, -0.3, 0.7, 3.1}) {
        CHECK(entropy_potential_G(fq, u) == Approx(u * u * u / 3.0).epsilon(1e-9));
        const double byparts = u * f.eval(u) - oracles::integrate_trapezoid(f.eval, 0.0, u);
        CHECK(entropy_potential_G(fq, u) == Approx(byparts).epsilon(1e-8));
    }

    // G'(u) = u f'(u)
    const auto fql = quartic_plus_linear();
    for (double u : {-1.7, -0.2, 0.4, 2.2}) {
        const double h = 1e-5;
        const double fd =
            (entropy_potential_G(fql, u + h) - entropy_potential_G(fql, u - h)) / (2 * h);
        CHECK(fd == Approx(u * fql.deriv(u)).epsilon(1e-6));
    }
}

TEST_CASE("flux registry accepts user fluxes") {
    ConvexFlux f = quartic_plus_linear();
    register_flux(f);
    CHECK(flux_by_id("quartic+u").eval(1.0) == Approx(1.25));
}
