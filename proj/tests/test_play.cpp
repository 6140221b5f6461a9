#include <catch2/catch.hpp>

#include "playfv/play.hpp"

#include <vector>

#include "oracles.hpp"

using namespace playfv;

TEST_CASE("play_project clamps across jumps") {
    PlayConfig cfg{1.0};
    CHECK(play_project(0.0, 2.0, cfg) == Approx(1.0));
    CHECK(play_project(0.0, 0.5, cfg) == 0.0);  // interior of the strip: w frozen
    CHECK(play_project(0.0, -3.0, cfg) == Approx(-2.0));
    CHECK(play_project(0.0, -3.0, cfg) ==
          Approx(oracles::play_fill(0.0, 0.0, -3.0, 1.0)).margin(1e-12));
    CHECK_THROWS_AS(play_project(0.0, 1.0, PlayConfig{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(play_project(0.0, 1.0, PlayConfig{-2.0}), std::invalid_argument);
}

TEST_CASE("play_project properties") {
    PlayConfig cfg{0.7};
    oracles::Rng rng(20240811);
    for (int trial = 0; trial < 500; ++trial) {
        const double w = rng.uniform(-5, 5);
        const double u1 = rng.uniform(-5, 5);
        const double u2 = rng.uniform(-5, 5);
        const double p1 = play_project(w, u1, cfg);

        // clamp idempotence
        CHECK(play_project(p1, u1, cfg) == p1);
        // boundary attachment: if w moved, the new pair sits on the boundary
        if (p1 != w) CHECK(std::abs(u1 - p1) == Approx(cfg.a).margin(1e-14));
        // 1-Lipschitz in the input
        CHECK(std::abs(p1 - play_project(w, u2, cfg)) <= std::abs(u1 - u2) + 1e-14);
        // monotone in w_prev and u_next
        const double dw = rng.uniform(0, 1), du = rng.uniform(0, 1);
        CHECK(play_project(w + dw, u1, cfg) >= p1);
        CHECK(play_project(w, u1 + du, cfg) >= p1);
    }
}

TEST_CASE("play_trajectory follows the jump example") {
    PlayConfig cfg{1.0};
    const std::vector<double> u = {0, 0, 2, 2};
    CHECK(play_trajectory(u, 0.0, cfg) == std::vector<double>{0, 0, 1, 1});

    const std::vector<double> updown = {0, 2, 0};
    CHECK(play_trajectory(updown, 0.0, cfg) == std::vector<double>{0, 1, 1});

    const std::vector<double> flat(6, 0.4);
    CHECK(play_trajectory(flat, 1.0, cfg) == std::vector<double>(6, 1.0));

    CHECK(play_trajectory(std::vector<double>{}, 0.0, cfg).empty());
}

TEST_CASE("play_trajectory is rate independent and matches the fill oracle") {
    PlayConfig cfg{1.0};
    oracles::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> u;
        const int len = rng.uniform_int(2, 20);
        for (int j = 0; j < len; ++j) u.push_back(rng.uniform(-4, 4));
        const double w0 = u[0] + rng.uniform(-cfg.a, cfg.a);

        const auto w = play_trajectory(u, w0, cfg);
        const auto w_oracle = oracles::play_fill_trajectory(u, w0, cfg.a);
        for (std::size_t j = 0; j < u.size(); ++j)
            CHECK(w[j] == Approx(w_oracle[j]).margin(1e-8));

        // duplicate every sample: outputs at original indices unchanged
        std::vector<double> u_dup;
        for (double v : u) {
            u_dup.push_back(v);
            u_dup.push_back(v);
        }
        const auto w_dup = play_trajectory(u_dup, w0, cfg);
        for (std::size_t j = 0; j < u.size(); ++j) CHECK(w_dup[2 * j + 1] == w[j]);

        CHECK(verify_weak_play(u, w, cfg, 1e-12 * 8));
    }
}

TEST_CASE("verify_weak_play accepts Play outputs and rejects non-outputs") {
    PlayConfig cfg{1.0};
    const std::vector<double> u = {0, 2};
    CHECK(verify_weak_play(u, std::vector<double>{0, 1}, cfg, 1e-12));
    CHECK_FALSE(verify_weak_play(u, std::vector<double>{0, 2}, cfg, 1e-12));
    CHECK_FALSE(verify_weak_play(std::vector<double>{0, 0.5}, std::vector<double>{0, 0.4},
                                 cfg, 1e-12));  // w moved inside the strip
    CHECK_THROWS_AS(verify_weak_play(u, std::vector<double>{0, 1, 1}, cfg, 1e-12),
                    std::invalid_argument);
}
