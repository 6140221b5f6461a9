#include <catch2/catch.hpp>

#include "playfv/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace playfv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("playfv_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("expression evaluator") {
    auto f = expr::compile("3.5*exp(-x^2/2) + 0.1*x");
    CHECK(f(0.0) == Approx(3.5));
    CHECK(f(1.0) == Approx(3.5 * std::exp(-0.5) + 0.1));
    CHECK(expr::compile("sin(pi/2)")(0.0) == Approx(1.0));
    CHECK(expr::compile("-x^2")(2.0) == Approx(-4.0));
    CHECK(expr::compile("2^3^2")(0.0) == Approx(512.0));  // right associative
    CHECK_THROWS_AS(expr::compile("foo(x)"), std::invalid_argument);
    CHECK_THROWS_AS(expr::compile("1 +"), std::invalid_argument);
}

TEST_CASE("scenario files parse and the presets are well formed") {
    const fs::path presets = PLAYFV_PRESET_DIR;
    const auto sc = load_scenario(presets / "rr-right.json");
    CHECK(sc.name == "rr-right");
    CHECK(sc.kind == "riemann");
    CHECK(sc.ul == 1.0);
    CHECK(sc.wl == 0.5);
    CHECK(sc.output_times == std::vector<double>{0.25});
    CHECK(sc.grid().n_cells == 5000);

    for (const char* name : {"rr-right", "rr-left", "rr-center", "ss-right", "ss-left",
                             "fast-shock", "gaussian"}) {
        const auto s = load_scenario(presets / (std::string(name) + ".json"));
        CHECK(s.grid().n_cells > 0);
        CHECK_NOTHROW(s.u0()(0.3));
        CHECK(!s.output_times.empty());
    }
}

TEST_CASE("run_scenario writes snapshots, ledger, and metadata") {
    Scenario sc;
    sc.name = "mini-rarefaction";
    sc.kind = "riemann";
    sc.ul = 1.0;
    sc.wl = 0.5;
    sc.ur = 3.0;
    sc.wr = 3.0;
    sc.x_min = -1.5;
    sc.x_max = 1.5;
    sc.dx = 0.01;
    sc.output_times = {0.1, 0.2};

    RunOptions opts;
    opts.output_root = temp_dir("artifacts");
    const auto art = run_scenario(sc, opts);
    CHECK(art.diagnostics_passed);
    REQUIRE(art.snapshots.size() == 2);
    CHECK(fs::exists(art.snapshots[0]));
    CHECK(fs::exists(art.diagnostics));
    CHECK(fs::exists(art.metadata));

    const std::string snap = slurp(art.snapshots[1]);
    CHECK(snap.rfind("x,u,w\n", 0) == 0);
    const std::string meta = slurp(art.metadata);
    CHECK(meta.find("diagnostics_passed=true") != std::string::npos);
    const std::string ledger = slurp(art.diagnostics);
    CHECK(ledger.rfind("n,t,tv_u,tv_w,mass,l2_u,l2_w,l2_sum,dissipation,entropy_residual_max\n",
                       0) == 0);

    // byte-identical reruns
    const auto art2 = run_scenario(sc, opts);
    CHECK(slurp(art.snapshots[1]) == snap);
    CHECK(slurp(art.diagnostics) == ledger);
}

TEST_CASE("run_scenario emits the non-hysteretic comparison pair") {
    Scenario sc;
    sc.name = "mini-gaussian";
    sc.kind = "gaussian";
    sc.amplitude = 1.5;
    sc.width = 0.5;
    sc.x_min = -4.0;
    sc.x_max = 4.0;
    sc.dx = 0.02;
    sc.output_times = {0.3};
    sc.comparison = "non-hysteretic-pair";

    RunOptions opts;
    opts.output_root = temp_dir("cmp");
    const auto art = run_scenario(sc, opts);
    CHECK(art.diagnostics_passed);
    CHECK(fs::exists(art.directory / "snapshot_t0p3_nohyst_full.csv"));
    CHECK(fs::exists(art.directory / "snapshot_t0p3_nohyst_half.csv"));
    // frozen-w sanity: the half-flux run should lag the full-flux one
    const std::string full = slurp(art.directory / "snapshot_t0p3_nohyst_full.csv");
    const std::string half = slurp(art.directory / "snapshot_t0p3_nohyst_half.csv");
    CHECK(full != half);
}

TEST_CASE("run_scenario reports a boundary touch as an error") {
    Scenario sc;
    sc.name = "too-small-domain";
    sc.kind = "riemann";
    sc.ul = 1.0;
    sc.wl = 0.5;
    sc.ur = 3.0;
    sc.wr = 3.0;
    sc.x_min = -0.2;
    sc.x_max = 0.2;
    sc.dx = 0.01;
    sc.output_times = {0.5};
    RunOptions opts;
    opts.output_root = temp_dir("boundary");
    CHECK_THROWS_WITH(run_scenario(sc, opts), Catch::Contains("boundary"));
}

TEST_CASE("entropy residual column is populated on demand") {
    Scenario sc;
    sc.name = "mini-entropy";
    sc.kind = "riemann";
    sc.ul = 1.5;
    sc.wl = 2.0;
    sc.ur = 0.5;
    sc.wr = 0.0;
    sc.x_min = -1.0;
    sc.x_max = 1.0;
    sc.dx = 0.02;
    sc.output_times = {0.2};
    RunOptions opts;
    opts.output_root = temp_dir("entropy");
    opts.entropy_pairs = true;
    const auto art = run_scenario(sc, opts);
    CHECK(art.diagnostics_passed);
    const std::string ledger = slurp(art.diagnostics);
    CHECK(ledger.find("nan") == std::string::npos);
}

TEST_CASE("convergence study: riemann errors shrink against the exact fan") {
    Scenario sc;
    sc.name = "conv";
    sc.kind = "riemann";
    sc.ul = 1.0;
    sc.wl = 0.5;
    sc.ur = 3.0;
    sc.wr = 3.0;
    sc.x_min = -1.5;
    sc.x_max = 1.5;
    sc.dx = 0.05;
    sc.output_times = {0.2};

    const auto table = convergence_study(sc, {0.05, 0.025, 0.0125});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.monotone);
    CHECK(table.rows[2].error < table.rows[0].error);
    CHECK(table.observed_order > 0.45);
}

TEST_CASE("convergence study: self-convergence for smooth data") {
    Scenario sc;
    sc.name = "conv-gauss";
    sc.kind = "gaussian";
    sc.amplitude = 1.0;
    sc.width = 0.5;
    sc.x_min = -3.0;
    sc.x_max = 3.0;
    sc.dx = 0.05;
    sc.output_times = {0.2};
    const auto table = convergence_study(sc, {0.05, 0.025, 0.0125, 0.00625});
    REQUIRE(table.rows.size() == 3);  // finest level is the reference
    CHECK(table.monotone);
}

TEST_CASE("riemann_report prints the fan and samples it") {
    const RiemannProblem p{{1.0, 0.5}, {3.0, 3.0}, 1.0, flux_by_id("burgers")};
    const auto dir = temp_dir("riemann");
    const auto rep = riemann_report(p, 0.25, dir / "fan.csv");
    CHECK(rep.text.find("stationary w-contact") != std::string::npos);
    CHECK(rep.text.find("rarefaction") != std::string::npos);
    CHECK(fs::exists(dir / "fan.csv"));

    const RiemannProblem same{{1.0, 0.5}, {1.0, 0.5}, 1.0, flux_by_id("burgers")};
    CHECK(riemann_report(same, 0.25).text.find("no waves") != std::string::npos);

    const RiemannProblem fast{{3.5, 2.5}, {-1.0, -1.0}, 1.0, flux_by_id("burgers")};
    const auto frep = riemann_report(fast, 0.5);
    CHECK(frep.text.find("fast shock") != std::string::npos);
    CHECK(frep.text.find("0.703125") != std::string::npos);
}
