#pragma once

// Scenario runner: named initial-data presets on a uniform grid, snapshot and
// diagnostics CSV emission, non-hysteretic comparison runs (large-a device),
// convergence studies against the exact fan, and the riemann report.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "playfv/diagnostics.hpp"
#include "playfv/riemann.hpp"
#include "playfv/scheme.hpp"

namespace playfv {

// ---------------------------------------------------------------------------
// Tiny arithmetic expression evaluator for custom initial data: variable x,
// operators + - * / ^, functions exp sin cos tanh sqrt abs, constant pi.

namespace expr {

class Parser {
  public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    double eval(double x) {
        pos_ = 0;
        x_ = x;
        const double v = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw std::invalid_argument("expr: trailing input");
        return v;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    double parse_sum() {
        double v = parse_product();
        for (;;) {
            if (consume('+')) v += parse_product();
            else if (consume('-')) v -= parse_product();
            else return v;
        }
    }
    double parse_product() {
        double v = parse_power();
        for (;;) {
            if (consume('*')) v *= parse_power();
            else if (consume('/')) v /= parse_power();
            else return v;
        }
    }
    double parse_power() {
        if (consume('-')) return -parse_power();
        if (consume('+')) return parse_power();
        const double base = parse_atom();
        if (consume('^')) return std::pow(base, parse_power());
        return base;
    }
    double parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw std::invalid_argument("expr: unexpected end");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const double v = parse_sum();
            if (!consume(')')) throw std::invalid_argument("expr: missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(text_.substr(pos_), &used);
            pos_ += used;
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[end])))
                ++end;
            const std::string name = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "x") return x_;
            if (name == "pi") return 3.14159265358979323846;
            if (!consume('(')) throw std::invalid_argument("expr: expected '(' after " + name);
            const double arg = parse_sum();
            if (!consume(')')) throw std::invalid_argument("expr: missing ')'");
            if (name == "exp") return std::exp(arg);
            if (name == "sin") return std::sin(arg);
            if (name == "cos") return std::cos(arg);
            if (name == "tanh") return std::tanh(arg);
            if (name == "sqrt") return std::sqrt(arg);
            if (name == "abs") return std::abs(arg);
            throw std::invalid_argument("expr: unknown function " + name);
        }
        throw std::invalid_argument(std::string("expr: unexpected character '") + c + "'");
    }

    std::string text_;
    std::size_t pos_ = 0;
    double x_ = 0.0;
};

inline std::function<double(double)> compile(const std::string& text) {
    auto parser = std::make_shared<Parser>(text);
    parser->eval(0.0);  // validate eagerly
    return [parser](double x) { return parser->eval(x); };
}

}  // namespace expr

// ---------------------------------------------------------------------------
// Scenario description (flat JSON object, one scenario per file).

struct Scenario {
    std::string name;
    std::string flux_id = "burgers";
    double a = 1.0;

    // initial data: "riemann" | "gaussian" | "expr"
    std::string kind = "riemann";
    double ul = 0.0, wl = 0.0, ur = 0.0, wr = 0.0;        // riemann
    double amplitude = 1.0, center = 0.0, width = 1.0;     // gaussian
    std::string u_expr, w_expr;                            // expr

    double x_min = -2.5, x_max = 2.5;
    double dx = 1e-2;
    double cfl_fraction = 1.0;
    std::vector<double> output_times;
    std::string comparison = "none";  // "none" | "non-hysteretic-pair"

    Grid1D grid() const {
        const int n = static_cast<int>(std::llround((x_max - x_min) / dx));
        if (n <= 0 || std::abs(x_min + n * dx - x_max) > 1e-9 * std::max(1.0, std::abs(x_max)))
            throw std::invalid_argument("scenario: dx must tile [x_min, x_max]");
        return {x_min, dx, n};
    }

    std::function<double(double)> u0() const { return initial_fn(true); }
    std::function<double(double)> w0() const { return initial_fn(false); }

    double t_end() const {
        if (output_times.empty()) throw std::invalid_argument("scenario: no output times");
        return *std::max_element(output_times.begin(), output_times.end());
    }

  private:
    std::function<double(double)> initial_fn(bool for_u) const {
        if (kind == "riemann") {
            const double lo = for_u ? ul : wl, hi = for_u ? ur : wr;
            return [lo, hi](double x) { return x < 0.0 ? lo : hi; };
        }
        if (kind == "gaussian") {
            const double A = amplitude, c = center, s = width;
            return [A, c, s](double x) { return A * std::exp(-0.5 * (x - c) * (x - c) / (s * s)); };
        }
        if (kind == "expr") {
            const std::string& text = for_u ? u_expr : (w_expr.empty() ? u_expr : w_expr);
            return expr::compile(text);
        }
        throw std::invalid_argument("scenario: unknown initial data kind " + kind);
    }
};

inline Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.flux_id = j.value("flux", "burgers");
    s.a = j.value("a", 1.0);
    s.kind = j.at("kind").get<std::string>();
    s.ul = j.value("ul", 0.0);
    s.wl = j.value("wl", 0.0);
    s.ur = j.value("ur", 0.0);
    s.wr = j.value("wr", 0.0);
    s.amplitude = j.value("amplitude", 1.0);
    s.center = j.value("center", 0.0);
    s.width = j.value("width", 1.0);
    s.u_expr = j.value("u_expr", "");
    s.w_expr = j.value("w_expr", "");
    s.x_min = j.value("x_min", -2.5);
    s.x_max = j.value("x_max", 2.5);
    s.dx = j.value("dx", 1e-2);
    s.cfl_fraction = j.value("cfl_fraction", 1.0);
    if (j.contains("output_times")) {
        if (j["output_times"].is_array())
            s.output_times = j["output_times"].get<std::vector<double>>();
        else {  // comma separated string
            std::stringstream ss(j["output_times"].get<std::string>());
            std::string tok;
            while (std::getline(ss, tok, ',')) s.output_times.push_back(std::stod(tok));
        }
    }
    s.comparison = j.value("comparison", "none");
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

// ---------------------------------------------------------------------------
// CSV / text emission.  Doubles print with 17 significant digits so repeated
// runs produce byte-identical files.

namespace io {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_snapshot(const std::filesystem::path& path, const Grid1D& grid,
                           const FieldState& s) {
    std::ofstream out(path);
    out << "x,u,w\n";
    for (int i = 0; i < grid.n_cells; ++i)
        out << fmt(grid.x_center(i)) << ',' << fmt(s.u[i]) << ',' << fmt(s.w[i]) << '\n';
}

inline void write_ledger(const std::filesystem::path& path, const Ledger& ledger) {
    std::ofstream out(path);
    out << "n,t,tv_u,tv_w,mass,l2_u,l2_w,l2_sum,dissipation,entropy_residual_max\n";
    for (const auto& r : ledger.rows()) {
        out << r.n << ',' << fmt(r.t) << ',' << fmt(r.tv_u) << ',' << fmt(r.tv_w) << ','
            << fmt(r.mass) << ',' << fmt(r.l2_u) << ',' << fmt(r.l2_w) << ',' << fmt(r.l2_sum)
            << ',' << fmt(r.dissipation) << ',';
        if (std::isnan(r.entropy_residual_max)) out << "nan";
        else out << fmt(r.entropy_residual_max);
        out << '\n';
    }
}

inline std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", t);
    std::string s = buf;
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

}  // namespace io

// ---------------------------------------------------------------------------
// run_scenario

struct RunArtifacts {
    std::filesystem::path directory;
    std::vector<std::filesystem::path> snapshots;
    std::filesystem::path diagnostics;
    std::filesystem::path metadata;
    bool diagnostics_passed = true;
    std::string failure;
    FieldState final_state;
};

struct RunOptions {
    std::filesystem::path output_root = "out";
    bool entropy_pairs = false;  // evaluate the entropy residual grid every step
    int entropy_grid = 9;
};

namespace cdetail {

struct StreamChecks {
    double tv_u = 0.0, tv_w = 0.0;
    double um = 0.0, uM = 0.0, wm = 0.0, wM = 0.0;
    double l2_0 = 0.0;
    double mass_prev = 0.0;
    bool ok = true;
    std::string failure;
    long bad_step = -1;

    void fail(const std::string& what, long n) {
        if (!ok) return;
        ok = false;
        failure = what;
        bad_step = n;
    }
};

}  // namespace cdetail

/// Run a scenario: snapshots at the requested output times, streaming
/// diagnostics CSV, metadata sidecar, and (optionally) the two non-hysteretic
/// comparison runs via the large-a device.  Throws on boundary touch.
inline RunArtifacts run_scenario(const Scenario& sc, const RunOptions& opts = {}) {
    namespace fs = std::filesystem;
    const Grid1D grid = sc.grid();
    const ConvexFlux flux = flux_by_id(sc.flux_id);
    SchemeConfig cfg{flux, sc.a, sc.cfl_fraction};

    RunArtifacts art;
    art.directory = opts.output_root / sc.name;
    fs::create_directories(art.directory);

    FieldState state = project_initial(sc.u0(), sc.w0(), grid, sc.a);
    const double dt = cfl_dt(cfg, grid, state);
    double um0 = state.u[0], uM0 = state.u[0];
    for (double v : state.u) {
        um0 = std::min(um0, v);
        uM0 = std::max(uM0, v);
    }
    const double L = lipschitz_on(flux, um0, uM0);
    const double wlo = *std::min_element(state.w.begin(), state.w.end());
    const double whi = *std::max_element(state.w.begin(), state.w.end());

    const auto pairs = make_entropy_pairs(um0, uM0, wlo, whi, sc.a, opts.entropy_grid);
    Ledger ledger(grid.dx, sc.a);
    ledger.record_initial(state);

    const double u_first0 = state.u[0], u_last0 = state.u.back();
    const double w_first0 = state.w[0], w_last0 = state.w.back();
    cdetail::StreamChecks checks;
    checks.tv_u = total_variation(state.u);
    checks.tv_w = total_variation(state.w);
    checks.um = um0;
    checks.uM = uM0;
    checks.wm = wlo;
    checks.wM = whi;
    checks.l2_0 = l2_squared(state.u, grid.dx) + l2_squared(state.w, grid.dx);
    checks.mass_prev = mass(state, grid.dx);

    Observer monitor = [&](const FieldState& prev, const FieldState& next,
                           const StepReport& rep) {
        const long n = next.step_index;
        // boundary cells must stay untouched (domain sized for the run horizon)
        const double btol = 1e-11 * std::max(1.0, std::abs(u_first0) + std::abs(u_last0));
        if (std::abs(next.u.front() - u_first0) > btol ||
            std::abs(next.u.back() - u_last0) > btol ||
            std::abs(next.w.front() - w_first0) > btol ||
            std::abs(next.w.back() - w_last0) > btol)
            throw std::runtime_error(sc.name + ": wave reached the domain boundary at step " +
                                     std::to_string(n));
        // compactness monitors
        const double tvu = total_variation(next.u), tvw = total_variation(next.w);
        if (tvu > checks.tv_u + 1e-10 || tvw > checks.tv_w + 1e-10)
            checks.fail("total variation increased", n);
        checks.tv_u = tvu;
        checks.tv_w = tvw;
        for (std::size_t i = 0; i < next.u.size(); ++i) {
            if (next.u[i] < checks.um - 1e-12 || next.u[i] > checks.uM + 1e-12 ||
                next.w[i] < checks.wm - 1e-12 || next.w[i] > checks.wM + 1e-12)
                checks.fail("solution left its initial range", n);
            if (std::abs(next.u[i] - next.w[i]) > sc.a + 1e-12)
                checks.fail("strip condition violated", n);
        }
        // conservation: mass moves exactly by the boundary flux difference
        const double m = mass(next, grid.dx);
        const double expected = checks.mass_prev - rep.dt * (rep.g.back() - rep.g.front());
        if (std::abs(m - expected) > 1e-12 * std::max(1.0, std::abs(m)))
            checks.fail("conservation drift", n);
        checks.mass_prev = m;
        // energy ledger
        if (ledger_step_slack(prev, next, flux, grid.dx, rep.dt, sc.a) < -1e-10 * checks.l2_0)
            checks.fail("hysteresis energy inequality violated", n);
        double ent = std::nan("");
        if (opts.entropy_pairs)
            ent = entropy_residual_max(prev, next, pairs, flux, sc.a, rep.dt, grid.dx);
        ledger.record_step(prev, next, ent);
    };

    std::vector<double> times = sc.output_times;
    std::sort(times.begin(), times.end());
    for (double t : times) {
        if (t > 0.0) state = run(state, cfg, grid, t, {monitor}, {}, dt);
        const auto path = art.directory / ("snapshot_t" + io::time_tag(t) + ".csv");
        io::write_snapshot(path, grid, state);
        art.snapshots.push_back(path);
    }

    art.diagnostics = art.directory / "diagnostics.csv";
    io::write_ledger(art.diagnostics, ledger);

    // metadata sidecar
    art.metadata = art.directory / "metadata.txt";
    {
        std::ofstream meta(art.metadata);
        meta << "name=" << sc.name << '\n'
             << "flux=" << sc.flux_id << '\n'
             << "a=" << io::fmt(sc.a) << '\n'
             << "dx=" << io::fmt(grid.dx) << '\n'
             << "dt=" << io::fmt(dt) << '\n'
             << "L=" << io::fmt(L) << '\n'
             << "cfl_fraction=" << io::fmt(sc.cfl_fraction) << '\n'
             << "x_min=" << io::fmt(grid.x_min) << '\n'
             << "x_max=" << io::fmt(grid.x_max()) << '\n'
             << "n_cells=" << grid.n_cells << '\n'
             << "steps=" << state.step_index << '\n'
             << "g_boundary_diff="
             << io::fmt(entropy_potential_G(flux, u_last0) -
                        entropy_potential_G(flux, u_first0))
             << '\n'
             << "diagnostics_passed=" << (checks.ok ? "true" : "false") << '\n';
        if (!checks.ok)
            meta << "first_failure=" << checks.failure << " (step " << checks.bad_step << ")\n";
    }

    // non-hysteretic comparison runs: same grid and times, hysteresis frozen
    // by a large amplitude and w0 = u0, with flux f and f/2
    if (sc.comparison == "non-hysteretic-pair") {
        const double a_big = 1e3 * std::max(1.0, uM0 - um0);
        for (const auto& [suffix, cmp_flux] :
             {std::pair<std::string, ConvexFlux>{"nohyst_full", flux},
              {"nohyst_half", scaled_flux(flux, 0.5, flux.id + "/2")}}) {
            SchemeConfig ccfg{cmp_flux, a_big, sc.cfl_fraction};
            FieldState cstate = project_initial(sc.u0(), sc.u0(), grid, a_big);
            // keep the hysteretic run's dt so curves are directly superposable
            for (double t : times) {
                if (t > 0.0) cstate = run(cstate, ccfg, grid, t, {}, {}, dt);
                io::write_snapshot(
                    art.directory / ("snapshot_t" + io::time_tag(t) + "_" + suffix + ".csv"),
                    grid, cstate);
            }
        }
    }

    // plot template: data-only emission, render with `gnuplot plot.gp`
    {
        std::ofstream gp(art.directory / "plot.gp");
        gp << "set datafile separator ','\n"
           << "set key outside\n"
           << "set xlabel 'x'\n";
        gp << "plot ";
        bool first = true;
        for (const auto& snap : art.snapshots) {
            const std::string file = snap.filename().string();
            if (!first) gp << ", \\\n     ";
            gp << "'" << file << "' using 1:2 with lines title '" << file << " u'"
               << ", '" << file << "' using 1:3 with lines dashtype 2 title '" << file
               << " w'";
            first = false;
        }
        gp << "\npause -1\n";
    }

    art.diagnostics_passed = checks.ok;
    art.failure = checks.ok ? "" : checks.failure;
    art.final_state = std::move(state);
    return art;
}

// ---------------------------------------------------------------------------
// Exact-fan comparison and the convergence study.

namespace cdetail {

/// integral of |c - v(x)| over [lo, hi] where v is continuous and monotone;
/// locate the crossing by bisection, then 5-point Gauss-Legendre per side.
inline double abs_diff_integral_monotone(const std::function<double(double)>& v, double c,
                                         double lo, double hi) {
    static const double gl_x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
    static const double gl_w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                   0.4786286704993665, 0.2369268850561891};
    const auto segment = [&](double p, double q) {
        double s = 0.0;
        for (int k = 0; k < 5; ++k)
            s += gl_w[k] * (c - v(0.5 * (p + q) + 0.5 * (q - p) * gl_x[k]));
        return std::abs(s * 0.5 * (q - p));
    };
    const double dlo = c - v(lo), dhi = c - v(hi);
    if (dlo == 0.0 || dhi == 0.0 || (dlo > 0) == (dhi > 0)) return segment(lo, hi);
    double p = lo, q = hi;
    for (int it = 0; it < 60 && (q - p) > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double m = 0.5 * (p + q);
        if (((c - v(m)) > 0) == (dlo > 0)) p = m;
        else q = m;
    }
    const double mid = 0.5 * (p + q);
    return segment(lo, mid) + segment(mid, hi);
}

}  // namespace cdetail

/// L1 distance between the piecewise-constant numerical snapshot and the
/// exact fan at time t, integrated cell by cell with cells split at the wave
/// edges (so shock cells are measured exactly, not quantized to the center
/// sample); components summed as in the L1 stability estimate.
inline double l1_error_vs_fan(const FieldState& s, const Grid1D& grid, const WaveFan& fan,
                              const ConvexFlux& f, double a, double t) {
    std::vector<double> edges;
    for (const auto& w : fan.waves) {
        const auto [s0, s1] = speed_range(w);
        edges.push_back(s0 * t);
        if (s1 != s0) edges.push_back(s1 * t);
    }
    std::sort(edges.begin(), edges.end());
    const auto u_at = [&](double x) { return sample(fan, x / t, f, a).u; };
    const auto w_at = [&](double x) { return sample(fan, x / t, f, a).w; };

    double err = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double xl = grid.x_interface(i), xr = grid.x_interface(i + 1);
        double lo = xl;
        const auto piece = [&](double p, double q) {
            if (q - p <= 0.0) return;
            // nudge off the piece edges so fan right-limits stay consistent
            const double eps = 1e-12 * std::max(1.0, std::abs(p) + std::abs(q));
            if (q - p <= 4.0 * eps) {
                const double xm = 0.5 * (p + q);
                err += (std::abs(s.u[i] - u_at(xm)) + std::abs(s.w[i] - w_at(xm))) * (q - p);
                return;
            }
            err += cdetail::abs_diff_integral_monotone(u_at, s.u[i], p + eps, q - eps);
            err += cdetail::abs_diff_integral_monotone(w_at, s.w[i], p + eps, q - eps);
        };
        for (double e : edges)
            if (e > lo && e < xr) {
                piece(lo, e);
                lo = e;
            }
        piece(lo, xr);
    }
    return err;
}

struct ConvergenceRow {
    double dx = 0.0;
    double error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double observed_order = 0.0;
    bool monotone = true;
};

/// L1 self-/exact-convergence over the given spacings.  Riemann scenarios
/// compare against the exact fan at t_end; other kinds compare against the
/// finest grid (dyadic restriction by cell averaging).
inline ConvergenceTable convergence_study(const Scenario& sc, std::vector<double> spacings) {
    if (spacings.size() < 2) throw std::invalid_argument("convergence_study: need >= 2 levels");
    std::sort(spacings.begin(), spacings.end(), std::greater<>());
    const ConvexFlux flux = flux_by_id(sc.flux_id);
    const double T = sc.t_end();
    ConvergenceTable table;

    if (sc.kind == "riemann") {
        const auto fan = solve(RiemannProblem{{sc.ul, sc.wl}, {sc.ur, sc.wr}, sc.a, flux});
        for (double dx : spacings) {
            Scenario fine = sc;
            fine.dx = dx;
            const Grid1D grid = fine.grid();
            SchemeConfig cfg{flux, sc.a, sc.cfl_fraction};
            FieldState state = project_initial(fine.u0(), fine.w0(), grid, sc.a);
            state = run(state, cfg, grid, T);
            table.rows.push_back({dx, l1_error_vs_fan(state, grid, fan, flux, sc.a, T)});
        }
    } else {
        Scenario finest = sc;
        finest.dx = spacings.back();
        const Grid1D fgrid = finest.grid();
        SchemeConfig cfg{flux, sc.a, sc.cfl_fraction};
        FieldState ref = project_initial(finest.u0(), finest.w0(), fgrid, sc.a);
        ref = run(ref, cfg, fgrid, T);
        for (double dx : spacings) {
            Scenario lvl = sc;
            lvl.dx = dx;
            const Grid1D grid = lvl.grid();
            const int ratio = static_cast<int>(std::llround(dx / spacings.back()));
            if (std::abs(ratio * spacings.back() - dx) > 1e-12)
                throw std::invalid_argument("convergence_study: spacings must nest dyadically");
            FieldState state = project_initial(lvl.u0(), lvl.w0(), grid, sc.a);
            state = run(state, cfg, grid, T);
            double err = 0.0;
            for (int i = 0; i < grid.n_cells; ++i) {
                double ru = 0.0, rw = 0.0;
                for (int k = 0; k < ratio; ++k) {
                    ru += ref.u[i * ratio + k];
                    rw += ref.w[i * ratio + k];
                }
                err += std::abs(state.u[i] - ru / ratio) + std::abs(state.w[i] - rw / ratio);
            }
            table.rows.push_back({dx, err * grid.dx});
        }
        table.rows.pop_back();  // the finest level is the reference itself
    }

    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i)
        if (table.rows[i + 1].error >= table.rows[i].error) table.monotone = false;
    // least-squares slope of log(err) vs log(dx)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(table.rows.size());
    for (const auto& r : table.rows) {
        const double lx = std::log(r.dx), ly = std::log(std::max(r.error, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    table.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

// ---------------------------------------------------------------------------
// riemann report

struct RiemannReport {
    std::string text;
    WaveFan fan;
};

inline RiemannReport riemann_report(const RiemannProblem& p, double t,
                                    const std::filesystem::path& csv_path = {}) {
    RiemannReport rep;
    rep.fan = solve(p);
    std::ostringstream os;
    os << "riemann problem: left (u,w) = (" << io::fmt(p.left.u) << ", " << io::fmt(p.left.w)
       << "), right = (" << io::fmt(p.right.u) << ", " << io::fmt(p.right.w)
       << "), a = " << io::fmt(p.a) << ", flux = " << p.flux.id << "\n";
    if (rep.fan.waves.empty()) os << "no waves\n";
    for (const auto& w : rep.fan.waves) {
        if (const auto* r = std::get_if<Rarefaction>(&w)) {
            os << "rarefaction  u: " << io::fmt(r->u_from) << " -> " << io::fmt(r->u_to)
               << "  speeds [" << io::fmt(r->speed_from) << ", " << io::fmt(r->speed_to) << "]  ";
            switch (r->w_mode) {
                case WMode::frozen: os << "w = " << io::fmt(r->w_value); break;
                case WMode::coupled_lower: os << "w = u - a"; break;
                case WMode::coupled_upper: os << "w = u + a"; break;
            }
            os << "\n";
        } else if (const auto* s = std::get_if<Shock>(&w)) {
            os << (s->kind == ShockKind::fast
                       ? "fast shock  "
                       : (s->kind == ShockKind::coupled ? "coupled shock  " : "shock  "))
               << "(" << io::fmt(s->left.u) << ", " << io::fmt(s->left.w) << ") -> ("
               << io::fmt(s->right.u) << ", " << io::fmt(s->right.w)
               << ")  speed " << io::fmt(s->sigma) << "\n";
        } else if (const auto* c = std::get_if<StationaryWContact>(&w)) {
            os << "stationary w-contact at x = 0:  w " << io::fmt(c->w_left) << " -> "
               << io::fmt(c->w_right) << "  (u = " << io::fmt(c->u) << ")\n";
        }
    }
    rep.text = os.str();

    if (!csv_path.empty()) {
        double smin = 0.0, smax = 0.0;
        for (const auto& w : rep.fan.waves) {
            const auto [s0, s1] = speed_range(w);
            smin = std::min(smin, s0);
            smax = std::max(smax, s1);
        }
        const double lo = (smin - 0.5) * std::max(t, 1.0), hi = (smax + 0.5) * std::max(t, 1.0);
        std::ofstream out(csv_path);
        out << "x,u,w\n";
        const int n = 2000;
        for (int i = 0; i <= n; ++i) {
            const double x = lo + (hi - lo) * i / n;
            const auto s = t > 0.0 ? sample(rep.fan, x / t, p) : (x < 0 ? p.left : p.right);
            out << io::fmt(x) << ',' << io::fmt(s.u) << ',' << io::fmt(s.w) << '\n';
        }
    }
    return rep;
}

}  // namespace playfv
