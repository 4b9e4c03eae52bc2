#include <array>
#include <cmath>
#include <vector>

#include "clustor/barrier.hpp"
#include "clustor/errors.hpp"
#include "clustor/experiment.hpp"
#include "clustor/free_clustor.hpp"
#include "clustor/oscillator.hpp"
#include "clustor/points.hpp"

namespace clustor {

namespace {

Dataset base_dataset(int id, const std::string& what) {
    Dataset ds;
    ds.add_meta("tool", kToolVersion);
    ds.add_meta("figure", static_cast<double>(id));
    ds.add_meta("content", what);
    return ds;
}

// cumulative-arctangent staircase g(x) = catan(a tan x) next to the
// principal-branch f(x)
Dataset catan_figure(int id, double a) {
    Dataset ds = base_dataset(id, "cumulative arctangent vs principal branch");
    ds.add_meta("a", a);
    ds.series_name = "series";
    ds.columns = {"x", "value"};
    auto num = [a](double x) { return a * std::sin(x); };
    auto den = [](double x) { return std::cos(x); };
    PhaseTrack track;
    const int n = 1601;
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i < n; ++i) {
        const double x = 4.0 * M_PI * i / (n - 1.0);
        const double g = catan_eval(num, den, 0.0, x, track, {64, 48, M_PI / 4});
        const double f = std::atan(num(x) / den(x));
        rows.push_back({x, f, g});
    }
    for (const auto& r : rows) ds.add_row("principal", {r[0], r[1]});
    for (const auto& r : rows) ds.add_row("cumulative", {r[0], r[2]});
    return ds;
}

FreeConfig paper_free(double A) {
    FreeConfig cfg;
    cfg.m = 1.0;
    cfg.E = 0.5;
    cfg.A = A;
    return cfg;
}

Dataset free_action_figure(int id, double A, double periods) {
    Dataset ds = base_dataset(id, "free action function with Newtonian line");
    ds.add_meta("A", A);
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "W_over_h"};
    const FreeConfig cfg = paper_free(A);
    PhaseTrack track;
    const int n = 1201;
    for (int i = 0; i < n; ++i) {
        const double xl = periods * i / (n - 1.0);
        const DynamicsPoint d = free_dynamics(cfg, xl * cfg.lambda(), track);
        ds.add_row("action", {xl, d.action / kPlanck});
    }
    for (int i = 0; i < n; ++i) {
        const double xl = periods * i / (n - 1.0);
        ds.add_row("newtonian", {xl, xl});  // W_N/h = x/lambda
    }
    return ds;
}

void append_worldline(Dataset& ds, const FreeConfig& cfg, double periods, int n) {
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    for (int i = 0; i < n; ++i) {
        const double xl = periods * i / (n - 1.0);
        ds.add_row("worldline", {xl, free_world_line(cfg, xl * cfg.lambda()) / t_unit});
    }
}

void append_snapshot(Dataset& ds, const FreeConfig& cfg, double t_star_units) {
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double t_star = t_star_units * t_unit;
    ClustorSnapshot snap = find_points([&](double x) { return free_world_line(cfg, x); }, t_star,
                                       free_window(cfg, t_star));
    assign_mass_energy(snap, cfg.m, cfg.E);
    for (const auto& p : snap.points)
        ds.add_row(p.sign == PointSign::positive ? "point_pos" : "point_neg",
                   {p.x / cfg.lambda(), t_star_units});
}

Dataset free_worldline_figure(int id, double A, double periods, double t_star_units) {
    Dataset ds = base_dataset(id, "free world-line with simultaneity intersections");
    ds.add_meta("A", A);
    ds.add_meta("t_star", t_star_units);
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "t"};
    const FreeConfig cfg = paper_free(A);
    append_worldline(ds, cfg, periods, 1601);
    append_snapshot(ds, cfg, t_star_units);
    return ds;
}

// the alpha2-only world line of a clustor whose action and momentum stay
// Newtonian; points are located within the figure window only
Dataset free_worldline_alpha2_figure(int id) {
    Dataset ds = base_dataset(id, "world-line with secondary activation only");
    FreeConfig cfg = paper_free(1.0);
    cfg.C = 0.0;
    cfg.D = 10.0;  // alpha2 = 5, phi2 = 0
    ds.add_meta("alpha2", 5.0);
    ds.add_meta("t_star", 8.0);
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "t"};
    append_worldline(ds, cfg, 3.0, 1201);
    append_snapshot(ds, cfg, 8.0);
    return ds;
}

Dataset free_worldline_high_figure(int id) {
    // alpha1 = .999; the simultaneity line t = 320 crosses far outside any
    // practical plot window, so the figure clips to the first few points
    Dataset ds = base_dataset(id, "highly activated world-line, first clustor points");
    const FreeConfig cfg = paper_free(0.022);
    ds.add_meta("A", cfg.A);
    ds.add_meta("t_star", 320.0);
    ds.add_meta("window", "clipped to the plotted range; point set is partial");
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "t"};
    const double periods = 10.0;
    append_worldline(ds, cfg, periods, 2401);
    // local bracketing without the closure contract
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double t_star = 320.0 * t_unit;
    const int n = 20000;
    double px = 0.0, pf = free_world_line(cfg, 0.0) - t_star;
    for (int i = 1; i < n; ++i) {
        const double x = periods * cfg.lambda() * i / (n - 1.0);
        const double f = free_world_line(cfg, x) - t_star;
        if (pf * f < 0.0) {
            double a = px, b = x;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                ((free_world_line(cfg, m) - t_star) * pf <= 0.0 ? b : a) = m;
            }
            const double root = 0.5 * (a + b);
            const double h = 1e-9 * (1.0 + root);
            const bool pos =
                free_world_line(cfg, root + h) - free_world_line(cfg, root - h) >= 0.0;
            ds.add_row(pos ? "point_pos" : "point_neg", {root / cfg.lambda(), 320.0});
        }
        px = x;
        pf = f;
    }
    return ds;
}

Dataset barrier_action_figure(int id) {
    Dataset ds = base_dataset(id, "action through a rectangular barrier");
    BarrierConfig cfg;
    cfg.m = 1.0;
    cfg.E = 0.5;
    cfg.V = 0.99 * cfg.E;
    cfg.x0 = 0.0;
    cfg.x1 = 2.0 * cfg.lambda();
    cfg.x2 = 3.0 * cfg.lambda();
    ds.add_meta("V_over_E", 0.99);
    ds.add_meta("x1_over_lambda", 2.0);
    ds.add_meta("x2_over_lambda", 3.0);
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "W_over_h"};
    PhaseTrack track;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double xl = 5.0 * i / (n - 1.0);
        ds.add_row("action", {xl, barrier_action(cfg, xl * cfg.lambda(), track) / kPlanck});
    }
    for (int i = 0; i < n; ++i) {
        const double xl = 5.0 * i / (n - 1.0);
        ds.add_row("newtonian", {xl, xl});
    }
    return ds;
}

OscConfig paper_osc(double eta, double a) {
    OscConfig cfg;
    cfg.eta = eta;
    cfg.a = a;
    return cfg;
}

Dataset osc_action_figure(int id, double eta, double a, double half_range, int n = 1601) {
    Dataset ds = base_dataset(id, "oscillator action function");
    ds.add_meta("eta", eta);
    ds.add_meta("a", a);
    ds.series_name = "series";
    ds.columns = {"mu_x", "W_over_h"};
    const OscConfig cfg = paper_osc(eta, a);
    PhaseTrack track;
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        ds.add_row("action", {z, osc_dynamics(cfg, z, track).action / kPlanck});
    }
    const double X = std::sqrt(2.0 * eta + 1.0);
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        if (std::abs(z) <= X)
            ds.add_row("newtonian", {z, newtonian_osc(eta, z).action / kPlanck});
    }
    return ds;
}

Dataset osc_phase_figure(int id, double eta, double a, double half_range) {
    Dataset ds = base_dataset(id, "oscillator phase-space trajectory");
    ds.add_meta("eta", eta);
    ds.add_meta("a", a);
    ds.series_name = "series";
    ds.columns = {"mu_x", "p_over_hbar_mu"};
    const OscConfig cfg = paper_osc(eta, a);
    const int n = 1601;
    PhaseTrack track;
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        ds.add_row("clustor", {z, osc_dynamics(cfg, z, track).momentum});
    }
    const double X = std::sqrt(2.0 * eta + 1.0);
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        if (std::abs(z) <= X)
            ds.add_row("newtonian", {z, newtonian_osc(eta, z).momentum});
    }
    return ds;
}

Dataset osc_worldline_figure(int id, double eta, double a, double half_range) {
    Dataset ds = base_dataset(id, "oscillator world-line");
    ds.add_meta("eta", eta);
    ds.add_meta("a", a);
    ds.series_name = "series";
    ds.columns = {"mu_x", "t_over_tau_N"};
    const OscConfig cfg = paper_osc(eta, a);
    const int n = 1601;
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        ds.add_row("clustor", {z, osc_world_line(cfg, z) / (2.0 * M_PI)});
    }
    const double X = std::sqrt(2.0 * eta + 1.0);
    for (int i = 0; i < n; ++i) {
        const double z = -half_range + 2.0 * half_range * i / (n - 1.0);
        if (std::abs(z) <= X)
            ds.add_row("newtonian", {z, newtonian_osc(eta, z).time / (2.0 * M_PI)});
    }
    return ds;
}

Dataset osc_freq_figure(int id) {
    Dataset ds = base_dataset(id, "quasi-Newtonian frequency ratio vs energy");
    ds.columns = {"eta", "omega_over_omega_N"};
    const int n = 120;
    for (int i = 0; i < n; ++i) {
        const double eta = -0.49 + (15.0 + 0.49) * i / (n - 1.0);
        ds.add_row({eta, 2.0 * M_PI / osc_period(paper_osc(eta, 1.0))});
    }
    return ds;
}

Dataset osc_action_scan_figure(int id, std::vector<double> activations, int n_eta) {
    Dataset ds = base_dataset(id, "full-cycle action vs energy");
    ds.series_name = "series";
    ds.columns = {"eta", "J_over_h"};
    for (double a : activations) {
        const std::string tag = "a=" + format_double(a);
        for (int i = 0; i < n_eta; ++i) {
            const double eta = -0.49 + (6.5 + 0.49) * i / (n_eta - 1.0);
            ds.add_row(tag, {eta, full_cycle_action(paper_osc(eta, a)) / kPlanck});
        }
    }
    const int n = n_eta;
    for (int i = 0; i < n; ++i) {
        const double eta = -0.49 + (6.5 + 0.49) * i / (n - 1.0);
        ds.add_row("newtonian", {eta, eta + 0.5});
    }
    return ds;
}

Dataset osc_quantization_figure(int id, std::vector<double> activations) {
    Dataset ds = base_dataset(id, "quasi-discrete action increments vs energy");
    ds.series_name = "series";
    ds.columns = {"eta", "J_over_h"};
    for (double a : activations) {
        const QuantizationScan scan = quantization_scan(a, -0.5, 6.5, 400);
        const std::string tag = "a=" + format_double(a);
        std::string steps;
        for (const auto& s : scan.steps) {
            if (!steps.empty()) steps += "; ";
            steps += format_double(s.eta) + ":" + format_double(s.size / kPlanck);
        }
        ds.add_meta("steps[" + tag + "](eta:size_over_h)", steps);
        for (std::size_t i = 0; i < scan.eta.size(); ++i)
            ds.add_row(tag, {scan.eta[i], scan.action[i] / kPlanck});
    }
    return ds;
}

Dataset osc_density_figure(int id, double eta, double half_range) {
    Dataset ds = base_dataset(id, "probability density for position");
    ds.add_meta("eta", eta);
    ds.series_name = "series";
    ds.columns = {"mu_x", "density"};
    const int n = 801;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = -half_range + 2.0 * half_range * i / (n - 1.0);
    const DensityResult res = osc_density(paper_osc(eta, 1.0), grid);
    for (int i = 0; i < n; ++i) ds.add_row("clustor", {grid[i], res.density[i]});
    for (int i = 0; i < n; ++i)
        if (res.newtonian[i] > 0.0) ds.add_row("newtonian", {grid[i], res.newtonian[i]});
    if (std::abs(eta) < 1e-12)
        for (int i = 0; i < n; ++i)
            ds.add_row("standard", {grid[i], ground_state_density(grid[i])});
    return ds;
}

}  // namespace

int figure_count() { return 26; }

Dataset figure_dataset(int id) {
    switch (id) {
        case 1: return catan_figure(id, 0.02);
        case 2: return catan_figure(id, 50.0);
        case 3: return free_action_figure(id, 0.378, 4.0);
        case 4: return free_action_figure(id, 0.022, 4.0);
        case 5: return free_worldline_figure(id, 0.378, 4.0, 4.5);
        case 6: return free_worldline_high_figure(id);
        case 7: return free_worldline_alpha2_figure(id);
        case 8: return barrier_action_figure(id);
        case 9: return osc_action_figure(id, 0.0, 1.0, 2.5);
        case 10: return osc_action_figure(id, 12.0, 1.0, 6.0);
        case 11: return osc_phase_figure(id, 0.0, 1.0, 2.5);
        case 12: return osc_phase_figure(id, 12.0, 1.0, 6.0);
        case 13: return osc_freq_figure(id);
        case 14: return osc_action_scan_figure(id, {1.0}, 60);
        case 15: return osc_density_figure(id, 0.0, 4.0);
        case 16: return osc_density_figure(id, 12.0, 8.0);
        case 17: return osc_worldline_figure(id, 0.0, 1.0, 6.0);
        case 18: return osc_worldline_figure(id, 12.0, 1.0, 8.0);
        case 19: return osc_action_figure(id, 12.0, 0.8, 6.0);
        case 20: return osc_worldline_figure(id, 12.0, 0.1, 6.0);
        case 21: return osc_quantization_figure(id, {0.005, 200.0});
        case 22: return osc_action_figure(id, 3.99, 1e-4, 5.0, 3001);
        case 23: return osc_action_figure(id, 4.0, 1e-4, 5.0, 3001);
        case 24: return osc_action_figure(id, 4.01, 1e-4, 5.0, 3001);
        case 25: return osc_action_figure(id, 5.99, 1e-4, 5.5, 3001);
        case 26: return osc_action_scan_figure(id, {0.25, 4.0}, 120);
        default:
            throw UnknownFigure("cli", "figure id must be between 1 and 26, got " +
                                           std::to_string(id));
    }
}

}  // namespace clustor
