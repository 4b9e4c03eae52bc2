#include "clustor/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "clustor/barrier.hpp"
#include "clustor/errors.hpp"
#include "clustor/free_clustor.hpp"
#include "clustor/oscillator.hpp"
#include "clustor/points.hpp"

namespace clustor {

namespace {

constexpr const char* kModule = "cli";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig(kModule, "value for '" + key + "' is not a number: " + value);
    }
}

const std::set<std::string> kSystems = {"free", "barrier", "oscillator"};
const std::set<std::string> kExperiments = {"dynamics_grid", "activation",        "density",
                                            "period_scan",   "action_scan",       "quantization_scan",
                                            "snapshot",      "sweep"};

const std::map<std::string, std::set<std::string>> kAllowedParams = {
    {"free", {"m", "E", "A", "B", "C", "D", "t_star", "t_from", "t_to", "frames"}},
    {"barrier", {"m", "E", "V", "V_over_E", "x0", "x1", "x2", "A", "B"}},
    {"oscillator", {"eta", "a", "B", "C", "D", "t_star", "t_from", "t_to", "frames"}},
};

const std::map<std::string, std::set<std::string>> kAllowedExperiments = {
    {"free", {"dynamics_grid", "activation", "snapshot", "sweep"}},
    {"barrier", {"dynamics_grid", "activation"}},
    {"oscillator",
     {"dynamics_grid", "density", "period_scan", "action_scan", "quantization_scan", "snapshot",
      "sweep"}},
};

double get_param(const ExperimentSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

double require_param(const ExperimentSpec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end())
        throw InvalidConfig(kModule, "missing required parameter '" + key + "'");
    return it->second;
}

FreeConfig free_config(const ExperimentSpec& spec) {
    FreeConfig cfg;
    cfg.m = get_param(spec, "m", 1.0);
    cfg.E = get_param(spec, "E", 0.5);
    cfg.A = get_param(spec, "A", 1.0);
    cfg.B = get_param(spec, "B", 0.0);
    cfg.C = get_param(spec, "C", 0.0);
    cfg.D = get_param(spec, "D", 0.0);
    cfg.validate();
    return cfg;
}

BarrierConfig barrier_config(const ExperimentSpec& spec) {
    BarrierConfig cfg;
    cfg.m = get_param(spec, "m", 1.0);
    cfg.E = get_param(spec, "E", 0.5);
    if (spec.params.count("V_over_E"))
        cfg.V = spec.params.at("V_over_E") * cfg.E;
    else
        cfg.V = require_param(spec, "V");
    cfg.x0 = get_param(spec, "x0", 0.0);
    cfg.x1 = require_param(spec, "x1");
    cfg.x2 = require_param(spec, "x2");
    cfg.A = get_param(spec, "A", 1.0);
    cfg.B = get_param(spec, "B", 0.0);
    cfg.validate();
    return cfg;
}

OscConfig osc_config(const ExperimentSpec& spec) {
    OscConfig cfg;
    cfg.eta = require_param(spec, "eta");
    cfg.a = get_param(spec, "a", 1.0);
    if (spec.params.count("B")) cfg.b_override = spec.params.at("B");
    if (spec.params.count("C")) cfg.c_override = spec.params.at("C");
    if (spec.params.count("D")) cfg.d_override = spec.params.at("D");
    cfg.validate();
    return cfg;
}

void require_grid(const ExperimentSpec& spec) {
    if (!spec.has_grid)
        throw InvalidConfig(kModule, "experiment '" + spec.experiment + "' needs a [grid] section");
    if (spec.grid_n < 2) throw InvalidConfig(kModule, "grid.n must be at least 2");
    if (!(spec.grid_to > spec.grid_from))
        throw InvalidConfig(kModule, "grid.to must exceed grid.from");
}

std::vector<double> grid_points(const ExperimentSpec& spec) {
    std::vector<double> xs(spec.grid_n);
    for (int i = 0; i < spec.grid_n; ++i)
        xs[i] = spec.grid_from + (spec.grid_to - spec.grid_from) * i / (spec.grid_n - 1.0);
    return xs;
}

void stamp_metadata(Dataset& ds, const ExperimentSpec& spec, const std::string& units_note) {
    ds.add_meta("tool", kToolVersion);
    ds.add_meta("system", spec.system);
    ds.add_meta("experiment", spec.experiment);
    for (const auto& [k, v] : spec.params) ds.add_meta("param." + k, v);
    if (spec.has_grid) {
        ds.add_meta("grid.from", spec.grid_from);
        ds.add_meta("grid.to", spec.grid_to);
        ds.add_meta("grid.n", static_cast<double>(spec.grid_n));
    }
    ds.add_meta("tol", spec.tol);
    ds.add_meta("units", units_note);
}

// ---- free experiments ----

Dataset run_free_dynamics(const ExperimentSpec& spec) {
    require_grid(spec);
    const FreeConfig cfg = free_config(spec);
    Dataset ds;
    stamp_metadata(ds, spec, "x in lambda, W in h, p in hbar*k, t in m/(hbar*k^2)");
    ds.series_name = "series";
    ds.columns = {"x_over_lambda", "value"};
    const double k = cfg.k(), lam = cfg.lambda();
    PhaseTrack track;
    std::vector<std::array<double, 4>> samples;
    for (double xl : grid_points(spec)) {
        const double x = xl * lam;
        const DynamicsPoint d = free_dynamics(cfg, x, track);
        samples.push_back({xl, d.action / kPlanck, d.momentum / (kHBar * k),
                           d.time / (cfg.m / (kHBar * k * k))});
    }
    for (const auto& s : samples) ds.add_row("action", {s[0], s[1]});
    for (const auto& s : samples) ds.add_row("momentum", {s[0], s[2]});
    for (const auto& s : samples) ds.add_row("time", {s[0], s[3]});
    return ds;
}

Dataset run_free_activation(const ExperimentSpec& spec) {
    const FreeConfig cfg = free_config(spec);
    const FreeActivation act = free_activation(cfg);
    Dataset ds;
    stamp_metadata(ds, spec, "dimensionless");
    ds.columns = {"alpha1", "phi1", "alpha2", "phi2"};
    ds.add_row({act.alpha1, act.phi1, act.alpha2, act.phi2});
    return ds;
}

Dataset snapshot_dataset(const ClustorSnapshot& snap, const ExperimentSpec& spec, double m,
                         double energy, const std::string& units_note, double x_unit) {
    Dataset ds;
    stamp_metadata(ds, spec, units_note);
    ds.add_meta("t_star", snap.t_star);
    ds.add_meta("window_lo", snap.x_lo);
    ds.add_meta("window_hi", snap.x_hi);
    ds.add_meta("point_count", static_cast<double>(snap.points.size()));
    ds.columns = {"x", "sign", "mass", "energy"};
    for (const auto& p : snap.points)
        ds.add_row({p.x / x_unit, p.sign == PointSign::positive ? 1.0 : -1.0, p.mass / m,
                    p.energy / energy});
    return ds;
}

Dataset run_free_snapshot(const ExperimentSpec& spec) {
    const FreeConfig cfg = free_config(spec);
    const double t_star_units = require_param(spec, "t_star");
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double t_star = t_star_units * t_unit;
    ClustorSnapshot snap = find_points([&](double x) { return free_world_line(cfg, x); }, t_star,
                                       free_window(cfg, t_star));
    assign_mass_energy(snap, cfg.m, cfg.E);
    return snapshot_dataset(snap, spec, cfg.m, cfg.E,
                            "x in lambda, t_star in m/(hbar*k^2), mass in m, energy in E",
                            cfg.lambda());
}

Dataset run_free_sweep(const ExperimentSpec& spec) {
    const FreeConfig cfg = free_config(spec);
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double t_from = require_param(spec, "t_from") * t_unit;
    const double t_to = require_param(spec, "t_to") * t_unit;
    const int frames = static_cast<int>(require_param(spec, "frames"));
    auto frames_list = sweep([&](double x) { return free_world_line(cfg, x); }, t_from, t_to,
                             frames, [&](double ts) { return free_window(cfg, ts); });
    Dataset ds;
    stamp_metadata(ds, spec, "x in lambda, t in m/(hbar*k^2), mass in m, energy in E");
    ds.columns = {"frame", "t_star", "x", "sign", "mass", "energy"};
    int invalid = 0;
    for (std::size_t i = 0; i < frames_list.size(); ++i) {
        auto& fr = frames_list[i];
        if (!fr.valid) {
            ++invalid;
            continue;
        }
        assign_mass_energy(fr.snapshot, cfg.m, cfg.E);
        for (const auto& p : fr.snapshot.points)
            ds.add_row({static_cast<double>(i), fr.snapshot.t_star / t_unit, p.x / cfg.lambda(),
                        p.sign == PointSign::positive ? 1.0 : -1.0, p.mass / cfg.m,
                        p.energy / cfg.E});
    }
    ds.add_meta("invalid_frames", static_cast<double>(invalid));
    return ds;
}

// ---- barrier experiments ----

Dataset run_barrier_dynamics(const ExperimentSpec& spec) {
    require_grid(spec);
    const BarrierConfig cfg = barrier_config(spec);
    Dataset ds;
    stamp_metadata(ds, spec, "x in lambda, W in h");
    ds.columns = {"x_over_lambda", "W_over_h"};
    PhaseTrack track;
    for (double xl : grid_points(spec)) {
        const double x = xl * cfg.lambda();
        ds.add_row({xl, barrier_action(cfg, x, track) / kPlanck});
    }
    return ds;
}

Dataset run_barrier_activation(const ExperimentSpec& spec) {
    const BarrierConfig cfg = barrier_config(spec);
    const FreeActivation in = region1_activation(cfg);
    const FreeActivation out = region3_activation(cfg);
    Dataset ds;
    stamp_metadata(ds, spec, "dimensionless");
    ds.add_meta("incident_alpha1", in.alpha1);
    ds.add_meta("incident_alpha2", in.alpha2);
    ds.columns = {"alpha1", "phi1", "alpha2", "phi2"};
    ds.add_row({out.alpha1, out.phi1, out.alpha2, out.phi2});
    return ds;
}

// ---- oscillator experiments ----

Dataset run_osc_dynamics(const ExperimentSpec& spec) {
    require_grid(spec);
    const OscConfig cfg = osc_config(spec);
    Dataset ds;
    stamp_metadata(ds, spec, "x in 1/mu, W in h, p in hbar*mu, t in tau_N");
    ds.series_name = "series";
    ds.columns = {"mu_x", "value"};
    PhaseTrack track;
    std::vector<std::array<double, 4>> samples;
    for (double z : grid_points(spec)) {
        const DynamicsPoint d = osc_dynamics(cfg, z, track);
        samples.push_back({z, d.action / kPlanck, d.momentum, d.time / (2.0 * M_PI)});
    }
    for (const auto& s : samples) ds.add_row("action", {s[0], s[1]});
    for (const auto& s : samples) ds.add_row("momentum", {s[0], s[2]});
    for (const auto& s : samples) ds.add_row("time", {s[0], s[3]});
    return ds;
}

Dataset run_osc_density(const ExperimentSpec& spec) {
    require_grid(spec);
    const OscConfig cfg = osc_config(spec);
    const DensityResult res = osc_density(cfg, grid_points(spec));
    Dataset ds;
    stamp_metadata(ds, spec, "x in 1/mu, densities in mu");
    ds.add_meta("tail_fraction", res.tail_fraction);
    const bool ground = std::abs(cfg.eta) < 1e-12;
    ds.columns = ground ? std::vector<std::string>{"mu_x", "P", "P_newton", "P_standard"}
                        : std::vector<std::string>{"mu_x", "P", "P_newton"};
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        if (ground)
            ds.add_row({res.grid[i], res.density[i], res.newtonian[i],
                        ground_state_density(res.grid[i])});
        else
            ds.add_row({res.grid[i], res.density[i], res.newtonian[i]});
    }
    return ds;
}

Dataset run_osc_period_scan(const ExperimentSpec& spec) {
    require_grid(spec);
    const double a = get_param(spec, "a", 1.0);
    Dataset ds;
    stamp_metadata(ds, spec, "tau in tau_N");
    ds.columns = {"eta", "tau_over_tau_N", "omega_over_omega_N"};
    for (double eta : grid_points(spec)) {
        OscConfig cfg;
        cfg.eta = eta;
        cfg.a = a;
        const double tau = osc_period(cfg) / (2.0 * M_PI);
        ds.add_row({eta, tau, 1.0 / tau});
    }
    return ds;
}

Dataset run_osc_action_scan(const ExperimentSpec& spec) {
    require_grid(spec);
    const double a = get_param(spec, "a", 1.0);
    Dataset ds;
    stamp_metadata(ds, spec, "J in h");
    ds.columns = {"eta", "J_over_h", "J_newton_over_h"};
    for (double eta : grid_points(spec)) {
        OscConfig cfg;
        cfg.eta = eta;
        cfg.a = a;
        ds.add_row({eta, full_cycle_action(cfg) / kPlanck, eta + 0.5});
    }
    return ds;
}

Dataset run_osc_quantization(const ExperimentSpec& spec) {
    require_grid(spec);
    const double a = require_param(spec, "a");
    const QuantizationScan scan = quantization_scan(a, spec.grid_from, spec.grid_to, spec.grid_n);
    Dataset ds;
    stamp_metadata(ds, spec, "J in h");
    std::ostringstream steps;
    for (const auto& s : scan.steps) {
        if (steps.tellp() > 0) steps << "; ";
        steps << format_double(s.eta) << ":" << format_double(s.size / kPlanck);
    }
    ds.add_meta("steps(eta:size_over_h)", steps.str());
    ds.columns = {"eta", "J_over_h"};
    for (std::size_t i = 0; i < scan.eta.size(); ++i)
        ds.add_row({scan.eta[i], scan.action[i] / kPlanck});
    return ds;
}

std::pair<double, double> osc_window(const OscConfig& cfg, double t_star) {
    // expand symmetrically into the exponentially flat tail until the
    // 5-sample monotone-exit test can hold
    double z = std::sqrt(2.0 * cfg.eta + 1.0) + 3.0;
    const double cap = 24.0;
    while (z < cap) {
        const double t_hi = osc_world_line(cfg, z);
        const double t_lo = osc_world_line(cfg, -z);
        if (t_lo < t_star && t_star < t_hi) return {-z, z};
        z *= 1.3;
    }
    return {-cap, cap};
}

Dataset run_osc_snapshot(const ExperimentSpec& spec) {
    const OscConfig cfg = osc_config(spec);
    const double t_star = require_param(spec, "t_star") * 2.0 * M_PI;  // given in tau_N
    ClustorSnapshot snap = find_points([&](double z) { return osc_world_line(cfg, z); }, t_star,
                                       osc_window(cfg, t_star), 4096);
    assign_mass_energy(snap, 1.0, cfg.eta + 0.5);
    return snapshot_dataset(snap, spec, 1.0, cfg.eta + 0.5,
                            "x in 1/mu, t_star in tau_N, mass in m, energy in E", 1.0);
}

Dataset run_osc_sweep(const ExperimentSpec& spec) {
    const OscConfig cfg = osc_config(spec);
    const double t_from = require_param(spec, "t_from") * 2.0 * M_PI;
    const double t_to = require_param(spec, "t_to") * 2.0 * M_PI;
    const int frames = static_cast<int>(require_param(spec, "frames"));
    auto frames_list = sweep([&](double z) { return osc_world_line(cfg, z); }, t_from, t_to,
                             frames, [&](double ts) { return osc_window(cfg, ts); }, 4096);
    Dataset ds;
    stamp_metadata(ds, spec, "x in 1/mu, t in tau_N, mass in m, energy in E");
    ds.columns = {"frame", "t_star", "x", "sign", "mass", "energy"};
    int invalid = 0;
    for (std::size_t i = 0; i < frames_list.size(); ++i) {
        auto& fr = frames_list[i];
        if (!fr.valid) {
            ++invalid;
            continue;
        }
        assign_mass_energy(fr.snapshot, 1.0, cfg.eta + 0.5);
        for (const auto& p : fr.snapshot.points)
            ds.add_row({static_cast<double>(i), fr.snapshot.t_star / (2.0 * M_PI), p.x,
                        p.sign == PointSign::positive ? 1.0 : -1.0, p.mass,
                        p.energy / (cfg.eta + 0.5)});
    }
    ds.add_meta("invalid_frames", static_cast<double>(invalid));
    return ds;
}

}  // namespace

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig(kModule, "cannot open spec file: " + path);
    ExperimentSpec spec;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (section != "experiment" && section != "parameters" && section != "grid" &&
                section != "output")
                throw InvalidConfig(kModule, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig(kModule,
                                "line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        apply_override(spec, section + "." + key + "=" + value);
    }
    return spec;
}

void apply_override(ExperimentSpec& spec, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw InvalidConfig(kModule, "override must be section.key=value: " + assignment);
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw InvalidConfig(kModule, "override key needs a section prefix: " + path);
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);

    if (section == "experiment") {
        if (key == "system")
            spec.system = value;
        else if (key == "type")
            spec.experiment = value;
        else
            throw InvalidConfig(kModule, "unknown key 'experiment." + key + "'");
    } else if (section == "parameters") {
        spec.params[key] = parse_number(key, value);
    } else if (section == "grid") {
        spec.has_grid = true;
        if (key == "from")
            spec.grid_from = parse_number(key, value);
        else if (key == "to")
            spec.grid_to = parse_number(key, value);
        else if (key == "n")
            spec.grid_n = static_cast<int>(parse_number(key, value));
        else
            throw InvalidConfig(kModule, "unknown key 'grid." + key + "'");
    } else if (section == "output") {
        if (key == "format")
            spec.format = value;
        else if (key == "path")
            spec.out_path = value;
        else
            throw InvalidConfig(kModule, "unknown key 'output." + key + "'");
    } else {
        throw InvalidConfig(kModule, "unknown section '" + section + "'");
    }
}

void validate_spec(const ExperimentSpec& spec) {
    if (!kSystems.count(spec.system))
        throw InvalidConfig(kModule, "unknown system '" + spec.system + "'");
    if (!kExperiments.count(spec.experiment))
        throw InvalidConfig(kModule, "unknown experiment '" + spec.experiment + "'");
    if (!kAllowedExperiments.at(spec.system).count(spec.experiment))
        throw InvalidConfig(kModule, "experiment '" + spec.experiment +
                                         "' is not available for system '" + spec.system + "'");
    const auto& allowed = kAllowedParams.at(spec.system);
    for (const auto& [k, v] : spec.params) {
        (void)v;
        if (!allowed.count(k))
            throw InvalidConfig(kModule,
                                "unknown parameter '" + k + "' for system '" + spec.system + "'");
    }
    if (spec.format != "csv" && spec.format != "json")
        throw InvalidConfig(kModule, "unknown output format '" + spec.format + "'");
}

Dataset run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    if (spec.system == "free") {
        if (spec.experiment == "dynamics_grid") return run_free_dynamics(spec);
        if (spec.experiment == "activation") return run_free_activation(spec);
        if (spec.experiment == "snapshot") return run_free_snapshot(spec);
        if (spec.experiment == "sweep") return run_free_sweep(spec);
    } else if (spec.system == "barrier") {
        if (spec.experiment == "dynamics_grid") return run_barrier_dynamics(spec);
        if (spec.experiment == "activation") return run_barrier_activation(spec);
    } else if (spec.system == "oscillator") {
        if (spec.experiment == "dynamics_grid") return run_osc_dynamics(spec);
        if (spec.experiment == "density") return run_osc_density(spec);
        if (spec.experiment == "period_scan") return run_osc_period_scan(spec);
        if (spec.experiment == "action_scan") return run_osc_action_scan(spec);
        if (spec.experiment == "quantization_scan") return run_osc_quantization(spec);
        if (spec.experiment == "snapshot") return run_osc_snapshot(spec);
        if (spec.experiment == "sweep") return run_osc_sweep(spec);
    }
    throw InvalidConfig(kModule, "unhandled experiment");
}

std::string render(const Dataset& ds, const std::string& format) {
    return format == "json" ? to_json(ds) : to_csv(ds);
}

}  // namespace clustor
