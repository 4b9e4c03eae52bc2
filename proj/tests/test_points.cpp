#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "clustor/errors.hpp"
#include "clustor/free_clustor.hpp"
#include "clustor/kinematics.hpp"
#include "clustor/oscillator.hpp"
#include "clustor/points.hpp"

using namespace clustor;

namespace {

FreeConfig mod_activated() {
    FreeConfig cfg;
    cfg.A = 0.378;  // alpha1 = .75
    return cfg;
}

ClustorSnapshot free_snapshot(const FreeConfig& cfg, double t_star_units) {
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double t_star = t_star_units * t_unit;
    ClustorSnapshot s = find_points([&](double x) { return free_world_line(cfg, x); }, t_star,
                                    free_window(cfg, t_star));
    return assign_mass_energy(s, cfg.m, cfg.E);
}

}  // namespace

TEST_CASE("an unactivated state has exactly one point moving at hbar k / m") {
    FreeConfig cfg;  // A = 1
    for (double ts : {0.8, 3.0, 7.5}) {
        const ClustorSnapshot s = free_snapshot(cfg, ts);
        REQUIRE(s.points.size() == 1);
        // x = (hbar k / m) t  ->  k x = t in natural units
        CHECK(s.points[0].x * cfg.k() == doctest::Approx(ts).epsilon(1e-9));
        CHECK(s.points[0].sign == PointSign::positive);
        CHECK(s.points[0].mass == cfg.m);
        CHECK(s.points[0].energy == cfg.E);
    }
}

TEST_CASE("the moderately activated state has five points at t = 4.5") {
    const ClustorSnapshot s = free_snapshot(mod_activated(), 4.5);
    REQUIRE(s.points.size() == 5);
    // classes alternate starting and ending positive
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const PointSign expect = (i % 2 == 0) ? PointSign::positive : PointSign::negative;
        CHECK(s.points[i].sign == expect);
    }
    // masses alternate +m, -m, ... and sum to m; energies likewise
    double mass_sum = 0.0, energy_sum = 0.0;
    for (const auto& p : s.points) {
        mass_sum += p.mass;
        energy_sum += p.energy;
    }
    CHECK(mass_sum == doctest::Approx(1.0));
    CHECK(energy_sum == doctest::Approx(0.5));
}

TEST_CASE("alpha2-only activation keeps the point count at seven or fewer") {
    FreeConfig cfg;
    cfg.C = 0.0;
    cfg.D = 10.0;  // alpha1 = 0, alpha2 = 5
    int max_count = 0;
    for (int i = 0; i <= 40; ++i) {
        const double ts = 2.0 + 18.0 * i / 40.0;
        const ClustorSnapshot s = free_snapshot(cfg, ts);
        max_count = std::max(max_count, static_cast<int>(s.points.size()));
    }
    CHECK(max_count <= 7);
    CHECK(max_count >= 3);  // discretely extended at least some of the time
}

TEST_CASE("random snapshots satisfy the parity rules") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> dA(0.1, 1.5), dB(-0.8, 0.8), dCD(-3.0, 3.0),
        dt(1.0, 30.0);
    for (int i = 0; i < 120; ++i) {
        FreeConfig cfg;
        cfg.A = dA(rng);
        cfg.B = dB(rng);
        cfg.C = dCD(rng);
        cfg.D = dCD(rng);
        const ClustorSnapshot s = free_snapshot(cfg, dt(rng));
        if (s.has_merged) continue;
        CHECK(s.points.size() % 2 == 1);
        int pos = 0, neg = 0;
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            (s.points[j].sign == PointSign::positive ? pos : neg)++;
            if (j > 0) CHECK(s.points[j].sign != s.points[j - 1].sign);
        }
        CHECK(pos == neg + 1);
    }
}

TEST_CASE("oscillator snapshots satisfy the parity rules") {
    std::mt19937 rng(62);
    std::uniform_real_distribution<double> de(0.5, 10.0), da(0.1, 0.9), dt(-0.6, 0.6);
    for (int i = 0; i < 80; ++i) {
        OscConfig cfg;
        cfg.eta = de(rng);
        cfg.a = da(rng);
        const double z_edge = std::sqrt(2.0 * cfg.eta + 1.0) + 6.0;
        const double t_span = osc_world_line(cfg, z_edge);
        const double t_star = dt(rng) * t_span;
        ClustorSnapshot s =
            find_points([&](double z) { return osc_world_line(cfg, z); }, t_star,
                        {-z_edge, z_edge}, 4096);
        assign_mass_energy(s, 1.0, cfg.eta + 0.5);
        if (s.has_merged) continue;
        CHECK(s.points.size() % 2 == 1);
        int pos = 0, neg = 0;
        for (const auto& p : s.points) (p.sign == PointSign::positive ? pos : neg)++;
        CHECK(pos == neg + 1);
    }
}

TEST_CASE("sweep counts change only in steps of two") {
    const FreeConfig cfg = mod_activated();
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    auto frames = sweep([&](double x) { return free_world_line(cfg, x); }, 2.0 * t_unit,
                        14.0 * t_unit, 120, [&](double ts) { return free_window(cfg, ts); });
    int last = -1;
    for (const auto& fr : frames) {
        REQUIRE(fr.valid);
        if (fr.snapshot.has_merged) {
            last = -1;  // tangency frame: counts unreliable
            continue;
        }
        const int n = static_cast<int>(fr.snapshot.points.size());
        if (last > 0) CHECK(std::abs(n - last) % 2 == 0);
        if (last > 0) CHECK(std::abs(n - last) <= 2);
        last = n;
    }
}

TEST_CASE("new points appear on the right as time advances") {
    const FreeConfig cfg = mod_activated();
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    auto frames = sweep([&](double x) { return free_world_line(cfg, x); }, 3.0 * t_unit,
                        20.0 * t_unit, 60, [&](double ts) { return free_window(cfg, ts); });
    // between pair events a negative median point drifts left by less than
    // the point spacing, so the median may dip slightly while the cluster as
    // a whole advances
    double last_median = -1e300, first_median = 0.0;
    bool first = true;
    for (const auto& fr : frames) {
        REQUIRE(fr.valid);
        std::vector<double> xs;
        for (const auto& p : fr.snapshot.points) xs.push_back(p.x);
        std::sort(xs.begin(), xs.end());
        const double median = xs[xs.size() / 2];
        if (first) first_median = median;
        first = false;
        CHECK(median >= last_median - cfg.lambda() / 4.0);
        last_median = median;
    }
    CHECK(last_median > first_median + 2.0 * cfg.lambda());
}

TEST_CASE("tracked roots move at the world-line velocity") {
    const FreeConfig cfg = mod_activated();
    const ReferenceData ref = free_reference(cfg);
    const double t_unit = cfg.m / (kHBar * cfg.k() * cfg.k());
    const double dt_units = 0.02;
    auto frames = sweep([&](double x) { return free_world_line(cfg, x); }, 6.0 * t_unit,
                        (6.0 + dt_units * 10) * t_unit, 11,
                        [&](double ts) { return free_window(cfg, ts); });
    for (std::size_t f = 0; f + 1 < frames.size(); ++f) {
        REQUIRE(frames[f].valid);
        const auto& a = frames[f].snapshot;
        const auto& b = frames[f + 1].snapshot;
        if (a.points.size() != b.points.size()) continue;  // pair event between frames
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            const double vx = (b.points[i].x - a.points[i].x) / (dt_units * t_unit);
            const VelocitySample v = velocity_at(free_basis(cfg, a.points[i].x), ref);
            if (v.infinite || std::abs(v.value) > 50.0) continue;  // near a pair event
            CHECK(vx == doctest::Approx(v.value).epsilon(0.05));
        }
    }
}

TEST_CASE("window contract violations are reported") {
    const FreeConfig cfg = mod_activated();
    // a window whose upper edge sits inside the oscillating band cannot
    // guarantee closure
    CHECK_THROWS_AS(find_points([&](double x) { return free_world_line(cfg, x); },
                                4.5 * cfg.m / (kHBar * cfg.k() * cfg.k()),
                                {-1.0, 7.0}, 512),
                    WindowNotClosed);
}

TEST_CASE("assign_mass_energy rejects broken parity") {
    ClustorSnapshot s;
    s.points.resize(2);
    s.points[0].sign = PointSign::positive;
    s.points[1].sign = PointSign::negative;
    CHECK_THROWS_AS(assign_mass_energy(s, 1.0, 0.5), ParityViolation);
}
