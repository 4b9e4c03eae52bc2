#include "clustor/points.hpp"

#include <cmath>

#include "clustor/errors.hpp"

namespace clustor {

namespace {

constexpr const char* kModule = "clustor_points";

// 5-sample monotone-exit test: every sample on the boundary side must sit on
// the same side of t_star as the boundary itself and move away monotonically
// (up to rounding noise on exponentially flat stretches)
bool boundary_closes(const WorldLine& t, double t_star, double x_edge, double inward_step,
                     bool below) {
    double prev = t(x_edge);
    if (below ? (prev >= t_star) : (prev <= t_star)) return false;
    const double noise = 1e-11 * (std::abs(prev) + std::abs(t_star) + 1e-30);
    for (int i = 1; i < 5; ++i) {
        const double v = t(x_edge + i * inward_step);
        if (below ? (v >= t_star) : (v <= t_star)) return false;
        if (std::abs(t_star - v) > std::abs(t_star - prev) + noise) return false;
        prev = v;
    }
    return true;
}

}  // namespace

ClustorSnapshot find_points(const WorldLine& world_line, double t_star,
                            std::pair<double, double> window, int grid_n) {
    if (!(window.second > window.first))
        throw InvalidConfig(kModule, "window must have x_lo < x_hi");
    if (grid_n < 16) throw InvalidConfig(kModule, "grid_n must be at least 16");
    const double x_lo = window.first, x_hi = window.second;
    const double span = x_hi - x_lo;
    const double step = span / (grid_n - 1);

    const double t_lo = world_line(x_lo);
    const double t_hi = world_line(x_hi);
    const bool rising = t_hi > t_lo;
    const bool lo_below = rising;
    if (!boundary_closes(world_line, t_star, x_lo, step / 4.0, lo_below) ||
        !boundary_closes(world_line, t_star, x_hi, -step / 4.0, !lo_below))
        throw WindowNotClosed(kModule, "boundary samples are not monotone exits");

    ClustorSnapshot snap;
    snap.t_star = t_star;
    snap.x_lo = x_lo;
    snap.x_hi = x_hi;

    const double resolution = 1e-12 * span;
    double prev_x = x_lo;
    double prev_f = t_lo - t_star;
    for (int i = 1; i < grid_n; ++i) {
        const double x = (i == grid_n - 1) ? x_hi : x_lo + i * step;
        const double f = world_line(x) - t_star;
        if (prev_f == 0.0 || prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            if (prev_f == 0.0) {
                a = prev_x;
                b = prev_x;
            } else {
                while (b - a > resolution) {
                    const double m = 0.5 * (a + b);
                    const double fm = world_line(m) - t_star;
                    if (fa * fm <= 0.0)
                        b = m;
                    else {
                        a = m;
                        fa = fm;
                    }
                }
            }
            ClustorPoint p;
            p.x = 0.5 * (a + b);
            const double h = std::fmax(resolution * 1e3, 1e-9 * (1.0 + std::abs(p.x)));
            const double slope = world_line(p.x + h) - world_line(p.x - h);
            p.sign = slope >= 0.0 ? PointSign::positive : PointSign::negative;
            snap.points.push_back(p);
        }
        prev_x = x;
        prev_f = f;
    }

    // near-tangency roots merge below resolution; mark such pairs and keep
    // them out of the parity bookkeeping
    for (std::size_t i = 0; i + 1 < snap.points.size(); ++i) {
        if (snap.points[i + 1].x - snap.points[i].x < 100.0 * resolution) {
            snap.points[i].merged = true;
            snap.points[i + 1].merged = true;
            snap.has_merged = true;
        }
    }
    return snap;
}

std::vector<SweepFrame> sweep(const WorldLine& world_line, double t_from, double t_to, int frames,
                              const WindowPolicy& window_for, int grid_n) {
    if (frames < 2) throw InvalidConfig(kModule, "sweep needs at least 2 frames");
    std::vector<SweepFrame> out(frames);
    for (int i = 0; i < frames; ++i) {
        const double t_star = t_from + (t_to - t_from) * i / (frames - 1.0);
        try {
            out[i].snapshot = find_points(world_line, t_star, window_for(t_star), grid_n);
            out[i].valid = true;
        } catch (const Error& e) {
            out[i].snapshot.t_star = t_star;
            out[i].error = e.what();
        }
    }
    return out;
}

ClustorSnapshot& assign_mass_energy(ClustorSnapshot& snapshot, double m, double energy) {
    int positives = 0, negatives = 0;
    PointSign last = PointSign::negative;
    bool first = true, alternates = true;
    for (auto& p : snapshot.points) {
        p.mass = p.sign == PointSign::positive ? m : -m;
        p.energy = p.sign == PointSign::positive ? energy : -energy;
        if (p.merged) continue;
        (p.sign == PointSign::positive ? positives : negatives)++;
        if (!first && p.sign == last) alternates = false;
        last = p.sign;
        first = false;
    }
    if ((positives + negatives) % 2 == 0)
        throw ParityViolation(kModule, "non-merged point count is even");
    if (positives != negatives + 1)
        throw ParityViolation(kModule, "expected exactly one excess positive point");
    if (!alternates)
        throw ParityViolation(kModule, "sign classes do not alternate in x-order");
    return snapshot;
}

}  // namespace clustor
