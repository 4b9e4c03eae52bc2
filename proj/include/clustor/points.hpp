#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace clustor {

enum class PointSign { positive, negative };

// One intersection of the world-line with a line of simultaneity.
struct ClustorPoint {
    double x = 0.0;
    PointSign sign = PointSign::positive;  // sign of dt/dx at the root
    bool merged = false;                   // near-tangency pair, excluded from parity checks
    double mass = 0.0;
    double energy = 0.0;
};

// The clustor's point set at one macroscopic instant.
struct ClustorSnapshot {
    double t_star = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::vector<ClustorPoint> points;  // ordered by x
    bool has_merged = false;
};

using WorldLine = std::function<double(double)>;

// All roots of t(x) = t_star inside the window, by sign-change bracketing on
// grid_n samples plus bisection to 1e-12 of the window span.  The window must
// close the level set: t(x_lo) and t(x_hi) on opposite sides of t_star with
// monotone boundary stretches heading away (checked over 5 samples each).
ClustorSnapshot find_points(const WorldLine& world_line, double t_star,
                            std::pair<double, double> window, int grid_n = 2048);

struct SweepFrame {
    ClustorSnapshot snapshot;
    bool valid = false;
    std::string error;
};

using WindowPolicy = std::function<std::pair<double, double>(double t_star)>;

// Snapshots at uniformly spaced macroscopic times (the Newtonian sweep rate);
// a failing frame is marked invalid instead of aborting the sweep.
std::vector<SweepFrame> sweep(const WorldLine& world_line, double t_from, double t_to, int frames,
                              const WindowPolicy& window_for, int grid_n = 2048);

// Positive points carry (+m, +E), negative points (-m, -E); enforces the
// odd-count and excess-positive rules on the non-merged points.
ClustorSnapshot& assign_mass_energy(ClustorSnapshot& snapshot, double m, double energy);

}  // namespace clustor
