#pragma once

#include <cmath>
#include <utility>

#include "clustor/errors.hpp"

namespace clustor {

// State of a cumulative-arctangent continuation.  The unwrapped angle always
// satisfies  unwrapped == atan(num/den) + winding*pi  at the last accepted
// sample; `winding` counts half-turns of the (den, num) vector.
struct PhaseTrack {
    double last_x = 0.0;
    double last_angle = 0.0;  // unwrapped angle at last_x (radians)
    long long winding = 0;    // half-turn count, multiples of pi
    bool seeded = false;

    void reset() { *this = PhaseTrack{}; }
};

struct CatanOptions {
    int min_panels = 64;           // initial uniform subdivision of [x_from, x_to]
    int max_depth = 48;            // bisection depth limit per panel
    double step_limit = M_PI / 4;  // largest accepted per-step angle change
};

namespace detail {

// angle of the rotation taking vector (d0, n0) to (d1, n1), in (-pi, pi]
inline double vector_angle_delta(double n0, double d0, double n1, double d1) {
    return std::atan2(d0 * n1 - n0 * d1, d0 * d1 + n0 * n1);
}

inline double principal_atan(double num, double den) {
    if (den == 0.0 && num == 0.0)
        throw NonConvergentUnwrap("specfun", "numerator and denominator both zero at seed point");
    return std::atan(num / den);  // atan(+-inf) = +-pi/2, atan(0/-1) = 0
}

// rescale a sample so cross/dot products cannot overflow; the angle of
// (den, num) is invariant under positive scaling
inline void clamp_sample(double& n, double& d) {
    const double m = std::fmax(std::fabs(n), std::fabs(d));
    if (m > 1e120) {
        n /= m;
        d /= m;
    }
}

inline bool strictly_between(double xm, double x0, double x1) {
    return (xm > x0 && xm < x1) || (xm < x0 && xm > x1);
}

template <class FN, class FD>
void catan_advance(FN& num, FD& den, PhaseTrack& track, double x0, double n0, double d0,
                   double x1, double n1, double d1, int depth, const CatanOptions& opt) {
    const double delta = vector_angle_delta(n0, d0, n1, d1);
    const double mag1 = std::hypot(n1, d1);
    if (std::abs(delta) <= opt.step_limit && mag1 > 0.0) {
        // verify with one midpoint probe so an aliased full turn cannot slip
        // through a panel whose endpoints happen to line up
        const double xm = 0.5 * (x0 + x1);
        if (!strictly_between(xm, x0, x1)) {  // interval at floating-point resolution
            track.last_x = x1;
            track.last_angle += delta;
            track.winding = std::llround((track.last_angle - principal_atan(n1, d1)) / M_PI);
            return;
        }
        double nm = num(xm), dm = den(xm);
        clamp_sample(nm, dm);
        const double da = vector_angle_delta(n0, d0, nm, dm);
        const double db = vector_angle_delta(nm, dm, n1, d1);
        if (std::abs(da) <= opt.step_limit && std::abs(db) <= opt.step_limit &&
            std::abs(da + db - delta) < 1e-9) {
            track.last_x = x1;
            track.last_angle += da + db;
            track.winding = std::llround((track.last_angle - principal_atan(n1, d1)) / M_PI);
            return;
        }
        if (depth >= opt.max_depth)
            throw NonConvergentUnwrap("specfun",
                                      "refinement depth limit with inconsistent midpoint probe");
        catan_advance(num, den, track, x0, n0, d0, xm, nm, dm, depth + 1, opt);
        catan_advance(num, den, track, xm, nm, dm, x1, n1, d1, depth + 1, opt);
        return;
    }
    if (depth >= opt.max_depth)
        throw NonConvergentUnwrap(
            "specfun", "refinement depth limit reached with adjacent step > step limit");
    const double xm = 0.5 * (x0 + x1);
    if (!strictly_between(xm, x0, x1))
        throw NonConvergentUnwrap("specfun",
                                  "interval below floating-point resolution while unwrapping");
    double nm = num(xm), dm = den(xm);
    clamp_sample(nm, dm);
    catan_advance(num, den, track, x0, n0, d0, xm, nm, dm, depth + 1, opt);
    catan_advance(num, den, track, xm, nm, dm, x1, n1, d1, depth + 1, opt);
}

}  // namespace detail

// Cumulative arctangent of the ratio num(x)/den(x), continued without branch
// jumps from the track's current state to x_to.  A fresh track is seeded with
// the principal arctangent at x_from.  The continuation follows the rotation
// of the vector (den, num), adding pi per half-turn; adaptive bisection keeps
// each accepted step below opt.step_limit.
template <class FN, class FD>
double catan_eval(FN&& num, FD&& den, double x_from, double x_to, PhaseTrack& track,
                  const CatanOptions& opt = {}) {
    if (!track.seeded) {
        track.last_x = x_from;
        track.last_angle = detail::principal_atan(num(x_from), den(x_from));
        track.winding = 0;
        track.seeded = true;
    }
    if (x_to == track.last_x) return track.last_angle;

    const int panels = opt.min_panels > 0 ? opt.min_panels : 1;
    double xp = track.last_x;
    double np = num(xp), dp = den(xp);
    detail::clamp_sample(np, dp);
    const double step = (x_to - xp) / panels;
    for (int i = 1; i <= panels; ++i) {
        const double xn = (i == panels) ? x_to : xp + step;
        double nn = num(xn), dn = den(xn);
        detail::clamp_sample(nn, dn);
        detail::catan_advance(num, den, track, xp, np, dp, xn, nn, dn, 0, opt);
        xp = xn;
        np = nn;
        dp = dn;
    }
    return track.last_angle;
}

}  // namespace clustor
