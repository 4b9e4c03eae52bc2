#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "clustor/errors.hpp"

namespace clustor {

namespace detail {

// Gauss 7 / Kronrod 15 abscissae (positive half) and weights
inline constexpr double kGK15Node[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double kKronrodW[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kGaussW[4] = {0.417959183673469, 0.381830050505119, 0.279705391489277,
                                      0.129484966168870};

template <class F>
double gk15(F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double kron = kKronrodW[0] * f0;
    double gauss = kGaussW[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK15Node[i];
        const double fs = f(c + dx) + f(c - dx);
        kron += kKronrodW[i] * fs;
        if (i % 2 == 0) gauss += kGaussW[i / 2] * fs;
    }
    kron *= h;
    gauss *= h;
    err = std::abs(kron - gauss);
    return kron;
}

template <class F>
double integrate_panel(F& f, double a, double b, double rel_tol, double abs_tol, int depth,
                       int max_depth) {
    double err = 0.0;
    const double val = gk15(f, a, b, err);
    if (err <= std::fmax(abs_tol, rel_tol * std::abs(val))) return val;
    if (depth >= max_depth)
        throw QuadratureFailure("quadrature",
                                "panel subdivision limit reached before error tolerance");
    const double c = 0.5 * (a + b);
    return integrate_panel(f, a, c, rel_tol, 0.5 * abs_tol, depth + 1, max_depth) +
           integrate_panel(f, c, b, rel_tol, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].  `breaks` lists known
// awkward interior points (sharp peaks, kinks); the interval is pre-split
// there before adaptive bisection takes over.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-11, double abs_tol = 0.0,
                 const std::vector<double>& breaks = {}, int max_depth = 40) {
    if (a == b) return 0.0;
    std::vector<double> edges{a, b};
    for (double s : breaks)
        if ((s > a && s < b) || (s > b && s < a)) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    if (a > b) std::reverse(edges.begin(), edges.end());
    double total = 0.0;
    const double panel_abs = abs_tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += detail::integrate_panel(f, edges[i], edges[i + 1], rel_tol, panel_abs, 0,
                                         max_depth);
    return total;
}

}  // namespace clustor
