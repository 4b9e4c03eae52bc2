#pragma once

#include "clustor/free_clustor.hpp"
#include "clustor/phase_track.hpp"

namespace clustor {

// Free state incident from region 1 (x < x1) on a rectangular barrier
// (V > 0) or well (V < 0) occupying [x1, x2].  The incident state is fixed by
// the dimensionless A, B at the reference point x0 < x1 (A = 1, B = 0 for an
// unactivated state); A and B are held constant in E, which pins the incident
// secondary activation at zero.
struct BarrierConfig {
    double m = 1.0;
    double E = 0.5;
    double V = 0.0;
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double A = 1.0;
    double B = 0.0;

    double k() const;        // sqrt(2 m E) / hbar
    double lambda() const;
    double q() const;        // r^2 = V/E - 1, real for both signs of E - V

    void validate() const;
};

// Matched-state constants of the three regions.  Where the printed
// recurrences carry a bare factor r = kappa/k, that factor is divided out
// here so every stored constant is real for E < V, E > V, and E = V; the
// action ratio and the activation formulas are invariant under it.
struct RegionConstants {
    double a1, b1, c1, d1;
    double a2, b2, c2, d2;
    double a3, b3, c3, d3;
    double q;  // r^2
};

RegionConstants region_constants(const BarrierConfig& cfg);

// Piecewise action, continuous across x1 and x2 by construction; track
// continued from x0.
double barrier_action(const BarrierConfig& cfg, double x, PhaseTrack& track);

// Primary activation from the printed four-constant formula.
double activation_from_constants(double a, double b, double c, double d);

FreeActivation region1_activation(const BarrierConfig& cfg);

// Activation parameters of the transmitted state: alpha1 from the region-3
// constants, alpha2 through Richardson-extrapolated central differences of
// the reference data in E.
FreeActivation region3_activation(const BarrierConfig& cfg);

}  // namespace clustor
