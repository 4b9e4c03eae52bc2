#pragma once

#include <utility>

#include "clustor/kinematics.hpp"
#include "clustor/phase_track.hpp"

namespace clustor {

// Free state of mass m and energy E > 0, reference point fixed at x0 = 0.
// A, B, C, D are the dimensionless reference-point combinations; the
// unactivated (quasi-Newtonian) state is A = 1, B = C = D = 0.
struct FreeConfig {
    double m = 1.0;
    double E = 0.5;
    double A = 1.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;

    double k() const;       // sqrt(2 m E) / hbar
    double lambda() const;  // 2 pi / k

    void validate() const;
};

// Activation parameters: alpha1 in [0, 1] (primary), alpha2 >= 0 (secondary),
// with their phase angles.
struct FreeActivation {
    double alpha1 = 0.0;
    double phi1 = 0.0;
    double alpha2 = 0.0;
    double phi2 = 0.0;
};

FreeActivation free_activation(const FreeConfig& cfg);

// A, B, C, D recovered from activation parameters (the sign convention takes
// sign(p0) = sign(A) positive).
FreeConfig free_config_from_activation(const FreeActivation& act, double m, double E);

// W, p, t at x via the A/B/C/D closed forms; the track carries the action's
// unwrapped phase and must be continued from x = 0.
DynamicsPoint free_dynamics(const FreeConfig& cfg, double x, PhaseTrack& track);

// The same three functions in activation-parameter form; used as the dual
// route in cross-checks.
DynamicsPoint free_dynamics_polar(const FreeConfig& cfg, double x, PhaseTrack& track);

// Newtonian counterparts W = hbar k x, p = hbar k, t = (m/hbar k^2) kx.
DynamicsPoint free_newtonian(const FreeConfig& cfg, double x);

// World-line t(x) without action bookkeeping.
double free_world_line(const FreeConfig& cfg, double x);

// Spatial average of p over one period lambda/2; equals hbar k for every
// state.  Falls back to the unwrapped action step when the integrand is too
// peaked for quadrature (alpha1 -> 1).
double average_momentum(const FreeConfig& cfg);

// Integral over one period in kx of sqrt(1-alpha1^2)/(1+alpha1 cos 2(kx+phi1));
// equals pi for every alpha1 < 1 (the mass of each emerging delta spike).
double delta_limit_check(double alpha1, double phi1);

// Trig basis with its reference constants, for the generic closed forms.
BasisEval free_basis(const FreeConfig& cfg, double x);

ReferenceData free_reference(const FreeConfig& cfg);

// A window [x_lo, x_hi] guaranteed (by envelope bounds on t) to contain every
// intersection of the world-line with the simultaneity line t = t_star.
// Requires A > 0.
std::pair<double, double> free_window(const FreeConfig& cfg, double t_star);

}  // namespace clustor
