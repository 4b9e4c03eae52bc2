#pragma once

#include <optional>
#include <vector>

#include "clustor/kinematics.hpp"
#include "clustor/phase_track.hpp"

namespace clustor {

// Harmonic-oscillator state in natural units (hbar = m = omega_N = 1, so the
// length scale has mu = 1, the Newtonian period is 2 pi, and E = eta + 1/2).
// Activation enters through a single multiplier on A: A = a sqrt(2 eta + 1);
// B, C, D default to their Newtonian values (0, 2/(2 eta + 1), 0).
struct OscConfig {
    double eta = 0.0;
    double a = 1.0;
    std::optional<double> b_override;
    std::optional<double> c_override;
    std::optional<double> d_override;

    double A() const;
    double B() const;
    double C() const;
    double D() const;

    void validate() const;
};

// The abbreviated hypergeometric values at one point: Mij(z, eta) =
// M((i - 2 eta - 1)/4, j/2, z^2) and the a-derivatives of M11 and M33.
// When magnitudes pass the floating-point comfort zone all six values share
// one positive rescaling; every use downstream is scale-invariant.
struct MijEval {
    double m11 = 1.0;
    double m31 = 1.0;
    double m33 = 1.0;
    double m53 = 1.0;
    double m11_a = 0.0;
    double m33_a = 0.0;
    bool rescaled = false;
};

MijEval osc_mij(double eta, double mu_x);

// Basis for the generic closed forms (exact values, no rescaling; tighter
// range guard than osc_mij).
BasisEval osc_basis(double eta, double mu_x);

ReferenceData osc_reference(const OscConfig& cfg);

// W, p, t at mu_x; track continued from 0.
DynamicsPoint osc_dynamics(const OscConfig& cfg, double mu_x, PhaseTrack& track);

// Newtonian counterparts, defined between the turning points |mu_x| <=
// sqrt(2 eta + 1).
DynamicsPoint newtonian_osc(double eta, double mu_x);

// World-line t(mu_x) without action bookkeeping.
double osc_world_line(const OscConfig& cfg, double mu_x);

// Oscillator period tau(eta) = 4 t(x -> infinity), by a geometric ladder in
// mu_x with exponential convergence past the turning points.
double osc_period(const OscConfig& cfg);

struct DensityResult {
    std::vector<double> grid;
    std::vector<double> density;      // |t'| normalized over the grid
    std::vector<double> newtonian;    // 1/(pi sqrt(X^2 - x^2)) inside turning points, else 0
    double tail_fraction = 0.0;
};

DensityResult osc_density(const OscConfig& cfg, const std::vector<double>& grid);

double newtonian_density(double eta, double mu_x);

// standard-theory ground-state |psi|^2 (eta = 0 comparison curve)
double ground_state_density(double mu_x);

// Full-cycle action J = 2 [W(+X) - W(-X)] at the converged limit abscissa.
double full_cycle_action(const OscConfig& cfg);

// W at the large-|x| limit on one side (direction = +1 or -1).
double osc_action_limit(const OscConfig& cfg, int direction);

struct QuantizationStep {
    double eta = 0.0;   // step center
    double size = 0.0;  // plateau-to-plateau jump in J
};

struct QuantizationScan {
    std::vector<double> eta;
    std::vector<double> action;  // J(eta)
    std::vector<QuantizationStep> steps;
};

// J(eta) over a uniform grid at activation multiplier a, plus detected
// quasi-discrete steps (centered difference exceeding 10x the median).
QuantizationScan quantization_scan(double a, double eta_from, double eta_to, int steps);

}  // namespace clustor
