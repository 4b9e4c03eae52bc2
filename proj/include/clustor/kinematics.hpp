#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "clustor/phase_track.hpp"

namespace clustor {

// The library works in units with hbar = 1; each system module supplies its
// own natural mass/length/time scales on top of that.
inline constexpr double kHBar = 1.0;
inline constexpr double kPlanck = 2.0 * M_PI * kHBar;

// The six constants that, together with a basis, fully determine the action,
// momentum, and world-line of a one-degree-of-freedom conservative state.
struct ReferenceData {
    double energy = 0.0;
    double x0 = 0.0;
    double p0 = 0.0;    // momentum at x0, never zero
    double px0 = 0.0;   // dp/dx at x0
    double tx0 = 0.0;   // dt/dx at x0 = (dp/dE) at x0, never zero
    double txx0 = 0.0;  // d2t/dx2 at x0

    void validate() const;
};

// Two linearly independent real solutions of the stationary Schroedinger
// equation evaluated at one point, with x-, E-, and mixed derivatives, plus
// the same eight quantities at the reference point x0.
struct BasisEval {
    double psi1 = 0, psi2 = 0;
    double psi1_x = 0, psi2_x = 0;
    double psi1_E = 0, psi2_E = 0;
    double psi1_xE = 0, psi2_xE = 0;

    double psi1_0 = 0, psi2_0 = 0;
    double psi1_x0 = 0, psi2_x0 = 0;
    double psi1_E0 = 0, psi2_E0 = 0;
    double psi1_xE0 = 0, psi2_xE0 = 0;
};

// One point of a state's dynamics: action W, momentum p, world-line time t.
// Conventions W(x0) = 0 and t(x0) = 0.
struct DynamicsPoint {
    double x = 0.0;
    double action = 0.0;
    double momentum = 0.0;
    double time = 0.0;
    bool has_action = true;
    bool has_momentum = true;
    bool has_time = true;
};

struct VelocitySample {
    double value = 0.0;   // 1 / t_x
    double t_x = 0.0;
    bool infinite = false;  // |t_x| below threshold: escape point, not a failure
};

// Action at the basis point, unwrapped through the caller-owned track.  The
// track must have been continued sample-by-sample from x0 along the
// evaluation path (each step advancing the angle by less than pi/2).
double action_at(const BasisEval& basis, const ReferenceData& ref, PhaseTrack& track, double x);

double momentum_at(const BasisEval& basis, const ReferenceData& ref);

double time_at(const BasisEval& basis, const ReferenceData& ref);

// 1 / (dt/dx), with dt/dx from analytic differentiation of the world-line
// form (the basis supplies all required derivatives).
VelocitySample velocity_at(const BasisEval& basis, const ReferenceData& ref,
                           double infinite_threshold = 1e-12);

// Reference data whose values equal the Newtonian ones at a point with
// V(x0) = 0: p0 = sqrt(2mE), px0 = -sqrt(m/2E) V'(x0), tx0 = sqrt(m/2E),
// txx0 = sqrt(m/8E^3) V'(x0).
ReferenceData quasi_newtonian_ref(double v0, double v0_prime, double m, double energy, double x0);

// Max residual of the energy equation E = p^2/2m [1 + (hbar/2)^2
// (2 p p_xx - 3 p_x^2)/p^4] + V over the interior of a uniform grid, with
// p_x, p_xx from central differences.
double energy_residual(const std::vector<double>& x_grid, const std::vector<double>& p_values,
                       const std::function<double(double)>& potential, double m,
                       const ReferenceData& ref);

struct MotionResidual {
    double first = 0.0;   // momentum-velocity relation
    double second = 0.0;  // force relation
};

// Max residuals of both generalized equations of motion on uniform-in-time
// samples of x(t), p(t) over a single monotone branch, using central
// differences up to third order.
MotionResidual motion_residual(const std::vector<double>& t_grid, const std::vector<double>& xs,
                               const std::vector<double>& ps, double m,
                               const std::function<double(double)>& v_prime);

struct InitialValues {
    double xdot0 = 0.0;
    double xddot0 = 0.0;
    double pdot0 = 0.0;
    double pddot0 = 0.0;
};

// The four non-Newtonian initial values implied by the reference data.
InitialValues initial_values_from_ref(const ReferenceData& ref, double v0, double m);

namespace detail {

// shared bilinears of the closed forms
struct Bilinears {
    double u;    // psi1_0 psi2 - psi2_0 psi1
    double v2;   // the doubled-p0 denominator bracket
    double v1;   // the single-p0 world-line bracket
    double wr0;  // reference Wronskian
    double wr;   // Wronskian at x
};

Bilinears bilinears(const BasisEval& b, const ReferenceData& r);

}  // namespace detail

}  // namespace clustor
