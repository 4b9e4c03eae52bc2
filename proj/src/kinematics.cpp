#include "clustor/kinematics.hpp"

#include <cmath>

#include "clustor/errors.hpp"

namespace clustor {

namespace {
constexpr const char* kModule = "kinematics_core";
constexpr double kDegenerateFloor = 1e-300;
}  // namespace

void ReferenceData::validate() const {
    if (p0 == 0.0)
        throw InvalidConfig(kModule, "reference momentum p0 must be nonzero");
    if (tx0 == 0.0)
        throw InvalidConfig(kModule, "reference slope (t_x)0 must be nonzero");
}

namespace detail {

Bilinears bilinears(const BasisEval& b, const ReferenceData& r) {
    Bilinears out;
    out.u = b.psi1_0 * b.psi2 - b.psi2_0 * b.psi1;
    const double cross_x = b.psi2_x0 * b.psi1 - b.psi1_x0 * b.psi2;
    out.v2 = 2.0 * r.p0 * cross_x - r.px0 * out.u;
    out.v1 = r.p0 * cross_x - r.px0 * out.u;
    out.wr0 = b.psi1_0 * b.psi2_x0 - b.psi2_0 * b.psi1_x0;
    out.wr = b.psi1 * b.psi2_x - b.psi2 * b.psi1_x;
    return out;
}

}  // namespace detail

double action_at(const BasisEval& basis, const ReferenceData& ref, PhaseTrack& track, double x) {
    ref.validate();
    const auto bl = detail::bilinears(basis, ref);
    const double num = 2.0 * ref.p0 * ref.p0 * bl.u;
    const double den = kHBar * bl.v2;
    if (!track.seeded) {
        track.last_x = x;
        track.last_angle = detail::principal_atan(num, den);
        track.winding = 0;
        track.seeded = true;
        return kHBar * track.last_angle;
    }
    double n1 = num, d1 = den;
    detail::clamp_sample(n1, d1);
    // One-step continuation from the track's last direction.  The previous
    // sample's vector direction is last_angle mod 2pi, so a synthetic unit
    // vector at that angle recovers the principal rotation to this sample.
    const double step = detail::vector_angle_delta(std::sin(track.last_angle),
                                                   std::cos(track.last_angle), n1, d1);
    if (std::abs(step) > M_PI / 2)
        throw NonConvergentUnwrap(kModule, "caller path step exceeds pi/2 between samples");
    track.last_x = x;
    track.last_angle += step;
    track.winding = std::llround((track.last_angle - detail::principal_atan(n1, d1)) / M_PI);
    return kHBar * track.last_angle;
}

double momentum_at(const BasisEval& basis, const ReferenceData& ref) {
    ref.validate();
    const auto bl = detail::bilinears(basis, ref);
    const double s = 2.0 * ref.p0 * ref.p0 * bl.u / kHBar;
    const double den = bl.v2 * bl.v2 + s * s;
    if (bl.v2 * bl.v2 < kDegenerateFloor && s * s < kDegenerateFloor)
        throw DegenerateDenominator(kModule, "both squared denominator terms underflow to zero");
    return 4.0 * ref.p0 * ref.p0 * ref.p0 * bl.wr0 * bl.wr / den;
}

namespace {

struct TimeParts {
    double num;
    double den;
};

TimeParts time_parts(const BasisEval& b, const ReferenceData& r) {
    const auto bl = detail::bilinears(b, r);
    const double s = 2.0 * r.p0 * r.p0 * bl.u / kHBar;
    const double den = bl.v2 * bl.v2 + s * s;
    if (bl.v2 * bl.v2 < kDegenerateFloor && s * s < kDegenerateFloor)
        throw DegenerateDenominator(kModule, "both squared denominator terms underflow to zero");
    const double t1 = bl.wr0 * (b.psi2_E * b.psi1 - b.psi1_E * b.psi2);
    const double t2 = (b.psi2_x0 * b.psi1 - b.psi1_x0 * b.psi2) *
                      (b.psi2_E0 * b.psi1 - b.psi1_E0 * b.psi2);
    const double t3 = -bl.u * (b.psi2_xE0 * b.psi1 - b.psi1_xE0 * b.psi2);
    const double num =
        2.0 * r.p0 *
        (2.0 * r.p0 * r.p0 * (t1 - t2 + t3) + 2.0 * r.tx0 * bl.u * bl.v1 +
         r.p0 * r.txx0 * bl.u * bl.u);
    return {num, den};
}

}  // namespace

double time_at(const BasisEval& basis, const ReferenceData& ref) {
    ref.validate();
    const auto tp = time_parts(basis, ref);
    return tp.num / tp.den;
}

VelocitySample velocity_at(const BasisEval& b, const ReferenceData& r, double infinite_threshold) {
    r.validate();
    const auto bl = detail::bilinears(b, r);
    // x-derivatives of every bilinear entering the world-line quotient
    const double u_x = b.psi1_0 * b.psi2_x - b.psi2_0 * b.psi1_x;
    const double cross_x = b.psi2_x0 * b.psi1 - b.psi1_x0 * b.psi2;
    const double cross_xx = b.psi2_x0 * b.psi1_x - b.psi1_x0 * b.psi2_x;
    const double v2_x = 2.0 * r.p0 * cross_xx - r.px0 * u_x;
    const double v1_x = r.p0 * cross_xx - r.px0 * u_x;

    const double e_at = b.psi2_E * b.psi1 - b.psi1_E * b.psi2;
    const double e_at_x = b.psi2_xE * b.psi1 + b.psi2_E * b.psi1_x - b.psi1_xE * b.psi2 -
                          b.psi1_E * b.psi2_x;
    const double e_ref = b.psi2_E0 * b.psi1 - b.psi1_E0 * b.psi2;
    const double e_ref_x = b.psi2_E0 * b.psi1_x - b.psi1_E0 * b.psi2_x;
    const double g3 = b.psi2_xE0 * b.psi1 - b.psi1_xE0 * b.psi2;
    const double g3_x = b.psi2_xE0 * b.psi1_x - b.psi1_xE0 * b.psi2_x;

    const double t1 = bl.wr0 * e_at;
    const double t1_x = bl.wr0 * e_at_x;
    const double t2 = cross_x * e_ref;
    const double t2_x = cross_xx * e_ref + cross_x * e_ref_x;
    const double t3 = -bl.u * g3;
    const double t3_x = -u_x * g3 - bl.u * g3_x;

    const double p2 = r.p0 * r.p0;
    const double num = 2.0 * r.p0 *
                       (2.0 * p2 * (t1 - t2 + t3) + 2.0 * r.tx0 * bl.u * bl.v1 +
                        r.p0 * r.txx0 * bl.u * bl.u);
    const double num_x = 2.0 * r.p0 *
                         (2.0 * p2 * (t1_x - t2_x + t3_x) +
                          2.0 * r.tx0 * (u_x * bl.v1 + bl.u * v1_x) +
                          2.0 * r.p0 * r.txx0 * bl.u * u_x);
    const double s = 2.0 * p2 * bl.u / kHBar;
    const double s_x = 2.0 * p2 * u_x / kHBar;
    const double den = bl.v2 * bl.v2 + s * s;
    const double den_x = 2.0 * bl.v2 * v2_x + 2.0 * s * s_x;
    if (den == 0.0)
        throw DegenerateDenominator(kModule, "world-line denominator vanished");

    VelocitySample out;
    out.t_x = (num_x * den - num * den_x) / (den * den);
    out.infinite = std::abs(out.t_x) < infinite_threshold;
    out.value = out.infinite ? std::copysign(HUGE_VAL, out.t_x) : 1.0 / out.t_x;
    return out;
}

ReferenceData quasi_newtonian_ref(double v0, double v0_prime, double m, double energy, double x0) {
    if (!(energy > 0.0)) throw InvalidConfig(kModule, "quasi-Newtonian reference requires E > 0");
    if (!(m > 0.0)) throw InvalidConfig(kModule, "mass must be positive");
    if (std::abs(v0) > 1e-12 * std::fmax(1.0, std::abs(energy)))
        throw NonzeroPotentialAtReference(kModule,
                                          "potential must vanish at the reference point");
    ReferenceData ref;
    ref.energy = energy;
    ref.x0 = x0;
    ref.p0 = std::sqrt(2.0 * m * energy);
    ref.px0 = -std::sqrt(m / (2.0 * energy)) * v0_prime;
    ref.tx0 = std::sqrt(m / (2.0 * energy));
    ref.txx0 = std::sqrt(m / (8.0 * energy * energy * energy)) * v0_prime;
    return ref;
}

double energy_residual(const std::vector<double>& x_grid, const std::vector<double>& p_values,
                       const std::function<double(double)>& potential, double m,
                       const ReferenceData& ref) {
    const std::size_t n = x_grid.size();
    if (n < 5 || p_values.size() != n)
        throw InvalidConfig(kModule, "energy_residual needs matching grids of at least 5 points");
    const double h = x_grid[1] - x_grid[0];

    auto residual_with_stride = [&](std::size_t stride) {
        double worst = 0.0;
        const double hs = h * static_cast<double>(stride);
        for (std::size_t i = stride; i + stride < n; i += 1) {
            const double p = p_values[i];
            const double px = (p_values[i + stride] - p_values[i - stride]) / (2.0 * hs);
            const double pxx =
                (p_values[i + stride] - 2.0 * p + p_values[i - stride]) / (hs * hs);
            const double quantum = (kHBar / 2.0) * (kHBar / 2.0) *
                                   (2.0 * p * pxx - 3.0 * px * px) / (p * p * p * p);
            const double e = p * p / (2.0 * m) * (1.0 + quantum) + potential(x_grid[i]);
            worst = std::fmax(worst, std::abs(e - ref.energy));
        }
        return worst;
    };

    // halving test: first-derivative estimates from the h and 2h stencils must
    // agree, otherwise the grid cannot support the difference operators
    double deriv_gap = 0.0, deriv_scale = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double d1 = (p_values[i + 1] - p_values[i - 1]) / (2.0 * h);
        const double d2 = (p_values[i + 2] - p_values[i - 2]) / (4.0 * h);
        deriv_gap = std::fmax(deriv_gap, std::abs(d1 - d2));
        deriv_scale = std::fmax(deriv_scale, std::abs(d1));
    }
    if (deriv_scale > 0.0 && deriv_gap > 0.25 * deriv_scale)
        throw GridTooCoarse(kModule, "difference stencils disagree under grid halving");

    return residual_with_stride(1);
}

MotionResidual motion_residual(const std::vector<double>& t_grid, const std::vector<double>& xs,
                               const std::vector<double>& ps, double m,
                               const std::function<double(double)>& v_prime) {
    const std::size_t n = t_grid.size();
    if (n < 7 || xs.size() != n || ps.size() != n)
        throw InvalidConfig(kModule, "motion_residual needs matching grids of at least 7 points");
    const double h = t_grid[1] - t_grid[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if ((xs[i + 1] - xs[i]) * (xs[1] - xs[0]) <= 0.0)
            throw BranchCrossing(kModule, "x(t) is not monotone inside the window");
    }

    const double c = (kHBar / 2.0) * (kHBar / 2.0);
    // fourth-order central stencils: third time-derivatives with plain
    // second-order stencils hit the rounding floor before the target accuracy
    auto d1 = [&](const std::vector<double>& f, std::size_t i) {
        return (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    };
    auto d2 = [&](const std::vector<double>& f, std::size_t i) {
        return (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) /
               (12.0 * h * h);
    };
    auto d3 = [&](const std::vector<double>& f, std::size_t i) {
        return (-f[i + 3] + 8.0 * f[i + 2] - 13.0 * f[i + 1] + 13.0 * f[i - 1] -
                8.0 * f[i - 2] + f[i - 3]) /
               (8.0 * h * h * h);
    };
    MotionResidual out;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double xd = d1(xs, i);
        const double xdd = d2(xs, i);
        const double xddd = d3(xs, i);
        const double p = ps[i];
        const double pd = d1(ps, i);
        const double pdd = d2(ps, i);
        const double pddd = d3(ps, i);

        const double q1 = (p * xd * (4.0 * pd * xdd - xd * pdd) +
                           3.0 * (p * p * xdd * xdd + pd * pd * xd * xd) - p * p * xd * xddd) /
                          (p * p * p * p * xd * xd * xd * xd);
        const double r1 = p * (1.0 + c * q1) - m * xd;

        const double q2 = (p * xd * pddd - 3.0 * pdd * (p * xdd + pd * xd)) /
                          (m * p * p * xd * xd * xd * xd);
        const double r2 = pd + c * q2 + v_prime(xs[i]);

        out.first = std::fmax(out.first, std::abs(r1));
        out.second = std::fmax(out.second, std::abs(r2));
    }
    return out;
}

InitialValues initial_values_from_ref(const ReferenceData& ref, double v0, double m) {
    ref.validate();
    InitialValues iv;
    iv.xdot0 = 1.0 / ref.tx0;
    iv.xddot0 = -ref.txx0 / (ref.tx0 * ref.tx0 * ref.tx0);
    iv.pdot0 = ref.px0 / ref.tx0;
    const double c = (kHBar / 2.0) * (kHBar / 2.0);
    const double p2 = ref.p0 * ref.p0;
    iv.pddot0 = (p2 * ref.tx0 * (2.0 * m * (ref.energy - v0) - p2) +
                 c * ref.px0 * (3.0 * ref.px0 * ref.tx0 - 2.0 * ref.p0 * ref.txx0)) /
                (2.0 * c * ref.p0 * ref.tx0 * ref.tx0 * ref.tx0);
    return iv;
}

}  // namespace clustor
