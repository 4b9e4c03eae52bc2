#include "clustor/free_clustor.hpp"

#include <cmath>
#include <vector>

#include "clustor/errors.hpp"
#include "clustor/quadrature.hpp"

namespace clustor {

namespace {
constexpr const char* kModule = "free_system";

CatanOptions catan_options_for(const FreeConfig& cfg, double x_from, double x_to) {
    CatanOptions opt;
    const double cycles = std::abs(x_to - x_from) * cfg.k() / (2.0 * M_PI);
    opt.min_panels = static_cast<int>(std::ceil(8.0 * cycles)) + 4;
    return opt;
}

}  // namespace

double FreeConfig::k() const { return std::sqrt(2.0 * m * E) / kHBar; }
double FreeConfig::lambda() const { return 2.0 * M_PI / k(); }

void FreeConfig::validate() const {
    if (!(m > 0.0)) throw InvalidConfig(kModule, "mass m must be positive");
    if (!(E > 0.0)) throw InvalidConfig(kModule, "energy E must be positive");
    if (A == 0.0) throw InvalidConfig(kModule, "A = p0/(hbar k) must be nonzero");
}

FreeActivation free_activation(const FreeConfig& cfg) {
    cfg.validate();
    FreeActivation act;
    const double norm = 1.0 + cfg.A * cfg.A + cfg.B * cfg.B;
    const double r = 2.0 * cfg.A / norm;
    act.alpha1 = std::sqrt(std::fmax(0.0, 1.0 - r * r));
    act.phi1 = 0.5 * std::atan2(2.0 * cfg.B, 1.0 - cfg.A * cfg.A - cfg.B * cfg.B);
    act.alpha2 = 0.5 * std::hypot(cfg.C, cfg.D);
    act.phi2 = 0.5 * std::atan2(cfg.C, cfg.D);
    return act;
}

FreeConfig free_config_from_activation(const FreeActivation& act, double m, double E) {
    // Writing S = 1 + A^2 + B^2, the activation formulas give
    //   A = sqrt(1 - a1^2) S / 2,  B = a1 sin(2 phi1) S / 2,
    // and S satisfies q S^2 - S + 1 = 0 with
    //   q = [(1 - a1^2) + a1^2 sin^2(2 phi1)] / 4.
    // The quadratic's two roots are the two preimages; sign(cos 2 phi1)
    // selects between them (S < 2 iff A^2 + B^2 < 1).
    const double c2 = std::cos(2.0 * act.phi1), s2 = std::sin(2.0 * act.phi1);
    const double q = ((1.0 - act.alpha1 * act.alpha1) + act.alpha1 * act.alpha1 * s2 * s2) / 4.0;
    if (q <= 0.0)
        throw InvalidConfig(kModule, "activation parameters correspond to A = 0");
    const double disc = std::sqrt(std::fmax(0.0, 1.0 - 4.0 * q));
    const double S = (c2 >= 0.0) ? (1.0 - disc) / (2.0 * q) : (1.0 + disc) / (2.0 * q);
    FreeConfig cfg;
    cfg.m = m;
    cfg.E = E;
    cfg.A = std::sqrt(std::fmax(0.0, 1.0 - act.alpha1 * act.alpha1)) * S / 2.0;
    cfg.B = act.alpha1 * s2 * S / 2.0;
    cfg.C = 2.0 * act.alpha2 * std::sin(2.0 * act.phi2);
    cfg.D = 2.0 * act.alpha2 * std::cos(2.0 * act.phi2);
    return cfg;
}

DynamicsPoint free_dynamics(const FreeConfig& cfg, double x, PhaseTrack& track) {
    cfg.validate();
    const double k = cfg.k();
    auto num = [&](double xx) { return cfg.A * std::sin(k * xx); };
    auto den = [&](double xx) { return std::cos(k * xx) - cfg.B * std::sin(k * xx); };

    DynamicsPoint out;
    out.x = x;
    out.action = kHBar * catan_eval(num, den, 0.0, x, track,
                                    catan_options_for(cfg, track.seeded ? track.last_x : 0.0, x));
    const double s = std::sin(k * x), c = std::cos(k * x);
    const double d = (c - cfg.B * s) * (c - cfg.B * s) + (cfg.A * s) * (cfg.A * s);
    out.momentum = kHBar * k * cfg.A / d;
    out.time = cfg.m / (kHBar * k * k) * cfg.A *
               (k * x + cfg.C * s * c + cfg.D * s * s) / d;
    return out;
}

DynamicsPoint free_dynamics_polar(const FreeConfig& cfg, double x, PhaseTrack& track) {
    cfg.validate();
    const FreeActivation act = free_activation(cfg);
    const double k = cfg.k();
    const double sgn = cfg.A > 0.0 ? 1.0 : -1.0;  // sign of p0
    const double rad = sgn * std::sqrt(std::fmax(0.0, 1.0 - act.alpha1 * act.alpha1));
    // tangent-free rewriting of the phase-form action ratio:
    // num = rad sin(kx), den = cos(kx) + alpha1 cos(kx + 2 phi1)
    auto num = [&](double xx) { return rad * std::sin(k * xx); };
    auto den = [&](double xx) {
        return std::cos(k * xx) + act.alpha1 * std::cos(k * xx + 2.0 * act.phi1);
    };

    DynamicsPoint out;
    out.x = x;
    out.action = kHBar * catan_eval(num, den, 0.0, x, track,
                                    catan_options_for(cfg, track.seeded ? track.last_x : 0.0, x));
    const double osc = 1.0 + act.alpha1 * std::cos(2.0 * (k * x + act.phi1));
    out.momentum = kHBar * k * rad / osc;
    out.time = cfg.m / (kHBar * k * k) * (rad / osc) *
               (k * x - act.alpha2 *
                            (std::cos(2.0 * (k * x + act.phi2)) - std::cos(2.0 * act.phi2)));
    return out;
}

DynamicsPoint free_newtonian(const FreeConfig& cfg, double x) {
    cfg.validate();
    const double k = cfg.k();
    DynamicsPoint out;
    out.x = x;
    out.action = kHBar * k * x;
    out.momentum = kHBar * k;
    out.time = cfg.m / (kHBar * k * k) * (k * x);
    return out;
}

double free_world_line(const FreeConfig& cfg, double x) {
    const double k = cfg.k();
    const double s = std::sin(k * x), c = std::cos(k * x);
    const double d = (c - cfg.B * s) * (c - cfg.B * s) + (cfg.A * s) * (cfg.A * s);
    return cfg.m / (kHBar * k * k) * cfg.A * (k * x + cfg.C * s * c + cfg.D * s * s) / d;
}

double average_momentum(const FreeConfig& cfg) {
    cfg.validate();
    const FreeActivation act = free_activation(cfg);
    const double k = cfg.k();
    const double half_period = cfg.lambda() / 2.0;

    auto by_action_step = [&]() {
        PhaseTrack track;
        auto num = [&](double xx) { return cfg.A * std::sin(k * xx); };
        auto den = [&](double xx) { return std::cos(k * xx) - cfg.B * std::sin(k * xx); };
        const double w1 = kHBar * catan_eval(num, den, 0.0, half_period, track,
                                             catan_options_for(cfg, 0.0, half_period));
        return w1 / half_period;
    };

    if (act.alpha1 > 0.995) return by_action_step();

    auto p = [&](double xx) {
        const double s = std::sin(k * xx), c = std::cos(k * xx);
        const double d = (c - cfg.B * s) * (c - cfg.B * s) + (cfg.A * s) * (cfg.A * s);
        return kHBar * k * cfg.A / d;
    };
    // the momentum peaks where kx + phi1 = pi/2 (mod pi)
    std::vector<double> peaks;
    for (int n = -1; n <= 2; ++n) {
        const double xp = (M_PI / 2 + n * M_PI - act.phi1) / k;
        if (xp > 0.0 && xp < half_period) peaks.push_back(xp);
    }
    try {
        return integrate(p, 0.0, half_period, 1e-12, 0.0, peaks) / half_period;
    } catch (const QuadratureFailure&) {
        return by_action_step();
    }
}

double delta_limit_check(double alpha1, double phi1) {
    if (!(alpha1 >= 0.0 && alpha1 < 1.0))
        throw InvalidConfig(kModule, "delta_limit_check requires 0 <= alpha1 < 1");
    const double rad = std::sqrt(1.0 - alpha1 * alpha1);
    auto kernel = [&](double u) { return rad / (1.0 + alpha1 * std::cos(2.0 * (u + phi1))); };
    // one period in u = kx is pi; the kernel peaks at u + phi1 = pi/2 (mod pi)
    std::vector<double> peaks;
    for (int n = -1; n <= 1; ++n) {
        const double up = M_PI / 2 + n * M_PI - phi1;
        if (up > 0.0 && up < M_PI) peaks.push_back(up);
    }
    return integrate(kernel, 0.0, M_PI, 1e-12, 0.0, peaks);
}

BasisEval free_basis(const FreeConfig& cfg, double x) {
    cfg.validate();
    const double k = cfg.k();
    const double kE = cfg.m / (kHBar * kHBar * k);  // dk/dE
    BasisEval b;
    const double s = std::sin(k * x), c = std::cos(k * x);
    b.psi1 = c;
    b.psi2 = s;
    b.psi1_x = -k * s;
    b.psi2_x = k * c;
    b.psi1_E = -x * s * kE;
    b.psi2_E = x * c * kE;
    b.psi1_xE = -kE * (s + k * x * c);
    b.psi2_xE = kE * (c - k * x * s);
    b.psi1_0 = 1.0;
    b.psi2_0 = 0.0;
    b.psi1_x0 = 0.0;
    b.psi2_x0 = k;
    b.psi1_E0 = 0.0;
    b.psi2_E0 = 0.0;
    b.psi1_xE0 = 0.0;
    b.psi2_xE0 = kE;
    return b;
}

ReferenceData free_reference(const FreeConfig& cfg) {
    cfg.validate();
    const double k = cfg.k();
    ReferenceData ref;
    ref.energy = cfg.E;
    ref.x0 = 0.0;
    ref.p0 = cfg.A * kHBar * k;
    ref.px0 = 2.0 * k * ref.p0 * cfg.B;
    ref.tx0 = (cfg.C + 1.0) * cfg.m * ref.p0 / (kHBar * kHBar * k * k);
    ref.txx0 = (2.0 * cfg.m * ref.p0 * ref.p0 * cfg.D / (kHBar * kHBar * k) +
                2.0 * ref.px0 * ref.tx0) /
               ref.p0;
    return ref;
}

std::pair<double, double> free_window(const FreeConfig& cfg, double t_star) {
    cfg.validate();
    if (!(cfg.A > 0.0)) throw InvalidConfig(kModule, "free_window requires A > 0");
    const double k = cfg.k();
    const double lam = cfg.lambda();
    const double t_unit = cfg.m / (kHBar * k * k);
    const double ts = t_star / t_unit;  // target in units of m/(hbar k^2)
    const FreeActivation act = free_activation(cfg);
    const double norm = 1.0 + cfg.A * cfg.A + cfg.B * cfg.B;
    const double den_min = 0.5 * (1.0 - act.alpha1) * norm;
    const double den_max = 0.5 * (1.0 + act.alpha1) * norm;
    const double wiggle = std::abs(cfg.C) / 2.0 + std::abs(cfg.D);

    // envelope bounds: A (kx - wiggle)/den_max <= t/t_unit <= A (kx + wiggle)/den_min
    // for kx > wiggle, and mirrored for kx < -wiggle
    double kx_hi = ts * den_max / cfg.A + wiggle + 1.0;
    double kx_lo = ts * den_min / cfg.A - wiggle - 1.0;
    if (ts >= 0.0) kx_lo = std::fmin(kx_lo, -wiggle - 1.0);
    if (ts < 0.0) {
        kx_lo = ts * den_max / cfg.A - wiggle - 1.0;
        kx_hi = std::fmax(ts * den_min / cfg.A + wiggle + 1.0, wiggle + 1.0);
    }

    // put each boundary on a locally rising stretch so the monotone-exit
    // test can hold: pick a point an eighth wavelength past the deepest
    // sample of the adjacent period
    auto trough_in = [&](double a, double b) {
        double best_x = a, best_t = free_world_line(cfg, a);
        for (int i = 1; i <= 256; ++i) {
            const double x = a + (b - a) * i / 256.0;
            const double t = free_world_line(cfg, x);
            if (t < best_t) {
                best_t = t;
                best_x = x;
            }
        }
        return best_x;
    };
    const double hi0 = kx_hi / k;
    const double lo0 = kx_lo / k;
    const double hi = trough_in(hi0, hi0 + lam) + lam / 8.0;
    const double lo = trough_in(lo0 - lam - lam / 8.0, lo0 - lam / 8.0) + lam / 8.0;
    return {lo, hi};
}

}  // namespace clustor
