#include "clustor/oscillator.hpp"

#include <algorithm>
#include <cmath>

#include "clustor/errors.hpp"
#include "clustor/kummer.hpp"

namespace clustor {

namespace {

constexpr const char* kModule = "oscillator_system";
constexpr double kMuXGuard = 30.0;       // outer argument guard
constexpr double kBasisGuard = 25.0;     // exact-value (unscaled) guard
constexpr double kLadderCap = 25.4;      // largest ladder abscissa before the series guard
constexpr double kLimitTol = 1e-8;

double a_param(int i, double eta) { return (i - 2.0 * eta - 1.0) / 4.0; }

// light evaluation for the action path: only M11 and M33
void w_pair(double eta, double z, double& m11, double& m33) {
    const double zsq = z * z;
    m11 = kummer_m_ma(a_param(1, eta), 0.5, zsq, 1e-14).m;
    m33 = kummer_m_ma(a_param(3, eta), 1.5, zsq, 1e-14).m;
    const double big = std::fmax(std::abs(m11), std::abs(m33));
    if (big > 1e120) {
        m11 /= big;
        m33 /= big;
    }
}

CatanOptions osc_catan_options(double eta, double z_from, double z_to) {
    CatanOptions opt;
    const double rate = 2.0 * std::sqrt(std::fmax(0.0, 2.0 * eta + 1.0)) + 4.0;
    opt.min_panels = static_cast<int>(std::ceil(std::abs(z_to - z_from) * rate)) + 8;
    return opt;
}

// geometric ladder past the turning points; the hypergeometric ratio
// corrections decay like exp(-z^2), so successive rungs converge fast
std::vector<double> limit_ladder(double eta) {
    double z0 = std::sqrt(std::fmax(110.0, 6.0 * (2.0 * eta + 1.0)));
    std::vector<double> zs;
    for (double z = z0; z < kLadderCap; z *= std::sqrt(2.0)) zs.push_back(z);
    zs.push_back(kLadderCap);
    return zs;
}

template <class F>
double converge_ladder(const std::vector<double>& zs, F&& value_at, double scale_floor) {
    double prev = value_at(zs[0]);
    for (std::size_t i = 1; i < zs.size(); ++i) {
        const double cur = value_at(zs[i]);
        if (std::abs(cur - prev) <= kLimitTol * std::fmax(std::abs(cur), scale_floor)) return cur;
        prev = cur;
    }
    // cap reached: accept if the last rungs have stabilized, else give up
    if (zs.size() >= 3) {
        const double v1 = value_at(zs[zs.size() - 3]);
        const double v2 = value_at(zs[zs.size() - 2]);
        const double v3 = value_at(zs[zs.size() - 1]);
        const double s = std::fmax(std::abs(v3), scale_floor);
        if (std::abs(v3 - v2) < 1e-6 * s && std::abs(v2 - v1) < 1e-6 * s) return v3;
    }
    throw NoConvergence(kModule, "large-x limit did not stabilize before the series guard");
}

}  // namespace

double OscConfig::A() const { return a * std::sqrt(2.0 * eta + 1.0); }
double OscConfig::B() const { return b_override.value_or(0.0); }
double OscConfig::C() const { return c_override.value_or(2.0 / (2.0 * eta + 1.0)); }
double OscConfig::D() const { return d_override.value_or(0.0); }

void OscConfig::validate() const {
    if (!(eta >= -0.5)) throw InvalidConfig(kModule, "eta must satisfy eta >= -1/2");
    if (!(a >= 0.0)) throw InvalidConfig(kModule, "activation multiplier a must be nonnegative");
}

MijEval osc_mij(double eta, double mu_x) {
    if (!(std::abs(mu_x) <= kMuXGuard))
        throw SeriesOverflow(kModule, "mu_x beyond the series argument guard");
    const double zsq = mu_x * mu_x;
    const KummerEval e11 = kummer_m_ma(a_param(1, eta), 0.5, zsq, 1e-14);
    const KummerEval e33 = kummer_m_ma(a_param(3, eta), 1.5, zsq, 1e-14);
    MijEval out;
    out.m11 = e11.m;
    out.m33 = e33.m;
    out.m11_a = e11.ma;
    out.m33_a = e33.ma;
    out.m31 = kummer_m_ma(a_param(3, eta), 0.5, zsq, 1e-14).m;
    out.m53 = kummer_m_ma(a_param(5, eta), 1.5, zsq, 1e-14).m;
    const double big = std::max({std::abs(out.m11), std::abs(out.m31), std::abs(out.m33),
                                 std::abs(out.m53), std::abs(out.m11_a), std::abs(out.m33_a)});
    if (big > 1e120) {
        out.m11 /= big;
        out.m31 /= big;
        out.m33 /= big;
        out.m53 /= big;
        out.m11_a /= big;
        out.m33_a /= big;
        out.rescaled = true;
    }
    return out;
}

BasisEval osc_basis(double eta, double mu_x) {
    if (!(std::abs(mu_x) <= kBasisGuard))
        throw SeriesOverflow(kModule, "mu_x beyond the basis range guard");
    const double z = mu_x;
    const double zsq = z * z;
    const KummerEval e11 = kummer_m_ma(a_param(1, eta), 0.5, zsq, 1e-14);
    const KummerEval e31 = kummer_m_ma(a_param(3, eta), 0.5, zsq, 1e-14);
    const KummerEval e33 = kummer_m_ma(a_param(3, eta), 1.5, zsq, 1e-14);
    const KummerEval e53 = kummer_m_ma(a_param(5, eta), 1.5, zsq, 1e-14);
    const double g = std::exp(-zsq / 2.0);

    BasisEval b;
    b.psi1 = e11.m * g;
    b.psi2 = z * e33.m * g;
    b.psi1_x = (-2.0 * eta * z * e53.m - z * e11.m) * g;
    b.psi2_x = (e31.m - zsq * e33.m) * g;
    // dE = d(eta); the Kummer a-parameters all shift by -1/2 per unit energy
    b.psi1_E = -0.5 * e11.ma * g;
    b.psi2_E = -0.5 * z * e33.ma * g;
    b.psi1_xE = (-2.0 * z * e53.m + eta * z * e53.ma + 0.5 * z * e11.ma) * g;
    b.psi2_xE = (-0.5 * e31.ma + 0.5 * zsq * e33.ma) * g;

    b.psi1_0 = 1.0;
    b.psi2_0 = 0.0;
    b.psi1_x0 = 0.0;
    b.psi2_x0 = 1.0;
    b.psi1_E0 = 0.0;
    b.psi2_E0 = 0.0;
    b.psi1_xE0 = 0.0;
    b.psi2_xE0 = 0.0;
    return b;
}

ReferenceData osc_reference(const OscConfig& cfg) {
    cfg.validate();
    ReferenceData ref;
    ref.energy = cfg.eta + 0.5;
    ref.x0 = 0.0;
    ref.p0 = cfg.A();
    ref.px0 = 2.0 * ref.p0 * cfg.B();
    ref.tx0 = cfg.C() * ref.p0 / 2.0;
    ref.txx0 = cfg.D() * ref.p0 + 2.0 * ref.px0 * ref.tx0 / ref.p0;
    return ref;
}

DynamicsPoint osc_dynamics(const OscConfig& cfg, double mu_x, PhaseTrack& track) {
    cfg.validate();
    const double A = cfg.A(), B = cfg.B(), C = cfg.C(), D = cfg.D();
    auto num = [&](double z) {
        double m11, m33;
        w_pair(cfg.eta, z, m11, m33);
        return A * z * m33;
    };
    auto den = [&](double z) {
        double m11, m33;
        w_pair(cfg.eta, z, m11, m33);
        return m11 - B * z * m33;
    };

    DynamicsPoint out;
    out.x = mu_x;
    out.action = kHBar * catan_eval(num, den, 0.0, mu_x, track,
                                    osc_catan_options(cfg.eta, track.seeded ? track.last_x : 0.0,
                                                      mu_x));

    const MijEval e = osc_mij(cfg.eta, mu_x);
    const double z = mu_x, zsq = z * z;
    const double d1 = e.m11 - B * z * e.m33;
    const double d2 = A * z * e.m33;
    const double dd = d1 * d1 + d2 * d2;
    out.momentum = A * (e.m11 * e.m31 + 2.0 * cfg.eta * zsq * e.m33 * e.m53) / dd;
    out.time = (A * z / 2.0) *
               (e.m33 * e.m11_a - e.m11 * e.m33_a + C * e.m11 * e.m33 + D * z * e.m33 * e.m33) /
               dd;
    return out;
}

DynamicsPoint newtonian_osc(double eta, double mu_x) {
    const double xsq = 2.0 * eta + 1.0;
    const double X = std::sqrt(std::fmax(0.0, xsq));
    if (std::abs(mu_x) > X)
        throw OutsideTurningPoints(kModule, "Newtonian functions undefined beyond |x| = X");
    const double z = mu_x;
    DynamicsPoint out;
    out.x = z;
    const double root = std::sqrt(std::fmax(0.0, xsq - z * z));
    out.action = 0.5 * (z * root + xsq * std::asin(X > 0 ? z / X : 0.0));
    out.momentum = root;
    out.time = std::asin(X > 0 ? z / X : 0.0);
    return out;
}

double osc_world_line(const OscConfig& cfg, double mu_x) {
    const MijEval e = osc_mij(cfg.eta, mu_x);
    const double A = cfg.A(), B = cfg.B(), C = cfg.C(), D = cfg.D();
    const double z = mu_x;
    const double d1 = e.m11 - B * z * e.m33;
    const double d2 = A * z * e.m33;
    return (A * z / 2.0) *
           (e.m33 * e.m11_a - e.m11 * e.m33_a + C * e.m11 * e.m33 + D * z * e.m33 * e.m33) /
           (d1 * d1 + d2 * d2);
}

double osc_period(const OscConfig& cfg) {
    cfg.validate();
    if (cfg.A() == 0.0)
        throw InvalidConfig(kModule, "period undefined at A = 0 (eta = -1/2)");
    const auto zs = limit_ladder(cfg.eta);
    const double t_inf =
        converge_ladder(zs, [&](double z) { return osc_world_line(cfg, z); }, 1e-30);
    return 4.0 * t_inf;
}

double newtonian_density(double eta, double mu_x) {
    const double xsq = 2.0 * eta + 1.0;
    if (mu_x * mu_x >= xsq) return 0.0;
    return 1.0 / (M_PI * std::sqrt(xsq - mu_x * mu_x));
}

double ground_state_density(double mu_x) {
    return std::exp(-mu_x * mu_x) / std::sqrt(M_PI);
}

DensityResult osc_density(const OscConfig& cfg, const std::vector<double>& grid) {
    cfg.validate();
    if (grid.size() < 9) throw InvalidConfig(kModule, "density grid needs at least 9 points");
    DensityResult out;
    out.grid = grid;
    out.density.resize(grid.size());
    out.newtonian.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        const double h = 1e-6 * (1.0 + std::abs(z));
        const double tp = (osc_world_line(cfg, z + h) - osc_world_line(cfg, z - h)) / (2.0 * h);
        out.density[i] = std::abs(tp);
        out.newtonian[i] = newtonian_density(cfg.eta, z);
    }
    // trapezoid normalization on the (possibly nonuniform) grid
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        total += 0.5 * (out.density[i] + out.density[i + 1]) * (grid[i + 1] - grid[i]);
    if (!(total > 0.0)) throw NormalizationFailure(kModule, "world-line slope integrates to zero");
    const double ztail = std::fmax(1.0, std::abs(grid.back()));
    out.tail_fraction = (out.density.front() + out.density.back()) / (4.0 * ztail) / total;
    if (out.tail_fraction > 1e-6)
        throw NormalizationFailure(kModule, "grid does not span enough probability mass");
    for (double& d : out.density) d /= total;
    return out;
}

double osc_action_limit(const OscConfig& cfg, int direction) {
    cfg.validate();
    const double A = cfg.A(), B = cfg.B();
    auto num = [&](double z) {
        double m11, m33;
        w_pair(cfg.eta, z, m11, m33);
        return A * z * m33;
    };
    auto den = [&](double z) {
        double m11, m33;
        w_pair(cfg.eta, z, m11, m33);
        return m11 - B * z * m33;
    };
    PhaseTrack track;
    const double dir = direction >= 0 ? 1.0 : -1.0;
    const auto zs = limit_ladder(cfg.eta);
    double z_at = 0.0;
    auto advance_to = [&](double z) {
        const double w = kHBar * catan_eval(num, den, z_at, dir * z, track,
                                            osc_catan_options(cfg.eta, z_at, dir * z));
        z_at = dir * z;
        return w;
    };
    double prev = advance_to(zs[0]);
    for (std::size_t i = 1; i < zs.size(); ++i) {
        const double cur = advance_to(zs[i]);
        if (std::abs(cur - prev) <= kLimitTol * std::fmax(std::abs(cur), kPlanck)) return cur;
        prev = cur;
    }
    throw NoConvergence(kModule, "action limit did not stabilize before the series guard");
}

double full_cycle_action(const OscConfig& cfg) {
    cfg.validate();
    if (cfg.A() == 0.0) return 0.0;  // eta = -1/2: identically zero momentum field
    return 2.0 * (osc_action_limit(cfg, +1) - osc_action_limit(cfg, -1));
}

QuantizationScan quantization_scan(double a, double eta_from, double eta_to, int steps) {
    if (steps < 8) throw InvalidConfig(kModule, "quantization scan needs at least 8 points");
    if (!(a > 0.0)) throw InvalidConfig(kModule, "activation multiplier a must be positive");
    QuantizationScan out;
    out.eta.resize(steps);
    out.action.resize(steps);
    for (int i = 0; i < steps; ++i) {
        const double eta = eta_from + (eta_to - eta_from) * i / (steps - 1.0);
        OscConfig cfg;
        cfg.eta = eta;
        cfg.a = a;
        out.eta[i] = eta;
        out.action[i] = full_cycle_action(cfg);
    }

    // centered differences; one-sided at the edges so a step hugging eta_from
    // (the eta = -1/2 increment) is still visible
    const int n = steps;
    std::vector<double> diff(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            diff[i] = out.action[1] - out.action[0];
        else if (i == n - 1)
            diff[i] = out.action[n - 1] - out.action[n - 2];
        else
            diff[i] = 0.5 * (out.action[i + 1] - out.action[i - 1]);
    }
    std::vector<double> mags;
    mags.reserve(n);
    for (double d : diff) mags.push_back(std::abs(d));
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    const double median = std::fmax(sorted[n / 2], 1e-15);

    const double threshold = 10.0 * median;
    int i = 0;
    while (i < n) {
        if (mags[i] <= threshold) {
            ++i;
            continue;
        }
        int j = i;
        int peak = i;
        while (j < n && mags[j] > threshold) {
            if (mags[j] > mags[peak]) peak = j;
            ++j;
        }
        QuantizationStep step;
        step.eta = out.eta[peak];
        const int before = std::max(0, i - 2);
        const int after = std::min(n - 1, j + 1);
        step.size = out.action[after] - out.action[before];
        out.steps.push_back(step);
        i = j;
    }
    return out;
}

}  // namespace clustor
