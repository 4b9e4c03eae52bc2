#include "clustor/barrier.hpp"

#include <cmath>

#include "clustor/errors.hpp"

namespace clustor {

namespace {

constexpr const char* kModule = "barrier_system";

// even/odd propagation kernels through region 2:
//   ceven(q, th) = cosh(sqrt(q) th)     continued across q <= 0
//   sodd(q, th)  = sinh(sqrt(q) th)/sqrt(q), likewise
// Both are entire in q th^2; near q th^2 = 0 the series forms keep the
// E = V case a removable limit.
double ceven(double q, double th) {
    const double w = q * th * th;
    if (std::abs(w) < 1e-8) return 1.0 + w / 2.0 + w * w / 24.0;
    if (q > 0.0) return std::cosh(std::sqrt(q) * th);
    return std::cos(std::sqrt(-q) * th);
}

double sodd(double q, double th) {
    const double w = q * th * th;
    if (std::abs(w) < 1e-8) return th * (1.0 + w / 6.0 + w * w / 120.0);
    if (q > 0.0) {
        const double r = std::sqrt(q);
        return std::sinh(r * th) / r;
    }
    const double s = std::sqrt(-q);
    return std::sin(s * th) / s;
}

struct Region3State {
    double p0;
    double px0;
    double a3, b3, c3, d3;
};

// momentum and its x-derivative at the region-3 edge x = x2, from the
// normalized constants; these are the reference data generators for the
// transmitted state
Region3State region3_state(const BarrierConfig& cfg) {
    const RegionConstants rc = region_constants(cfg);
    const double k = cfg.k();
    const double w = rc.a3 * rc.d3 + rc.b3 * rc.c3;
    const double n = rc.a3 * rc.a3 + rc.c3 * rc.c3;
    Region3State st;
    st.p0 = kHBar * k * w / n;
    st.px0 = -2.0 * kHBar * k * k * w * (rc.a3 * rc.b3 - rc.c3 * rc.d3) / (n * n);
    st.a3 = rc.a3;
    st.b3 = rc.b3;
    st.c3 = rc.c3;
    st.d3 = rc.d3;
    return st;
}

}  // namespace

double BarrierConfig::k() const { return std::sqrt(2.0 * m * E) / kHBar; }
double BarrierConfig::lambda() const { return 2.0 * M_PI / k(); }
double BarrierConfig::q() const { return V / E - 1.0; }

void BarrierConfig::validate() const {
    if (!(m > 0.0)) throw InvalidConfig(kModule, "mass m must be positive");
    if (!(E > 0.0)) throw InvalidConfig(kModule, "energy E must be positive");
    if (E == V) throw InvalidConfig(kModule, "E = V makes the wave-number ratio vanish");
    if (!(x0 < x1)) throw InvalidConfig(kModule, "reference point x0 must lie left of x1");
    if (!(x1 <= x2)) throw InvalidConfig(kModule, "region boundaries need x1 <= x2");
    if (A == 0.0) throw InvalidConfig(kModule, "incident A must be nonzero");
}

RegionConstants region_constants(const BarrierConfig& cfg) {
    cfg.validate();
    const double k = cfg.k();
    const double q = cfg.q();
    const double c01 = std::cos(k * (cfg.x1 - cfg.x0));
    const double s01 = std::sin(k * (cfg.x1 - cfg.x0));
    const double th = k * (cfg.x2 - cfg.x1);
    const double ce = ceven(q, th);
    const double so = sodd(q, th);

    RegionConstants rc;
    rc.q = q;
    rc.a1 = 0.0;
    rc.b1 = cfg.A;
    rc.c1 = 1.0;
    rc.d1 = cfg.B;
    rc.a2 = rc.a1 * c01 + rc.b1 * s01;
    rc.b2 = rc.b1 * c01 - rc.a1 * s01;
    rc.c2 = rc.c1 * c01 - rc.d1 * s01;
    rc.d2 = rc.d1 * c01 + rc.c1 * s01;
    rc.a3 = rc.a2 * ce + rc.b2 * so;
    rc.b3 = rc.b2 * ce + q * rc.a2 * so;
    rc.c3 = rc.c2 * ce - rc.d2 * so;
    rc.d3 = rc.d2 * ce - q * rc.c2 * so;
    return rc;
}

double barrier_action(const BarrierConfig& cfg, double x, PhaseTrack& track) {
    const RegionConstants rc = region_constants(cfg);
    const double k = cfg.k();

    auto num = [&](double xx) {
        if (xx < cfg.x1) {
            const double ph = k * (xx - cfg.x0);
            return rc.a1 * std::cos(ph) + rc.b1 * std::sin(ph);
        }
        if (xx <= cfg.x2) {
            const double th = k * (xx - cfg.x1);
            return rc.a2 * ceven(rc.q, th) + rc.b2 * sodd(rc.q, th);
        }
        const double ph = k * (xx - cfg.x2);
        return rc.a3 * std::cos(ph) + rc.b3 * std::sin(ph);
    };
    auto den = [&](double xx) {
        if (xx < cfg.x1) {
            const double ph = k * (xx - cfg.x0);
            return rc.c1 * std::cos(ph) - rc.d1 * std::sin(ph);
        }
        if (xx <= cfg.x2) {
            const double th = k * (xx - cfg.x1);
            return rc.c2 * ceven(rc.q, th) - rc.d2 * sodd(rc.q, th);
        }
        const double ph = k * (xx - cfg.x2);
        return rc.c3 * std::cos(ph) - rc.d3 * std::sin(ph);
    };

    CatanOptions opt;
    const double span = std::abs(x - (track.seeded ? track.last_x : cfg.x0));
    const double rate = std::fmax(1.0, std::sqrt(std::abs(rc.q)));  // region-2 growth scale
    opt.min_panels = static_cast<int>(std::ceil(8.0 * rate * span * k / (2.0 * M_PI))) + 4;
    return kHBar * catan_eval(num, den, cfg.x0, x, track, opt);
}

double activation_from_constants(double a, double b, double c, double d) {
    const double norm = a * a + b * b + c * c + d * d;
    const double r = 2.0 * (a * d + b * c) / norm;
    return std::sqrt(std::fmax(0.0, 1.0 - r * r));
}

FreeActivation region1_activation(const BarrierConfig& cfg) {
    FreeConfig inc;
    inc.m = cfg.m;
    inc.E = cfg.E;
    inc.A = cfg.A;
    inc.B = cfg.B;
    return free_activation(inc);
}

FreeActivation region3_activation(const BarrierConfig& cfg) {
    cfg.validate();
    const double k = cfg.k();

    // The transmitted world line, written over the region-3 constants
    // (u, v) = (a3 cos ph + b3 sin ph, c3 cos ph - d3 sin ph), ph = k(x - x2), is
    //   t (u^2 + v^2) = hbar [ kdot w (x - x2) + M0 + Mc cos 2ph + Ms sin 2ph ]
    // with w = a3 d3 + b3 c3 and Mc, Ms bilinear in the constants and their
    // E-derivatives.  Normalizing the linear term to k(x - x2) turns the
    // cosine amplitude into the secondary activation parameter; unlike the
    // reference-point form this amplitude carries no time-origin ambiguity.
    auto constants_at = [&](double e) {
        BarrierConfig c = cfg;
        c.E = e;
        return region_constants(c);
    };
    const RegionConstants rc = region_constants(cfg);

    const double he = 1e-6 * cfg.E;
    auto ddE = [&](auto&& field) {
        const double d1 = (field(constants_at(cfg.E + he)) - field(constants_at(cfg.E - he))) /
                          (2.0 * he);
        const double d2 = (field(constants_at(cfg.E + he / 2)) -
                           field(constants_at(cfg.E - he / 2))) /
                          he;
        return (4.0 * d2 - d1) / 3.0;  // Richardson on the central stencil
    };
    const double a3d = ddE([](const RegionConstants& r) { return r.a3; });
    const double b3d = ddE([](const RegionConstants& r) { return r.b3; });
    const double c3d = ddE([](const RegionConstants& r) { return r.c3; });
    const double d3d = ddE([](const RegionConstants& r) { return r.d3; });

    const double w = rc.a3 * rc.d3 + rc.b3 * rc.c3;
    const double mc = 0.5 * ((a3d * rc.c3 - rc.a3 * c3d) - (rc.b3 * d3d - b3d * rc.d3));
    const double ms = 0.5 * ((rc.a3 * d3d - a3d * rc.d3) + (b3d * rc.c3 - rc.b3 * c3d));
    const double scale = kHBar * kHBar * k * k / (cfg.m * w);  // k / (kdot w)
    const double cos_coeff = scale * mc;
    const double sin_coeff = scale * ms;
    // bracket = k xi + (C/2) sin 2k xi + (D/2)(1 - cos 2k xi)
    const double c_free = 2.0 * sin_coeff;
    const double d_free = -2.0 * cos_coeff;

    // phase parameters from the template fit at the region-3 edge
    const Region3State st = region3_state(cfg);
    const double a_edge = st.p0 / (kHBar * k);
    const double b_edge = st.px0 / (2.0 * k * st.p0);

    FreeActivation act;
    act.alpha1 = activation_from_constants(rc.a3, rc.b3, rc.c3, rc.d3);
    act.phi1 = 0.5 * std::atan2(2.0 * b_edge, 1.0 - a_edge * a_edge - b_edge * b_edge);
    act.alpha2 = 0.5 * std::hypot(c_free, d_free);
    act.phi2 = 0.5 * std::atan2(c_free, d_free);
    return act;
}

}  // namespace clustor
