#include "clustor/kummer.hpp"

#include <cmath>
#include <cstdio>

#include "clustor/errors.hpp"

namespace clustor {

namespace {

constexpr double kOverflowGuard = 1e290;
constexpr int kMaxTerms = 200000;

void validate(double a, double b, double z) {
    (void)a;
    if (!(z >= 0.0))
        throw InvalidConfig("specfun", "Kummer argument z must be nonnegative");
    if (b <= 0.0 && std::abs(b - std::nearbyint(b)) < 1e-12)
        throw InvalidConfig("specfun", "Kummer parameter b is a non-positive integer");
}

}  // namespace

KummerEval kummer_m_ma(double a, double b, double z, double tol) {
    validate(a, b, z);

    // term recurrence: t_{n+1} = t_n (a+n) z / ((b+n)(n+1));
    // its a-derivative dt_{n+1} = (dt_n (a+n) + t_n) z / ((b+n)(n+1)).
    // Carrying dt alongside t removes the 0*inf product the digamma form of
    // the a-derivative develops when a + k hits zero.
    double term = 1.0;
    double dterm = 0.0;
    double m = 1.0;
    double ma = 0.0;
    int quiet = 0;  // consecutive below-tolerance terms
    for (int n = 0; n < kMaxTerms; ++n) {
        const double ratio = z / ((b + n) * (n + 1.0));
        dterm = (dterm * (a + n) + term) * ratio;
        term = term * (a + n) * ratio;
        m += term;
        ma += dterm;
        if (std::abs(term) > kOverflowGuard || std::abs(m) > kOverflowGuard ||
            std::abs(ma) > kOverflowGuard)
            throw SeriesOverflow("specfun", "Kummer series term exceeded representable range");
        const double scale = std::fmax(std::abs(m), 1.0);
        const double dscale = std::fmax(std::abs(ma), scale);
        if (std::abs(term) < tol * scale && std::abs(dterm) < tol * dscale)
            ++quiet;
        else
            quiet = 0;
        // demand quiet behind the term-ratio peak near n = z, where decay
        // turns geometric
        if (quiet >= 3 && n + 1 > z) return {m, ma};
    }
    throw NoConvergence("specfun", "Kummer series did not converge");
}

double kummer_m(const KummerParams& p) { return kummer_m_ma(p.a, p.b, p.z, p.tol).m; }

double kummer_mz(const KummerParams& p) {
    return (p.a / p.b) * kummer_m_ma(p.a + 1.0, p.b + 1.0, p.z, p.tol).m;
}

double kummer_ma(const KummerParams& p) { return kummer_m_ma(p.a, p.b, p.z, p.tol).ma; }

double kummer_mza(const KummerParams& p) {
    const KummerEval shifted = kummer_m_ma(p.a + 1.0, p.b + 1.0, p.z, p.tol);
    return (p.a / p.b) * shifted.ma + shifted.m / p.b;
}

double digamma_diff(double a, int n) {
    if (n < 0) throw InvalidConfig("specfun", "digamma_diff requires n >= 0");
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double den = a + k;
        if (den == 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "digamma_diff pole at a + %d = 0", k);
            throw InvalidConfig("specfun", buf);
        }
        sum += 1.0 / den;
    }
    return sum;
}

}  // namespace clustor
