#pragma once

namespace clustor {

// Parameters of Kummer's confluent hypergeometric function M(a, b, z).
// b must not be a non-positive integer; this library only needs z >= 0.
struct KummerParams {
    double a;
    double b;
    double z;
    double tol = 1e-12;
};

struct KummerEval {
    double m;   // M(a, b, z)
    double ma;  // dM/da
};

// M together with its a-derivative in one series pass.  The a-derivative of
// each term is carried through the term recurrence itself, so the result stays
// finite when a is at or near a non-positive integer (truncating series).
KummerEval kummer_m_ma(double a, double b, double z, double tol = 1e-12);

double kummer_m(const KummerParams& p);
double kummer_mz(const KummerParams& p);   // dM/dz = (a/b) M(a+1, b+1, z)
double kummer_ma(const KummerParams& p);
double kummer_mza(const KummerParams& p);  // d2M/dzda

// Psi(a + n) - Psi(a) as the harmonic sum over 1/(a + k), exact for all a not
// in {0, -1, ..., -(n-1)}.  The digamma function itself is never evaluated.
double digamma_diff(double a, int n);

}  // namespace clustor
