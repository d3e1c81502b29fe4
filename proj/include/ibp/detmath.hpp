#pragma once

#include <cstdint>
#include <cstring>

// Deterministic elementwise math kernels (fdlibm-style log and sin/cos).
// The Gaussian noise pipeline uses these instead of libm so that the scalar
// and SIMD backends produce bit-identical streams and results do not depend
// on the host libm. Inputs are restricted to the ranges the pipeline needs:
// log on (0, 1], sincos on [0, 2*pi).

namespace ibp::detmath {

inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPiO2Hi = 1.57079632679489655800e+00;
inline constexpr double kPiO2Lo = 6.12323399573676603587e-17;

inline double log_pos(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    std::uint32_t hx = static_cast<std::uint32_t>(bits >> 32);
    hx += 0x3ff00000u - 0x3fe6a09eu;
    const int k = static_cast<int>(hx >> 20) - 0x3ff;
    hx = (hx & 0x000fffffu) + 0x3fe6a09eu;
    bits = (static_cast<std::uint64_t>(hx) << 32) | (bits & 0xffffffffull);
    double m;
    std::memcpy(&m, &bits, 8);

    const double f = m - 1.0;
    const double s = f / (2.0 + f);
    const double z = s * s;
    const double w = z * z;
    const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
    const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
    const double r = t1 + t2;
    const double hfsq = 0.5 * f * f;
    const double dk = static_cast<double>(k);
    return dk * kLn2Hi - ((hfsq - (s * (hfsq + r) + dk * kLn2Lo)) - f);
}

inline double poly_sin(double r) {
    const double z = r * r;
    return r + r * z * (kS1 + z * (kS2 + z * (kS3 + z * (kS4 + z * (kS5 + z * kS6)))));
}

inline double poly_cos(double r) {
    const double z = r * r;
    return 1.0 - 0.5 * z + z * z * (kC1 + z * (kC2 + z * (kC3 + z * (kC4 + z * (kC5 + z * kC6)))));
}

// Simultaneous sin/cos on [0, 2*pi): Cody-Waite quadrant reduction, then the
// kernel polynomials, then a quadrant swap.
inline void sincos_2pi(double t, double* s_out, double* c_out) {
    const double qd = __builtin_nearbyint(t * kTwoOverPi);
    const int q = static_cast<int>(qd) & 3;
    const double r = (t - qd * kPiO2Hi) - qd * kPiO2Lo;
    const double sr = poly_sin(r);
    const double cr = poly_cos(r);
    switch (q) {
        case 0: *s_out = sr; *c_out = cr; break;
        case 1: *s_out = cr; *c_out = -sr; break;
        case 2: *s_out = -sr; *c_out = -cr; break;
        default: *s_out = -cr; *c_out = sr; break;
    }
}

}  // namespace ibp::detmath
