#pragma once

// Euler-Maruyama proposal kernels. The scalar forms below are the reference;
// the AVX2 forms in sde_avx2.cpp advance four paths per call with the same
// per-element operation order, so both backends produce bit-identical
// trajectories. Any change here must be mirrored there.

#include "ibp/sde.hpp"

namespace ibp::sde_detail {

// Proposal for one path. Returns chamber validity (positivity + strict
// ordering for BesselB, strict ordering for DysonA).
inline bool propose_bessel(const double* x, const double* g, double* xn, int n, double dt,
                           double sqrt_dt, double half_beta, double two_nu_plus_1) {
    for (int i = 0; i < n; ++i) {
        double acc = two_nu_plus_1 / (2.0 * x[i]);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc = acc + 1.0 / (x[i] - x[j]);
            acc = acc + 1.0 / (x[i] + x[j]);
        }
        const double d = half_beta * acc;
        xn[i] = x[i] + d * dt + sqrt_dt * g[i];
    }
    bool ok = xn[0] > 0.0;
    for (int i = 1; i < n; ++i) ok = ok && (xn[i] > xn[i - 1]);
    return ok;
}

inline bool propose_dyson(const double* x, const double* g, double* xn, int n, double dt,
                          double sqrt_dt, double half_beta) {
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc = acc + 1.0 / (x[i] - x[j]);
        }
        const double d = half_beta * acc;
        xn[i] = x[i] + d * dt + sqrt_dt * g[i];
    }
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && (xn[i] > xn[i - 1]);
    return ok;
}

inline bool propose_path(Model model, const double* x, const double* g, double* xn, int n,
                         double dt, double sqrt_dt, double half_beta, double two_nu_plus_1) {
    return model == Model::BesselB
               ? propose_bessel(x, g, xn, n, dt, sqrt_dt, half_beta, two_nu_plus_1)
               : propose_dyson(x, g, xn, n, dt, sqrt_dt, half_beta);
}

#if defined(__x86_64__) || defined(_M_X64)
// Four paths per call. xs/gs/xns are SoA: component i of lane l at
// [i * 4 + l]. Returns a 4-bit validity mask (bit l = lane l valid).
int propose4_avx2(Model model, const double* xs, const double* gs, double* xns, int n, double dt,
                  double sqrt_dt, double half_beta, double two_nu_plus_1);
#endif

}  // namespace ibp::sde_detail
