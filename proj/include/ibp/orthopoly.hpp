#pragma once

#include <span>
#include <vector>

namespace ibp {

enum class ZeroFamily { LaguerreRoots, HermiteRoots, SqrtLaguerreRoots };

struct ZeroSet {
    std::vector<double> values;  // strictly increasing
    ZeroFamily family = ZeroFamily::LaguerreRoots;
    int n = 0;
    double alpha = 0.0;  // unused for Hermite
};

// L_n^(alpha)(x) by the three-term recurrence.
double laguerre_eval(int n, double alpha, double x);
// Physicists' Hermite H_n(x).
double hermite_eval(int n, double x);

// All n zeroes, ascending, via the symmetric Jacobi matrix plus one Newton
// polish per root. alpha > -1 required.
ZeroSet laguerre_zeros(int n, double alpha);
ZeroSet hermite_zeros(int n);
// Componentwise square roots of the Laguerre zeroes.
ZeroSet sqrt_laguerre_zeros(int n, double alpha);

// Modified Bessel function of the first kind, nu >= -1/2, x >= 0.
// Power series below the switchover at x = 20, large-x asymptotics above.
double modified_bessel_i(double nu, double x);

// Single-particle Bessel transition density p(t, y | x); x = 0 is served by
// the exact small-argument limit.
double bessel_tpd_single(double t, double y, double x, double nu);

struct PotentialValue {
    double value = 0.0;
    std::vector<double> gradient;
};

// The log-gas potential whose minima sit at the square roots of the
// Laguerre zeroes; second argument is the Bessel index nu.
PotentialValue potential_F(std::span<const double> z, double nu, int n);
// Its decoupled analogue for the large-index regime.
PotentialValue potential_F_tilde(std::span<const double> z, double beta, int n);

// Quadratic form u^T H u of the Hessian of F at z (closed form).
double potential_F_hessian_quadform(std::span<const double> z, double nu,
                                    std::span<const double> u);
// Dense Hessian of F, row-major n*n.
std::vector<double> potential_F_hessian(std::span<const double> z, double nu);

// residual_i = z_i^2 - (nu + 1/2) - sum_{j != i} 2 z_i^2 / (z_i^2 - z_j^2).
std::vector<double> stationarity_residual(std::span<const double> z, double nu);

struct RootIdentityReport {
    bool sum_ok = false, logsum_ok = false, logpair_ok = false;
    double sum_residual = 0.0, logsum_residual = 0.0, logpair_residual = 0.0;
    bool all_ok() const { return sum_ok && logsum_ok && logpair_ok; }
};

// Checks the three closed-form identities satisfied by Laguerre zeroes:
// their sum, the sum of their logs, and the pairwise log-distance sum.
RootIdentityReport root_identities(int n, double alpha, double tol_scale = 1e-8);

}  // namespace ibp
