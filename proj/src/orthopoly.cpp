#include "ibp/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "ibp/errors.hpp"
#include "ibp/numerics.hpp"

namespace ibp {

double laguerre_eval(int n, double alpha, double x) {
    if (n < 0) throw invalid_input("laguerre_eval: n must be >= 0");
    if (n == 0) return 1.0;
    double lm2 = 1.0;
    double lm1 = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        double lk = ((-x + 2.0 * k + alpha - 1.0) * lm1 - (k + alpha - 1.0) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

double hermite_eval(int n, double x) {
    if (n < 0) throw invalid_input("hermite_eval: n must be >= 0");
    if (n == 0) return 1.0;
    double hm2 = 1.0;
    double hm1 = 2.0 * x;
    for (int k = 2; k <= n; ++k) {
        double hk = 2.0 * x * hm1 - 2.0 * (k - 1.0) * hm2;
        hm2 = hm1;
        hm1 = hk;
    }
    return hm1;
}

ZeroSet laguerre_zeros(int n, double alpha) {
    if (n < 1) throw invalid_input("laguerre_zeros: n must be >= 1");
    if (alpha <= -1.0) throw invalid_input("laguerre_zeros: alpha must be > -1");

    // Golub-Welsch: Jacobi matrix of the generalized Laguerre recurrence.
    std::vector<double> diag(static_cast<size_t>(n));
    std::vector<double> off(static_cast<size_t>(n > 1 ? n - 1 : 0));
    for (int k = 0; k < n; ++k) diag[static_cast<size_t>(k)] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k)
        off[static_cast<size_t>(k - 1)] = std::sqrt(k * (k + alpha));
    std::vector<double> z = tridiag_eigenvalues(std::move(diag), std::move(off));

    // One Newton polish per root; x L' = n L_n - (n + alpha) L_{n-1}.
    for (double& x : z) {
        for (int it = 0; it < 3; ++it) {
            double ln = laguerre_eval(n, alpha, x);
            double lnm1 = laguerre_eval(n - 1, alpha, x);
            double deriv = (n * ln - (n + alpha) * lnm1) / x;
            if (deriv == 0.0) break;
            double dx = ln / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15 * std::abs(x)) break;
        }
        if (!(x > 0.0)) throw numeric_error("laguerre_zeros: non-positive root after polish");
    }
    std::sort(z.begin(), z.end());
    for (size_t i = 0; i + 1 < z.size(); ++i)
        if (!(z[i] < z[i + 1])) throw numeric_error("laguerre_zeros: roots not separated");
    return {std::move(z), ZeroFamily::LaguerreRoots, n, alpha};
}

ZeroSet hermite_zeros(int n) {
    if (n < 1) throw invalid_input("hermite_zeros: n must be >= 1");
    std::vector<double> diag(static_cast<size_t>(n), 0.0);
    std::vector<double> off(static_cast<size_t>(n > 1 ? n - 1 : 0));
    for (int k = 1; k < n; ++k) off[static_cast<size_t>(k - 1)] = std::sqrt(0.5 * k);
    std::vector<double> z = tridiag_eigenvalues(std::move(diag), std::move(off));

    for (double& x : z) {
        for (int it = 0; it < 3; ++it) {
            double hn = hermite_eval(n, x);
            double deriv = 2.0 * n * hermite_eval(n - 1, x);
            if (deriv == 0.0) break;
            double dx = hn / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-15 * (std::abs(x) + 1e-30)) break;
        }
    }
    std::sort(z.begin(), z.end());
    // Enforce the exact sign symmetry of the spectrum.
    for (size_t i = 0, j = z.size() - 1; i < j; ++i, --j) {
        double v = 0.5 * (z[j] - z[i]);
        z[i] = -v;
        z[j] = v;
    }
    if (z.size() % 2 == 1) z[z.size() / 2] = 0.0;
    return {std::move(z), ZeroFamily::HermiteRoots, n, 0.0};
}

ZeroSet sqrt_laguerre_zeros(int n, double alpha) {
    ZeroSet s = laguerre_zeros(n, alpha);
    for (double& v : s.values) v = std::sqrt(v);
    s.family = ZeroFamily::SqrtLaguerreRoots;
    return s;
}

namespace {

double bessel_i_series(double nu, double x) {
    const double h = 0.5 * x;
    const double h2 = h * h;
    double log_term0 = nu * std::log(h) - std::lgamma(nu + 1.0);
    // Keep the running term in log space only for the prefactor; the ratio
    // recursion itself is stable.
    double term = std::exp(log_term0);
    double sum = term;
    for (int k = 1; k <= 400; ++k) {
        term *= h2 / (k * (nu + k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double bessel_i_asymptotic(double nu, double x) {
    // I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev_abs = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * k * x);
        if (std::abs(term) > prev_abs) break;  // asymptotic tail turned
        sum += term;
        prev_abs = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

}  // namespace

double modified_bessel_i(double nu, double x) {
    if (nu < -0.5) throw invalid_input("modified_bessel_i: nu must be >= -1/2");
    if (x < 0.0) throw invalid_input("modified_bessel_i: x must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x > 700.0) throw numeric_error("modified_bessel_i: argument overflows double range");
    if (x < 20.0) return bessel_i_series(nu, x);
    return bessel_i_asymptotic(nu, x);
}

double bessel_tpd_single(double t, double y, double x, double nu) {
    if (t <= 0.0 || y <= 0.0) throw invalid_input("bessel_tpd_single: need t, y > 0");
    if (x < 0.0) throw invalid_input("bessel_tpd_single: need x >= 0");
    if (x == 0.0) {
        // Limit of (y^{nu+1}/x^nu) I_nu(xy/t) as x -> 0.
        double logp = (2.0 * nu + 1.0) * std::log(y) - std::log(t) - nu * std::log(2.0 * t) -
                      std::lgamma(nu + 1.0) - (y * y) / (2.0 * t);
        return std::exp(logp);
    }
    return std::pow(y, nu + 1.0) / std::pow(x, nu) / t *
           std::exp(-(x * x + y * y) / (2.0 * t)) * modified_bessel_i(nu, x * y / t);
}

namespace {

void check_distinct_positive(std::span<const double> z) {
    for (size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] != 0.0)) throw invalid_input("potential: zero coordinate");
        for (size_t j = i + 1; j < z.size(); ++j)
            if (std::abs(z[j] * z[j] - z[i] * z[i]) < 1e-300)
                throw invalid_input("potential: coincident coordinates");
    }
}

}  // namespace

PotentialValue potential_F(std::span<const double> z, double nu, int n) {
    if (static_cast<int>(z.size()) != n) throw invalid_input("potential_F: size mismatch");
    check_distinct_positive(z);

    double z2 = 0.0, logsum = 0.0, pairsum = 0.0;
    for (int i = 0; i < n; ++i) {
        z2 += z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
        logsum += std::log(z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairsum += std::log(std::abs(z[static_cast<size_t>(j)] * z[static_cast<size_t>(j)] -
                                         z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)]));

    double constant = -static_cast<double>(n) * (n + nu - 0.5);
    for (int i = 1; i <= n; ++i) {
        constant += i * std::log(static_cast<double>(i));
        constant += (nu + i - 0.5) * std::log(nu + i - 0.5);
    }

    PotentialValue out;
    out.value = z2 - (nu + 0.5) * logsum - 2.0 * pairsum + constant;
    out.gradient.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double zi = z[static_cast<size_t>(i)];
        double g = 2.0 * zi - (2.0 * nu + 1.0) / zi;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double zj = z[static_cast<size_t>(j)];
            g -= 4.0 * zi / (zi * zi - zj * zj);
        }
        out.gradient[static_cast<size_t>(i)] = g;
    }
    return out;
}

PotentialValue potential_F_tilde(std::span<const double> z, double beta, int n) {
    if (static_cast<int>(z.size()) != n) throw invalid_input("potential_F_tilde: size mismatch");
    for (double v : z)
        if (!(v != 0.0)) throw invalid_input("potential_F_tilde: zero coordinate");

    double z2 = 0.0, logsum = 0.0;
    for (double v : z) {
        z2 += v * v;
        logsum += std::log(v * v);
    }
    PotentialValue out;
    out.value = z2 - beta * logsum + beta * n * (std::log(beta) - 1.0);
    out.gradient.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.gradient[static_cast<size_t>(i)] =
            2.0 * z[static_cast<size_t>(i)] - 2.0 * beta / z[static_cast<size_t>(i)];
    return out;
}

std::vector<double> potential_F_hessian(std::span<const double> z, double nu) {
    const int n = static_cast<int>(z.size());
    check_distinct_positive(z);
    std::vector<double> h(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double zi = z[static_cast<size_t>(i)];
        double diag = 2.0 * (1.0 + (2.0 * nu + 1.0) / (2.0 * zi * zi));
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double zl = z[static_cast<size_t>(l)];
            const double d = zi * zi - zl * zl;
            diag += 4.0 * (zi * zi + zl * zl) / (d * d);
            h[static_cast<size_t>(i) * n + l] = -8.0 * zi * zl / (d * d);
        }
        h[static_cast<size_t>(i) * n + i] = diag;
    }
    return h;
}

double potential_F_hessian_quadform(std::span<const double> z, double nu,
                                    std::span<const double> u) {
    const int n = static_cast<int>(z.size());
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        const double zi = z[static_cast<size_t>(i)];
        const double ui = u[static_cast<size_t>(i)];
        q += 2.0 * ui * ui * (1.0 + (2.0 * nu + 1.0) / (2.0 * zi * zi));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double zj = z[static_cast<size_t>(j)];
            const double uj = u[static_cast<size_t>(j)];
            const double d = zi * zi - zj * zj;
            const double p1 = ui * zi - uj * zj;
            const double p2 = ui * zj - uj * zi;
            q += (p1 * p1 + p2 * p2) / (d * d);
        }
    }
    return q;
}

std::vector<double> stationarity_residual(std::span<const double> z, double nu) {
    const int n = static_cast<int>(z.size());
    check_distinct_positive(z);
    std::vector<double> res(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double zi2 = z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
        double r = zi2 - (nu + 0.5);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double zj2 = z[static_cast<size_t>(j)] * z[static_cast<size_t>(j)];
            r -= 2.0 * zi2 / (zi2 - zj2);
        }
        res[static_cast<size_t>(i)] = r;
    }
    return res;
}

RootIdentityReport root_identities(int n, double alpha, double tol_scale) {
    ZeroSet zs = laguerre_zeros(n, alpha);
    const double tol = tol_scale * n;

    double sum = 0.0, logsum = 0.0, pairsum = 0.0;
    for (double s : zs.values) {
        sum += s;
        logsum += std::log(s);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairsum += std::log(std::abs(zs.values[static_cast<size_t>(j)] -
                                         zs.values[static_cast<size_t>(i)]));

    double logsum_expected = 0.0, pairsum_expected = 0.0;
    for (int i = 1; i <= n; ++i) {
        logsum_expected += std::log(alpha + i);
        pairsum_expected += (i - 1) * std::log(alpha + i) + i * std::log(static_cast<double>(i));
    }

    RootIdentityReport rep;
    rep.sum_residual = sum - static_cast<double>(n) * (alpha + n);
    rep.logsum_residual = logsum - logsum_expected;
    rep.logpair_residual = 2.0 * pairsum - pairsum_expected;
    rep.sum_ok = std::abs(rep.sum_residual) <= tol;
    rep.logsum_ok = std::abs(rep.logsum_residual) <= tol;
    rep.logpair_ok = std::abs(rep.logpair_residual) <= tol;
    return rep;
}

}  // namespace ibp
