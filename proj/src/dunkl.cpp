#include "ibp/dunkl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibp/errors.hpp"

namespace ibp {

void ModelParams::validate() const {
    if (!(beta > 0.0)) throw invalid_input("ModelParams: beta must be positive");
    if (!(nu >= -0.5)) throw invalid_input("ModelParams: nu must be >= -1/2");
    if (n_particles < 1) throw invalid_input("ModelParams: need at least one particle");
}

double log_weight_wB(std::span<const double> x, const ModelParams& params) {
    const int n = params.n_particles;
    if (static_cast<int>(x.size()) != n) throw invalid_input("weight_wB: size mismatch");
    double lw = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(x[static_cast<size_t>(i)]);
        if (a == 0.0) return -std::numeric_limits<double>::infinity();
        lw += params.beta * (params.nu + 0.5) * std::log(a);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = std::abs(x[static_cast<size_t>(j)] * x[static_cast<size_t>(j)] -
                                      x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)]);
            if (d == 0.0) return -std::numeric_limits<double>::infinity();
            lw += params.beta * std::log(d);
        }
    return lw;
}

double weight_wB(std::span<const double> x, const ModelParams& params) {
    const double lw = log_weight_wB(x, params);
    return std::isinf(lw) && lw < 0.0 ? 0.0 : std::exp(lw);
}

double log_selberg_cB(const ModelParams& params) {
    params.validate();
    const int n = params.n_particles;
    const double beta = params.beta;
    const double nu = params.nu;
    double lc = (n * (beta * (nu + 0.5) + 1.0) / 2.0 + beta * n * (n - 1.0) / 2.0) * std::log(2.0);
    for (int j = 1; j <= n; ++j) {
        lc += std::lgamma(1.0 + j * beta / 2.0);
        lc += std::lgamma(beta * (nu + j - 0.5) / 2.0 + 0.5);
        lc -= std::lgamma(beta / 2.0 + 1.0);
    }
    return lc;
}

double selberg_cB(const ModelParams& params) { return std::exp(log_selberg_cB(params)); }

SeriesResult hypergeo_pFq(HypergeoKind kind, double b, std::span<const double> x,
                          std::span<const double> y, double alpha, const SeriesControl& ctrl) {
    if (x.size() != y.size()) throw invalid_input("hypergeo_pFq: argument dimensions differ");
    if (alpha <= 0.0) throw invalid_input("hypergeo_pFq: alpha must be positive");
    if (ctrl.max_degree > kMaxPartitionModulus)
        throw invalid_input("hypergeo_pFq: max_degree above capacity (30)");

    const int n_vars = static_cast<int>(x.size());
    auto basis = JackBasis::get(alpha, n_vars, ctrl.max_degree);

    SeriesResult res;
    double total = 0.0;
    double last_term = 0.0;
    for (int deg = 0; deg <= ctrl.max_degree; ++deg) {
        const auto& parts = basis->partitions(deg);
        const auto mx = basis->monomial_values(deg, x);
        const auto my = basis->monomial_values(deg, y);
        const auto px = basis->jack_values(deg, mx);
        const auto py = basis->jack_values(deg, my);
        double term = 0.0;
        for (size_t k = 0; k < parts.size(); ++k) {
            const Partition& tau = parts[k];
            double denom = gen_pochhammer(n_vars / alpha, tau, alpha);
            if (kind == HypergeoKind::F11) denom *= gen_pochhammer(b, tau, alpha);
            term += hook_c(tau, alpha) / hook_c_prime(tau, alpha) * px[k] * py[k] / denom;
        }
        total += term;
        last_term = term;
    }
    res.value = total;
    res.last_term_ratio = total != 0.0 ? std::abs(last_term) / std::abs(total) : 0.0;
    res.converged = res.last_term_ratio <= ctrl.rel_term_tol;
    return res;
}

SeriesResult gen_bessel_B(std::span<const double> x, std::span<const double> y,
                          const ModelParams& params, const SeriesControl& ctrl) {
    params.validate();
    const int n = params.n_particles;
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw invalid_input("gen_bessel_B: size mismatch");
    std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<size_t>(i)] = 0.5 * x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        ys[static_cast<size_t>(i)] = 0.5 * y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    const double b = params.beta * (params.nu + n - 0.5) / 2.0 + 0.5;
    SeriesResult res = hypergeo_pFq(HypergeoKind::F11, b, xs, ys, 2.0 / params.beta, ctrl);
    const double prefactor = std::pow(2.0, n) * factorial(n);
    res.value *= prefactor;
    return res;
}

double symmetrized_exp_expansion(std::span<const double> x, std::span<const double> y,
                                 int max_degree) {
    if (x.size() != y.size())
        throw invalid_input("symmetrized_exp_expansion: argument dimensions differ");
    if (max_degree > 15) throw invalid_input("symmetrized_exp_expansion: max_degree above 15");
    const int n = static_cast<int>(x.size());
    std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        ys[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    const double pref = std::pow(2.0, n) * factorial(n);
    double total = 0.0;
    for (int deg = 0; 2 * deg <= max_degree; ++deg) {
        for (const Partition& mu : partitions_up_to(deg, n)) {
            total += pref / partition_factorial_doubled(mu) * monomial_eval(mu, xs) *
                     monomial_eval(mu, ys) / static_cast<double>(multinomial_count(mu, n));
        }
    }
    return total;
}

double JackExpansion::eval(std::span<const double> point) const {
    double s = 0.0;
    for (const auto& [tau, c] : coeffs) s += c * jack_eval(tau, alpha, point);
    return s;
}

JackExpansion vB_on_monomial(const Partition& lambda, const ModelParams& params) {
    params.validate();
    const int n = params.n_particles;
    if (lambda.length() > n) throw invalid_input("vB_on_monomial: partition longer than N");
    const double alpha = 2.0 / params.beta;
    const int deg = lambda.modulus();

    JackExpansion out;
    out.alpha = alpha;
    out.degree = deg;
    if (deg == 0) {
        out.coeffs[Partition{}] = 1.0;
        return out;
    }

    auto basis = JackBasis::get(alpha, n, deg);
    const auto& parts = basis->partitions(deg);
    const int lam_idx = basis->index_of(deg, lambda);
    const double pref = partition_factorial_doubled(lambda) *
                        static_cast<double>(multinomial_count(lambda, n)) /
                        std::pow(2.0, 2.0 * deg);
    const double b1 = params.beta * n / 2.0;
    const double b2 = params.beta * (params.nu + n - 0.5) / 2.0 + 0.5;

    for (size_t t = 0; t < parts.size(); ++t) {
        const double u = basis->u_row(deg, static_cast<int>(t))[static_cast<size_t>(lam_idx)];
        if (u == 0.0) continue;
        const Partition& tau = parts[t];
        const double coeff = pref * hook_c(tau, alpha) / hook_c_prime(tau, alpha) * u /
                             (gen_pochhammer(b1, tau, alpha) * gen_pochhammer(b2, tau, alpha));
        out.coeffs[tau] = coeff;
    }
    return out;
}

JackExpansion vA_on_monomial(const Partition& lambda, double beta, int n_vars) {
    if (beta <= 0.0) throw invalid_input("vA_on_monomial: beta must be positive");
    if (lambda.length() > n_vars) throw invalid_input("vA_on_monomial: partition longer than N");
    const double alpha = 2.0 / beta;
    const int deg = lambda.modulus();

    JackExpansion out;
    out.alpha = alpha;
    out.degree = deg;
    if (deg == 0) {
        out.coeffs[Partition{}] = 1.0;
        return out;
    }

    auto basis = JackBasis::get(alpha, n_vars, deg);
    const auto& parts = basis->partitions(deg);
    const int lam_idx = basis->index_of(deg, lambda);
    const double pref = partition_factorial(lambda) *
                        static_cast<double>(multinomial_count(lambda, n_vars));
    const double b1 = beta * n_vars / 2.0;

    for (size_t t = 0; t < parts.size(); ++t) {
        const double u = basis->u_row(deg, static_cast<int>(t))[static_cast<size_t>(lam_idx)];
        if (u == 0.0) continue;
        const Partition& tau = parts[t];
        out.coeffs[tau] = pref * hook_c(tau, alpha) / hook_c_prime(tau, alpha) * u /
                          gen_pochhammer(b1, tau, alpha);
    }
    return out;
}

double kernel_E_beta_limit(std::span<const double> x, std::span<const double> y,
                           const ModelParams& params) {
    params.validate();
    double x2 = 0.0, y2 = 0.0;
    for (double v : x) x2 += v * v;
    for (double v : y) y2 += v * v;
    const double n = params.n_particles;
    const double log_e = x2 * y2 / (2.0 * n * (n + params.alpha()));
    if (log_e > 700.0) throw numeric_error("kernel_E_beta_limit: overflow");
    return std::exp(log_e);
}

SeriesResult kernel_E_nu_limit(std::span<const double> x, std::span<const double> y,
                               double beta, const SeriesControl& ctrl) {
    if (x.size() != y.size()) throw invalid_input("kernel_E_nu_limit: size mismatch");
    const int n = static_cast<int>(x.size());
    const double s = std::sqrt(2.0 * beta);
    std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)] / s;
        ys[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)] / s;
    }
    return hypergeo_pFq(HypergeoKind::F00, 0.0, xs, ys, 2.0 / beta, ctrl);
}

bool kernel_bound_check(std::span<const double> x, std::span<const double> y,
                        double scale, double value) {
    double x2 = 0.0, y2 = 0.0;
    for (double v : x) x2 += v * v;
    for (double v : y) y2 += v * v;
    const double bound_log = scale * std::sqrt(x2) * std::sqrt(y2);
    if (value == 0.0) return true;
    return std::log(std::abs(value)) <= bound_log + 1e-12 * (1.0 + std::abs(bound_log));
}

SeriesResult tpd_radial_B(double t, std::span<const double> y, std::span<const double> x,
                          const ModelParams& params, const SeriesControl& ctrl) {
    params.validate();
    const int n = params.n_particles;
    if (t <= 0.0) throw invalid_input("tpd_radial_B: need t > 0");
    if (static_cast<int>(y.size()) != n || static_cast<int>(x.size()) != n)
        throw invalid_input("tpd_radial_B: size mismatch");
    for (int i = 0; i < n; ++i) {
        if (!(y[static_cast<size_t>(i)] > 0.0) ||
            (i > 0 && !(y[static_cast<size_t>(i)] > y[static_cast<size_t>(i - 1)])))
            throw invalid_input("tpd_radial_B: y must be strictly inside the type-B chamber");
        if (x[static_cast<size_t>(i)] < 0.0)
            throw invalid_input("tpd_radial_B: x must be componentwise nonnegative");
    }

    const double sqrt_t = std::sqrt(t);
    std::vector<double> ys(static_cast<size_t>(n)), xs(static_cast<size_t>(n));
    double x2 = 0.0, y2 = 0.0;
    for (int i = 0; i < n; ++i) {
        ys[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] / sqrt_t;
        xs[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] / sqrt_t;
        x2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        y2 += y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }

    SeriesResult bessel = gen_bessel_B(xs, ys, params, ctrl);
    const double log_density = log_weight_wB(ys, params) - (x2 + y2) / (2.0 * t) -
                               log_selberg_cB(params) - 0.5 * n * std::log(t) +
                               std::log(bessel.value);
    SeriesResult res = bessel;
    res.value = std::exp(log_density);
    return res;
}

RelaxationEstimate relaxation_time_estimate(const ModelParams& params, LimitRegime regime,
                                            const TailAssumption& tail, double epsilon) {
    params.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw invalid_input("relaxation_time_estimate: need 0 < epsilon < 1");
    constexpr double kC = 10.0;
    constexpr double kCPrime = 10.0;

    RelaxationEstimate est;
    const double n = params.n_particles;
    if (regime == LimitRegime::LargeBeta) {
        const double gamma = n * (n + params.alpha());
        est.beta_or_nu_min = kC / (n + params.alpha());
        est.t_min = tail.compact ? tail.radius_r_mu * tail.radius_r_mu / (epsilon * epsilon)
                                 : kCPrime / (params.beta * params.beta * gamma * gamma);
    } else {
        est.beta_or_nu_min = kC * params.beta * n;
        est.t_min = tail.compact
                        ? tail.radius_r_mu * tail.radius_r_mu / (epsilon * epsilon)
                        : kCPrime / (params.beta * params.beta * params.nu * params.nu);
    }
    return est;
}

}  // namespace ibp
