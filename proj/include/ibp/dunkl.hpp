#pragma once

#include <span>
#include <vector>

#include "ibp/partition.hpp"
#include "ibp/symfunc.hpp"

namespace ibp {

// (beta, nu, N): inverse temperature, Bessel index, particle count.
struct ModelParams {
    double beta = 2.0;
    double nu = 0.5;
    int n_particles = 1;

    double alpha() const { return nu - 0.5; }
    // Reflection-group multiplicities of the type-B root system.
    double k1() const { return beta * (nu + 0.5) / 2.0; }
    double k2() const { return beta / 2.0; }
    void validate() const;
};

struct SeriesControl {
    int max_degree = 20;
    double rel_term_tol = 1e-12;
};

struct SeriesResult {
    double value = 0.0;
    double last_term_ratio = 0.0;
    bool converged = true;
};

enum class HypergeoKind { F00, F11 };

// prod |x_i|^{beta(nu+1/2)} prod_{i<j} |x_j^2 - x_i^2|^beta; zero on any
// coincidence or zero coordinate.
double weight_wB(std::span<const double> x, const ModelParams& params);
double log_weight_wB(std::span<const double> x, const ModelParams& params);

// Normalization constant of the type-B weight against the Gaussian, via its
// closed Gamma-product form. Computed in log space.
double log_selberg_cB(const ModelParams& params);
double selberg_cB(const ModelParams& params);

// Truncated generalized hypergeometric function of two vector arguments.
// For F00 the (b)_tau factor is dropped and b is ignored.
SeriesResult hypergeo_pFq(HypergeoKind kind, double b, std::span<const double> x,
                          std::span<const double> y, double alpha, const SeriesControl& ctrl);

// Generalized Bessel function of type B:
// 2^N N! 1F1^(2/beta)(beta(nu+N-1/2)/2 + 1/2; (x)^2/2, (y)^2/2).
SeriesResult gen_bessel_B(std::span<const double> x, std::span<const double> y,
                          const ModelParams& params, const SeriesControl& ctrl);

// The reflection-group-symmetrized exponential expanded over even monomial
// symmetric polynomials; independent oracle for the series machinery.
double symmetrized_exp_expansion(std::span<const double> x, std::span<const double> y,
                                 int max_degree);

// A symmetric polynomial expressed over Jack polynomials P_tau^(alpha).
struct JackExpansion {
    std::map<Partition, double> coeffs;
    double alpha = 0.0;
    int degree = 0;

    // Evaluates sum_tau coeff_tau P_tau(point).
    double eval(std::span<const double> point) const;
};

// Intertwining operator of type B applied to m_lambda[(x)^2], expressed over
// Jack polynomials of the squared variables.
JackExpansion vB_on_monomial(const Partition& lambda, const ModelParams& params);

// Intertwining operator of type A applied to m_lambda(x).
JackExpansion vA_on_monomial(const Partition& lambda, double beta, int n_vars);

// Large-beta limit kernel exp(x^2 y^2 / (2 N (N + alpha))).
double kernel_E_beta_limit(std::span<const double> x, std::span<const double> y,
                           const ModelParams& params);

// Large-nu limit kernel 0F0^(2/beta)((x)^2/sqrt(2 beta), (y)^2/sqrt(2 beta)).
SeriesResult kernel_E_nu_limit(std::span<const double> x, std::span<const double> y,
                               double beta, const SeriesControl& ctrl);

// |value| <= exp(scale * |x| * |y|)?
bool kernel_bound_check(std::span<const double> x, std::span<const double> y,
                        double scale, double value);

// Transition density of the radial type-B process; y must lie in the open
// Weyl chamber 0 < y_1 < ... < y_N, x is componentwise nonnegative.
SeriesResult tpd_radial_B(double t, std::span<const double> y, std::span<const double> x,
                          const ModelParams& params, const SeriesControl& ctrl);

enum class LimitRegime { LargeBeta, LargeNu };

struct TailAssumption {
    bool compact = false;
    double power_eta = 1.0;   // power-law decay exponent (eta > 0)
    double radius_r_mu = 0.0; // support radius for the compact case
    static TailAssumption PowerLaw(double eta) { return {false, eta, 0.0}; }
    static TailAssumption Compact(double r_mu) { return {true, 0.0, r_mu}; }
};

struct RelaxationEstimate {
    double t_min = 0.0;
    double beta_or_nu_min = 0.0;
};

// Relaxation-time and parameter thresholds with the fixed order-of-magnitude
// constants C = C' = 10.
RelaxationEstimate relaxation_time_estimate(const ModelParams& params, LimitRegime regime,
                                            const TailAssumption& tail, double epsilon);

}  // namespace ibp
