#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "ibp/partition.hpp"

namespace ibp {

// Coefficients of a homogeneous symmetric polynomial over the monomial
// basis; all keys share the same modulus.
struct MonomialExpansion {
    std::map<Partition, double> coeffs;
    int degree = 0;
};

// m_lambda(x): sum over distinct permutations of prod x_i^{lambda_sigma(i)}.
double monomial_eval(const Partition& lambda, std::span<const double> x);

// Hook products c_tau(alpha), c'_tau(alpha) over the cells of tau.
double hook_c(const Partition& tau, double alpha);
double hook_c_prime(const Partition& tau, double alpha);

// Generalized Pochhammer symbol (b)_tau^(alpha) via the rising-product
// form. Throws numeric_error on a pole.
double gen_pochhammer(double b, const Partition& tau, double alpha);

// Jack polynomial P_tau^(alpha) over monomial symmetric polynomials in
// n_vars variables: u_{tau,tau} = 1, keys dominated by tau.
MonomialExpansion jack_in_monomial_basis(const Partition& tau, double alpha, int n_vars);

double jack_eval(const Partition& tau, double alpha, std::span<const double> x);

// Precomputed per-degree Jack data for one (alpha, n_vars) pair; this is
// what the hypergeometric series iterate over. Instances are cached and
// shared; all methods are safe to call concurrently once constructed.
class JackBasis {
  public:
    static std::shared_ptr<const JackBasis> get(double alpha, int n_vars, int max_degree);

    int max_degree() const { return max_degree_; }
    int n_vars() const { return n_vars_; }
    double alpha() const { return alpha_; }

    const std::vector<Partition>& partitions(int degree) const;

    // Row of u_{tau,.} over the degree's partition list (dense, zero where
    // not dominated).
    std::span<const double> u_row(int degree, int tau_index) const;

    // m_lambda(x) for every partition of `degree`, in list order.
    std::vector<double> monomial_values(int degree, std::span<const double> x) const;

    // P_tau(x) for every tau of `degree` given precomputed monomial values.
    std::vector<double> jack_values(int degree, std::span<const double> monomials) const;

    int index_of(int degree, const Partition& tau) const;

  private:
    JackBasis(double alpha, int n_vars, int max_degree);

    double alpha_;
    int n_vars_;
    int max_degree_;
    // Per degree: partition list (reverse-lex) and dense u matrix rows.
    std::vector<std::vector<Partition>> parts_;
    std::vector<std::vector<double>> u_;  // [degree][tau*p + lambda]
};

}  // namespace ibp
