#pragma once

#include <functional>
#include <vector>

namespace ibp {

// Eigenvalues of a symmetric tridiagonal matrix (implicit-shift QL),
// returned ascending. diag has size n, offdiag size n-1.
std::vector<double> tridiag_eigenvalues(std::vector<double> diag,
                                        std::vector<double> offdiag);

// Composite Simpson on [a,b] with n subintervals (n made even internally).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive Simpson to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 30);

// Solve A x = b for a small symmetric positive-definite A (row-major n*n).
// Throws numeric_error if the factorization breaks down.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, int n);

struct NewtonResult {
    std::vector<double> x;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped Newton minimization of a smooth convex function given gradient and
// Hessian callbacks. `feasible` rejects iterates outside the domain.
NewtonResult minimize_newton(
    std::vector<double> x0,
    const std::function<double(const std::vector<double>&)>& value,
    const std::function<std::vector<double>(const std::vector<double>&)>& gradient,
    const std::function<std::vector<double>(const std::vector<double>&)>& hessian,
    const std::function<bool(const std::vector<double>&)>& feasible,
    double grad_tol = 1e-12, int max_iter = 200);

}  // namespace ibp
