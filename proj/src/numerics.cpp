#include "ibp/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "ibp/errors.hpp"

namespace ibp {

namespace {
double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }
}  // namespace

std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return {};
    if (static_cast<int>(e.size()) != n - 1 && n > 1)
        throw invalid_input("tridiag_eigenvalues: offdiag size mismatch");
    e.push_back(0.0);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw numeric_error("tridiag_eigenvalues: QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

namespace {
double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, int n) {
    // Cholesky A = L L^T, in place.
    for (int j = 0; j < n; ++j) {
        double diag = a[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            double ljk = a[static_cast<size_t>(j) * n + k];
            diag -= ljk * ljk;
        }
        if (!(diag > 0.0)) throw numeric_error("solve_spd: matrix not positive definite");
        double ljj = std::sqrt(diag);
        a[static_cast<size_t>(j) * n + j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double v = a[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                v -= a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(j) * n + k];
            a[static_cast<size_t>(i) * n + j] = v / ljj;
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < n; ++i) {
        double v = b[static_cast<size_t>(i)];
        for (int k = 0; k < i; ++k) v -= a[static_cast<size_t>(i) * n + k] * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(i)] = v / a[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = b[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k) v -= a[static_cast<size_t>(k) * n + i] * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(i)] = v / a[static_cast<size_t>(i) * n + i];
    }
    return b;
}

NewtonResult minimize_newton(
    std::vector<double> x,
    const std::function<double(const std::vector<double>&)>& value,
    const std::function<std::vector<double>(const std::vector<double>&)>& gradient,
    const std::function<std::vector<double>(const std::vector<double>&)>& hessian,
    const std::function<bool(const std::vector<double>&)>& feasible,
    double grad_tol, int max_iter) {
    const int n = static_cast<int>(x.size());
    NewtonResult res;
    double fx = value(x);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> g = gradient(x);
        double gn = 0.0;
        for (double v : g) gn = std::max(gn, std::abs(v));
        if (gn <= grad_tol) {
            res.x = x;
            res.grad_norm = gn;
            res.iterations = it;
            res.converged = true;
            return res;
        }
        std::vector<double> h = hessian(x);
        std::vector<double> rhs(g);
        for (double& v : rhs) v = -v;
        std::vector<double> dx;
        double ridge = 0.0;
        for (;;) {
            try {
                std::vector<double> hr = h;
                if (ridge > 0.0)
                    for (int i = 0; i < n; ++i) hr[static_cast<size_t>(i) * n + i] += ridge;
                dx = solve_spd(hr, rhs, n);
                break;
            } catch (const numeric_error&) {
                ridge = (ridge == 0.0) ? 1e-8 : ridge * 100.0;
                if (ridge > 1e8) throw;
            }
        }
        // Backtracking line search within the feasible set.
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            std::vector<double> xn(x);
            for (int i = 0; i < n; ++i) xn[static_cast<size_t>(i)] += step * dx[static_cast<size_t>(i)];
            if (feasible(xn)) {
                double fn = value(xn);
                if (fn <= fx + 1e-12 * std::abs(fx)) {
                    x = std::move(xn);
                    fx = fn;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) {
            res.x = x;
            res.grad_norm = gn;
            res.iterations = it;
            res.converged = gn <= 1e-6;
            return res;
        }
    }
    std::vector<double> g = gradient(x);
    double gn = 0.0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    res.x = x;
    res.grad_norm = gn;
    res.iterations = max_iter;
    res.converged = gn <= grad_tol;
    return res;
}

}  // namespace ibp
