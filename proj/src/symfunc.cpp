#include "ibp/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <utility>

#include "ibp/errors.hpp"

namespace ibp {

double monomial_eval(const Partition& lambda, std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    if (lambda.length() > n)
        throw invalid_input("monomial_eval: partition longer than variable count");
    if (lambda.length() == 0) return 1.0;

    // Powers x_i^k for k up to the largest part.
    const int pmax = lambda.part(1);
    std::vector<double> powers(static_cast<size_t>(n) * (pmax + 1));
    for (int i = 0; i < n; ++i) {
        powers[static_cast<size_t>(i) * (pmax + 1)] = 1.0;
        for (int k = 1; k <= pmax; ++k)
            powers[static_cast<size_t>(i) * (pmax + 1) + k] =
                powers[static_cast<size_t>(i) * (pmax + 1) + k - 1] * x[static_cast<size_t>(i)];
    }

    std::vector<int> expo(static_cast<size_t>(n), 0);
    std::copy(lambda.parts().begin(), lambda.parts().end(), expo.begin());
    std::sort(expo.begin(), expo.end());  // ascending for next_permutation

    double total = 0.0;
    do {
        double term = 1.0;
        for (int i = 0; i < n; ++i)
            term *= powers[static_cast<size_t>(i) * (pmax + 1) + expo[static_cast<size_t>(i)]];
        total += term;
    } while (std::next_permutation(expo.begin(), expo.end()));
    return total;
}

double hook_c(const Partition& tau, double alpha) {
    const Partition conj = tau.conjugate();
    double prod = 1.0;
    for (int i = 1; i <= tau.length(); ++i)
        for (int j = 1; j <= tau.part(i); ++j)
            prod *= alpha * (tau.part(i) - j) + conj.part(j) - i + 1;
    return prod;
}

double hook_c_prime(const Partition& tau, double alpha) {
    const Partition conj = tau.conjugate();
    double prod = 1.0;
    for (int i = 1; i <= tau.length(); ++i)
        for (int j = 1; j <= tau.part(i); ++j)
            prod *= alpha * (tau.part(i) - j + 1) + conj.part(j) - i;
    return prod;
}

double gen_pochhammer(double b, const Partition& tau, double alpha) {
    double prod = 1.0;
    for (int i = 1; i <= tau.length(); ++i) {
        const double base = b - (i - 1) / alpha;
        for (int k = 0; k < tau.part(i); ++k) {
            const double factor = base + k;
            if (std::abs(factor) < 1e-14)
                throw numeric_error("gen_pochhammer: pole encountered");
            prod *= factor;
        }
    }
    return prod;
}

namespace {

// Diagonal eigenvalue of the Laplace-Beltrami-type operator on m_lambda:
// (alpha/2) sum lambda_i (lambda_i - 1) + sum_i (n - i) lambda_i.
double lb_eigenvalue(const Partition& lam, double alpha, int n_vars) {
    double e = 0.0;
    for (int i = 1; i <= lam.length(); ++i) {
        const double p = lam.part(i);
        e += 0.5 * alpha * p * (p - 1.0) + (n_vars - i) * p;
    }
    return e;
}

// Off-diagonal action of the interaction part on the monomial basis. For
// lambda strictly dominated by mu, the coefficient of m_lambda in the
// operator applied to m_mu counts position pairs (i < j) of lambda's padded
// exponent vector whose values (c, d) widen to a pair (c + r, d - r) of mu,
// each weighted by the source spread (a - b). Returned as predecessor
// columns: col[l] lists (mu index, coefficient) pairs.
std::vector<std::vector<std::pair<int, double>>> lb_offdiag_columns(
    const std::vector<Partition>& list, int n_vars) {
    const int p = static_cast<int>(list.size());
    std::map<Partition, int> index;
    for (int k = 0; k < p; ++k) index[list[static_cast<size_t>(k)]] = k;

    std::vector<std::vector<std::pair<int, double>>> col(static_cast<size_t>(p));
    std::vector<int> probe;
    for (int l = 0; l < p; ++l) {
        const Partition& lam = list[static_cast<size_t>(l)];
        std::vector<int> lam_pad(static_cast<size_t>(n_vars), 0);
        for (int i = 1; i <= lam.length(); ++i) lam_pad[static_cast<size_t>(i - 1)] = lam.part(i);

        std::map<int, double> contrib;
        for (int i = 0; i < n_vars; ++i) {
            for (int j = i + 1; j < n_vars; ++j) {
                const int c = lam_pad[static_cast<size_t>(i)];
                const int d = lam_pad[static_cast<size_t>(j)];
                for (int r = 1; d - r >= 0; ++r) {
                    const int a = c + r;
                    const int b = d - r;
                    probe.clear();
                    for (int k = 0; k < n_vars; ++k) {
                        int v = lam_pad[static_cast<size_t>(k)];
                        if (k == i) v = a;
                        if (k == j) v = b;
                        if (v > 0) probe.push_back(v);
                    }
                    std::sort(probe.begin(), probe.end(), std::greater<int>());
                    auto it = index.find(Partition(probe));
                    if (it != index.end()) contrib[it->second] += static_cast<double>(a - b);
                }
            }
        }
        col[static_cast<size_t>(l)].assign(contrib.begin(), contrib.end());
    }
    return col;
}

struct JackKey {
    double alpha;
    int n_vars;
    bool operator<(const JackKey& o) const {
        if (alpha != o.alpha) return alpha < o.alpha;
        return n_vars < o.n_vars;
    }
};

std::mutex g_jack_mutex;
std::map<JackKey, std::shared_ptr<const JackBasis>> g_jack_cache;

}  // namespace

JackBasis::JackBasis(double alpha, int n_vars, int max_degree)
    : alpha_(alpha), n_vars_(n_vars), max_degree_(max_degree) {
    if (alpha <= 0.0) throw invalid_input("JackBasis: alpha must be positive");
    if (n_vars < 1) throw invalid_input("JackBasis: need at least one variable");
    if (max_degree > kMaxPartitionModulus)
        throw invalid_input("JackBasis: degree above capacity (30)");

    parts_.resize(static_cast<size_t>(max_degree) + 1);
    u_.resize(static_cast<size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n) {
        parts_[static_cast<size_t>(n)] = partitions_up_to(n, n_vars);
        const auto& list = parts_[static_cast<size_t>(n)];
        const int p = static_cast<int>(list.size());
        auto& u = u_[static_cast<size_t>(n)];
        u.assign(static_cast<size_t>(p) * p, 0.0);

        std::vector<double> eig(static_cast<size_t>(p));
        for (int k = 0; k < p; ++k)
            eig[static_cast<size_t>(k)] = lb_eigenvalue(list[static_cast<size_t>(k)], alpha, n_vars);
        const auto col = lb_offdiag_columns(list, n_vars);

        // Partition lists are reverse-lex descending, which refines dominance:
        // everything dominated by tau appears after it, so the triangular
        // solve can sweep left to right. Predecessor entries left of tau
        // carry u = 0 and drop out of the sums.
        for (int t = 0; t < p; ++t) {
            u[static_cast<size_t>(t) * p + t] = 1.0;
            for (int l = t + 1; l < p; ++l) {
                const Partition& lam = list[static_cast<size_t>(l)];
                if (!dominance_leq(lam, list[static_cast<size_t>(t)])) continue;
                double s = 0.0;
                for (const auto& [m, c] : col[static_cast<size_t>(l)]) {
                    const double um = u[static_cast<size_t>(t) * p + m];
                    if (um != 0.0) s += um * c;
                }
                const double denom = eig[static_cast<size_t>(t)] - eig[static_cast<size_t>(l)];
                u[static_cast<size_t>(t) * p + l] = s / denom;
            }
        }
    }
}

std::shared_ptr<const JackBasis> JackBasis::get(double alpha, int n_vars, int max_degree) {
    std::lock_guard<std::mutex> lock(g_jack_mutex);
    JackKey key{alpha, n_vars};
    auto it = g_jack_cache.find(key);
    if (it != g_jack_cache.end() && it->second->max_degree() >= max_degree) return it->second;
    auto basis = std::shared_ptr<const JackBasis>(new JackBasis(alpha, n_vars, max_degree));
    g_jack_cache[key] = basis;
    return basis;
}

const std::vector<Partition>& JackBasis::partitions(int degree) const {
    return parts_[static_cast<size_t>(degree)];
}

std::span<const double> JackBasis::u_row(int degree, int tau_index) const {
    const auto& u = u_[static_cast<size_t>(degree)];
    const size_t p = parts_[static_cast<size_t>(degree)].size();
    return {u.data() + static_cast<size_t>(tau_index) * p, p};
}

std::vector<double> JackBasis::monomial_values(int degree, std::span<const double> x) const {
    const auto& list = parts_[static_cast<size_t>(degree)];
    std::vector<double> vals(list.size());
    for (size_t k = 0; k < list.size(); ++k) vals[k] = monomial_eval(list[k], x);
    return vals;
}

std::vector<double> JackBasis::jack_values(int degree, std::span<const double> monomials) const {
    const auto& list = parts_[static_cast<size_t>(degree)];
    const int p = static_cast<int>(list.size());
    std::vector<double> vals(static_cast<size_t>(p), 0.0);
    const auto& u = u_[static_cast<size_t>(degree)];
    for (int t = 0; t < p; ++t) {
        double s = 0.0;
        for (int l = t; l < p; ++l) {
            const double c = u[static_cast<size_t>(t) * p + l];
            if (c != 0.0) s += c * monomials[static_cast<size_t>(l)];
        }
        vals[static_cast<size_t>(t)] = s;
    }
    return vals;
}

int JackBasis::index_of(int degree, const Partition& tau) const {
    const auto& list = parts_[static_cast<size_t>(degree)];
    for (size_t k = 0; k < list.size(); ++k)
        if (list[k] == tau) return static_cast<int>(k);
    throw invalid_input("JackBasis: partition not in table (length or degree out of range)");
}

MonomialExpansion jack_in_monomial_basis(const Partition& tau, double alpha, int n_vars) {
    if (tau.length() > n_vars)
        throw invalid_input("jack_in_monomial_basis: partition longer than variable count");
    if (tau.modulus() > kMaxPartitionModulus)
        throw invalid_input("jack_in_monomial_basis: degree above capacity (30)");
    const int deg = tau.modulus();
    auto basis = JackBasis::get(alpha, n_vars, deg);
    const int t = basis->index_of(deg, tau);
    auto row = basis->u_row(deg, t);
    const auto& list = basis->partitions(deg);

    MonomialExpansion exp;
    exp.degree = deg;
    for (size_t l = 0; l < list.size(); ++l)
        if (row[l] != 0.0) exp.coeffs[list[l]] = row[l];
    return exp;
}

double jack_eval(const Partition& tau, double alpha, std::span<const double> x) {
    if (tau.length() > static_cast<int>(x.size()))
        throw invalid_input("jack_eval: partition longer than variable count");
    const int deg = tau.modulus();
    auto basis = JackBasis::get(alpha, static_cast<int>(x.size()), deg);
    const int t = basis->index_of(deg, tau);
    auto row = basis->u_row(deg, t);
    const auto& list = basis->partitions(deg);
    double s = 0.0;
    for (size_t l = 0; l < list.size(); ++l)
        if (row[l] != 0.0) s += row[l] * monomial_eval(list[l], x);
    return s;
}

}  // namespace ibp
