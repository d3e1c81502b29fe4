#include "ibp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ibp/errors.hpp"
#include "ibp/numerics.hpp"
#include "ibp/orthopoly.hpp"
#include "ibp/rng.hpp"

namespace ibp {

Histogram histogram(std::span<const double> finals, int n_particles, double bin_width,
                    double scale) {
    if (finals.empty()) throw invalid_input("histogram: empty ensemble");
    if (!(bin_width > 0.0)) throw invalid_input("histogram: bin_width must be positive");
    if (!(scale > 0.0)) throw invalid_input("histogram: scale must be positive");
    if (n_particles < 1 || finals.size() % static_cast<size_t>(n_particles) != 0)
        throw invalid_input("histogram: finals size not a multiple of n_particles");

    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    std::uint64_t n_valid = 0;
    for (double v : finals) {
        if (!std::isfinite(v)) continue;
        const double u = v / scale;
        vmin = std::min(vmin, u);
        vmax = std::max(vmax, u);
        ++n_valid;
    }
    if (n_valid == 0) throw invalid_input("histogram: no finite samples");

    Histogram h;
    h.bin_width = bin_width;
    h.scale_applied = scale;
    h.origin = std::floor(vmin / bin_width) * bin_width;
    const size_t n_bins =
        static_cast<size_t>(std::floor((vmax - h.origin) / bin_width)) + 1;
    h.counts.assign(n_bins, 0);
    for (double v : finals) {
        if (!std::isfinite(v)) continue;
        const double u = v / scale;
        auto b = static_cast<size_t>(std::floor((u - h.origin) / bin_width));
        if (b >= n_bins) b = n_bins - 1;
        ++h.counts[b];
    }
    h.n_samples = n_valid;
    return h;
}

double exact_density_beta2(double y, double t, int n, double nu) {
    if (!(y > 0.0) || !(t > 0.0)) throw invalid_input("exact_density_beta2: need y, t > 0");
    const double arg = y * y / (2.0 * t);
    const double ln = laguerre_eval(n, nu, arg);
    const double lnm1 = laguerre_eval(n - 1, nu, arg);
    const double lnp1 = laguerre_eval(n + 1, nu, arg);
    const double bracket = n * ln * ln + ln * lnm1 - (n + 1.0) * lnp1 * lnm1;
    const double pref = std::exp(log_factorial(n) - std::lgamma(nu + n));
    return pref * bracket * (2.0 / y) * std::pow(arg, nu) * std::exp(-arg);
}

namespace {

void require_chamber(std::span<const double> u) {
    if (u.empty() || !(u[0] > 0.0))
        throw invalid_input("steady density: point not strictly inside the chamber");
    for (size_t i = 1; i < u.size(); ++i)
        if (!(u[i] > u[i - 1]))
            throw invalid_input("steady density: point not strictly inside the chamber");
}

}  // namespace

double log_steady_density_beta(std::span<const double> u, const ModelParams& params) {
    params.validate();
    require_chamber(u);
    const PotentialValue f = potential_F(u, params.nu, params.n_particles);
    return -params.beta * f.value / 2.0 + 0.5 * params.n_particles * std::log(params.beta);
}

double steady_density_beta(std::span<const double> u, const ModelParams& params) {
    return std::exp(log_steady_density_beta(u, params));
}

double log_steady_density_nu(std::span<const double> u, const ModelParams& params) {
    params.validate();
    require_chamber(u);
    const PotentialValue f = potential_F_tilde(u, params.beta, params.n_particles);
    double lp = -params.nu * f.value / 2.0 + 0.5 * params.n_particles * std::log(params.nu);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            lp += params.beta * std::log(std::abs(params.nu * (u[j] * u[j] - u[i] * u[i])));
    return lp;
}

double steady_density_nu(std::span<const double> u, const ModelParams& params) {
    return std::exp(log_steady_density_nu(u, params));
}

double log_laguerre_ensemble_density(std::span<const double> lambda, const ModelParams& params) {
    params.validate();
    require_chamber(lambda);
    const double a = params.beta * (params.nu + 0.5 - 1.0 / params.beta) / 2.0;
    double lp = 0.0;
    for (double l : lambda) lp += -l / 2.0 + a * std::log(l);
    for (size_t i = 0; i < lambda.size(); ++i)
        for (size_t j = i + 1; j < lambda.size(); ++j)
            lp += params.beta * std::log(std::abs(lambda[j] - lambda[i]));
    return lp;
}

double laguerre_ensemble_density(std::span<const double> lambda, const ModelParams& params) {
    return std::exp(log_laguerre_ensemble_density(lambda, params));
}

namespace {

// Symmetric (unordered) extension of the log steady density on the positive
// orthant; -inf off the domain.
double log_density_unordered(SteadyKind kind, const ModelParams& params,
                             std::vector<double> pt) {
    std::sort(pt.begin(), pt.end());
    if (!(pt[0] > 0.0)) return -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < pt.size(); ++i)
        if (pt[i] == pt[i - 1]) return -std::numeric_limits<double>::infinity();
    switch (kind) {
        case SteadyKind::LargeBeta: return log_steady_density_beta(pt, params);
        case SteadyKind::LargeNu: return log_steady_density_nu(pt, params);
        case SteadyKind::LaguerreEnsemble: return log_laguerre_ensemble_density(pt, params);
    }
    return -std::numeric_limits<double>::infinity();
}

// Mode of the chamber density; also used to center the chi proposals.
std::vector<double> density_mode(SteadyKind kind, const ModelParams& params) {
    const int n = params.n_particles;
    switch (kind) {
        case SteadyKind::LargeBeta: return steady_density_beta_argmax(params);
        case SteadyKind::LargeNu: {
            // Decoupled part peaks at sqrt(beta); spread the repulsion out.
            std::vector<double> m(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                m[static_cast<size_t>(i)] =
                    std::sqrt(params.beta) *
                    (1.0 + (i - 0.5 * (n - 1)) * std::sqrt(params.beta / params.nu));
            std::sort(m.begin(), m.end());
            return m;
        }
        case SteadyKind::LaguerreEnsemble: return laguerre_ensemble_argmax(params);
    }
    throw invalid_input("density_mode: unknown kind");
}

// Marsaglia-Tsang gamma variate (shape >= 1 branch plus boost for < 1).
double gamma_variate(double shape, GaussianStream& gstream,
                     const std::function<double()>& next_uniform) {
    double boost = 1.0;
    double k = shape;
    if (k < 1.0) {
        boost = std::pow(next_uniform(), 1.0 / k);
        k += 1.0;
    }
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = gstream.next();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v;
    }
}

struct ChiProposal {
    // Coordinate i sampled as sqrt(gamma(shape_i, rate_i)): density
    // 2 rate^shape / Gamma(shape) * u^(2 shape - 1) exp(-rate u^2).
    std::vector<double> shape;
    std::vector<double> rate;

    double log_pdf(std::span<const double> u) const {
        double lp = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
            const double s = shape[i], r = rate[i];
            lp += std::log(2.0) + s * std::log(r) - std::lgamma(s) +
                  (2.0 * s - 1.0) * std::log(u[i]) - r * u[i] * u[i];
        }
        return lp;
    }
};

// Proposal matched so each coordinate's chi factor peaks at the mode.
ChiProposal make_chi_proposal(SteadyKind kind, const ModelParams& params,
                              const std::vector<double>& mode) {
    const int n = params.n_particles;
    ChiProposal prop;
    prop.shape.resize(static_cast<size_t>(n));
    prop.rate.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double rate = 0.5;
        switch (kind) {
            case SteadyKind::LargeBeta: rate = params.beta / 2.0; break;
            case SteadyKind::LargeNu: rate = params.nu / 2.0; break;
            case SteadyKind::LaguerreEnsemble: rate = 0.5; break;
        }
        const double m = mode[static_cast<size_t>(i)];
        // mode of the chi pdf: (2s-1)/(2r) = m^2  =>  s = r m^2 + 1/2,
        // then widen slightly for coverage.
        double s = rate * m * m + 0.5;
        prop.shape[static_cast<size_t>(i)] = std::max(0.6, 0.8 * s);
        prop.rate[static_cast<size_t>(i)] = 0.8 * rate;
    }
    return prop;
}

struct ISample {
    std::vector<std::vector<double>> points;  // sorted coordinates
    std::vector<double> log_weight;
};

// Draw IS samples from the chi proposal restricted to the chamber
// (rejection keeps the proposal normalized on the chamber up to a constant,
// which self-normalization absorbs).
ISample draw_is_samples(SteadyKind kind, const ModelParams& params, std::uint64_t n_samples,
                        std::uint64_t seed) {
    const int n = params.n_particles;
    const std::vector<double> mode = density_mode(kind, params);
    const ChiProposal prop = make_chi_proposal(kind, params, mode);

    GaussianStream gstream(seed, 0xC41u, &gauss::refill_scalar);
    std::uint64_t uctr = 0;
    const std::uint64_t ukey = seed ^ 0x9E3779B97F4A7C15ull;
    auto next_uniform = [&]() {
        const auto blk = Philox4x32::block(ukey, 0xFEEDu, uctr++);
        return u64_to_unit_double((static_cast<std::uint64_t>(blk[0]) << 32) | blk[1]);
    };

    ISample out;
    out.points.reserve(n_samples);
    out.log_weight.reserve(n_samples);
    std::vector<double> pt(static_cast<size_t>(n));
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = n_samples * 200 + 1000;
    while (out.points.size() < n_samples && attempts < max_attempts) {
        ++attempts;
        for (int i = 0; i < n; ++i) {
            const double g =
                gamma_variate(prop.shape[static_cast<size_t>(i)], gstream, next_uniform);
            pt[static_cast<size_t>(i)] = std::sqrt(g / prop.rate[static_cast<size_t>(i)]);
        }
        std::sort(pt.begin(), pt.end());
        bool distinct = pt[0] > 0.0;
        for (int i = 1; i < n && distinct; ++i) distinct = pt[static_cast<size_t>(i)] >
                                                           pt[static_cast<size_t>(i - 1)];
        if (!distinct) continue;
        const double lt = log_density_unordered(kind, params, pt);
        if (!std::isfinite(lt)) continue;
        // Proposal density of the sorted sample: sum over assignments; the
        // symmetric product form makes this N! * symmetrized pdf, and with
        // i.i.d. coordinates the sorted-vector pdf is N! * prod pdf.
        const double lq = prop.log_pdf(pt) + log_factorial(n);
        out.points.push_back(pt);
        out.log_weight.push_back(lt - lq);
    }
    if (out.points.size() < n_samples)
        throw numeric_error("draw_is_samples: proposal acceptance too low");
    return out;
}

}  // namespace

ChamberNormalization normalize_over_chamber(SteadyKind kind, const ModelParams& params,
                                            std::uint64_t mc_samples, std::uint64_t seed) {
    params.validate();
    const int n = params.n_particles;
    ChamberNormalization norm;

    if (n <= 3) {
        // Tensor quadrature of the symmetric extension over the positive
        // orthant, divided by N!.
        const std::vector<double> mode = density_mode(kind, params);
        double upper = mode.back();
        double width = 1.0;
        switch (kind) {
            case SteadyKind::LargeBeta: width = 10.0 / std::sqrt(params.beta); break;
            case SteadyKind::LargeNu: width = 10.0 / std::sqrt(params.nu); break;
            case SteadyKind::LaguerreEnsemble:
                width = 12.0 * std::sqrt(2.0 * upper + 4.0);
                break;
        }
        const double lim = upper + width;
        const int pts = n == 1 ? 4000 : (n == 2 ? 700 : 220);
        auto f1 = [&](double a) {
            std::vector<double> p{a};
            const double lv = log_density_unordered(kind, params, p);
            return std::isfinite(lv) ? std::exp(lv) : 0.0;
        };
        if (n == 1) {
            norm.value = simpson(f1, 0.0, lim, pts);
            return norm;
        }
        if (n == 2) {
            auto f2 = [&](double a) {
                return simpson(
                    [&](double b) {
                        std::vector<double> p{a, b};
                        const double lv = log_density_unordered(kind, params, std::move(p));
                        return std::isfinite(lv) ? std::exp(lv) : 0.0;
                    },
                    0.0, lim, pts);
            };
            norm.value = simpson(f2, 0.0, lim, pts) / 2.0;
            return norm;
        }
        auto f3 = [&](double a) {
            return simpson(
                [&](double b) {
                    return simpson(
                        [&](double c) {
                            std::vector<double> p{a, b, c};
                            const double lv =
                                log_density_unordered(kind, params, std::move(p));
                            return std::isfinite(lv) ? std::exp(lv) : 0.0;
                        },
                        0.0, lim, pts);
                },
                0.0, lim, pts);
        };
        norm.value = simpson(f3, 0.0, lim, pts) / 6.0;
        return norm;
    }

    // Importance sampling with independent scaled-chi proposals.
    ISample is = draw_is_samples(kind, params, mc_samples, seed);
    double lmax = -std::numeric_limits<double>::infinity();
    for (double lw : is.log_weight) lmax = std::max(lmax, lw);
    double sum = 0.0, sum2 = 0.0;
    for (double lw : is.log_weight) {
        const double w = std::exp(lw - lmax);
        sum += w;
        sum2 += w * w;
    }
    const double m = static_cast<double>(is.log_weight.size());
    norm.value = std::exp(lmax) * sum / m;
    norm.std_error = std::exp(lmax) * std::sqrt(std::max(0.0, sum2 / m - (sum / m) * (sum / m)) / m);
    norm.samples = is.log_weight.size();
    return norm;
}

std::vector<double> steady_density_beta_argmax(const ModelParams& params) {
    params.validate();
    const int n = params.n_particles;
    const double nu = params.nu;
    // Start from a spread-out configuration; F is convex so Newton lands on
    // the unique chamber minimum.
    std::vector<double> x0(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        x0[static_cast<size_t>(i)] = std::sqrt(2.0 * (i + 1.0) + nu);

    auto value = [&](const std::vector<double>& z) { return potential_F(z, nu, n).value; };
    auto grad = [&](const std::vector<double>& z) { return potential_F(z, nu, n).gradient; };
    auto hess = [&](const std::vector<double>& z) { return potential_F_hessian(z, nu); };
    auto feasible = [&](const std::vector<double>& z) {
        if (!(z[0] > 0.0)) return false;
        for (size_t i = 1; i < z.size(); ++i)
            if (!(z[i] > z[i - 1])) return false;
        return true;
    };
    NewtonResult r = minimize_newton(x0, value, grad, hess, feasible, 1e-12, 300);
    if (!r.converged) throw numeric_error("steady_density_beta_argmax: Newton did not converge");
    return r.x;
}

std::vector<double> laguerre_ensemble_argmax(const ModelParams& params) {
    params.validate();
    const int n = params.n_particles;
    const double beta = params.beta;
    const double a = beta * (params.nu + 0.5 - 1.0 / beta) / 2.0;
    if (!(a > 0.0))
        throw invalid_input("laguerre_ensemble_argmax: exponent must be positive");

    std::vector<double> x0(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<size_t>(i)] = beta * (2.0 * i + 1.0 + 2.0 * a);

    // Minimize the negated log density.
    auto value = [&](const std::vector<double>& l) {
        return -log_laguerre_ensemble_density(l, params);
    };
    auto grad = [&](const std::vector<double>& l) {
        std::vector<double> g(l.size());
        for (size_t i = 0; i < l.size(); ++i) {
            double v = 0.5 - a / l[i];
            for (size_t j = 0; j < l.size(); ++j)
                if (j != i) v -= beta / (l[i] - l[j]);
            g[i] = v;
        }
        return g;
    };
    auto hess = [&](const std::vector<double>& l) {
        const size_t m = l.size();
        std::vector<double> h(m * m, 0.0);
        for (size_t i = 0; i < m; ++i) {
            double diag = a / (l[i] * l[i]);
            for (size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                const double d = l[i] - l[j];
                diag += beta / (d * d);
                h[i * m + j] = -beta / (d * d);
            }
            h[i * m + i] = diag;
        }
        return h;
    };
    auto feasible = [&](const std::vector<double>& l) {
        if (!(l[0] > 0.0)) return false;
        for (size_t i = 1; i < l.size(); ++i)
            if (!(l[i] > l[i - 1])) return false;
        return true;
    };
    NewtonResult r = minimize_newton(x0, value, grad, hess, feasible, 1e-11, 300);
    if (!r.converged) throw numeric_error("laguerre_ensemble_argmax: Newton did not converge");
    return r.x;
}

std::vector<double> find_peaks(const Histogram& h, double min_prominence) {
    if (h.counts.empty()) throw invalid_input("find_peaks: empty histogram");
    const size_t nb = h.counts.size();
    std::uint64_t hmax = 0;
    for (auto c : h.counts) hmax = std::max(hmax, c);
    if (hmax == 0) return {};

    std::vector<double> peaks;
    for (size_t i = 0; i < nb; ++i) {
        const std::uint64_t ci = h.counts[i];
        if (ci == 0) continue;
        if (i > 0 && h.counts[i - 1] >= ci) continue;
        if (i + 1 < nb && h.counts[i + 1] > ci) continue;
        // Topographic prominence: lowest saddle toward higher terrain on
        // each side (or the lowest bin to the edge when no higher bar).
        std::uint64_t key_left = 0, key_right = 0;
        std::uint64_t low = ci;
        bool found_higher = false;
        for (size_t j = i; j-- > 0;) {
            low = std::min(low, h.counts[j]);
            if (h.counts[j] > ci) {
                found_higher = true;
                break;
            }
        }
        key_left = found_higher ? low : 0;
        low = ci;
        found_higher = false;
        for (size_t j = i + 1; j < nb; ++j) {
            low = std::min(low, h.counts[j]);
            if (h.counts[j] > ci) {
                found_higher = true;
                break;
            }
        }
        key_right = found_higher ? low : 0;
        const double prominence =
            static_cast<double>(ci) - static_cast<double>(std::max(key_left, key_right));
        if (prominence >= min_prominence * static_cast<double>(hmax))
            peaks.push_back(h.center(i));
    }
    return peaks;
}

double density_distance(const Histogram& h, const std::function<double(double)>& f,
                        DistanceKind kind) {
    double acc = 0.0;
    for (size_t b = 0; b < h.counts.size(); ++b) {
        const double diff = std::abs(h.density(b) - f(h.center(b)));
        if (kind == DistanceKind::L1)
            acc += diff * h.bin_width;
        else
            acc = std::max(acc, diff);
    }
    return acc;
}

MarginalCurve steady_marginal(SteadyKind kind, const ModelParams& params, double grid_min,
                              double grid_max, int grid_points, std::uint64_t samples,
                              std::uint64_t seed) {
    params.validate();
    if (grid_points < 2 || !(grid_max > grid_min))
        throw invalid_input("steady_marginal: bad grid");
    const int n = params.n_particles;

    MarginalCurve curve;
    curve.grid.resize(static_cast<size_t>(grid_points));
    curve.density.assign(static_cast<size_t>(grid_points), 0.0);
    const double step = (grid_max - grid_min) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i)
        curve.grid[static_cast<size_t>(i)] = grid_min + step * i;

    if (n == 1) {
        double z = 0.0;
        for (int i = 0; i < grid_points; ++i) {
            std::vector<double> p{curve.grid[static_cast<size_t>(i)]};
            const double lv = p[0] > 0.0 ? log_density_unordered(kind, params, p)
                                         : -std::numeric_limits<double>::infinity();
            curve.density[static_cast<size_t>(i)] = std::isfinite(lv) ? std::exp(lv) : 0.0;
        }
        for (int i = 0; i < grid_points; ++i) z += curve.density[static_cast<size_t>(i)] * step;
        if (z > 0.0)
            for (auto& d : curve.density) d /= z;
        return curve;
    }

    ISample is = draw_is_samples(kind, params, samples, seed);
    double lmax = -std::numeric_limits<double>::infinity();
    for (double lw : is.log_weight) lmax = std::max(lmax, lw);
    double wsum = 0.0;
    for (size_t s = 0; s < is.points.size(); ++s) {
        const double w = std::exp(is.log_weight[s] - lmax);
        wsum += w;
        for (double v : is.points[s]) {
            const auto b = static_cast<long>(std::floor((v - (grid_min - 0.5 * step)) / step));
            if (b >= 0 && b < grid_points) curve.density[static_cast<size_t>(b)] += w;
        }
    }
    if (wsum > 0.0)
        for (auto& d : curve.density) d /= wsum * static_cast<double>(n) * step;
    return curve;
}

std::string format_double_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "bin_center,density\n";
    for (size_t b = 0; b < h.counts.size(); ++b)
        os << format_double_17(h.center(b)) << "," << format_double_17(h.density(b)) << "\n";
}

void write_curve_csv(std::ostream& os, std::span<const double> y,
                     std::span<const double> density) {
    os << "y,density\n";
    for (size_t i = 0; i < y.size(); ++i)
        os << format_double_17(y[i]) << "," << format_double_17(density[i]) << "\n";
}

GridCurve read_curve_csv(std::istream& is) {
    GridCurve c;
    std::string line;
    if (!std::getline(is, line)) throw invalid_input("read_curve_csv: empty file");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw invalid_input("read_curve_csv: malformed row");
        c.y.push_back(std::stod(line.substr(0, comma)));
        c.density.push_back(std::stod(line.substr(comma + 1)));
    }
    return c;
}

}  // namespace ibp
