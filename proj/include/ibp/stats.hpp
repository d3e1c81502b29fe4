#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ibp/dunkl.hpp"

namespace ibp {

// Pooled single-particle histogram: all N coordinates of every path binned
// together after dividing positions by scale_applied.
struct Histogram {
    double bin_width = 1e-2;
    double origin = 0.0;  // left edge of bin 0
    std::vector<std::uint64_t> counts;
    double scale_applied = 1.0;
    std::uint64_t n_samples = 0;  // number of pooled values

    double center(size_t b) const { return origin + (static_cast<double>(b) + 0.5) * bin_width; }
    // Normalized density value of bin b (integrates to 1 over the grid).
    double density(size_t b) const {
        return static_cast<double>(counts[b]) /
               (static_cast<double>(n_samples) * bin_width);
    }
};

// finals is a n_paths x N row-major matrix; non-finite entries (aborted
// paths) are skipped.
Histogram histogram(std::span<const double> finals, int n_particles, double bin_width,
                    double scale);

// Exact beta = 2 one-point density; integrates to N over (0, inf).
double exact_density_beta2(double y, double t, int n, double nu);

// Steady-state density of the large-beta regime at the scaled point u
// (unnormalized): exp(-beta F(u, nu, N)/2) beta^{N/2}. u must lie strictly
// inside the type-B chamber.
double steady_density_beta(std::span<const double> u, const ModelParams& params);
double log_steady_density_beta(std::span<const double> u, const ModelParams& params);

// Steady-state density of the large-nu regime (unnormalized).
double steady_density_nu(std::span<const double> u, const ModelParams& params);
double log_steady_density_nu(std::span<const double> u, const ModelParams& params);

// beta-Laguerre eigenvalue density (unnormalized), ordered positive lambda.
double laguerre_ensemble_density(std::span<const double> lambda, const ModelParams& params);
double log_laguerre_ensemble_density(std::span<const double> lambda, const ModelParams& params);

struct ChamberNormalization {
    double value = 0.0;        // integral of the unnormalized density over C_B
    double std_error = 0.0;    // 0 for quadrature
    std::uint64_t samples = 0; // 0 for quadrature
};

enum class SteadyKind { LargeBeta, LargeNu, LaguerreEnsemble };

// Integral of the unnormalized steady density over the chamber: tensor
// quadrature for N <= 3, importance-sampled Monte Carlo (independent scaled
// chi proposals) with reported standard error for N > 3.
ChamberNormalization normalize_over_chamber(SteadyKind kind, const ModelParams& params,
                                            std::uint64_t mc_samples = 200000,
                                            std::uint64_t seed = 12345);

// Mode of the steady density over the chamber (Newton on the convex
// potential), ascending.
std::vector<double> steady_density_beta_argmax(const ModelParams& params);
std::vector<double> laguerre_ensemble_argmax(const ModelParams& params);

// Local maxima whose topographic prominence exceeds min_prominence times the
// global maximum; ascending bin centers. Boundary bins count as candidates.
std::vector<double> find_peaks(const Histogram& h, double min_prominence);

enum class DistanceKind { L1, Sup };

double density_distance(const Histogram& h, const std::function<double(double)>& f,
                        DistanceKind kind);

// Pooled single-particle marginal of a steady density on a fixed grid,
// normalized to integrate to 1. Exact quadrature for N = 1, self-normalized
// importance sampling for N >= 2.
struct MarginalCurve {
    std::vector<double> grid;
    std::vector<double> density;
};
MarginalCurve steady_marginal(SteadyKind kind, const ModelParams& params, double grid_min,
                              double grid_max, int grid_points, std::uint64_t samples,
                              std::uint64_t seed);

// CSV serialization: header "bin_center,density" (histograms) or
// "y,density" (curves), 17 significant digits.
void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_curve_csv(std::ostream& os, std::span<const double> y, std::span<const double> density);
struct GridCurve {
    std::vector<double> y;
    std::vector<double> density;
};
GridCurve read_curve_csv(std::istream& is);

std::string format_double_17(double v);

}  // namespace ibp
