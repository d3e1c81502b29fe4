#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ibp/dunkl.hpp"

namespace ibp {

enum class Model { BesselB, DysonA };

// A point of the open Weyl chamber: strictly increasing, and strictly
// positive for the type-B model.
struct ParticleConfig {
    std::vector<double> positions;
    void validate(Model model) const;
};

struct SimulationConfig {
    Model model = Model::BesselB;
    ModelParams params;
    double dt = 2e-4;
    double t_final = 1.0;
    std::uint64_t n_paths = 1000000;
    std::uint64_t seed = 0;
    ParticleConfig initial;
    void validate() const;
};

struct EnsembleResult {
    // n_paths x N row-major final positions; rows of paths that hit the
    // stuck-path limit are NaN-filled.
    std::vector<double> finals;
    std::uint64_t rejected_steps = 0;
    std::uint64_t stuck_paths = 0;
    SimulationConfig config_echo;
};

enum class SdeBackend { Auto, Scalar, Avx2 };

struct ExecutionOptions {
    SdeBackend backend = SdeBackend::Auto;
    int n_threads = 0;  // 0: hardware concurrency
};

bool sde_backend_available(SdeBackend backend);

// Drift of the interacting Bessel SDE:
// (beta/2) [ (2 nu + 1)/(2 x_i) + sum_{j != i} 1/(x_i - x_j) + 1/(x_i + x_j) ].
std::vector<double> drift_bessel(std::span<const double> x, const ModelParams& params);

// Dyson drift (beta/2) sum_{j != i} 1/(x_i - x_j).
std::vector<double> drift_dyson(std::span<const double> x, double beta);

// One Euler-Maruyama proposal; nullopt when the proposal leaves the chamber
// (the ensemble driver then halves dt locally and retries with fresh noise).
std::optional<std::vector<double>> step_proposal(std::span<const double> x, double dt,
                                                 std::span<const double> gaussians, Model model,
                                                 const ModelParams& params);

// Integrates n_paths independent trajectories to t_final. Per-path noise
// streams are keyed by (seed, path index), so results are identical for any
// thread count and for both backends. Throws numeric_error when more than
// 0.1% of the paths get stuck.
EnsembleResult run_ensemble(const SimulationConfig& config, const ExecutionOptions& opts = {});

}  // namespace ibp
