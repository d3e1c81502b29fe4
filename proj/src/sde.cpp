#include "ibp/sde.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "ibp/errors.hpp"
#include "ibp/rng.hpp"
#include "sde_kernels.hpp"

namespace ibp {

namespace {
constexpr int kMaxHalvings = 20;
constexpr double kStuckFraction = 1e-3;
}  // namespace

void ParticleConfig::validate(Model model) const {
    if (positions.empty()) throw invalid_input("ParticleConfig: empty");
    if (model == Model::BesselB && !(positions[0] > 0.0))
        throw invalid_input("ParticleConfig: BesselB requires strictly positive positions");
    for (size_t i = 1; i < positions.size(); ++i)
        if (!(positions[i] > positions[i - 1]))
            throw invalid_input("ParticleConfig: positions must be strictly increasing");
}

void SimulationConfig::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw invalid_input("SimulationConfig: dt must be positive");
    if (!(dt < t_final)) throw invalid_input("SimulationConfig: need dt < t_final");
    if (n_paths < 1) throw invalid_input("SimulationConfig: need n_paths >= 1");
    if (static_cast<int>(initial.positions.size()) != params.n_particles)
        throw invalid_input("SimulationConfig: initial size != n_particles");
    initial.validate(model);
}

bool sde_backend_available(SdeBackend backend) {
    switch (backend) {
        case SdeBackend::Scalar:
        case SdeBackend::Auto:
            return true;
        case SdeBackend::Avx2:
#if defined(IBP_HAVE_AVX2_SOURCES) && (defined(__x86_64__) || defined(_M_X64))
            return gauss::avx2_available();
#else
            return false;
#endif
    }
    return false;
}

std::vector<double> drift_bessel(std::span<const double> x, const ModelParams& params) {
    params.validate();
    const int n = params.n_particles;
    if (static_cast<int>(x.size()) != n) throw invalid_input("drift_bessel: size mismatch");
    ParticleConfig cfg{std::vector<double>(x.begin(), x.end())};
    cfg.validate(Model::BesselB);

    std::vector<double> d(static_cast<size_t>(n));
    const double half_beta = params.beta / 2.0;
    const double tnp1 = 2.0 * params.nu + 1.0;
    for (int i = 0; i < n; ++i) {
        double acc = tnp1 / (2.0 * x[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc += 1.0 / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
            acc += 1.0 / (x[static_cast<size_t>(i)] + x[static_cast<size_t>(j)]);
        }
        d[static_cast<size_t>(i)] = half_beta * acc;
    }
    return d;
}

std::vector<double> drift_dyson(std::span<const double> x, double beta) {
    if (!(beta > 0.0)) throw invalid_input("drift_dyson: beta must be positive");
    const int n = static_cast<int>(x.size());
    ParticleConfig cfg{std::vector<double>(x.begin(), x.end())};
    cfg.validate(Model::DysonA);

    std::vector<double> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc += 1.0 / (x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
        }
        d[static_cast<size_t>(i)] = beta / 2.0 * acc;
    }
    return d;
}

std::optional<std::vector<double>> step_proposal(std::span<const double> x, double dt,
                                                 std::span<const double> gaussians, Model model,
                                                 const ModelParams& params) {
    const int n = params.n_particles;
    if (static_cast<int>(x.size()) != n || static_cast<int>(gaussians.size()) != n)
        throw invalid_input("step_proposal: size mismatch");
    if (!(dt > 0.0)) throw invalid_input("step_proposal: dt must be positive");
    std::vector<double> xn(static_cast<size_t>(n));
    const bool ok = sde_detail::propose_path(model, x.data(), gaussians.data(), xn.data(), n, dt,
                                             std::sqrt(dt), params.beta / 2.0,
                                             2.0 * params.nu + 1.0);
    if (!ok) return std::nullopt;
    return xn;
}

namespace {

struct PathKernelParams {
    Model model;
    int n;
    double half_beta;
    double two_nu_plus_1;
};

// Recursive reject-and-halve advance over one interval of length dt.
// Returns false if the halving depth limit is exceeded (stuck path).
bool advance_bisect(const PathKernelParams& kp, double* x, double dt, int depth,
                    GaussianStream& stream, double* g, double* xn,
                    std::uint64_t& rejected) {
    for (int i = 0; i < kp.n; ++i) g[i] = stream.next();
    const bool ok = sde_detail::propose_path(kp.model, x, g, xn, kp.n, dt, std::sqrt(dt),
                                             kp.half_beta, kp.two_nu_plus_1);
    if (ok) {
        std::memcpy(x, xn, sizeof(double) * static_cast<size_t>(kp.n));
        return true;
    }
    ++rejected;
    if (depth >= kMaxHalvings) return false;
    return advance_bisect(kp, x, 0.5 * dt, depth + 1, stream, g, xn, rejected) &&
           advance_bisect(kp, x, 0.5 * dt, depth + 1, stream, g, xn, rejected);
}

struct ChunkStats {
    std::uint64_t rejected = 0;
    std::uint64_t stuck = 0;
};

// Scalar trajectory for one path; writes the final row or NaNs when stuck.
void run_path_scalar(const SimulationConfig& cfg, const PathKernelParams& kp,
                     std::uint64_t path, gauss::RefillFn refill, double* row,
                     ChunkStats& stats) {
    const int n = kp.n;
    std::vector<double> x(cfg.initial.positions);
    std::vector<double> g(static_cast<size_t>(n)), xn(static_cast<size_t>(n));
    GaussianStream stream(cfg.seed, path, refill);

    const auto n_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
    const double dt_last = cfg.t_final - static_cast<double>(n_steps - 1) * cfg.dt;

    for (std::uint64_t s = 0; s < n_steps; ++s) {
        const double dt = (s + 1 == n_steps) ? dt_last : cfg.dt;
        for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = stream.next();
        const bool ok = sde_detail::propose_path(kp.model, x.data(), g.data(), xn.data(), n, dt,
                                                 std::sqrt(dt), kp.half_beta, kp.two_nu_plus_1);
        if (ok) {
            std::swap(x, xn);
            continue;
        }
        ++stats.rejected;
        if (!(advance_bisect(kp, x.data(), 0.5 * dt, 1, stream, g.data(), xn.data(),
                             stats.rejected) &&
              advance_bisect(kp, x.data(), 0.5 * dt, 1, stream, g.data(), xn.data(),
                             stats.rejected))) {
            ++stats.stuck;
            std::fill(row, row + n, std::numeric_limits<double>::quiet_NaN());
            return;
        }
    }
    std::copy(x.begin(), x.end(), row);
}

#if defined(IBP_HAVE_AVX2_SOURCES) && (defined(__x86_64__) || defined(_M_X64))

// Four paths in lockstep; lanes that reject fall back to the scalar
// bisection, so every lane reproduces the scalar backend bit for bit.
void run_group4_avx2(const SimulationConfig& cfg, const PathKernelParams& kp,
                     std::uint64_t first_path, gauss::RefillFn refill, double* rows,
                     ChunkStats& stats) {
    const int n = kp.n;
    std::vector<double> xs(static_cast<size_t>(n) * 4);   // SoA
    std::vector<double> gs(static_cast<size_t>(n) * 4);
    std::vector<double> xns(static_cast<size_t>(n) * 4);
    std::vector<double> lane_x(static_cast<size_t>(n)), lane_g(static_cast<size_t>(n)),
        lane_xn(static_cast<size_t>(n));

    GaussianStream streams[4] = {
        GaussianStream(cfg.seed, first_path + 0, refill),
        GaussianStream(cfg.seed, first_path + 1, refill),
        GaussianStream(cfg.seed, first_path + 2, refill),
        GaussianStream(cfg.seed, first_path + 3, refill),
    };
    bool alive[4] = {true, true, true, true};
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < n; ++i)
            xs[static_cast<size_t>(i) * 4 + l] = cfg.initial.positions[static_cast<size_t>(i)];

    const auto n_steps =
        static_cast<std::uint64_t>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
    const double dt_last = cfg.t_final - static_cast<double>(n_steps - 1) * cfg.dt;

    for (std::uint64_t s = 0; s < n_steps; ++s) {
        const double dt = (s + 1 == n_steps) ? dt_last : cfg.dt;
        const double sqrt_dt = std::sqrt(dt);
        for (int l = 0; l < 4; ++l) {
            if (!alive[l]) continue;
            for (int i = 0; i < n; ++i) gs[static_cast<size_t>(i) * 4 + l] = streams[l].next();
        }
        const int mask = sde_detail::propose4_avx2(kp.model, xs.data(), gs.data(), xns.data(), n,
                                                   dt, sqrt_dt, kp.half_beta, kp.two_nu_plus_1);
        for (int l = 0; l < 4; ++l) {
            if (!alive[l]) continue;
            if (mask & (1 << l)) {
                for (int i = 0; i < n; ++i)
                    xs[static_cast<size_t>(i) * 4 + l] = xns[static_cast<size_t>(i) * 4 + l];
                continue;
            }
            ++stats.rejected;
            for (int i = 0; i < n; ++i)
                lane_x[static_cast<size_t>(i)] = xs[static_cast<size_t>(i) * 4 + l];
            if (advance_bisect(kp, lane_x.data(), 0.5 * dt, 1, streams[l], lane_g.data(),
                               lane_xn.data(), stats.rejected) &&
                advance_bisect(kp, lane_x.data(), 0.5 * dt, 1, streams[l], lane_g.data(),
                               lane_xn.data(), stats.rejected)) {
                for (int i = 0; i < n; ++i)
                    xs[static_cast<size_t>(i) * 4 + l] = lane_x[static_cast<size_t>(i)];
            } else {
                ++stats.stuck;
                alive[l] = false;
                double* row = rows + static_cast<size_t>(l) * n;
                std::fill(row, row + n, std::numeric_limits<double>::quiet_NaN());
            }
        }
    }
    for (int l = 0; l < 4; ++l) {
        if (!alive[l]) continue;
        double* row = rows + static_cast<size_t>(l) * n;
        for (int i = 0; i < n; ++i) row[i] = xs[static_cast<size_t>(i) * 4 + l];
    }
}

#endif  // IBP_HAVE_AVX2_SOURCES

void run_chunk(const SimulationConfig& cfg, const PathKernelParams& kp, bool use_avx2,
               gauss::RefillFn refill, std::uint64_t p_begin, std::uint64_t p_end,
               double* finals, ChunkStats& stats) {
    const int n = kp.n;
    std::uint64_t p = p_begin;
#if defined(IBP_HAVE_AVX2_SOURCES) && (defined(__x86_64__) || defined(_M_X64))
    if (use_avx2) {
        for (; p + 4 <= p_end; p += 4)
            run_group4_avx2(cfg, kp, p, refill, finals + p * static_cast<size_t>(n), stats);
    }
#else
    (void)use_avx2;
#endif
    for (; p < p_end; ++p)
        run_path_scalar(cfg, kp, p, refill, finals + p * static_cast<size_t>(n), stats);
}

}  // namespace

EnsembleResult run_ensemble(const SimulationConfig& config, const ExecutionOptions& opts) {
    config.validate();
    const int n = config.params.n_particles;

    bool use_avx2 = false;
    gauss::RefillFn refill = &gauss::refill_scalar;
    if (opts.backend == SdeBackend::Avx2 && !sde_backend_available(SdeBackend::Avx2))
        throw invalid_input("run_ensemble: AVX2 backend not available on this host");
    if (opts.backend != SdeBackend::Scalar && sde_backend_available(SdeBackend::Avx2)) {
#if defined(IBP_HAVE_AVX2_SOURCES) && (defined(__x86_64__) || defined(_M_X64))
        use_avx2 = true;
        refill = &gauss::refill_avx2;
#endif
    }

    EnsembleResult result;
    result.config_echo = config;
    result.finals.assign(static_cast<size_t>(config.n_paths) * n, 0.0);

    PathKernelParams kp{config.model, n, config.params.beta / 2.0, 2.0 * config.params.nu + 1.0};

    int n_threads = opts.n_threads > 0
                        ? opts.n_threads
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(n_threads), config.n_paths));

    std::vector<ChunkStats> stats(static_cast<size_t>(n_threads));
    if (n_threads == 1) {
        run_chunk(config, kp, use_avx2, refill, 0, config.n_paths, result.finals.data(),
                  stats[0]);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t per = (config.n_paths + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const std::uint64_t b = per * static_cast<std::uint64_t>(w);
            const std::uint64_t e = std::min(config.n_paths, b + per);
            if (b >= e) break;
            workers.emplace_back([&, b, e, w] {
                run_chunk(config, kp, use_avx2, refill, b, e, result.finals.data(),
                          stats[static_cast<size_t>(w)]);
            });
        }
        for (auto& t : workers) t.join();
    }

    for (const auto& s : stats) {
        result.rejected_steps += s.rejected;
        result.stuck_paths += s.stuck;
    }
    if (static_cast<double>(result.stuck_paths) >
        kStuckFraction * static_cast<double>(config.n_paths))
        throw numeric_error("run_ensemble: more than 0.1% of paths stuck at the boundary");
    return result;
}

}  // namespace ibp
