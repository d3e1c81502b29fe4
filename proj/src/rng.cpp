#include "ibp/rng.hpp"

#include <cmath>

#include "ibp/detmath.hpp"

namespace ibp {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2,
                         std::uint32_t& c3, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t key, std::uint64_t ctr_hi,
                                               std::uint64_t ctr_lo) {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int r = 0; r < 10; ++r) {
        philox_round(c0, c1, c2, c3, k0, k1);
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

namespace gauss {

void refill_scalar(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo,
                   double out[8]) {
    double u[8];
    for (int b = 0; b < 4; ++b) {
        const auto blk = Philox4x32::block(key, ctr_hi, ctr_lo + static_cast<std::uint64_t>(b));
        const std::uint64_t v0 = (static_cast<std::uint64_t>(blk[0]) << 32) | blk[1];
        const std::uint64_t v1 = (static_cast<std::uint64_t>(blk[2]) << 32) | blk[3];
        u[2 * b] = u64_to_unit_double(v0);
        u[2 * b + 1] = u64_to_unit_double(v1);
    }
    // Box-Muller pairs (u[2i], u[2i+1]) -> (g[2i], g[2i+1]).
    for (int i = 0; i < 4; ++i) {
        const double radius = std::sqrt(-2.0 * detmath::log_pos(u[2 * i]));
        const double angle = (2.0 * M_PI) * u[2 * i + 1];
        double s, c;
        detmath::sincos_2pi(angle, &s, &c);
        out[2 * i] = radius * c;
        out[2 * i + 1] = radius * s;
    }
}

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

}  // namespace gauss

}  // namespace ibp
