#pragma once

#include <array>
#include <cstdint>

namespace ibp {

// Philox4x32-10 counter-based generator. A stream is (key, counter-space);
// per-path streams use the 64-bit run seed as the key and the path index as
// the high half of the 128-bit counter, so any block of any path can be
// generated independently of execution order.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t ctr_hi,
                                              std::uint64_t ctr_lo);
};

// Uniform double in (0, 1) from 53 bits plus a half-ulp offset (never 0).
inline double u64_to_unit_double(std::uint64_t v) {
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

namespace gauss {
// Fills out[0..7] with standard normals from philox counters
// (ctr_lo .. ctr_lo+3) of the given stream, via Box-Muller on the
// deterministic math kernels.
using RefillFn = void (*)(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo,
                          double out[8]);

void refill_scalar(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo, double out[8]);
#if defined(__x86_64__) || defined(_M_X64)
void refill_avx2(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo, double out[8]);
#endif
bool avx2_available();
}  // namespace gauss

// Buffered per-path stream of standard normal draws. Consumption is
// sequential within the path; the refill backend does not change the values.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::uint64_t path_index, gauss::RefillFn refill)
        : key_(seed), ctr_hi_(path_index), refill_(refill) {}

    double next() {
        if (pos_ == 8) {
            refill_(key_, ctr_hi_, ctr_lo_, buf_);
            ctr_lo_ += 4;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_hi_;
    std::uint64_t ctr_lo_ = 0;
    gauss::RefillFn refill_;
    double buf_[8] = {};
    int pos_ = 8;
};

}  // namespace ibp
