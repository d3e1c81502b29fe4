// AVX2 refill of the Gaussian stream: four philox blocks in 64-bit lanes,
// then vector mirrors of the deterministic log/sincos kernels. Bit-identical
// to refill_scalar by construction (same IEEE operations per element).

#include <immintrin.h>

#include <cmath>

#include "ibp/detmath.hpp"
#include "ibp/rng.hpp"

namespace ibp::gauss {

namespace {

constexpr std::uint64_t kMask32 = 0xffffffffull;

// Exact u64 -> double for values below 2^53.
inline __m256d u64lo53_to_double(__m256i w) {
    const __m256d p84 = _mm256_set1_pd(0x1.0p84);
    const __m256d p52 = _mm256_set1_pd(0x1.0p52);
    __m256i hi = _mm256_srli_epi64(w, 32);
    __m256i lo = _mm256_and_si256(w, _mm256_set1_epi64x(static_cast<long long>(kMask32)));
    __m256d dhi = _mm256_castsi256_pd(_mm256_or_si256(hi, _mm256_castpd_si256(p84)));
    __m256d dlo = _mm256_castsi256_pd(_mm256_or_si256(lo, _mm256_castpd_si256(p52)));
    dhi = _mm256_sub_pd(dhi, _mm256_add_pd(p84, p52));
    return _mm256_add_pd(dhi, dlo);
}

inline __m256d vec_log_pos(__m256d x) {
    using namespace ibp::detmath;
    __m256i bits = _mm256_castpd_si256(x);
    __m256i hx = _mm256_srli_epi64(bits, 32);
    hx = _mm256_add_epi64(hx, _mm256_set1_epi64x(0x3ff00000ll - 0x3fe6a09ell));
    __m256i k64 = _mm256_sub_epi64(_mm256_srli_epi64(hx, 20), _mm256_set1_epi64x(0x3ffll));
    // k fits in 32 bits; gather the low words of each lane and convert.
    __m256i kperm = _mm256_permutevar8x32_epi32(k64, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    __m256d dk = _mm256_cvtepi32_pd(_mm256_castsi256_si128(kperm));

    __m256i hxm = _mm256_add_epi64(
        _mm256_and_si256(hx, _mm256_set1_epi64x(0x000fffffll)),
        _mm256_set1_epi64x(0x3fe6a09ell));
    __m256i mbits = _mm256_or_si256(
        _mm256_slli_epi64(hxm, 32),
        _mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(kMask32))));
    __m256d m = _mm256_castsi256_pd(mbits);

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d f = _mm256_sub_pd(m, one);
    __m256d s = _mm256_div_pd(f, _mm256_add_pd(two, f));
    __m256d z = _mm256_mul_pd(s, s);
    __m256d w = _mm256_mul_pd(z, z);
    __m256d t1 = _mm256_mul_pd(
        w, _mm256_add_pd(_mm256_set1_pd(kLg2),
                         _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg4),
                                                        _mm256_mul_pd(w, _mm256_set1_pd(kLg6))))));
    __m256d t2 = _mm256_mul_pd(
        z, _mm256_add_pd(
               _mm256_set1_pd(kLg1),
               _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg3),
                                              _mm256_mul_pd(w, _mm256_add_pd(
                                                                   _mm256_set1_pd(kLg5),
                                                                   _mm256_mul_pd(w, _mm256_set1_pd(kLg7))))))));
    __m256d r = _mm256_add_pd(t1, t2);
    __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
    __m256d dklo = _mm256_mul_pd(dk, _mm256_set1_pd(kLn2Lo));
    __m256d inner = _mm256_sub_pd(
        _mm256_sub_pd(hfsq, _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)), dklo)), f);
    return _mm256_sub_pd(_mm256_mul_pd(dk, _mm256_set1_pd(kLn2Hi)), inner);
}

inline __m256d vec_poly_sin(__m256d r) {
    using namespace ibp::detmath;
    __m256d z = _mm256_mul_pd(r, r);
    __m256d p = _mm256_add_pd(_mm256_set1_pd(kS5), _mm256_mul_pd(z, _mm256_set1_pd(kS6)));
    p = _mm256_add_pd(_mm256_set1_pd(kS4), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kS3), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kS2), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kS1), _mm256_mul_pd(z, p));
    return _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(r, z), p));
}

inline __m256d vec_poly_cos(__m256d r) {
    using namespace ibp::detmath;
    __m256d z = _mm256_mul_pd(r, r);
    __m256d p = _mm256_add_pd(_mm256_set1_pd(kC5), _mm256_mul_pd(z, _mm256_set1_pd(kC6)));
    p = _mm256_add_pd(_mm256_set1_pd(kC4), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kC3), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kC2), _mm256_mul_pd(z, p));
    p = _mm256_add_pd(_mm256_set1_pd(kC1), _mm256_mul_pd(z, p));
    __m256d zz = _mm256_mul_pd(z, z);
    return _mm256_add_pd(
        _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(0.5), z)),
        _mm256_mul_pd(zz, p));
}

inline void vec_sincos_2pi(__m256d t, __m256d* s_out, __m256d* c_out) {
    using namespace ibp::detmath;
    __m256d qd = _mm256_round_pd(_mm256_mul_pd(t, _mm256_set1_pd(kTwoOverPi)),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_sub_pd(_mm256_sub_pd(t, _mm256_mul_pd(qd, _mm256_set1_pd(kPiO2Hi))),
                              _mm256_mul_pd(qd, _mm256_set1_pd(kPiO2Lo)));
    __m256d sr = vec_poly_sin(r);
    __m256d cr = vec_poly_cos(r);

    // Quadrant: q & 1 swaps sin/cos, q & 2 and (q+1) & 2 set the signs.
    __m128i q32 = _mm256_cvttpd_epi32(qd);
    __m256i q = _mm256_cvtepi32_epi64(q32);
    __m256i qswap = _mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(1)),
                                       _mm256_set1_epi64x(1));
    __m256i qneg_s = _mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(2)),
                                        _mm256_set1_epi64x(2));
    __m256i qp1 = _mm256_add_epi64(q, _mm256_set1_epi64x(1));
    __m256i qneg_c = _mm256_cmpeq_epi64(_mm256_and_si256(qp1, _mm256_set1_epi64x(2)),
                                        _mm256_set1_epi64x(2));

    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d swap_mask = _mm256_castsi256_pd(qswap);
    __m256d s = _mm256_blendv_pd(sr, cr, swap_mask);
    __m256d c = _mm256_blendv_pd(cr, sr, swap_mask);
    s = _mm256_xor_pd(s, _mm256_and_pd(_mm256_castsi256_pd(qneg_s), signbit));
    c = _mm256_xor_pd(c, _mm256_and_pd(_mm256_castsi256_pd(qneg_c), signbit));
    *s_out = s;
    *c_out = c;
}

}  // namespace

void refill_avx2(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo, double out[8]) {
    // Four philox blocks, one per 64-bit lane; words kept zero-extended.
    const std::uint64_t ctrs[4] = {ctr_lo, ctr_lo + 1, ctr_lo + 2, ctr_lo + 3};
    __m256i c0 = _mm256_set_epi64x(
        static_cast<long long>(ctrs[3] & kMask32), static_cast<long long>(ctrs[2] & kMask32),
        static_cast<long long>(ctrs[1] & kMask32), static_cast<long long>(ctrs[0] & kMask32));
    __m256i c1 = _mm256_set_epi64x(
        static_cast<long long>(ctrs[3] >> 32), static_cast<long long>(ctrs[2] >> 32),
        static_cast<long long>(ctrs[1] >> 32), static_cast<long long>(ctrs[0] >> 32));
    __m256i c2 = _mm256_set1_epi64x(static_cast<long long>(ctr_hi & kMask32));
    __m256i c3 = _mm256_set1_epi64x(static_cast<long long>(ctr_hi >> 32));
    __m256i k0 = _mm256_set1_epi64x(static_cast<long long>(key & kMask32));
    __m256i k1 = _mm256_set1_epi64x(static_cast<long long>(key >> 32));

    const __m256i m0 = _mm256_set1_epi64x(0xD2511F53ll);
    const __m256i m1 = _mm256_set1_epi64x(0xCD9E8D57ll);
    const __m256i w0 = _mm256_set1_epi64x(0x9E3779B9ll);
    const __m256i w1 = _mm256_set1_epi64x(0xBB67AE85ll);
    const __m256i mask32 = _mm256_set1_epi64x(static_cast<long long>(kMask32));

    for (int round = 0; round < 10; ++round) {
        __m256i p0 = _mm256_mul_epu32(c0, m0);
        __m256i p1 = _mm256_mul_epu32(c2, m1);
        __m256i hi0 = _mm256_srli_epi64(p0, 32);
        __m256i lo0 = _mm256_and_si256(p0, mask32);
        __m256i hi1 = _mm256_srli_epi64(p1, 32);
        __m256i lo1 = _mm256_and_si256(p1, mask32);
        c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
        c1 = lo1;
        c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
        c3 = lo0;
        k0 = _mm256_and_si256(_mm256_add_epi64(k0, w0), mask32);
        k1 = _mm256_and_si256(_mm256_add_epi64(k1, w1), mask32);
    }

    __m256i v0 = _mm256_or_si256(_mm256_slli_epi64(c0, 32), c1);
    __m256i v1 = _mm256_or_si256(_mm256_slli_epi64(c2, 32), c3);

    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d scale = _mm256_set1_pd(0x1.0p-53);
    __m256d u_even = _mm256_mul_pd(
        _mm256_add_pd(u64lo53_to_double(_mm256_srli_epi64(v0, 11)), half), scale);
    __m256d u_odd = _mm256_mul_pd(
        _mm256_add_pd(u64lo53_to_double(_mm256_srli_epi64(v1, 11)), half), scale);

    __m256d radius = _mm256_sqrt_pd(
        _mm256_mul_pd(_mm256_set1_pd(-2.0), vec_log_pos(u_even)));
    __m256d angle = _mm256_mul_pd(_mm256_set1_pd(2.0 * M_PI), u_odd);
    __m256d s, c;
    vec_sincos_2pi(angle, &s, &c);

    alignas(32) double rad[4], sv[4], cv[4];
    _mm256_store_pd(rad, radius);
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    for (int i = 0; i < 4; ++i) {
        out[2 * i] = rad[i] * cv[i];
        out[2 * i + 1] = rad[i] * sv[i];
    }
}

}  // namespace ibp::gauss
