// AVX2 Euler-Maruyama proposal: lanes are paths, components iterate as in
// the scalar kernel. Element operations mirror sde_kernels.hpp exactly.

#include <immintrin.h>

#include "sde_kernels.hpp"

namespace ibp::sde_detail {

namespace {

inline int chamber_mask(const double* xns, int n, bool need_positive) {
    __m256d prev = _mm256_loadu_pd(xns);
    __m256d ok = need_positive ? _mm256_cmp_pd(prev, _mm256_setzero_pd(), _CMP_GT_OQ)
                               : _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int i = 1; i < n; ++i) {
        __m256d cur = _mm256_loadu_pd(xns + static_cast<size_t>(i) * 4);
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(cur, prev, _CMP_GT_OQ));
        prev = cur;
    }
    return _mm256_movemask_pd(ok);
}

}  // namespace

int propose4_avx2(Model model, const double* xs, const double* gs, double* xns, int n, double dt,
                  double sqrt_dt, double half_beta, double two_nu_plus_1) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d tnp1 = _mm256_set1_pd(two_nu_plus_1);
    const __m256d hbeta = _mm256_set1_pd(half_beta);
    const __m256d dtv = _mm256_set1_pd(dt);
    const __m256d sdtv = _mm256_set1_pd(sqrt_dt);
    const bool bessel = model == Model::BesselB;

    for (int i = 0; i < n; ++i) {
        const __m256d xi = _mm256_loadu_pd(xs + static_cast<size_t>(i) * 4);
        __m256d acc = bessel ? _mm256_div_pd(tnp1, _mm256_mul_pd(two, xi)) : _mm256_setzero_pd();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const __m256d xj = _mm256_loadu_pd(xs + static_cast<size_t>(j) * 4);
            acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_sub_pd(xi, xj)));
            if (bessel)
                acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_add_pd(xi, xj)));
        }
        const __m256d d = _mm256_mul_pd(hbeta, acc);
        const __m256d gi = _mm256_loadu_pd(gs + static_cast<size_t>(i) * 4);
        const __m256d xn = _mm256_add_pd(_mm256_add_pd(xi, _mm256_mul_pd(d, dtv)),
                                         _mm256_mul_pd(sdtv, gi));
        _mm256_storeu_pd(xns + static_cast<size_t>(i) * 4, xn);
    }
    return chamber_mask(xns, n, bessel);
}

}  // namespace ibp::sde_detail
