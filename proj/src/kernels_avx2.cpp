#include "tits/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace tits {

#if defined(__AVX2__)

namespace {

void kernel_add_mod_avx2(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p) {
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i vpm1 = _mm256_set1_epi32(int(p - 1));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x = _mm256_add_epi32(_mm256_loadu_si256((const __m256i*)(a + i)),
                                     _mm256_loadu_si256((const __m256i*)(b + i)));
        __m256i ge = _mm256_cmpgt_epi32(x, vpm1);
        x = _mm256_sub_epi32(x, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256((__m256i*)(out + i), x);
    }
    kernel_add_mod_scalar(out + i, a + i, b + i, n - i, p);
}

void kernel_sub_mod_avx2(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p) {
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i vpm1 = _mm256_set1_epi32(int(p - 1));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x = _mm256_sub_epi32(_mm256_add_epi32(_mm256_loadu_si256((const __m256i*)(a + i)), vp),
                                     _mm256_loadu_si256((const __m256i*)(b + i)));
        __m256i ge = _mm256_cmpgt_epi32(x, vpm1);
        x = _mm256_sub_epi32(x, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256((__m256i*)(out + i), x);
    }
    kernel_sub_mod_scalar(out + i, a + i, b + i, n - i, p);
}

void kernel_axpy_acc_avx2(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c, std::size_t n) {
    const __m256i vc = _mm256_set1_epi32(int(c));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i s = _mm256_loadu_si256((const __m256i*)(acc + i));
        __m256i v = _mm256_mullo_epi32(_mm256_loadu_si256((const __m256i*)(x + i)), vc);
        _mm256_storeu_si256((__m256i*)(acc + i), _mm256_add_epi32(s, v));
    }
    kernel_axpy_acc_scalar(acc + i, x + i, c, n - i);
}

// x mod p through double-precision reciprocal; exact for x < 2^32.
void kernel_reduce_mod_avx2(std::uint32_t* x, std::size_t n, std::uint32_t p) {
    const __m256d vinv = _mm256_set1_pd(1.0 / double(p));
    const __m256d vpd = _mm256_set1_pd(double(p));
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i v = _mm256_loadu_si256((const __m256i*)(x + i));
        // unsigned -> double in two halves
        __m128i lo = _mm256_castsi256_si128(v);
        __m128i hi = _mm256_extracti128_si256(v, 1);
        __m256d dlo = _mm256_cvtepi32_pd(lo);
        __m256d dhi = _mm256_cvtepi32_pd(hi);
        const __m256d two32 = _mm256_set1_pd(4294967296.0);
        dlo = _mm256_add_pd(dlo, _mm256_and_pd(_mm256_cmp_pd(dlo, _mm256_setzero_pd(), _CMP_LT_OQ), two32));
        dhi = _mm256_add_pd(dhi, _mm256_and_pd(_mm256_cmp_pd(dhi, _mm256_setzero_pd(), _CMP_LT_OQ), two32));
        __m256d qlo = _mm256_floor_pd(_mm256_mul_pd(dlo, vinv));
        __m256d qhi = _mm256_floor_pd(_mm256_mul_pd(dhi, vinv));
        __m256d rlo = _mm256_sub_pd(dlo, _mm256_mul_pd(qlo, vpd));
        __m256d rhi = _mm256_sub_pd(dhi, _mm256_mul_pd(qhi, vpd));
        __m128i ilo = _mm256_cvtpd_epi32(rlo);
        __m128i ihi = _mm256_cvtpd_epi32(rhi);
        __m256i r = _mm256_inserti128_si256(_mm256_castsi128_si256(ilo), ihi, 1);
        // correct off-by-one quotients from rounding
        __m256i neg = _mm256_cmpgt_epi32(zero, r);
        r = _mm256_add_epi32(r, _mm256_and_si256(neg, vp));
        __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
        r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256((__m256i*)(x + i), r);
    }
    kernel_reduce_mod_scalar(x + i, n - i, p);
}

}  // namespace

const CoeffKernels& kernels_avx2_table() {
    static const CoeffKernels k{"avx2", kernel_add_mod_avx2, kernel_sub_mod_avx2, kernel_axpy_acc_avx2,
                                kernel_reduce_mod_avx2};
    return k;
}

#else

const CoeffKernels& kernels_avx2_table() { return kernels_scalar(); }

#endif

}  // namespace tits
