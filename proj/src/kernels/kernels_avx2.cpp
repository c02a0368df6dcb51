// Compiled with -mavx2 -mfma. Only reached through dispatch after a CPUID
// check, so nothing here may run at static-initialisation time.

#include "hom/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace hom::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

bool supported() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double real_inner(std::span<const double> a_re, std::span<const double> a_im,
                  std::span<const double> b_re, std::span<const double> b_im) {
    const std::size_t n = a_re.size();
    const double* ar = a_re.data();
    const double* ai = a_im.data();
    const double* br = b_re.data();
    const double* bi = b_im.data();

    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(ar + k), _mm256_loadu_pd(br + k), acc0);
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(ai + k), _mm256_loadu_pd(bi + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(ar + k + 4), _mm256_loadu_pd(br + k + 4), acc1);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(ai + k + 4), _mm256_loadu_pd(bi + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(ar + k), _mm256_loadu_pd(br + k), acc0);
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(ai + k), _mm256_loadu_pd(bi + k), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) {
        acc += ar[k] * br[k] + ai[k] * bi[k];
    }
    return acc;
}

std::complex<double> phased_inner(std::span<const double> a_re, std::span<const double> a_im,
                                  std::span<const double> b_re, std::span<const double> b_im,
                                  std::span<const double> w_re, std::span<const double> w_im) {
    const std::size_t n = a_re.size();
    const double* ar = a_re.data();
    const double* ai = a_im.data();
    const double* br = b_re.data();
    const double* bi = b_im.data();
    const double* wr = w_re.data();
    const double* wi = w_im.data();

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d vbr = _mm256_loadu_pd(br + k);
        const __m256d vbi = _mm256_loadu_pd(bi + k);
        const __m256d vwr = _mm256_loadu_pd(wr + k);
        const __m256d vwi = _mm256_loadu_pd(wi + k);
        const __m256d p_re = _mm256_fmadd_pd(var, vbr, _mm256_mul_pd(vai, vbi));
        const __m256d p_im = _mm256_fmsub_pd(vai, vbr, _mm256_mul_pd(var, vbi));
        acc_re = _mm256_fmadd_pd(p_re, vwr, acc_re);
        acc_re = _mm256_fnmadd_pd(p_im, vwi, acc_re);
        acc_im = _mm256_fmadd_pd(p_re, vwi, acc_im);
        acc_im = _mm256_fmadd_pd(p_im, vwr, acc_im);
    }
    double sum_re = hsum(acc_re);
    double sum_im = hsum(acc_im);
    for (; k < n; ++k) {
        const double p_re = ar[k] * br[k] + ai[k] * bi[k];
        const double p_im = ai[k] * br[k] - ar[k] * bi[k];
        sum_re += p_re * wr[k] - p_im * wi[k];
        sum_im += p_re * wi[k] + p_im * wr[k];
    }
    return {sum_re, sum_im};
}

}  // namespace hom::kernels::avx2
