// Compiled with -mavx2 (never -mfma). Only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "kernels_internal.hpp"

namespace malris::kernels::detail {
namespace {

// Two interleaved complex products: (ar*br - ai*bi, ar*bi + ai*br) per lane pair.
inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0xF);
    const __m256d b_swap = _mm256_permute_pd(b, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a_re, b), _mm256_mul_pd(a_im, b_swap));
}

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc01 = _mm256_setzero_pd();  // accumulators 0 and 1
    __m256d acc23 = _mm256_setzero_pd();  // accumulators 2 and 3
    const double* pa = as_doubles(a);
    const double* pb = as_doubles(b);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc01 = _mm256_add_pd(acc01, cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k)));
        acc23 = _mm256_add_pd(acc23, cmul2(_mm256_loadu_pd(pa + 2 * k + 4), _mm256_loadu_pd(pb + 2 * k + 4)));
    }
    alignas(32) double lanes[8];
    _mm256_store_pd(lanes, acc01);
    _mm256_store_pd(lanes + 4, acc23);
    double acc_re[4] = {lanes[0], lanes[2], lanes[4], lanes[6]};
    double acc_im[4] = {lanes[1], lanes[3], lanes[5], lanes[7]};
    for (; k < n; ++k) {
        double re, im;
        mul_parts(a[k].real(), a[k].imag(), b[k].real(), b[k].imag(), re, im);
        acc_re[k % 4] += re;
        acc_im[k % 4] += im;
    }
    return {(acc_re[0] + acc_re[2]) + (acc_re[1] + acc_re[3]),
            (acc_im[0] + acc_im[2]) + (acc_im[1] + acc_im[3])};
}

void multiply_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = as_doubles(a);
    const double* pb = as_doubles(b);
    double* po = as_doubles(out);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        _mm256_storeu_pd(po + 2 * k, cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k)));
    }
    for (; k < n; ++k) {
        double re, im;
        mul_parts(a[k].real(), a[k].imag(), b[k].real(), b[k].imag(), re, im);
        out[k] = {re, im};
    }
}

std::uint64_t qpsk_avx2(cplx h, cplx equalizer, const cplx* symbols, const cplx* noise,
                        std::size_t n) {
    const __m256d hv = _mm256_setr_pd(h.real(), h.imag(), h.real(), h.imag());
    const __m256d wv = _mm256_setr_pd(equalizer.real(), equalizer.imag(), equalizer.real(),
                                      equalizer.imag());
    const __m256d zero = _mm256_setzero_pd();
    const double* ps = as_doubles(symbols);
    const double* pn = as_doubles(noise);
    std::uint64_t errors = 0;
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d s = _mm256_loadu_pd(ps + 2 * k);
        const __m256d r = _mm256_add_pd(cmul2(hv, s), _mm256_loadu_pd(pn + 2 * k));
        const __m256d y = cmul2(wv, r);
        const __m256d decided = _mm256_cmp_pd(y, zero, _CMP_LT_OQ);
        const __m256d sent = _mm256_cmp_pd(s, zero, _CMP_LT_OQ);
        const int mask = _mm256_movemask_pd(_mm256_xor_pd(decided, sent));
        errors += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(mask)));
    }
    if (k < n) errors += scalar_set.qpsk_bit_errors(h, equalizer, symbols + k, noise + k, n - k);
    return errors;
}

}  // namespace

const KernelSet avx2_set{"avx2", &dot_avx2, &multiply_avx2, &qpsk_avx2};

}  // namespace malris::kernels::detail
