#include "kernels_internal.hpp"

namespace malris::kernels::detail {
namespace {

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double acc_re[4] = {0.0, 0.0, 0.0, 0.0};
    double acc_im[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        double re, im;
        mul_parts(a[k].real(), a[k].imag(), b[k].real(), b[k].imag(), re, im);
        acc_re[k % 4] += re;
        acc_im[k % 4] += im;
    }
    return {(acc_re[0] + acc_re[2]) + (acc_re[1] + acc_re[3]),
            (acc_im[0] + acc_im[2]) + (acc_im[1] + acc_im[3])};
}

void multiply_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        double re, im;
        mul_parts(a[k].real(), a[k].imag(), b[k].real(), b[k].imag(), re, im);
        out[k] = {re, im};
    }
}

std::uint64_t qpsk_scalar(cplx h, cplx equalizer, const cplx* symbols, const cplx* noise,
                          std::size_t n) {
    std::uint64_t errors = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double rr, ri;
        mul_parts(h.real(), h.imag(), symbols[k].real(), symbols[k].imag(), rr, ri);
        rr += noise[k].real();
        ri += noise[k].imag();
        double yr, yi;
        mul_parts(equalizer.real(), equalizer.imag(), rr, ri, yr, yi);
        errors += static_cast<std::uint64_t>((yr < 0.0) != (symbols[k].real() < 0.0));
        errors += static_cast<std::uint64_t>((yi < 0.0) != (symbols[k].imag() < 0.0));
    }
    return errors;
}

}  // namespace

const KernelSet scalar_set{"scalar", &dot_scalar, &multiply_scalar, &qpsk_scalar};

}  // namespace malris::kernels::detail
