#pragma once

#include "malris/kernels.hpp"

namespace malris::kernels::detail {

// Shared by the scalar kernels and the SIMD tails so both round identically.
inline void mul_parts(double ar, double ai, double br, double bi, double& re, double& im) {
    re = ar * br - ai * bi;
    im = ar * bi + ai * br;
}

extern const KernelSet scalar_set;
#if defined(MALRIS_HAVE_AVX2)
extern const KernelSet avx2_set;
#endif

}  // namespace malris::kernels::detail
