#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64 builds, an AVX2 version selected at runtime. The variants are
// bit-identical: each performs the same IEEE operations per element, and
// reductions use four striped accumulators (element k feeds accumulator k % 4)
// combined as (acc0 + acc2) + (acc1 + acc3).

#include <cstddef>
#include <cstdint>
#include <span>

#include "malris/cmatrix.hpp"

namespace malris::kernels {

struct KernelSet {
    const char* name;

    // sum_k a[k] * b[k] (no conjugation)
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);

    // out[k] = a[k] * b[k]; out may alias a or b
    void (*multiply)(const cplx* a, const cplx* b, cplx* out, std::size_t n);

    // Counts bit errors for Gray-mapped QPSK. For each k the receiver sees
    // r = h * symbols[k] + noise[k], forms y = equalizer * r and decides each
    // bit from the sign of Re(y) / Im(y). A transmitted bit is 1 where the
    // symbol component is negative.
    std::uint64_t (*qpsk_bit_errors)(cplx h, cplx equalizer, const cplx* symbols,
                                     const cplx* noise, std::size_t n);
};

const KernelSet& scalar();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2();

// The fastest variant usable on this machine.
const KernelSet& active();

// Pins active() to the scalar variant (for benchmarking and debugging).
void force_scalar(bool on);

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace malris::kernels
