#include <atomic>

#include "kernels_internal.hpp"

namespace malris::kernels {
namespace {

std::atomic<bool> scalar_forced{false};

#if defined(MALRIS_HAVE_AVX2)
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
#endif

}  // namespace

const KernelSet& scalar() { return detail::scalar_set; }

const KernelSet* avx2() {
#if defined(MALRIS_HAVE_AVX2)
    static const bool usable = cpu_has_avx2();
    return usable ? &detail::avx2_set : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() {
    if (!scalar_forced.load(std::memory_order_relaxed)) {
        if (const KernelSet* fast = avx2()) return *fast;
    }
    return detail::scalar_set;
}

void force_scalar(bool on) { scalar_forced.store(on, std::memory_order_relaxed); }

}  // namespace malris::kernels
