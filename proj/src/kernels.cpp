#include <cstdlib>
#include <cstring>

#include "numfrac/kernels.hpp"

namespace numfrac::kernels {

namespace detail {
const KernelSet* avx2_impl(); // defined in kernels_avx2.cpp
}

const KernelSet* avx2() {
#if defined(__x86_64__) || defined(__i386__)
    if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
    return detail::avx2_impl();
}

const KernelSet& active() {
    static const KernelSet& chosen = []() -> const KernelSet& {
        const char* pin = std::getenv("NUMFRAC_KERNEL");
        if (pin != nullptr) {
            if (std::strcmp(pin, "scalar") == 0) return scalar();
            if (std::strcmp(pin, "avx2") == 0 && avx2() != nullptr) return *avx2();
        }
        if (const KernelSet* simd = avx2()) return *simd;
        return scalar();
    }();
    return chosen;
}

} // namespace numfrac::kernels
