#include "tits/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace tits {

void kernel_add_mod_scalar(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = a[i] + b[i];
        out[i] = s >= p ? s - p : s;
    }
}

void kernel_sub_mod_scalar(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = a[i] + p - b[i];
        out[i] = s >= p ? s - p : s;
    }
}

void kernel_axpy_acc_scalar(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += c * x[i];
}

void kernel_reduce_mod_scalar(std::uint32_t* x, std::size_t n, std::uint32_t p) {
    for (std::size_t i = 0; i < n; ++i) x[i] %= p;
}

const CoeffKernels& kernels_scalar() {
    static const CoeffKernels k{"scalar", kernel_add_mod_scalar, kernel_sub_mod_scalar, kernel_axpy_acc_scalar,
                                kernel_reduce_mod_scalar};
    return k;
}

#if defined(TITS_HAVE_AVX2_TU)
const CoeffKernels& kernels_avx2_table();
#endif

const CoeffKernels* kernels_avx2() {
#if defined(TITS_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2")) return &kernels_avx2_table();
#endif
    return nullptr;
}

const CoeffKernels& kernels_active() {
    static const CoeffKernels* chosen = [] {
        const char* env = std::getenv("TITS_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &kernels_scalar();
        const CoeffKernels* v = kernels_avx2();
        return v ? v : &kernels_scalar();
    }();
    return *chosen;
}

}  // namespace tits
