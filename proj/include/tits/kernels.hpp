#pragma once

#include <cstddef>
#include <cstdint>

namespace tits {

// Coefficient-vector kernels over F_p digit planes. Inputs to add/sub are
// reduced (< p); axpy accumulates without reduction, callers bound the sum.
struct CoeffKernels {
    const char* name;
    void (*add_mod)(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p);
    void (*sub_mod)(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p);
    void (*axpy_acc)(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c, std::size_t n);
    void (*reduce_mod)(std::uint32_t* x, std::size_t n, std::uint32_t p);
};

const CoeffKernels& kernels_scalar();
// nullptr when the AVX2 translation unit is absent or the CPU lacks AVX2.
const CoeffKernels* kernels_avx2();
// Selected once at startup; TITS_KERNELS=scalar forces the reference path.
const CoeffKernels& kernels_active();

void kernel_add_mod_scalar(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p);
void kernel_sub_mod_scalar(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t p);
void kernel_axpy_acc_scalar(std::uint32_t* acc, const std::uint32_t* x, std::uint32_t c, std::size_t n);
void kernel_reduce_mod_scalar(std::uint32_t* x, std::size_t n, std::uint32_t p);

}  // namespace tits
