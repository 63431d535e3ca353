#include "tits/kernels.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace tits;

namespace {

std::vector<std::uint32_t> random_vec(std::mt19937& rng, std::size_t n, std::uint32_t bound) {
    std::uniform_int_distribution<std::uint32_t> d(0, bound - 1);
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels match naive modular arithmetic") {
    std::mt19937 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u, 31u}) {
        auto a = random_vec(rng, 37, p), b = random_vec(rng, 37, p);
        std::vector<std::uint32_t> out(37);
        kernel_add_mod_scalar(out.data(), a.data(), b.data(), 37, p);
        for (std::size_t i = 0; i < 37; ++i) CHECK(out[i] == (a[i] + b[i]) % p);
        kernel_sub_mod_scalar(out.data(), a.data(), b.data(), 37, p);
        for (std::size_t i = 0; i < 37; ++i) CHECK(out[i] == (a[i] + p - b[i]) % p);
        auto acc = random_vec(rng, 37, 1000);
        auto acc0 = acc;
        kernel_axpy_acc_scalar(acc.data(), a.data(), 11, 37);
        for (std::size_t i = 0; i < 37; ++i) CHECK(acc[i] == acc0[i] + 11 * a[i]);
        kernel_reduce_mod_scalar(acc.data(), 37, p);
        for (std::size_t i = 0; i < 37; ++i) CHECK(acc[i] == (acc0[i] + 11 * a[i]) % p);
    }
}

TEST_CASE("avx2 kernels are bitwise equivalent to the scalar reference") {
    const CoeffKernels* v = kernels_avx2();
    if (!v) {
        MESSAGE("AVX2 kernels unavailable on this host; equivalence not exercised");
        return;
    }
    const CoeffKernels& s = kernels_scalar();
    std::mt19937 rng(20240);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 31u}) {
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 33u, 100u}) {
            auto a = random_vec(rng, n, p), b = random_vec(rng, n, p);
            std::vector<std::uint32_t> o1(n), o2(n);
            s.add_mod(o1.data(), a.data(), b.data(), n, p);
            v->add_mod(o2.data(), a.data(), b.data(), n, p);
            CHECK(o1 == o2);
            s.sub_mod(o1.data(), a.data(), b.data(), n, p);
            v->sub_mod(o2.data(), a.data(), b.data(), n, p);
            CHECK(o1 == o2);
            auto acc1 = random_vec(rng, n, 1u << 20), acc2 = acc1;
            s.axpy_acc(acc1.data(), a.data(), p - 1, n);
            v->axpy_acc(acc2.data(), a.data(), p - 1, n);
            CHECK(acc1 == acc2);
            // full 32-bit range for reduction
            std::uniform_int_distribution<std::uint32_t> d;
            std::vector<std::uint32_t> big(n);
            for (auto& x : big) x = d(rng);
            if (n > 2) {
                big[0] = 0xffffffffu;
                big[1] = 0;
                big[2] = p;
            }
            auto big2 = big;
            s.reduce_mod(big.data(), n, p);
            v->reduce_mod(big2.data(), n, p);
            CHECK(big == big2);
        }
    }
}
