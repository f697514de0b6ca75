#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "malris/kernels.hpp"

using malris::cplx;
namespace kernels = malris::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<cplx> v(n);
    for (auto& e : v) e = {g(rng), g(rng)};
    return v;
}

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

}  // namespace

TEST_CASE("scalar dot matches a naive complex sum") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 32u, 65u}) {
        const auto a = random_vector(n, rng);
        const auto b = random_vector(n, rng);
        cplx naive{};
        for (std::size_t k = 0; k < n; ++k) naive += a[k] * b[k];
        const cplx got = kernels::scalar().dot(a.data(), b.data(), n);
        CHECK(std::abs(got - naive) <= 1e-12 * (1.0 + std::abs(naive)));
    }
}

TEST_CASE("scalar multiply and in-place aliasing") {
    std::mt19937_64 rng(12);
    const auto a = random_vector(9, rng);
    auto b = random_vector(9, rng);
    const auto b0 = b;
    kernels::scalar().multiply(a.data(), b.data(), b.data(), b.size());
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(std::abs(b[k] - a[k] * b0[k]) <= 1e-14);
}

TEST_CASE("qpsk kernel counts sign disagreements") {
    const double a = 0.70710678118654752440;
    const std::vector<cplx> sym = {{a, a}, {-a, a}, {a, -a}, {-a, -a}};
    const std::vector<cplx> quiet(4, cplx{});
    CHECK(kernels::scalar().qpsk_bit_errors({2.0, -1.0}, cplx{1.0} / cplx{2.0, -1.0}, sym.data(), quiet.data(), 4) == 0);

    // noise that flips both components of symbol 0 and the I component of symbol 3
    const std::vector<cplx> noise = {{-2.0, -2.0}, {0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}};
    CHECK(kernels::scalar().qpsk_bit_errors({1.0, 0.0}, {1.0, 0.0}, sym.data(), noise.data(), 4) == 3);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
    const kernels::KernelSet* fast = kernels::avx2();
    if (fast == nullptr) {
        MESSAGE("AVX2 variant unavailable on this machine; skipping equivalence");
        return;
    }
    const auto& ref = kernels::scalar();
    std::mt19937_64 rng(2024);
    for (std::size_t n = 0; n <= 67; ++n) {
        for (double scale : {1e-6, 1.0, 1e5}) {
            const auto a = random_vector(n, rng, scale);
            const auto b = random_vector(n, rng, scale);
            CHECK(same_bits(fast->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));

            std::vector<cplx> o1(n), o2(n);
            fast->multiply(a.data(), b.data(), o1.data(), n);
            ref.multiply(a.data(), b.data(), o2.data(), n);
            CHECK(std::memcmp(o1.data(), o2.data(), n * sizeof(cplx)) == 0);
        }
    }

    std::uniform_int_distribution<int> bit(0, 1);
    const double a = 0.70710678118654752440;
    for (std::size_t n : {0u, 1u, 2u, 3u, 31u, 1024u, 1025u}) {
        std::vector<cplx> sym(n);
        for (auto& s : sym) s = {bit(rng) ? -a : a, bit(rng) ? -a : a};
        for (double sigma : {0.0, 0.3, 1.0, 10.0}) {
            const auto noise = random_vector(n, rng, sigma);
            for (cplx h : {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{-0.3, 0.8}, cplx{1e-4, -2e-4}}) {
                const cplx w = h == cplx{} ? cplx{1.0} : cplx{1.0} / h;
                CHECK(fast->qpsk_bit_errors(h, w, sym.data(), noise.data(), n) ==
                      ref.qpsk_bit_errors(h, w, sym.data(), noise.data(), n));
            }
        }
    }
}

TEST_CASE("force_scalar pins dispatch") {
    kernels::force_scalar(true);
    CHECK(std::string(kernels::active().name) == "scalar");
    kernels::force_scalar(false);
    if (kernels::avx2() != nullptr) CHECK(std::string(kernels::active().name) == "avx2");
}
