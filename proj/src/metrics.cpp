#include "malris/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "malris/kernels.hpp"

namespace malris {

double shannon_capacity(double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("shannon_capacity: negative SNR");
    return std::log2(1.0 + gamma);
}

double secrecy_capacity(double gamma_u, double gamma_e) {
    return std::max(0.0, shannon_capacity(gamma_u) - shannon_capacity(gamma_e));
}

OutageEstimate secrecy_outage(std::span<const double> c_s, double r_s) {
    if (c_s.empty()) throw std::invalid_argument("secrecy_outage: no samples");
    const auto below = std::count_if(c_s.begin(), c_s.end(), [r_s](double c) { return c < r_s; });
    OutageEstimate est;
    est.samples = c_s.size();
    est.p_out = static_cast<double>(below) / static_cast<double>(c_s.size());
    est.ci95 = 1.96 * std::sqrt(est.p_out * (1.0 - est.p_out) / static_cast<double>(c_s.size()));
    return est;
}

BerResult qpsk_ber_simulate(cplx h_eff, double sigma2, std::uint64_t n_bits, Rng& rng) {
    if (n_bits < 2 || n_bits % 2 != 0) throw std::invalid_argument("qpsk_ber_simulate: n_bits must be even and >= 2");
    if (!(sigma2 >= 0.0)) throw std::invalid_argument("qpsk_ber_simulate: negative noise power");

    constexpr std::size_t kBlock = 1024;  // symbols per kernel call; multiple of 32
    constexpr double a = 0.70710678118654752440;

    const cplx equalizer = h_eff == cplx{} ? cplx{1.0, 0.0} : cplx{1.0, 0.0} / h_eff;
    const double noise_scale = std::sqrt(sigma2);
    const auto& k = kernels::active();
    ComplexGaussian gaussian;

    std::array<cplx, kBlock> symbols;
    std::array<cplx, kBlock> noise;
    BerResult out;
    std::uint64_t remaining = n_bits / 2;
    while (remaining > 0) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kBlock));
        for (std::size_t i = 0; i < count; i += 32) {
            std::uint64_t word = rng();
            const std::size_t stop = std::min(count, i + 32);
            for (std::size_t s = i; s < stop; ++s, word >>= 2) {
                symbols[s] = {(word & 1u) ? -a : a, (word & 2u) ? -a : a};
            }
        }
        for (std::size_t s = 0; s < count; ++s) noise[s] = noise_scale * gaussian(rng);
        out.bit_errors += k.qpsk_bit_errors(h_eff, equalizer, symbols.data(), noise.data(), count);
        remaining -= count;
    }
    out.bits_total = n_bits;
    out.ber = static_cast<double>(out.bit_errors) / static_cast<double>(out.bits_total);
    return out;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace malris
