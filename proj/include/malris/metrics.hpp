#pragma once

#include <cstdint>
#include <span>

#include "malris/cmatrix.hpp"
#include "malris/random.hpp"

namespace malris {

// log2(1 + gamma) in bps/Hz; throws std::domain_error for gamma < 0.
double shannon_capacity(double gamma);

// max(0, log2(1 + gamma_u) - log2(1 + gamma_e))
double secrecy_capacity(double gamma_u, double gamma_e);

struct OutageEstimate {
    double p_out = 0.0;
    double ci95 = 0.0;  // 1.96 * sqrt(p (1 - p) / n)
    std::size_t samples = 0;
};

// Fraction of samples with c_s < r_s (strict). Throws std::invalid_argument
// on an empty sequence.
OutageEstimate secrecy_outage(std::span<const double> c_s, double r_s);

struct BerResult {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;
    double ber = 0.0;
};

// Sends n_bits / 2 random Gray-mapped QPSK symbols (+-1 +-j)/sqrt(2) through
// r = h_eff s + n, n ~ CN(0, sigma2), equalises by 1/h_eff and slices per
// quadrant. With h_eff = 0 the raw noise is sliced. n_bits must be even and
// >= 2 (std::invalid_argument otherwise).
BerResult qpsk_ber_simulate(cplx h_eff, double sigma2, std::uint64_t n_bits, Rng& rng);

// Gaussian tail probability, erfc(x / sqrt 2) / 2.
double q_function(double x);

}  // namespace malris
