#pragma once

#include <cstdint>
#include <random>

#include "malris/cmatrix.hpp"

namespace malris {

// Every random draw in a trial comes from one of these, seeded through
// derive_trial_seed.
using Rng = std::mt19937_64;

// Circularly-symmetric complex Gaussian with unit variance, E|w|^2 = 1.
class ComplexGaussian {
public:
    cplx operator()(Rng& rng) {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {re, im};
    }

private:
    std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

}  // namespace malris
