#pragma once

#include <cstddef>
#include <iosfwd>

#include "malris/cmatrix.hpp"
#include "malris/random.hpp"
#include "malris/scenario.hpp"

namespace malris {

// One block-fading realisation of the three links.
struct ChannelSet {
    CMatrix h_br;  // N x M, BS -> RIS
    CVector h_ru;  // 1 x N, RIS -> UE
    CVector h_re;  // 1 x N, RIS -> Eve
    double pl_br = 0.0;
    double pl_ru = 0.0;
    double pl_re = 0.0;

    bool operator==(const ChannelSet&) const = default;
};

// sqrt(pl) * (sqrt(kappa/(kappa+1)) * los + sqrt(1/(kappa+1)) * W), W ~ CN(0, I).
// Entries are drawn row-major. Throws std::invalid_argument on a shape
// mismatch with `los` or on kappa < 0 / pl <= 0.
CMatrix draw_rician(std::size_t rows, std::size_t cols, double kappa, double pl, const CMatrix& los,
                    Rng& rng);

// Unit-modulus line-of-sight matrix for a link from tx to rx. In
// steering-vector mode this is a_rows(phi) a_cols(phi)^H for uniform linear
// arrays, phi being the direction of rx as seen from tx.
CMatrix los_matrix(const LosSpec& spec, Vec2 tx, Vec2 rx, std::size_t rows, std::size_t cols);

// Draws H_br, then h_ru, then h_re from `rng`.
ChannelSet generate_channel_set(const Scenario& scn, Rng& rng);

// Plain-text dump: for each of h_br, h_ru, h_re a header line
// "<name> <rows> <cols>" followed by one line per row of "re im" pairs, then
// "pl_br", "pl_ru", "pl_re" lines. Values use 17 significant digits.
void write_channel_dump(const ChannelSet& ch, std::ostream& out);
ChannelSet read_channel_dump(std::istream& in);

}  // namespace malris
