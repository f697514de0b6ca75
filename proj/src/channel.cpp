#include "malris/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace malris {
namespace {

CVector steering_vector(std::size_t count, double phase_step) {
    CVector a(count);
    for (std::size_t k = 0; k < count; ++k) a[k] = std::polar(1.0, phase_step * static_cast<double>(k));
    return a;
}

CVector as_row(const CMatrix& m) {
    auto flat = m.flat();
    return {flat.begin(), flat.end()};
}

}  // namespace

CMatrix draw_rician(std::size_t rows, std::size_t cols, double kappa, double pl, const CMatrix& los,
                    Rng& rng) {
    if (los.rows() != rows || los.cols() != cols) {
        throw std::invalid_argument("draw_rician: LOS matrix shape does not match requested shape");
    }
    if (!(kappa >= 0.0)) throw std::invalid_argument("draw_rician: kappa must be >= 0");
    if (!(pl > 0.0)) throw std::invalid_argument("draw_rician: path loss must be > 0");

    const double amplitude = std::sqrt(pl);
    const double los_weight = amplitude * std::sqrt(kappa / (kappa + 1.0));
    const double nlos_weight = amplitude * std::sqrt(1.0 / (kappa + 1.0));

    ComplexGaussian gaussian;
    CMatrix out(rows, cols);
    auto dst = out.flat();
    auto src = los.flat();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = los_weight * src[i] + nlos_weight * gaussian(rng);
    }
    return out;
}

CMatrix los_matrix(const LosSpec& spec, Vec2 tx, Vec2 rx, std::size_t rows, std::size_t cols) {
    if (spec.mode == LosMode::all_ones) return CMatrix(rows, cols, cplx{1.0, 0.0});

    const double phi = std::atan2(rx.y - tx.y, rx.x - tx.x);
    const double step = 2.0 * std::numbers::pi * spec.spacing * std::sin(phi);
    const CVector a_rx = steering_vector(rows, step);
    const CVector a_tx = steering_vector(cols, step);
    CMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            // unit modulus by construction; renormalise the rounding away
            const cplx v = a_rx[r] * std::conj(a_tx[c]);
            out(r, c) = v / std::abs(v);
        }
    }
    return out;
}

ChannelSet generate_channel_set(const Scenario& scn, Rng& rng) {
    const auto n = static_cast<std::size_t>(scn.N);
    const auto m = static_cast<std::size_t>(scn.M);

    ChannelSet ch;
    ch.pl_br = path_loss(distance(scn.pos_bs, scn.pos_ris), scn.alpha);
    ch.pl_ru = path_loss(distance(scn.pos_ris, scn.pos_ue), scn.alpha);
    ch.pl_re = path_loss(distance(scn.pos_ris, scn.pos_eve), scn.alpha);

    ch.h_br = draw_rician(n, m, scn.kappa, ch.pl_br, los_matrix(scn.los, scn.pos_bs, scn.pos_ris, n, m), rng);
    ch.h_ru = as_row(draw_rician(1, n, scn.kappa, ch.pl_ru, los_matrix(scn.los, scn.pos_ris, scn.pos_ue, 1, n), rng));
    ch.h_re = as_row(draw_rician(1, n, scn.kappa, ch.pl_re, los_matrix(scn.los, scn.pos_ris, scn.pos_eve, 1, n), rng));
    return ch;
}

}  // namespace malris
