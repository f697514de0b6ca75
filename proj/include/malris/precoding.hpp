#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "malris/cmatrix.hpp"

namespace malris {

// RIS phase shifts theta_n; the reflection matrix is diag(exp(j theta_n)).
struct RISPhases {
    std::vector<double> theta;

    static RISPhases zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
    std::size_t size() const noexcept { return theta.size(); }
    CVector phasors() const;
    RISPhases subset(std::span<const std::size_t> indices) const;
};

struct Beamformer {
    CVector x;           // length M
    double power = 0.0;  // ||x||^2
};

class DegenerateChannel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// H_tx * x, the signal arriving at each RIS element.
CVector incident_signal(const CMatrix& h_tx, const Beamformer& bf);

// x = sqrt(p_bs) * v / ||v|| with v = H_br^H Theta^H h_ru^H.
// Throws DegenerateChannel when v = 0.
Beamformer mrt_beamformer(const CMatrix& h_br, const RISPhases& phases, std::span<const cplx> h_ru,
                          double p_bs);

// theta_n = -arg(h_ru[n] * (H_br x)[n]); elements with zero contribution get 0.
RISPhases cophase(const CMatrix& h_br, std::span<const cplx> h_ru, const Beamformer& bf);

// h_rx * diag(exp(j theta)) * h_tx * x. Throws std::invalid_argument on a
// dimension mismatch. An empty element set yields 0.
cplx effective_gain(std::span<const cplx> h_rx, const RISPhases& phases, const CMatrix& h_tx,
                    const Beamformer& bf);

struct JointSolution {
    RISPhases phases;
    Beamformer beamformer;
    // |h_eff| after each (MRT, co-phase) alternation.
    std::vector<double> objective;
};

// Alternates MRT and co-phasing from theta = 0 until the relative gain in
// |h_eff| drops below `tol` or `max_iter` alternations have run.
JointSolution joint_optimize(const CMatrix& h_br, std::span<const cplx> h_ru, double p_bs,
                             double tol = 1e-6, int max_iter = 50);

}  // namespace malris
