#include "malris/precoding.hpp"

#include <cmath>

#include "malris/kernels.hpp"

namespace malris {

CVector RISPhases::phasors() const {
    CVector out(theta.size());
    for (std::size_t n = 0; n < theta.size(); ++n) out[n] = std::polar(1.0, theta[n]);
    return out;
}

RISPhases RISPhases::subset(std::span<const std::size_t> indices) const {
    RISPhases out;
    out.theta.reserve(indices.size());
    for (std::size_t i : indices) out.theta.push_back(theta.at(i));
    return out;
}

CVector incident_signal(const CMatrix& h_tx, const Beamformer& bf) {
    if (h_tx.cols() != bf.x.size()) throw std::invalid_argument("incident_signal: beamformer length mismatch");
    const auto& k = kernels::active();
    CVector g(h_tx.rows());
    for (std::size_t n = 0; n < h_tx.rows(); ++n) g[n] = k.dot(h_tx.row(n).data(), bf.x.data(), bf.x.size());
    return g;
}

Beamformer mrt_beamformer(const CMatrix& h_br, const RISPhases& phases, std::span<const cplx> h_ru,
                          double p_bs) {
    const std::size_t n_el = h_br.rows();
    if (phases.size() != n_el || h_ru.size() != n_el) {
        throw std::invalid_argument("mrt_beamformer: dimension mismatch");
    }
    CVector weights = phases.phasors();
    kernels::active().multiply(h_ru.data(), weights.data(), weights.data(), n_el);

    // v = conj(weights^T H_br)
    CVector v(h_br.cols(), cplx{});
    for (std::size_t n = 0; n < n_el; ++n) {
        const auto row = h_br.row(n);
        for (std::size_t m = 0; m < v.size(); ++m) v[m] += weights[n] * row[m];
    }
    double norm2 = 0.0;
    for (auto& e : v) {
        e = std::conj(e);
        norm2 += std::norm(e);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DegenerateChannel("degenerate channel: zero cascaded channel");

    const double scale = std::sqrt(p_bs) / std::sqrt(norm2);
    for (auto& e : v) e *= scale;
    return {std::move(v), p_bs};
}

RISPhases cophase(const CMatrix& h_br, std::span<const cplx> h_ru, const Beamformer& bf) {
    if (h_ru.size() != h_br.rows()) throw std::invalid_argument("cophase: dimension mismatch");
    CVector c = incident_signal(h_br, bf);
    kernels::active().multiply(h_ru.data(), c.data(), c.data(), c.size());
    RISPhases out = RISPhases::zeros(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] != cplx{}) out.theta[n] = -std::arg(c[n]);
    }
    return out;
}

cplx effective_gain(std::span<const cplx> h_rx, const RISPhases& phases, const CMatrix& h_tx,
                    const Beamformer& bf) {
    if (h_rx.size() != phases.size() || h_rx.size() != h_tx.rows()) {
        throw std::invalid_argument("effective_gain: dimension mismatch");
    }
    const auto& k = kernels::active();
    const CVector g = incident_signal(h_tx, bf);
    CVector a = phases.phasors();
    k.multiply(h_rx.data(), a.data(), a.data(), a.size());
    return k.dot(a.data(), g.data(), a.size());
}

JointSolution joint_optimize(const CMatrix& h_br, std::span<const cplx> h_ru, double p_bs, double tol,
                             int max_iter) {
    JointSolution sol;
    sol.phases = RISPhases::zeros(h_br.rows());
    for (int it = 0; it < max_iter; ++it) {
        sol.beamformer = mrt_beamformer(h_br, sol.phases, h_ru, p_bs);
        sol.phases = cophase(h_br, h_ru, sol.beamformer);
        const double value = std::abs(effective_gain(h_ru, sol.phases, h_br, sol.beamformer));
        const bool converged = !sol.objective.empty() && value - sol.objective.back() < tol * sol.objective.back();
        sol.objective.push_back(value);
        if (converged) break;
    }
    return sol;
}

}  // namespace malris
