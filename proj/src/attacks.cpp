#include "malris/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace malris {
namespace {

void require_fraction(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " out of [0,1]");
}

CVector gather(std::span<const cplx> v, std::span<const std::size_t> indices) {
    CVector out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(v[i]);
    return out;
}

// Co-phased sum over the selected elements toward the receiver behind h_rx.
cplx cophased_gain(const CMatrix& h_br, std::span<const cplx> h_rx, const Beamformer& bf) {
    return effective_gain(h_rx, cophase(h_br, h_rx, bf), h_br, bf);
}

}  // namespace

std::size_t ue_element_count(std::size_t n, double beta) {
    require_fraction(beta, "beta");
    const double k = std::floor(beta * static_cast<double>(n) + 0.5);
    return std::min(n, static_cast<std::size_t>(std::max(0.0, k)));
}

ElementPartition contiguous_partition(std::size_t n, double beta) {
    const std::size_t k = ue_element_count(n, beta);
    ElementPartition p;
    p.ue.resize(k);
    p.eve.resize(n - k);
    std::iota(p.ue.begin(), p.ue.end(), std::size_t{0});
    std::iota(p.eve.begin(), p.eve.end(), k);
    return p;
}

ElementPartition random_partition(std::size_t n, double beta, Rng& rng) {
    const std::size_t k = ue_element_count(n, beta);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    ElementPartition p;
    p.ue.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    p.eve.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(p.ue.begin(), p.ue.end());
    std::sort(p.eve.begin(), p.eve.end());
    return p;
}

LinkRealization apply_benign(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                             double sigma2_u) {
    LinkRealization out;
    out.h_eff_u = effective_gain(ch.h_ru, phases, ch.h_br, bf);
    out.gamma_u = std::norm(out.h_eff_u) / sigma2_u;
    out.partition.ue.resize(ch.h_ru.size());
    std::iota(out.partition.ue.begin(), out.partition.ue.end(), std::size_t{0});
    return out;
}

LinkRealization apply_power_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                  double rho, double sigma2_u, double sigma2_e, LeakageModel leakage) {
    require_fraction(rho, "rho");
    LinkRealization out = apply_benign(ch, phases, bf, sigma2_u);
    out.h_eff_u *= std::sqrt(rho);
    out.gamma_u = std::norm(out.h_eff_u) / sigma2_u;
    out.z = leakage == LeakageModel::eve_cophased ? cophased_gain(ch.h_br, ch.h_re, bf)
                                                  : effective_gain(ch.h_re, phases, ch.h_br, bf);
    out.gamma_e = (1.0 - rho) * std::norm(out.z) / sigma2_e;
    return out;
}

LinkRealization apply_element_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                    const ElementPartition& partition, double sigma2_u, double sigma2_e,
                                    SubsetPhases ue_phases) {
    const std::size_t n = ch.h_ru.size();
    if (partition.ue.size() + partition.eve.size() != n) {
        throw std::invalid_argument("apply_element_split: partition does not cover the RIS");
    }
    LinkRealization out;
    out.partition = partition;

    const CMatrix h_br_ue = ch.h_br.select_rows(partition.ue);
    const CVector h_ru_ue = gather(ch.h_ru, partition.ue);
    const RISPhases phases_ue = ue_phases == SubsetPhases::benign ? phases.subset(partition.ue)
                                                                   : cophase(h_br_ue, h_ru_ue, bf);
    out.h_eff_u = effective_gain(h_ru_ue, phases_ue, h_br_ue, bf);
    out.gamma_u = std::norm(out.h_eff_u) / sigma2_u;

    const CMatrix h_br_eve = ch.h_br.select_rows(partition.eve);
    const CVector h_re_eve = gather(ch.h_re, partition.eve);
    out.z = cophased_gain(h_br_eve, h_re_eve, bf);
    out.gamma_e = std::norm(out.z) / sigma2_e;
    return out;
}

LinkRealization apply_element_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                    double beta, double sigma2_u, double sigma2_e) {
    return apply_element_split(ch, phases, bf, contiguous_partition(ch.h_ru.size(), beta), sigma2_u,
                               sigma2_e);
}

LinkRealization apply_attack(const Scenario& scn, const ChannelSet& ch, const RISPhases& phases,
                             const Beamformer& bf, Rng& rng) {
    switch (scn.attack.kind) {
        case AttackKind::benign:
            return apply_benign(ch, phases, bf, scn.sigma2_u);
        case AttackKind::power_split:
            return apply_power_split(ch, phases, bf, scn.attack.rho, scn.sigma2_u, scn.sigma2_e, scn.leakage);
        case AttackKind::element_split: {
            const std::size_t n = ch.h_ru.size();
            const ElementPartition part = scn.partition == PartitionMode::random
                                              ? random_partition(n, scn.attack.beta, rng)
                                              : contiguous_partition(n, scn.attack.beta);
            return apply_element_split(ch, phases, bf, part, scn.sigma2_u, scn.sigma2_e, scn.subset_phases);
        }
    }
    throw std::logic_error("apply_attack: unknown attack kind");
}

}  // namespace malris
