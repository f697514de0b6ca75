#pragma once

#include <cstddef>
#include <vector>

#include "malris/channel.hpp"
#include "malris/precoding.hpp"
#include "malris/random.hpp"
#include "malris/scenario.hpp"

namespace malris {

// RIS element indices serving the UE and those hijacked for Eve. Disjoint,
// union {0..N-1}.
struct ElementPartition {
    std::vector<std::size_t> ue;
    std::vector<std::size_t> eve;
};

struct LinkRealization {
    cplx h_eff_u{};
    double gamma_u = 0.0;
    double gamma_e = 0.0;
    cplx z{};  // leakage reaching Eve; 0 when benign
    ElementPartition partition;
};

// round(beta * N) with halves rounded up, clamped to [0, N].
std::size_t ue_element_count(std::size_t n, double beta);
ElementPartition contiguous_partition(std::size_t n, double beta);
ElementPartition random_partition(std::size_t n, double beta, Rng& rng);

LinkRealization apply_benign(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                             double sigma2_u);

// UE gets sqrt(rho) of the benign cascade. Eve gets sqrt(1 - rho) * z where z
// is chosen by `leakage`.
LinkRealization apply_power_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                  double rho, double sigma2_u, double sigma2_e,
                                  LeakageModel leakage = LeakageModel::eve_cophased);

// UE receives through the partition's UE elements only; the Eve elements are
// co-phased toward Eve.
LinkRealization apply_element_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                    const ElementPartition& partition, double sigma2_u, double sigma2_e,
                                    SubsetPhases ue_phases = SubsetPhases::benign);

// Convenience overload using the contiguous partition.
LinkRealization apply_element_split(const ChannelSet& ch, const RISPhases& phases, const Beamformer& bf,
                                    double beta, double sigma2_u, double sigma2_e);

// Applies scn.attack with the scenario's model options. A random partition
// draws from `rng`; no other mode touches it.
LinkRealization apply_attack(const Scenario& scn, const ChannelSet& ch, const RISPhases& phases,
                             const Beamformer& bf, Rng& rng);

}  // namespace malris
