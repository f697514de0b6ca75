#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "malris/random.hpp"
#include "malris/scenario.hpp"

namespace malris {

struct SlotRecord {
    int slot = 0;
    bool attack_active = false;
    double gamma_u = 0.0;
    double gamma_e = 0.0;
    double c_u = 0.0;
    double c_e = 0.0;
    double c_s = 0.0;
    double ber = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;

    bool operator==(const SlotRecord&) const = default;
};

// One trial: T slots, each with a fresh channel and a fresh joint
// optimisation. Slots t >= T/2 apply scn.attack to that slot's benign
// configuration.
std::vector<SlotRecord> run_timeline(const Scenario& scn, Rng& rng);

// Counter-mode splitmix64 mixing of (master, grid, trial). Injective in
// (grid, trial) for grid, trial < 2^32 at a fixed master seed.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t grid_index,
                                std::uint64_t trial_index);

enum class SweepAxis { rho, beta };
std::string to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

// Mean with a 95% half-width from the spread of per-trial values.
struct MeanEstimate {
    double mean = 0.0;
    double ci95 = 0.0;
};

struct BerEstimate {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;   // pooled errors / pooled bits
    double ci95 = 0.0;  // from per-trial BER spread
};

struct SweepPoint {
    double value = 0.0;
    BerEstimate ber_benign;
    BerEstimate ber_attack;
    // Attack-window means.
    MeanEstimate c_u;
    MeanEstimate c_e;
    MeanEstimate c_s;
    double p_out = 0.0;  // over pooled attack-window slots
    double p_out_ci95 = 0.0;
    std::uint64_t outage_samples = 0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::rho;
    std::vector<SweepPoint> points;
    long long n_sim = 0;
    std::uint64_t seed = 0;
};

// For every grid value runs n_sim timelines with the attack set to
// PowerSplit(value) (rho axis) or ElementSplit(value) (beta axis). Trial seeds
// come from derive_trial_seed(scn.seed, grid index, trial index); the result
// does not depend on `threads`.
SweepResult run_sweep(const Scenario& scn, SweepAxis axis, std::span<const double> values, long long n_sim,
                      unsigned threads = 1);

// Header plus one row per grid point.
void write_csv(const SweepResult& result, std::ostream& out);
void write_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace malris
