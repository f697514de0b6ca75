#include "malris/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "malris/attacks.hpp"
#include "malris/channel.hpp"
#include "malris/metrics.hpp"
#include "malris/precoding.hpp"

namespace malris {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-trial sums; reduced in trial order so the sweep is thread-count
// independent.
struct TrialPartial {
    std::uint64_t errors_benign = 0;
    std::uint64_t bits_benign = 0;
    std::uint64_t errors_attack = 0;
    std::uint64_t bits_attack = 0;
    double sum_c_u = 0.0;
    double sum_c_e = 0.0;
    double sum_c_s = 0.0;
    std::uint64_t outages = 0;
    std::uint64_t attack_slots = 0;
};

TrialPartial summarize(const std::vector<SlotRecord>& slots, double r_s) {
    TrialPartial p;
    for (const auto& s : slots) {
        if (!s.attack_active) {
            p.errors_benign += s.bit_errors;
            p.bits_benign += s.bits;
            continue;
        }
        p.errors_attack += s.bit_errors;
        p.bits_attack += s.bits;
        p.sum_c_u += s.c_u;
        p.sum_c_e += s.c_e;
        p.sum_c_s += s.c_s;
        p.outages += s.c_s < r_s ? 1 : 0;
        ++p.attack_slots;
    }
    return p;
}

class Moments {
public:
    void add(double v) {
        ++n_;
        sum_ += v;
        sum_sq_ += v * v;
    }
    double mean() const { return n_ == 0 ? 0.0 : sum_ / static_cast<double>(n_); }
    double ci95() const {
        if (n_ < 2) return std::nan("");
        const double n = static_cast<double>(n_);
        const double var = std::max(0.0, (sum_sq_ - sum_ * sum_ / n) / (n - 1.0));
        return 1.96 * std::sqrt(var / n);
    }

private:
    std::uint64_t n_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

SweepPoint reduce(double value, std::span<const TrialPartial> trials) {
    SweepPoint pt;
    pt.value = value;
    Moments ber_b, ber_a, cu, ce, cs;
    std::uint64_t outages = 0;
    double sum_cu = 0.0, sum_ce = 0.0, sum_cs = 0.0;
    for (const auto& t : trials) {
        pt.ber_benign.bit_errors += t.errors_benign;
        pt.ber_benign.bits += t.bits_benign;
        pt.ber_attack.bit_errors += t.errors_attack;
        pt.ber_attack.bits += t.bits_attack;
        ber_b.add(static_cast<double>(t.errors_benign) / static_cast<double>(t.bits_benign));
        ber_a.add(static_cast<double>(t.errors_attack) / static_cast<double>(t.bits_attack));
        const double slots = static_cast<double>(t.attack_slots);
        cu.add(t.sum_c_u / slots);
        ce.add(t.sum_c_e / slots);
        cs.add(t.sum_c_s / slots);
        sum_cu += t.sum_c_u;
        sum_ce += t.sum_c_e;
        sum_cs += t.sum_c_s;
        outages += t.outages;
        pt.outage_samples += t.attack_slots;
    }
    pt.ber_benign.ber = static_cast<double>(pt.ber_benign.bit_errors) / static_cast<double>(pt.ber_benign.bits);
    pt.ber_attack.ber = static_cast<double>(pt.ber_attack.bit_errors) / static_cast<double>(pt.ber_attack.bits);
    pt.ber_benign.ci95 = ber_b.ci95();
    pt.ber_attack.ci95 = ber_a.ci95();

    const double n = static_cast<double>(pt.outage_samples);
    pt.c_u = {sum_cu / n, cu.ci95()};
    pt.c_e = {sum_ce / n, ce.ci95()};
    pt.c_s = {sum_cs / n, cs.ci95()};
    pt.p_out = static_cast<double>(outages) / n;
    pt.p_out_ci95 = 1.96 * std::sqrt(pt.p_out * (1.0 - pt.p_out) / n);
    return pt;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<SlotRecord> run_timeline(const Scenario& scn, Rng& rng) {
    validate(scn);
    const double p_bs = scn.p_bs_linear();
    const auto n_bits = static_cast<std::uint64_t>(scn.n_bits_per_slot);
    std::vector<SlotRecord> records;
    records.reserve(static_cast<std::size_t>(scn.T));
    for (int t = 0; t < scn.T; ++t) {
        const ChannelSet ch = generate_channel_set(scn, rng);
        const JointSolution sol = joint_optimize(ch.h_br, ch.h_ru, p_bs);

        SlotRecord rec;
        rec.slot = t;
        rec.attack_active = t >= scn.T / 2;
        const LinkRealization link = rec.attack_active
                                         ? apply_attack(scn, ch, sol.phases, sol.beamformer, rng)
                                         : apply_benign(ch, sol.phases, sol.beamformer, scn.sigma2_u);
        rec.gamma_u = link.gamma_u;
        rec.gamma_e = link.gamma_e;
        rec.c_u = shannon_capacity(link.gamma_u);
        rec.c_e = shannon_capacity(link.gamma_e);
        rec.c_s = secrecy_capacity(link.gamma_u, link.gamma_e);

        const BerResult ber = qpsk_ber_simulate(link.h_eff_u, scn.sigma2_u, n_bits, rng);
        rec.bit_errors = ber.bit_errors;
        rec.bits = ber.bits_total;
        rec.ber = ber.ber;
        records.push_back(rec);
    }
    return records;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t grid_index,
                                std::uint64_t trial_index) {
    const std::uint64_t counter = (grid_index << 32) + trial_index;
    return splitmix64(splitmix64(master_seed) ^ splitmix64(counter));
}

std::string to_string(SweepAxis axis) { return axis == SweepAxis::rho ? "rho" : "beta"; }

SweepAxis parse_axis(std::string_view name) {
    if (name == "rho") return SweepAxis::rho;
    if (name == "beta") return SweepAxis::beta;
    throw std::invalid_argument("axis must be 'rho' or 'beta' (got '" + std::string(name) + "')");
}

SweepResult run_sweep(const Scenario& scn, SweepAxis axis, std::span<const double> values, long long n_sim,
                      unsigned threads) {
    validate(scn);
    if (n_sim < 1) throw std::invalid_argument("run_sweep: n_sim must be >= 1");
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("run_sweep: grid value out of [0,1]");
    }

    const auto trials = static_cast<std::size_t>(n_sim);
    const std::size_t total = values.size() * trials;
    std::vector<TrialPartial> partials(total);
    std::vector<Scenario> per_point;
    per_point.reserve(values.size());
    for (double v : values) {
        Scenario s = scn;
        s.attack = axis == SweepAxis::rho ? AttackSpec::power_split(v) : AttackSpec::element_split(v);
        per_point.push_back(std::move(s));
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t item = next++; item < total; item = next++) {
            const std::size_t g = item / trials;
            const std::size_t t = item % trials;
            try {
                Rng rng(derive_trial_seed(scn.seed, g, t));
                partials[item] = summarize(run_timeline(per_point[g], rng), scn.R_s);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.axis = axis;
    result.n_sim = n_sim;
    result.seed = scn.seed;
    for (std::size_t g = 0; g < values.size(); ++g) {
        result.points.push_back(reduce(values[g], std::span(partials).subspan(g * trials, trials)));
    }
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "axis_name,axis_value,ber_benign,ber_attack,c_u_mean,c_e_mean,c_s_mean,p_out,p_out_ci95,n_sim,seed\n";
    const std::string axis = to_string(result.axis);
    for (const auto& p : result.points) {
        out << axis << ',' << fmt_double(p.value) << ',' << fmt_double(p.ber_benign.ber) << ','
            << fmt_double(p.ber_attack.ber) << ',' << fmt_double(p.c_u.mean) << ',' << fmt_double(p.c_e.mean)
            << ',' << fmt_double(p.c_s.mean) << ',' << fmt_double(p.p_out) << ',' << fmt_double(p.p_out_ci95)
            << ',' << result.n_sim << ',' << result.seed << '\n';
    }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace malris
