#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "malris/harness.hpp"
#include "malris/metrics.hpp"

using namespace malris;

namespace {

Scenario quick_scenario() {
    Scenario s = preset("paper-default");
    s.n_bits_per_slot = 200;
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::string csv_text(const SweepResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("timeline switches to the attack at T/2") {
    Scenario s = quick_scenario();
    Rng rng(1);
    const auto records = run_timeline(s, rng);
    REQUIRE(records.size() == 50);
    for (const auto& r : records) {
        CHECK(r.attack_active == (r.slot >= 25));
        CHECK(r.c_u == shannon_capacity(r.gamma_u));
        CHECK(r.c_e == shannon_capacity(r.gamma_e));
        CHECK(r.c_s == secrecy_capacity(r.gamma_u, r.gamma_e));
        CHECK(r.bits == 200);
        CHECK(r.ber == static_cast<double>(r.bit_errors) / 200.0);
        if (!r.attack_active) CHECK(r.gamma_e == 0.0);
        if (r.attack_active) CHECK(r.gamma_e > 0.0);
    }
}

TEST_CASE("benign timeline has no eavesdropper signal") {
    Scenario s = quick_scenario();
    s.attack = AttackSpec::benign();
    Rng rng(2);
    for (const auto& r : run_timeline(s, rng)) {
        CHECK(r.gamma_e == 0.0);
        CHECK(r.c_s == r.c_u);
    }
}

TEST_CASE("timeline is deterministic in the seed") {
    for (auto kind : {AttackKind::power_split, AttackKind::element_split}) {
        Scenario s = quick_scenario();
        s.attack = {kind, 0.3, 0.3};
        s.partition = PartitionMode::random;
        Rng a(3), b(3), c(4);
        const auto ra = run_timeline(s, a);
        CHECK(ra == run_timeline(s, b));
        CHECK(ra != run_timeline(s, c));
    }
}

TEST_CASE("trial seed derivation") {
    CHECK(derive_trial_seed(42, 3, 7) == derive_trial_seed(42, 3, 7));
    CHECK(derive_trial_seed(42, 3, 7) != derive_trial_seed(42, 7, 3));
    CHECK(derive_trial_seed(42, 0, 0) != derive_trial_seed(43, 0, 0));

    Rng rng(5);
    int collisions = 0;
    for (int i = 0; i < 1000000; ++i) {
        const std::uint64_t s = rng();
        collisions += derive_trial_seed(s, 0, 0) == derive_trial_seed(s, 0, 1);
    }
    CHECK(collisions == 0);

    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t g = 0; g < 20; ++g) {
        for (std::uint64_t t = 0; t < 5000; ++t) seen.insert(derive_trial_seed(9, g, t));
    }
    CHECK(seen.size() == 100000);
}

TEST_CASE("low 16 bits of trial seeds are uniform (chi-square, 1%)") {
    const int n = 100000, bins = 65536;
    std::vector<int> counts(bins, 0);
    for (int t = 0; t < n; ++t) ++counts[derive_trial_seed(12345, 0, static_cast<std::uint64_t>(t)) & 0xFFFF];
    const double expected = static_cast<double>(n) / bins;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // Wilson-Hilferty upper 1% point for 65535 degrees of freedom
    const double df = bins - 1;
    const double z = 2.3263478740408408;
    const double critical = df * std::pow(1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df)), 3);
    CHECK(chi2 < critical);
}

TEST_CASE("sweep at rho = 1 leaves the BER unchanged") {
    Scenario s = quick_scenario();
    s.sigma2_u = 3e-6;  // low enough SNR for errors in both windows
    s.n_bits_per_slot = 2000;
    const std::vector<double> grid = {1.0};
    const SweepResult r = run_sweep(s, SweepAxis::rho, grid, 40);
    const auto& p = r.points.at(0);
    const double pooled = static_cast<double>(p.ber_benign.bit_errors + p.ber_attack.bit_errors) /
                          static_cast<double>(p.ber_benign.bits + p.ber_attack.bits);
    CHECK(pooled > 1e-4);
    const double sigma = std::sqrt(pooled * (1 - pooled) * (1.0 / p.ber_benign.bits + 1.0 / p.ber_attack.bits));
    CHECK(std::abs(p.ber_attack.ber - p.ber_benign.ber) <= 3.0 * sigma);
    CHECK(p.c_e.mean == 0.0);
    CHECK(p.c_s.mean == doctest::Approx(p.c_u.mean).epsilon(1e-12));
}

TEST_CASE("sweep aggregates use every slot") {
    Scenario s = quick_scenario();
    const std::vector<double> grid = {0.2, 0.7};
    const SweepResult r = run_sweep(s, SweepAxis::beta, grid, 7);
    REQUIRE(r.points.size() == 2);
    for (const auto& p : r.points) {
        CHECK(p.outage_samples == 7u * 25u);
        CHECK(p.ber_benign.bits == 7u * 25u * 200u);
        CHECK(p.ber_attack.bits == 7u * 25u * 200u);
        CHECK(p.p_out_ci95 == doctest::Approx(1.96 * std::sqrt(p.p_out * (1 - p.p_out) / 175.0)));
    }
    CHECK(r.n_sim == 7);
    CHECK(r.seed == s.seed);
}

TEST_CASE("sweep is independent of the thread count") {
    Scenario s = quick_scenario();
    s.seed = 77;
    const std::vector<double> grid = {0.0, 0.5, 1.0};
    const std::string one = csv_text(run_sweep(s, SweepAxis::rho, grid, 9, 1));
    CHECK(one == csv_text(run_sweep(s, SweepAxis::rho, grid, 9, 4)));
    CHECK(one == csv_text(run_sweep(s, SweepAxis::rho, grid, 9, 64)));
}

TEST_CASE("sweep trends on paper-default") {
    Scenario s = quick_scenario();
    const std::vector<double> rho = {0.1, 0.9};
    const SweepResult r = run_sweep(s, SweepAxis::rho, rho, 40);
    CHECK(r.points[0].p_out > r.points[1].p_out);

    const std::vector<double> beta = {0.9};
    Scenario big = s;
    big.N = 64;
    const double c32 = run_sweep(s, SweepAxis::beta, beta, 40).points[0].c_u.mean;
    const double c64 = run_sweep(big, SweepAxis::beta, beta, 40).points[0].c_u.mean;
    CHECK(c64 > c32);
}

TEST_CASE("attack window BER is no better than the benign window") {
    Scenario s = quick_scenario();
    s.sigma2_u = 1e-6;
    s.n_bits_per_slot = 2000;
    const std::vector<double> grid = {0.4, 0.8};
    for (auto axis : {SweepAxis::rho, SweepAxis::beta}) {
        for (const auto& p : run_sweep(s, axis, grid, 100).points) {
            CHECK(p.ber_attack.ber >= p.ber_benign.ber - 3.0 * std::hypot(p.ber_attack.ci95, p.ber_benign.ci95) / 1.96);
        }
    }
}

TEST_CASE("sweep rejects invalid input") {
    Scenario s = quick_scenario();
    const std::vector<double> bad = {1.2};
    CHECK_THROWS_AS(run_sweep(s, SweepAxis::rho, bad, 2), std::invalid_argument);
    const std::vector<double> ok = {0.5};
    CHECK_THROWS_AS(run_sweep(s, SweepAxis::rho, ok, 0), std::invalid_argument);
    s.pos_ue = s.pos_ris;
    CHECK_THROWS_AS(run_sweep(s, SweepAxis::rho, ok, 3, 2), std::domain_error);
}

TEST_CASE("csv layout") {
    SweepResult empty;
    CHECK(csv_text(empty) ==
          "axis_name,axis_value,ber_benign,ber_attack,c_u_mean,c_e_mean,c_s_mean,p_out,p_out_ci95,n_sim,seed\n");

    Scenario s = quick_scenario();
    s.seed = 18446744073709551557ULL;
    const std::vector<double> grid = {0.3};
    const SweepResult one = run_sweep(s, SweepAxis::beta, grid, 3);
    const auto lines = lines_of(csv_text(one));
    REQUIRE(lines.size() == 2);
    const auto cells = split(lines[1]);
    REQUIRE(cells.size() == 11);
    CHECK(cells[0] == "beta");
    CHECK(cells[9] == "3");
    CHECK(cells[10] == "18446744073709551557");
    CHECK(csv_text(one).back() == '\n');
}

TEST_CASE("csv round-trips numeric fields") {
    Scenario s = quick_scenario();
    s.sigma2_u = 1e-6;
    const SweepResult r = run_sweep(s, SweepAxis::rho, s.rho_grid, 4);
    const auto lines = lines_of(csv_text(r));
    REQUIRE(lines.size() == r.points.size() + 1);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto c = split(lines[i + 1]);
        const auto& p = r.points[i];
        const double want[] = {p.value, p.ber_benign.ber, p.ber_attack.ber, p.c_u.mean, p.c_e.mean,
                               p.c_s.mean, p.p_out, p.p_out_ci95};
        for (int k = 0; k < 8; ++k) {
            const double got = std::stod(c[static_cast<std::size_t>(k) + 1]);
            CHECK(std::abs(got - want[k]) <= 5e-12 * std::abs(want[k]));
        }
    }
}

TEST_CASE("csv to a file") {
    const auto dir = std::filesystem::temp_directory_path() / "malris_test_csv";
    std::filesystem::create_directories(dir);
    SweepResult r;
    r.points.push_back({});
    write_csv(r, dir / "out.csv");
    std::ifstream in(dir / "out.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(lines_of(buf.str()).size() == 2);
    CHECK_THROWS_AS(write_csv(r, dir / "missing" / "out.csv"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
