#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace malris {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

enum class AttackKind { benign, power_split, element_split };

struct AttackSpec {
    AttackKind kind = AttackKind::benign;
    double rho = 1.0;   // power fraction kept for the UE (power_split)
    double beta = 1.0;  // element fraction kept for the UE (element_split)
    bool operator==(const AttackSpec&) const = default;

    static AttackSpec benign() { return {}; }
    static AttackSpec power_split(double rho) { return {AttackKind::power_split, rho, 1.0}; }
    static AttackSpec element_split(double beta) { return {AttackKind::element_split, 1.0, beta}; }
};

enum class LosMode { steering_vector, all_ones };

struct LosSpec {
    LosMode mode = LosMode::steering_vector;
    double spacing = 0.5;  // element spacing in wavelengths
    bool operator==(const LosSpec&) const = default;
};

// What Eve receives from the (1 - rho) share under power splitting.
enum class LeakageModel {
    eve_cophased,  // share reflected coherently toward Eve
    ue_phases,     // share reaches Eve through the UE-optimised phases
};

enum class PartitionMode { contiguous, random };

// Phases applied to the UE subset under element splitting.
enum class SubsetPhases { benign, reoptimized };

struct Scenario {
    Vec2 pos_bs{0.0, 0.0};
    Vec2 pos_ris{50.0, 20.0};
    Vec2 pos_ue{75.0, 0.0};
    Vec2 pos_eve{50.0, -20.0};
    int M = 4;
    int N = 32;
    double p_bs_db = 10.0;
    double sigma2_u = 1e-7;
    double sigma2_e = 1e-7;
    double kappa = 5.0;
    double alpha = 3.0;
    int T = 50;
    double R_s = 1.0;
    AttackSpec attack = AttackSpec::power_split(0.5);
    long long n_sim = 10000;
    long long n_bits_per_slot = 20000;
    std::uint64_t seed = 1;

    LosSpec los{};
    LeakageModel leakage = LeakageModel::eve_cophased;
    PartitionMode partition = PartitionMode::contiguous;
    SubsetPhases subset_phases = SubsetPhases::benign;

    std::vector<double> rho_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> beta_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

    double p_bs_linear() const;

    bool operator==(const Scenario&) const = default;
};

// Raised for malformed configuration text and for invariant violations; the
// message names the offending key.
class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws ScenarioError describing the first violated invariant.
void validate(const Scenario& scn);

// Named configurations. "paper-default" is the reference geometry with
// P_BS = 10 dB and N = 32.
std::vector<std::string> preset_names();
Scenario preset(std::string_view name);
std::string describe_preset(std::string_view name);

// Parses a JSON object. Keys absent from the text keep the value of the base
// preset: the "preset" key if present, else `base_preset`. Unknown keys are
// errors.
Scenario load_scenario(std::string_view text, std::string_view base_preset = "paper-default");
Scenario load_scenario_file(const std::filesystem::path& path,
                            std::string_view base_preset = "paper-default");

// Inverse of load_scenario: load_scenario(serialize(s)) == s.
std::string serialize(const Scenario& scn);

// Applies a single `key=value` override using the same key names as the
// configuration file. Lists (grids, coordinates) are comma separated.
// The result is validated.
Scenario apply_override(const Scenario& scn, std::string_view key, std::string_view value);

// Known configuration keys, in file order.
const std::vector<std::string>& scenario_keys();

double distance(Vec2 a, Vec2 b);
// d^(-alpha); throws std::domain_error for d <= 0.
double path_loss(double d, double alpha);
double db_to_linear(double x_db);

std::string to_string(AttackKind kind);
std::string to_string(LosMode mode);
std::string to_string(LeakageModel model);
std::string to_string(PartitionMode mode);
std::string to_string(SubsetPhases phases);

}  // namespace malris
