#include "malris/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace malris {
namespace {

using json = nlohmann::ordered_json;

enum class KeyType { integer, unsigned_integer, real, real_list, point, text };

struct KeyInfo {
    const char* name;
    KeyType type;
};

constexpr KeyInfo kKeys[] = {
    {"pos_bs", KeyType::point},
    {"pos_ris", KeyType::point},
    {"pos_ue", KeyType::point},
    {"pos_eve", KeyType::point},
    {"M", KeyType::integer},
    {"N", KeyType::integer},
    {"p_bs_db", KeyType::real},
    {"sigma2_u", KeyType::real},
    {"sigma2_e", KeyType::real},
    {"kappa", KeyType::real},
    {"alpha", KeyType::real},
    {"T", KeyType::integer},
    {"R_s", KeyType::real},
    {"attack", KeyType::text},
    {"rho", KeyType::real},
    {"beta", KeyType::real},
    {"n_sim", KeyType::integer},
    {"n_bits_per_slot", KeyType::integer},
    {"seed", KeyType::unsigned_integer},
    {"los", KeyType::text},
    {"los_spacing", KeyType::real},
    {"leakage", KeyType::text},
    {"partition", KeyType::text},
    {"subset_phases", KeyType::text},
    {"rho_grid", KeyType::real_list},
    {"beta_grid", KeyType::real_list},
};

const KeyInfo* find_key(std::string_view name) {
    for (const auto& k : kKeys) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

template <typename Enum, std::size_t K>
Enum parse_enum(const std::string& key, const std::string& text,
                const std::pair<const char*, Enum> (&table)[K]) {
    for (const auto& [name, value] : table) {
        if (text == name) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : table) {
        if (!allowed.empty()) allowed += ", ";
        allowed += name;
    }
    fail(key + ": unknown value '" + text + "' (expected one of " + allowed + ")");
}

constexpr std::pair<const char*, AttackKind> kAttackNames[] = {
    {"benign", AttackKind::benign},
    {"power_split", AttackKind::power_split},
    {"element_split", AttackKind::element_split},
};
constexpr std::pair<const char*, LosMode> kLosNames[] = {
    {"steering_vector", LosMode::steering_vector},
    {"all_ones", LosMode::all_ones},
};
constexpr std::pair<const char*, LeakageModel> kLeakageNames[] = {
    {"eve_cophased", LeakageModel::eve_cophased},
    {"ue_phases", LeakageModel::ue_phases},
};
constexpr std::pair<const char*, PartitionMode> kPartitionNames[] = {
    {"contiguous", PartitionMode::contiguous},
    {"random", PartitionMode::random},
};
constexpr std::pair<const char*, SubsetPhases> kSubsetNames[] = {
    {"benign", SubsetPhases::benign},
    {"reoptimized", SubsetPhases::reoptimized},
};

template <typename Enum, std::size_t K>
std::string enum_name(Enum value, const std::pair<const char*, Enum> (&table)[K]) {
    for (const auto& [name, v] : table) {
        if (v == value) return name;
    }
    return "?";
}

double get_real(const json& j, const std::string& key) {
    if (!j.is_number()) fail(key + ": expected a number");
    return j.get<double>();
}

long long get_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) fail(key + ": expected an integer");
    return j.get<long long>();
}

std::uint64_t get_unsigned(const json& j, const std::string& key) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return j.get<std::uint64_t>();
    fail(key + ": expected a non-negative integer");
}

Vec2 get_point(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(key + ": expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> get_list(const json& j, const std::string& key) {
    if (!j.is_array()) fail(key + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) fail(key + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string get_text(const json& j, const std::string& key) {
    if (!j.is_string()) fail(key + ": expected a string");
    return j.get<std::string>();
}

int narrow_int(long long v, const std::string& key) {
    if (v < -(1LL << 31) || v > (1LL << 31) - 1) fail(key + " out of range");
    return static_cast<int>(v);
}

void assign(Scenario& s, const std::string& key, const json& v) {
    if (key == "pos_bs") s.pos_bs = get_point(v, key);
    else if (key == "pos_ris") s.pos_ris = get_point(v, key);
    else if (key == "pos_ue") s.pos_ue = get_point(v, key);
    else if (key == "pos_eve") s.pos_eve = get_point(v, key);
    else if (key == "M") s.M = narrow_int(get_int(v, key), key);
    else if (key == "N") s.N = narrow_int(get_int(v, key), key);
    else if (key == "p_bs_db") s.p_bs_db = get_real(v, key);
    else if (key == "sigma2_u") s.sigma2_u = get_real(v, key);
    else if (key == "sigma2_e") s.sigma2_e = get_real(v, key);
    else if (key == "kappa") s.kappa = get_real(v, key);
    else if (key == "alpha") s.alpha = get_real(v, key);
    else if (key == "T") s.T = narrow_int(get_int(v, key), key);
    else if (key == "R_s") s.R_s = get_real(v, key);
    else if (key == "attack") s.attack.kind = parse_enum(key, get_text(v, key), kAttackNames);
    else if (key == "rho") s.attack.rho = get_real(v, key);
    else if (key == "beta") s.attack.beta = get_real(v, key);
    else if (key == "n_sim") s.n_sim = get_int(v, key);
    else if (key == "n_bits_per_slot") s.n_bits_per_slot = get_int(v, key);
    else if (key == "seed") s.seed = get_unsigned(v, key);
    else if (key == "los") s.los.mode = parse_enum(key, get_text(v, key), kLosNames);
    else if (key == "los_spacing") s.los.spacing = get_real(v, key);
    else if (key == "leakage") s.leakage = parse_enum(key, get_text(v, key), kLeakageNames);
    else if (key == "partition") s.partition = parse_enum(key, get_text(v, key), kPartitionNames);
    else if (key == "subset_phases") s.subset_phases = parse_enum(key, get_text(v, key), kSubsetNames);
    else if (key == "rho_grid") s.rho_grid = get_list(v, key);
    else if (key == "beta_grid") s.beta_grid = get_list(v, key);
    else fail("unknown key '" + key + "'");
}

json to_json(const Scenario& s) {
    json j;
    auto point = [](Vec2 p) { return json::array({p.x, p.y}); };
    j["pos_bs"] = point(s.pos_bs);
    j["pos_ris"] = point(s.pos_ris);
    j["pos_ue"] = point(s.pos_ue);
    j["pos_eve"] = point(s.pos_eve);
    j["M"] = s.M;
    j["N"] = s.N;
    j["p_bs_db"] = s.p_bs_db;
    j["sigma2_u"] = s.sigma2_u;
    j["sigma2_e"] = s.sigma2_e;
    j["kappa"] = s.kappa;
    j["alpha"] = s.alpha;
    j["T"] = s.T;
    j["R_s"] = s.R_s;
    j["attack"] = to_string(s.attack.kind);
    j["rho"] = s.attack.rho;
    j["beta"] = s.attack.beta;
    j["n_sim"] = s.n_sim;
    j["n_bits_per_slot"] = s.n_bits_per_slot;
    j["seed"] = s.seed;
    j["los"] = to_string(s.los.mode);
    j["los_spacing"] = s.los.spacing;
    j["leakage"] = to_string(s.leakage);
    j["partition"] = to_string(s.partition);
    j["subset_phases"] = to_string(s.subset_phases);
    j["rho_grid"] = s.rho_grid;
    j["beta_grid"] = s.beta_grid;
    return j;
}

void require_unit_interval(double v, const std::string& key) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << key << " out of [0,1] (got " << v << ")";
        fail(os.str());
    }
}

void require_finite(double v, const std::string& key) {
    if (!std::isfinite(v)) fail(key + " must be finite");
}

double parse_double(std::string_view text, const std::string& key) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    while (first != last && *first == ' ') ++first;
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail(key + ": '" + std::string(text) + "' is not a number");
    return v;
}

std::vector<double> parse_list(std::string_view text, const std::string& key) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(text.substr(start, comma - start), key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

double Scenario::p_bs_linear() const { return db_to_linear(p_bs_db); }

void validate(const Scenario& s) {
    for (const auto& [p, key] : {std::pair{s.pos_bs, "pos_bs"}, std::pair{s.pos_ris, "pos_ris"},
                                 std::pair{s.pos_ue, "pos_ue"}, std::pair{s.pos_eve, "pos_eve"}}) {
        require_finite(p.x, key);
        require_finite(p.y, key);
    }
    if (s.M < 1) fail("M must be >= 1");
    if (s.N < 1) fail("N must be >= 1");
    if (s.T < 2 || s.T % 2 != 0) fail("T must be even and >= 2");
    require_finite(s.p_bs_db, "p_bs_db");
    if (!(s.sigma2_u > 0.0) || !std::isfinite(s.sigma2_u)) fail("sigma2_u must be > 0");
    if (!(s.sigma2_e > 0.0) || !std::isfinite(s.sigma2_e)) fail("sigma2_e must be > 0");
    if (!(s.kappa >= 0.0) || !std::isfinite(s.kappa)) fail("kappa must be finite and >= 0");
    if (!(s.alpha > 0.0) || !std::isfinite(s.alpha)) fail("alpha must be > 0");
    if (!(s.R_s >= 0.0) || !std::isfinite(s.R_s)) fail("R_s must be >= 0");
    require_unit_interval(s.attack.rho, "rho");
    require_unit_interval(s.attack.beta, "beta");
    if (s.n_sim < 1) fail("n_sim must be >= 1");
    if (s.n_bits_per_slot < 2 || s.n_bits_per_slot % 2 != 0) {
        fail("n_bits_per_slot must be even and >= 2");
    }
    if (!(s.los.spacing > 0.0) || !std::isfinite(s.los.spacing)) fail("los_spacing must be > 0");
    for (double v : s.rho_grid) require_unit_interval(v, "rho_grid");
    for (double v : s.beta_grid) require_unit_interval(v, "beta_grid");
}

std::vector<std::string> preset_names() { return {"paper-default", "paper-p20", "paper-n64"}; }

Scenario preset(std::string_view name) {
    Scenario s;
    if (name == "paper-default") return s;
    if (name == "paper-p20") {
        s.p_bs_db = 20.0;
        return s;
    }
    if (name == "paper-n64") {
        s.N = 64;
        return s;
    }
    fail("unknown preset '" + std::string(name) + "'");
}

std::string describe_preset(std::string_view name) {
    const Scenario s = preset(name);
    std::ostringstream os;
    auto pt = [](Vec2 p) {
        std::ostringstream o;
        o << "(" << p.x << "," << p.y << ")";
        return o.str();
    };
    os << name << "\n"
       << "  BS location        " << pt(s.pos_bs) << "\n"
       << "  RIS location       " << pt(s.pos_ris) << "\n"
       << "  UE location        " << pt(s.pos_ue) << "\n"
       << "  Eve location       " << pt(s.pos_eve) << "\n"
       << "  P_BS (dB)          " << s.p_bs_db << "\n"
       << "  RIS elements N     " << s.N << "\n"
       << "  BS antennas M      " << s.M << "\n"
       << "  noise sigma2_u/e   " << s.sigma2_u << " / " << s.sigma2_e << "\n"
       << "  Rician kappa       " << s.kappa << "\n"
       << "  path-loss alpha    " << s.alpha << "\n"
       << "  slots T            " << s.T << "\n"
       << "  target R_s         " << s.R_s << " bps/Hz\n"
       << "  n_sim              " << s.n_sim << "\n"
       << "  n_bits_per_slot    " << s.n_bits_per_slot << "\n";
    return os.str();
}

Scenario load_scenario(std::string_view text, std::string_view base_preset) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail(std::string("configuration parse error: ") + e.what());
    }
    if (!j.is_object()) fail("configuration must be a JSON object");

    std::string base(base_preset);
    if (auto it = j.find("preset"); it != j.end()) base = get_text(*it, "preset");
    Scenario s = preset(base);
    for (const auto& [key, value] : j.items()) {
        if (key == "preset") continue;
        assign(s, key, value);
    }
    validate(s);
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path, std::string_view base_preset) {
    std::ifstream in(path);
    if (!in) fail("cannot read configuration file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str(), base_preset);
}

std::string serialize(const Scenario& scn) { return to_json(scn).dump(2) + "\n"; }

Scenario apply_override(const Scenario& scn, std::string_view key, std::string_view value) {
    const std::string k(key);
    const KeyInfo* info = find_key(key);
    if (info == nullptr) fail("unknown key '" + k + "'");
    json v;
    switch (info->type) {
        case KeyType::integer:
        case KeyType::unsigned_integer: {
            long long iv = 0;
            unsigned long long uv = 0;
            const auto* last = value.data() + value.size();
            if (info->type == KeyType::integer) {
                auto [p, ec] = std::from_chars(value.data(), last, iv);
                if (ec != std::errc{} || p != last) fail(k + ": '" + std::string(value) + "' is not an integer");
                v = iv;
            } else {
                auto [p, ec] = std::from_chars(value.data(), last, uv);
                if (ec != std::errc{} || p != last) fail(k + ": '" + std::string(value) + "' is not an unsigned integer");
                v = static_cast<std::uint64_t>(uv);
            }
            break;
        }
        case KeyType::real: v = parse_double(value, k); break;
        case KeyType::real_list: v = parse_list(value, k); break;
        case KeyType::point: {
            auto xs = parse_list(value, k);
            if (xs.size() != 2) fail(k + ": expected x,y");
            v = xs;
            break;
        }
        case KeyType::text: v = std::string(value); break;
    }
    Scenario out = scn;
    assign(out, k, v);
    validate(out);
    return out;
}

const std::vector<std::string>& scenario_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& k : kKeys) out.emplace_back(k.name);
        return out;
    }();
    return keys;
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double path_loss(double d, double alpha) {
    if (!(d > 0.0)) throw std::domain_error("path_loss: co-located nodes unsupported (d = 0)");
    return std::pow(d, -alpha);
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

std::string to_string(AttackKind kind) { return enum_name(kind, kAttackNames); }
std::string to_string(LosMode mode) { return enum_name(mode, kLosNames); }
std::string to_string(LeakageModel model) { return enum_name(model, kLeakageNames); }
std::string to_string(PartitionMode mode) { return enum_name(mode, kPartitionNames); }
std::string to_string(SubsetPhases phases) { return enum_name(phases, kSubsetNames); }

}  // namespace malris
