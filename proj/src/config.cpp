#include "doqf/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doqf/error.hpp"

namespace doqf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !std::isfinite(v))
        throw InvalidArgument("--" + key + ": expected a number, got '" + value + "'");
    return v;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
    // accept 1e8-style counts as long as they are exact integers
    const double v = to_double(key, value);
    if (v < 0 || v != std::floor(v) || v > 1.8e19)
        throw InvalidArgument("--" + key + ": expected a nonnegative integer, got '" + value + "'");
    if (value.find_first_of(".eE") == std::string::npos) return std::strtoull(value.c_str(), nullptr, 10);
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Command command_from_string(const std::string& s) {
    if (s == "gain") return Command::gain;
    if (s == "optimize") return Command::optimize;
    if (s == "simulate") return Command::simulate;
    if (s == "dmt") return Command::dmt;
    if (s == "dmt-verify") return Command::dmt_verify;
    throw InvalidArgument("unknown command '" + s + "'");
}

std::string to_string(Command c) {
    switch (c) {
        case Command::gain: return "gain";
        case Command::optimize: return "optimize";
        case Command::simulate: return "simulate";
        case Command::dmt: return "dmt";
        case Command::dmt_verify: return "dmt-verify";
    }
    return "unknown";
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "rate-bits", "t0",      "beta0",   "beta1",     "alpha0",  "alpha1",    "geometry", "exponent",
        "channel",   "rice-mean", "snr-db", "samples",  "seed",    "delta-exp", "r-grid",   "grid-step",
        "out",       "protocol"};
    return keys;
}

Settings parse_config_text(const std::string& text) {
    Settings s;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        s[key] = trim(line.substr(eq + 1));
    }
    return s;
}

Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream is(spec);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(trim(p));
    if (parts.size() == 1) return {to_double("range", parts[0])};
    if (parts.size() != 3) throw InvalidArgument("range '" + spec + "' must be A:B:STEP or a single value");
    const double a = to_double("range", parts[0]);
    const double b = to_double("range", parts[1]);
    const double step = to_double("range", parts[2]);
    if (!(step > 0.0)) throw InvalidArgument("range step must be positive");
    if (b < a) throw InvalidArgument("range end lies below its start");
    const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    if (n > 10'000'000) throw InvalidArgument("range '" + spec + "' has too many points");
    std::vector<double> v;
    for (long i = 0; i <= n; ++i) v.push_back(std::min(b, a + i * step));
    return v;
}

double RunConfig::rate_nats() const { return rate_bits * std::log(2.0); }

ProtocolParams RunConfig::protocol_params() const {
    if (!(t0 > 0.0 && t0 < 1.0)) throw InvalidArgument("--t0 must lie in (0,1)");
    ProtocolParams p;
    p.t0 = t0;
    p.rate = rate_nats();
    p.alpha0 = alpha0 ? *alpha0 : beta0;
    p.alpha1 = alpha1 ? *alpha1 : beta1.value_or(1.0 - beta0) / (1.0 - t0);
    p.validate();
    if (!p.power_feasible(1e-9))
        throw InvalidArgument("power split violates the budget beta0 + beta1 <= 1");
    return p;
}

LinkModels RunConfig::link_models() const {
    if (channel == FadingKind::rice) return geometry_to_rice_models(geometry, rice_mean);
    return geometry_to_models(geometry);
}

LinkConstants RunConfig::link_constants() const {
    const LinkModels m = link_models();
    return {density_at_zero(m.source_relay), density_at_zero(m.source_dest), density_at_zero(m.relay_dest)};
}

RunConfig resolve_run_config(Command command, const Settings& cli, const Settings& file) {
    Settings merged = file;
    for (const auto& [k, v] : cli) merged[normalize_key(k)] = v;
    const auto& keys = known_keys();
    for (const auto& [k, v] : merged)
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw InvalidArgument("unknown setting '" + k + "'");

    RunConfig c;
    c.command = command;
    c.snr_db = parse_range("10:40:5");
    c.r_grid = parse_range(command == Command::dmt_verify ? "0.05:0.95:0.05" : "0:1:0.01");
    auto get = [&](const std::string& k) -> const std::string* {
        auto it = merged.find(k);
        return it == merged.end() ? nullptr : &it->second;
    };
    if (auto v = get("rate-bits")) c.rate_bits = to_double("rate-bits", *v);
    if (auto v = get("t0")) c.t0 = to_double("t0", *v);
    if (auto v = get("beta0")) c.beta0 = to_double("beta0", *v);
    if (auto v = get("beta1")) c.beta1 = to_double("beta1", *v);
    if (auto v = get("alpha0")) c.alpha0 = to_double("alpha0", *v);
    if (auto v = get("alpha1")) c.alpha1 = to_double("alpha1", *v);
    if (auto v = get("geometry")) {
        std::vector<double> d;
        std::istringstream is(*v);
        std::string part;
        while (std::getline(is, part, ',')) d.push_back(to_double("geometry", trim(part)));
        if (d.size() != 3) throw InvalidArgument("--geometry expects d01,d12,d02");
        c.geometry.d01 = d[0];
        c.geometry.d12 = d[1];
        c.geometry.d02 = d[2];
    }
    if (auto v = get("exponent")) c.geometry.exponent = to_double("exponent", *v);
    if (auto v = get("channel")) {
        if (*v == "rayleigh") c.channel = FadingKind::rayleigh;
        else if (*v == "rice") c.channel = FadingKind::rice;
        else throw InvalidArgument("--channel must be rayleigh or rice");
    }
    if (auto v = get("rice-mean")) c.rice_mean = to_double("rice-mean", *v);
    if (auto v = get("protocol")) c.protocol = *v;
    if (auto v = get("snr-db")) c.snr_db = parse_range(*v);
    if (auto v = get("samples")) c.samples = to_count("samples", *v);
    if (auto v = get("seed")) c.seed = to_count("seed", *v);
    if (auto v = get("delta-exp")) c.delta_exp = to_double("delta-exp", *v);
    if (auto v = get("r-grid")) c.r_grid = parse_range(*v);
    if (auto v = get("grid-step")) c.grid_step = to_double("grid-step", *v);
    if (auto v = get("out")) c.out = *v;

    if (!(c.rate_bits >= 0.0)) throw InvalidArgument("--rate-bits must be nonnegative");
    if (c.samples == 0) throw InvalidArgument("--samples must be positive");
    if (!(c.grid_step > 0.0)) throw InvalidArgument("--grid-step must be positive");
    if (c.protocol != "all" && c.protocol != "doqf" && c.protocol != "df" && c.protocol != "cutset")
        throw InvalidArgument("--protocol must be doqf, df, cutset or all");
    for (double r : c.r_grid)
        if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("--r-grid values must lie in [0,1]");
    c.link_models();
    c.protocol_params();
    return c;
}

}  // namespace doqf
