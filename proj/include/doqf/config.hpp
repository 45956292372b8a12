#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doqf/channel.hpp"
#include "doqf/gain.hpp"

namespace doqf {

enum class Command { gain, optimize, simulate, dmt, dmt_verify };

Command command_from_string(const std::string& s);
std::string to_string(Command c);

// Raw key -> value settings; keys use the long flag spelling (rate-bits, snr-db, ...).
using Settings = std::map<std::string, std::string>;

// Flat key=value lines, '#' starts a comment. Underscores in keys are read as dashes.
Settings parse_config_text(const std::string& text);
Settings read_config_file(const std::string& path);

// Every key accepted on the command line and in config files.
const std::vector<std::string>& known_keys();

// Inclusive "A:B:STEP" or a single number.
std::vector<double> parse_range(const std::string& spec);

struct RunConfig {
    Command command = Command::gain;
    double rate_bits = 2.0;
    double t0 = 0.5;
    double beta0 = 0.5;
    std::optional<double> beta1;   // default 1 - beta0
    std::optional<double> alpha0;  // overrides beta0
    std::optional<double> alpha1;  // overrides beta1 / t1
    NetworkGeometry geometry;
    FadingKind channel = FadingKind::rayleigh;
    double rice_mean = 0.0;
    std::string protocol = "all";
    std::vector<double> snr_db;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::optional<double> delta_exp;
    std::vector<double> r_grid;
    double grid_step = 0.005;
    std::optional<std::string> out;
    unsigned workers = 0;  // 0 picks the environment default

    double rate_nats() const;
    ProtocolParams protocol_params() const;
    LinkModels link_models() const;
    LinkConstants link_constants() const;
};

// Command-line values win over config-file values, which win over defaults.
RunConfig resolve_run_config(Command command, const Settings& cli, const Settings& file = {});

}  // namespace doqf
