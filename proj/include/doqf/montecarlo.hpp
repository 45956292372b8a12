#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doqf/channel.hpp"
#include "doqf/gain.hpp"

namespace doqf {

enum class Protocol { doqf, df, cutset };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

struct SimConfig {
    ProtocolParams params;
    LinkModels models{ChannelModel::rayleigh(1.0), ChannelModel::rayleigh(1.0), ChannelModel::rayleigh(1.0)};
    double snr_rho = 1.0;
    // Quantizer distortion decays as rho^-delta; unset means t1/(2 t0).
    std::optional<double> delta_exponent;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;

    double delta_exp() const;
    void validate() const;
};

// Relay and destination behaviour behind an outage. For DoQF these are the
// four branches of the decision tree; DF uses decoded and relay_silent only.
enum class Branch : int { decoded = 1, quantized_recovered = 2, quantized_lost = 3, relay_silent = 4 };

struct DrawOutcome {
    bool outage = false;
    Branch branch = Branch::decoded;
};

// Precomputed per-configuration constants for the per-draw tests.
class OutageRules {
public:
    explicit OutageRules(const SimConfig& cfg);

    DrawOutcome doqf(double g01, double g02, double g12) const;
    DrawOutcome df(double g01, double g02, double g12) const;
    // For accounting, a cut-set outage is reported under decoded when the
    // relay-to-destination cut fails and quantized_recovered otherwise.
    DrawOutcome cutset(double g01, double g02, double g12) const;
    DrawOutcome evaluate(Protocol p, double g01, double g02, double g12) const;

    double distortion() const { return dist2_; }

private:
    double t0_, t1_, rate_, src_gain_, relay_gain_;
    double dist2_, q_threshold_;
};

DrawOutcome doqf_outage_event(double g01, double g02, double g12, const SimConfig& cfg);
DrawOutcome df_outage_event(double g01, double g02, double g12, const SimConfig& cfg);
bool cutset_outage_event(double g01, double g02, double g12, const SimConfig& cfg);

struct GainDraw {
    double g01, g02, g12;
};

inline constexpr std::uint64_t kChunkSize = 65536;

// Seed of the private stream for chunk k.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

// The gain triples of one chunk, in sample order (at most kChunkSize).
std::vector<GainDraw> draw_chunk(const SimConfig& cfg, std::uint64_t chunk);

struct Interval {
    double low, high;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

struct SimulationEstimate {
    std::uint64_t n_samples = 0;
    std::uint64_t outages = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::array<std::uint64_t, 4> branch_counts{};  // outages per Branch, index = branch - 1
    // Draw totals regardless of outage: relay decoded, relay quantized,
    // quantization index recovered at the destination (DoQF only).
    std::uint64_t decoded_draws = 0;
    std::uint64_t quantized_draws = 0;
    std::uint64_t recovered_draws = 0;
};

// Worker threads default to DOQF_THREADS or the hardware concurrency.
unsigned default_workers();

SimulationEstimate estimate_outage(const SimConfig& cfg, Protocol protocol, unsigned workers = 0);

struct SweepRow {
    double snr_db = 0.0;
    Protocol protocol = Protocol::doqf;
    SimulationEstimate estimate;
    double rho2_phat = 0.0;
    double xi_ref = 0.0;
};

double db_to_linear(double db);

// Closed-form high-SNR reference: the cut-set gain for doqf/cutset, the DF gain for df.
double reference_gain(const SimConfig& cfg, Protocol protocol);

std::vector<SweepRow> snr_sweep(const SimConfig& cfg, Protocol protocol, const std::vector<double>& snr_db,
                                unsigned workers = 0);

}  // namespace doqf
