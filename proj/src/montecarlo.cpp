#include "doqf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "doqf/error.hpp"

namespace doqf {

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::doqf: return "doqf";
        case Protocol::df: return "df";
        case Protocol::cutset: return "cutset";
    }
    return "unknown";
}

Protocol protocol_from_string(const std::string& s) {
    if (s == "doqf") return Protocol::doqf;
    if (s == "df") return Protocol::df;
    if (s == "cutset") return Protocol::cutset;
    throw InvalidArgument("unknown protocol '" + s + "' (expected doqf, df or cutset)");
}

double SimConfig::delta_exp() const {
    return delta_exponent ? *delta_exponent : params.t1() / (2.0 * params.t0);
}

void SimConfig::validate() const {
    params.validate();
    if (!(snr_rho > 0.0) || !std::isfinite(snr_rho)) throw InvalidArgument("snr must be positive");
    if (n_samples == 0) throw InvalidArgument("need at least one sample");
    const double d = delta_exp();
    if (!(d > 0.0 && d < params.t1() / params.t0))
        throw InvalidArgument("distortion exponent must lie in (0, t1/t0)");
}

OutageRules::OutageRules(const SimConfig& cfg)
    : t0_(cfg.params.t0),
      t1_(cfg.params.t1()),
      rate_(cfg.params.rate),
      src_gain_(cfg.params.alpha0 * cfg.snr_rho),
      relay_gain_(cfg.params.alpha1 * cfg.snr_rho) {
    cfg.validate();
    dist2_ = std::pow(cfg.snr_rho, -cfg.delta_exp());
    // Q = log(K / dist2) with K = e^{R/t0}
    q_threshold_ = rate_ / t0_ - std::log(dist2_);
}

DrawOutcome OutageRules::doqf(double g01, double g02, double g12) const {
    const double u = src_gain_ * g02;
    const double v = src_gain_ * g01;
    if (t0_ * std::log1p(v) > rate_) {
        const double miso = t0_ * std::log1p(u) + t1_ * std::log1p(u + relay_gain_ * g12);
        return {miso <= rate_, Branch::decoded};
    }
    if (!(1.0 + v > dist2_)) return {std::log1p(u) <= rate_, Branch::relay_silent};
    const bool index_ok = t1_ * std::log1p(relay_gain_ * g12 / (u + 1.0)) > q_threshold_ * t0_;
    if (!index_ok) return {t0_ * std::log1p(u) <= rate_, Branch::quantized_lost};
    const double ratio = (1.0 + v - dist2_) / (1.0 + v);
    const double gamma = ratio * ratio;
    const double relay_obs = gamma * v / (gamma + dist2_ * std::sqrt(gamma));
    const double mi = t1_ * std::log1p(u) + t0_ * std::log1p(u + relay_obs);
    return {mi <= rate_, Branch::quantized_recovered};
}

DrawOutcome OutageRules::df(double g01, double g02, double g12) const {
    const double u = src_gain_ * g02;
    if (t0_ * std::log1p(src_gain_ * g01) > rate_) {
        const double miso = t0_ * std::log1p(u) + t1_ * std::log1p(u + relay_gain_ * g12);
        return {miso <= rate_, Branch::decoded};
    }
    return {std::log1p(u) <= rate_, Branch::relay_silent};
}

DrawOutcome OutageRules::cutset(double g01, double g02, double g12) const {
    const double u = src_gain_ * g02;
    const double simo = t0_ * std::log1p(src_gain_ * (g01 + g02)) + t1_ * std::log1p(u);
    const double miso = t0_ * std::log1p(u) + t1_ * std::log1p(u + relay_gain_ * g12);
    if (miso <= rate_) return {true, Branch::decoded};
    return {simo <= rate_, Branch::quantized_recovered};
}

DrawOutcome OutageRules::evaluate(Protocol p, double g01, double g02, double g12) const {
    switch (p) {
        case Protocol::doqf: return doqf(g01, g02, g12);
        case Protocol::df: return df(g01, g02, g12);
        case Protocol::cutset: return cutset(g01, g02, g12);
    }
    return {};
}

DrawOutcome doqf_outage_event(double g01, double g02, double g12, const SimConfig& cfg) {
    return OutageRules(cfg).doqf(g01, g02, g12);
}

DrawOutcome df_outage_event(double g01, double g02, double g12, const SimConfig& cfg) {
    return OutageRules(cfg).df(g01, g02, g12);
}

bool cutset_outage_event(double g01, double g02, double g12, const SimConfig& cfg) {
    return OutageRules(cfg).cutset(g01, g02, g12).outage;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkSize - 1) / kChunkSize; }

std::uint64_t chunk_length(std::uint64_t n, std::uint64_t chunk) {
    return std::min(kChunkSize, n - chunk * kChunkSize);
}

struct Tally {
    std::uint64_t outages = 0;
    std::array<std::uint64_t, 4> branches{};
    std::uint64_t decoded = 0, quantized = 0, recovered = 0;
};

Tally run_chunk(const SimConfig& cfg, const OutageRules& rules, Protocol protocol, std::uint64_t chunk) {
    Rng rng(chunk_seed(cfg.seed, chunk));
    Tally t;
    const std::uint64_t len = chunk_length(cfg.n_samples, chunk);
    for (std::uint64_t i = 0; i < len; ++i) {
        const double g01 = sample_gain(cfg.models.source_relay, rng);
        const double g02 = sample_gain(cfg.models.source_dest, rng);
        const double g12 = sample_gain(cfg.models.relay_dest, rng);
        const DrawOutcome o = rules.evaluate(protocol, g01, g02, g12);
        if (protocol == Protocol::doqf) {
            t.decoded += o.branch == Branch::decoded;
            t.quantized += o.branch == Branch::quantized_recovered || o.branch == Branch::quantized_lost;
            t.recovered += o.branch == Branch::quantized_recovered;
        } else if (protocol == Protocol::df) {
            t.decoded += o.branch == Branch::decoded;
        }
        if (o.outage) {
            ++t.outages;
            ++t.branches[static_cast<int>(o.branch) - 1];
        }
    }
    return t;
}

}  // namespace

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~chunk));
}

std::vector<GainDraw> draw_chunk(const SimConfig& cfg, std::uint64_t chunk) {
    if (chunk >= chunk_count(cfg.n_samples)) throw InvalidArgument("chunk index beyond the sample count");
    Rng rng(chunk_seed(cfg.seed, chunk));
    std::vector<GainDraw> out(chunk_length(cfg.n_samples, chunk));
    for (auto& d : out) {
        d.g01 = sample_gain(cfg.models.source_relay, rng);
        d.g02 = sample_gain(cfg.models.source_dest, rng);
        d.g12 = sample_gain(cfg.models.relay_dest, rng);
    }
    return out;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) throw InvalidArgument("wilson interval needs n > 0");
    if (successes > n) throw InvalidArgument("more successes than trials");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

unsigned default_workers() {
    if (const char* env = std::getenv("DOQF_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw InvalidArgument(std::string("DOQF_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SimulationEstimate estimate_outage(const SimConfig& cfg, Protocol protocol, unsigned workers) {
    const OutageRules rules(cfg);
    if (workers == 0) workers = default_workers();
    const std::uint64_t chunks = chunk_count(cfg.n_samples);
    std::vector<Tally> tallies(chunks);
    const unsigned pool_size = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    if (pool_size <= 1) {
        for (std::uint64_t k = 0; k < chunks; ++k) tallies[k] = run_chunk(cfg, rules, protocol, k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < pool_size; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t k = w; k < chunks; k += pool_size) tallies[k] = run_chunk(cfg, rules, protocol, k);
            });
        for (auto& th : pool) th.join();
    }

    SimulationEstimate est;
    est.n_samples = cfg.n_samples;
    for (const auto& t : tallies) {
        est.outages += t.outages;
        for (int b = 0; b < 4; ++b) est.branch_counts[b] += t.branches[b];
        est.decoded_draws += t.decoded;
        est.quantized_draws += t.quantized;
        est.recovered_draws += t.recovered;
    }
    est.p_hat = static_cast<double>(est.outages) / static_cast<double>(est.n_samples);
    const Interval ci = wilson_interval(est.outages, est.n_samples);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double reference_gain(const SimConfig& cfg, Protocol protocol) {
    const LinkConstants c{density_at_zero(cfg.models.source_relay), density_at_zero(cfg.models.source_dest),
                          density_at_zero(cfg.models.relay_dest)};
    if (protocol == Protocol::df) return xi_df(cfg.params, c);
    return xi_cs_hd(cfg.params, c).xi;
}

std::vector<SweepRow> snr_sweep(const SimConfig& cfg, Protocol protocol, const std::vector<double>& snr_db,
                                unsigned workers) {
    if (snr_db.empty()) throw InvalidArgument("snr list is empty");
    const double xi = reference_gain(cfg, protocol);
    std::vector<SweepRow> rows;
    rows.reserve(snr_db.size());
    for (double db : snr_db) {
        SimConfig point = cfg;
        point.snr_rho = db_to_linear(db);
        SweepRow row;
        row.snr_db = db;
        row.protocol = protocol;
        row.estimate = estimate_outage(point, protocol, workers);
        row.rho2_phat = point.snr_rho * point.snr_rho * row.estimate.p_hat;
        row.xi_ref = xi;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace doqf
