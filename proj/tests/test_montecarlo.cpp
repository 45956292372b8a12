#include <doctest.h>

#include <cmath>

#include "doqf/error.hpp"
#include "doqf/montecarlo.hpp"

using namespace doqf;

namespace {

const double kLn2 = std::log(2.0);

SimConfig toy_config(double rho) {
    SimConfig cfg;
    cfg.params = {0.5, 0.5, 0.5, 2 * kLn2};
    cfg.snr_rho = rho;
    cfg.delta_exponent = 0.5;
    return cfg;
}

SimConfig relay_two_thirds(double rho, std::uint64_t n, std::uint64_t seed) {
    SimConfig cfg;
    cfg.params = {0.5, 0.5, 1.0, 2 * kLn2};
    cfg.models = geometry_to_models(NetworkGeometry{2.0 / 3.0, 1.0 / 3.0, 1.0, 3.0, {}});
    cfg.snr_rho = rho;
    cfg.n_samples = n;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("hand-evaluated decision tree") {
    const auto cfg = toy_config(100.0);
    const double t0 = 0.5, t1 = 0.5, R = 2 * kLn2;
    const double g01 = 0.02, g02 = 0.05;

    // Walkthrough: source-relay SNR 1, source-destination SNR 2.5, relay power 50, distortion 0.1.
    const double v = 0.5 * 100 * g01, u = 0.5 * 100 * g02, phi = 0.5 * 100, dist = std::pow(100.0, -0.5);
    REQUIRE(t0 * std::log(1 + v) <= R);          // relay fails to decode
    REQUIRE(1 + v > dist);                        // relay quantizes
    const double q = std::log(std::exp(R / t0) / dist);

    double g12 = 2.0;
    const bool recovered = t1 * std::log(1 + phi * g12 / (u + 1)) > q * t0;
    CHECK_FALSE(recovered);
    auto lost = doqf_outage_event(g01, g02, g12, cfg);
    CHECK(lost.branch == Branch::quantized_lost);
    CHECK(lost.outage == (t0 * std::log(1 + u) <= R));
    CHECK(lost.outage);

    g12 = 1000.0;
    REQUIRE(t1 * std::log(1 + phi * g12 / (u + 1)) > q * t0);
    const double gamma = std::pow((1 + v - dist) / (1 + v), 2);
    const double mi = t1 * std::log(1 + u) + t0 * std::log(1 + u + gamma * v / (gamma + dist * std::sqrt(gamma)));
    auto rec = doqf_outage_event(g01, g02, g12, cfg);
    CHECK(rec.branch == Branch::quantized_recovered);
    CHECK(rec.outage == (mi <= R));
    CHECK(rec.outage);
    CHECK(mi == doctest::Approx(1.36770).epsilon(1e-4));
}

TEST_CASE("extreme channels") {
    SimConfig cfg = toy_config(10.0);
    cfg.params = {0.5, 0.5, 0.5, std::log(4.0)};
    auto sat = doqf_outage_event(1e9, 1e9, 1e9, cfg);
    CHECK_FALSE(sat.outage);
    CHECK(sat.branch == Branch::decoded);
    CHECK_FALSE(df_outage_event(1e9, 1e9, 1e9, cfg).outage);
    CHECK_FALSE(cutset_outage_event(1e9, 1e9, 1e9, cfg));
    auto dead = doqf_outage_event(0, 0, 0, cfg);
    CHECK(dead.outage);
    CHECK(dead.branch == Branch::quantized_lost);
    CHECK(cutset_outage_event(0, 0, 0, cfg));
}

TEST_CASE("cut-set with silent relay links") {
    const auto cfg = toy_config(100.0);
    for (double g02 : {0.001, 0.01, 0.05, 0.06, 0.5}) {
        const bool direct = std::log1p(0.5 * 100 * g02) <= 2 * kLn2;
        CHECK(cutset_outage_event(0.0, g02, 0.0, cfg) == direct);
    }
}

TEST_CASE("paired draws: cut-set outage implies DoQF outage") {
    for (double db : {10.0, 20.0, 30.0}) {
        const auto cfg = relay_two_thirds(db_to_linear(db), 1'000'000, 21);
        const OutageRules rules(cfg);
        std::uint64_t violations = 0, rescued = 0;
        for (std::uint64_t k = 0; k * kChunkSize < cfg.n_samples; ++k)
            for (const auto& d : draw_chunk(cfg, k)) {
                const auto q = rules.doqf(d.g01, d.g02, d.g12);
                if (rules.cutset(d.g01, d.g02, d.g12).outage && !q.outage) ++violations;
                if (q.branch == Branch::quantized_recovered && !q.outage && rules.df(d.g01, d.g02, d.g12).outage)
                    ++rescued;
            }
        CHECK(violations == 0);
        CHECK(rescued > 0);
    }
}

TEST_CASE("estimate bookkeeping") {
    const auto cfg = relay_two_thirds(db_to_linear(30.0), 2'000'000, 3);
    auto est = estimate_outage(cfg, Protocol::doqf, 2);
    std::uint64_t sum = 0;
    for (auto b : est.branch_counts) sum += b;
    CHECK(sum == est.outages);
    CHECK(est.p_hat * est.n_samples == doctest::Approx(static_cast<double>(est.outages)));
    CHECK(est.ci_low <= est.p_hat);
    CHECK(est.p_hat <= est.ci_high);

    // Non-decoding probability against its first-order asymptote.
    const double not_decoded = 1.0 - static_cast<double>(est.decoded_draws) / est.n_samples;
    const double asym = density_at_zero(cfg.models.source_relay) * std::expm1(cfg.params.rate / cfg.params.t0) /
                        (cfg.params.alpha0 * cfg.snr_rho);
    CHECK(std::abs(not_decoded - asym) / asym < 0.1);
    // With a vanishing distortion the relay always quantizes after a decoding failure.
    CHECK(est.decoded_draws + est.quantized_draws == est.n_samples);
    CHECK(est.branch_counts[3] == 0);
}

TEST_CASE("zero rate is never in outage") {
    auto cfg = relay_two_thirds(10.0, 100'000, 1);
    cfg.params.rate = 0.0;
    for (auto p : {Protocol::doqf, Protocol::df, Protocol::cutset}) CHECK(estimate_outage(cfg, p, 1).p_hat == 0.0);
}

TEST_CASE("worker count does not change the estimate") {
    const auto cfg = relay_two_thirds(db_to_linear(15.0), 300'001, 77);
    auto a = estimate_outage(cfg, Protocol::doqf, 1);
    auto b = estimate_outage(cfg, Protocol::doqf, 3);
    auto c = estimate_outage(cfg, Protocol::doqf, 8);
    CHECK(a.outages == b.outages);
    CHECK(a.outages == c.outages);
    CHECK(a.branch_counts == b.branch_counts);
    CHECK(a.recovered_draws == c.recovered_draws);
    CHECK(chunk_seed(77, 0) != chunk_seed(77, 1));
    CHECK(chunk_seed(77, 0) != chunk_seed(78, 0));
}

TEST_CASE("interval shrinks with the sample count") {
    auto small = relay_two_thirds(db_to_linear(10.0), 1'000'000, 4);
    auto big = small;
    big.n_samples = 2'000'000;
    auto e1 = estimate_outage(small, Protocol::df, 1);
    auto e2 = estimate_outage(big, Protocol::df, 1);
    const double ratio = (e2.ci_high - e2.ci_low) / (e1.ci_high - e1.ci_low);
    CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("wilson interval") {
    auto zero = wilson_interval(0, 100);
    CHECK(zero.low == 0.0);
    CHECK(zero.high == doctest::Approx(0.036994).epsilon(1e-4));
    auto half = wilson_interval(50, 100);
    CHECK(half.low == doctest::Approx(0.403832).epsilon(1e-5));
    CHECK(half.high == doctest::Approx(0.596168).epsilon(1e-5));
    CHECK_THROWS_AS(wilson_interval(3, 2), InvalidArgument);
}

TEST_CASE("configuration checks") {
    auto cfg = toy_config(10.0);
    cfg.delta_exponent = 1.0;  // not below t1/t0
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.delta_exponent.reset();
    CHECK(cfg.delta_exp() == 0.5);
    cfg.n_samples = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    CHECK(protocol_from_string("cutset") == Protocol::cutset);
    CHECK_THROWS_AS(protocol_from_string("af"), InvalidArgument);
    CHECK_THROWS_AS(snr_sweep(toy_config(1.0), Protocol::doqf, {}), InvalidArgument);
}

TEST_CASE("sweep rows") {
    auto cfg = relay_two_thirds(1.0, 200'000, 5);
    auto rows = snr_sweep(cfg, Protocol::df, {10.0, 20.0}, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rho2_phat == doctest::Approx(1e4 * rows[1].estimate.p_hat));
    CHECK(rows[0].xi_ref == reference_gain(cfg, Protocol::df));
    CHECK(rows[0].estimate.p_hat > rows[1].estimate.p_hat);
}
