#pragma once

#include <cstdint>

namespace doqf {

// Half-duplex relaying parameters. t0 is the listening-slot fraction,
// alpha0/alpha1 are the per-slot power factors of source and relay, rate in nats.
struct ProtocolParams {
    double t0 = 0.5;
    double alpha0 = 0.5;
    double alpha1 = 1.0;
    double rate = 0.0;

    double t1() const { return 1.0 - t0; }
    double beta0() const { return alpha0; }
    double beta1() const { return alpha1 * t1(); }
    bool power_feasible(double slack = 1e-12) const { return beta0() + beta1() <= 1.0 + slack; }
    void validate() const;

    // Parameters of the budget-line allocation (beta1 = 1 - beta0).
    static ProtocolParams from_split(double t0, double beta0, double beta1, double rate);
};

// Densities at zero of the three link gains.
struct LinkConstants {
    double c01 = 1.0;  // source -> relay
    double c02 = 1.0;  // source -> destination
    double c12 = 1.0;  // relay -> destination
    void validate() const;
};

struct OutageGainResult {
    double xi = 0.0;
    double term_simo = 0.0;  // source broadcast heard by relay and destination
    double term_miso = 0.0;  // source and relay jointly reaching the destination
};

inline constexpr double kHalfGuard = 1e-6;

// 1/2 + e^{2R}/(4t-2) - t e^{R/t}/(2t-1), continuous across t = 1/2.
double bracket(double t, double rate);

OutageGainResult xi_cs_hd(const ProtocolParams& p, const LinkConstants& c);

// Outage gain written in the convex (t1, beta0, beta1) coordinates.
double xi_doqf_convex(double t1, double beta0, double beta1, const LinkConstants& c, double rate);

double xi_df(const ProtocolParams& p, const LinkConstants& c);

enum class IntegrationMethod { quadrature, monte_carlo };

struct RegionIntegralOptions {
    IntegrationMethod method = IntegrationMethod::quadrature;
    double rel_tol = 1e-10;             // quadrature target
    std::uint64_t samples = 1'000'000;  // monte_carlo draws
    std::uint64_t seed = 1;
};

struct RegionIntegral {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute; one standard error for monte_carlo
};

// Area of {(u,v) >= 0 : t_a log(1+u) + t_b log(1+u+v) <= R}, computed from
// the indicator alone.
RegionIntegral region_integral(double t_a, double t_b, double rate,
                               const RegionIntegralOptions& opts = {});

}  // namespace doqf
