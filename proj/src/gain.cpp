#include "doqf/gain.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doqf/error.hpp"

namespace doqf {

namespace {

bool in_unit_open(double x) { return x > 0.0 && x < 1.0; }

void check_rate(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw InvalidArgument("rate must be finite and nonnegative");
}

}  // namespace

void ProtocolParams::validate() const {
    if (!in_unit_open(t0)) throw InvalidArgument("t0 must lie in (0,1)");
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw InvalidArgument("alpha0 must be positive");
    if (!(alpha1 > 0.0) || !std::isfinite(alpha1)) throw InvalidArgument("alpha1 must be positive");
    check_rate(rate);
}

ProtocolParams ProtocolParams::from_split(double t0, double beta0, double beta1, double rate) {
    if (!in_unit_open(t0)) throw InvalidArgument("t0 must lie in (0,1)");
    ProtocolParams p{t0, beta0, beta1 / (1.0 - t0), rate};
    p.validate();
    return p;
}

void LinkConstants::validate() const {
    for (double c : {c01, c02, c12})
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvalidArgument("link densities at zero must be positive");
}

double bracket(double t, double rate) {
    if (!in_unit_open(t)) throw InvalidArgument("bracket: t must lie in (0,1)");
    check_rate(rate);
    const double e2r = std::exp(2.0 * rate);
    const double s = 1.0 - 2.0 * t;
    if (std::abs(s) <= 2.0 * kHalfGuard)
        return 0.5 + e2r * (2.0 * rate - 1.0) / 2.0;
    // e^{2R}/(4t-2) - t e^{R/t}/(2t-1) == e^{2R} (t expm1(Rs/t)/s - 1/2)
    return 0.5 + e2r * (t * std::expm1(rate * s / t) / s - 0.5);
}

OutageGainResult xi_cs_hd(const ProtocolParams& p, const LinkConstants& c) {
    p.validate();
    c.validate();
    OutageGainResult out;
    out.term_simo = c.c02 * c.c01 / (p.alpha0 * p.alpha0) * bracket(p.t0, p.rate);
    out.term_miso = c.c02 * c.c12 / (p.alpha0 * p.alpha1) * bracket(p.t1(), p.rate);
    out.xi = out.term_simo + out.term_miso;
    return out;
}

double xi_doqf_convex(double t1, double beta0, double beta1, const LinkConstants& c, double rate) {
    if (!in_unit_open(t1)) throw InvalidArgument("t1 must lie in (0,1)");
    if (!(beta0 > 0.0) || !(beta1 > 0.0)) throw InvalidArgument("power splits must be positive");
    c.validate();
    return c.c02 * c.c01 / (beta0 * beta0) * bracket(1.0 - t1, rate) +
           c.c02 * c.c12 * t1 / (beta0 * beta1) * bracket(t1, rate);
}

double xi_df(const ProtocolParams& p, const LinkConstants& c) {
    p.validate();
    c.validate();
    const double miso = c.c02 * c.c12 / (p.alpha0 * p.alpha1) * bracket(p.t1(), p.rate);
    const double not_decoded = c.c01 * std::expm1(p.rate / p.t0) / p.alpha0;
    const double direct_fail = c.c02 * std::expm1(p.rate) / p.alpha0;
    return miso + not_decoded * direct_fail;
}

namespace {

struct Region {
    double t_a, t_b, rate;
    bool contains(double u, double v) const {
        return t_a * std::log1p(u) + t_b * std::log1p(u + v) <= rate;
    }
};

// Largest x in [0, hi] with pred(x), pred monotone decreasing, pred(0) true.
template <class Pred>
double bisect_edge(Pred pred, double hi) {
    if (pred(hi)) return hi;
    double lo = 0.0;
    while (true) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

RegionIntegral integrate_quadrature(const Region& reg, double rel_tol) {
    // Loose boxes from dropping one of the two nonnegative terms.
    const double u_box = std::expm1(reg.rate / reg.t_a);
    const double v_box_factor = std::expm1(reg.rate / reg.t_b);
    const double u_max = bisect_edge([&](double u) { return reg.contains(u, 0.0); }, u_box);
    auto slice = [&](double u) {
        if (!reg.contains(u, 0.0)) return 0.0;
        return bisect_edge([&](double v) { return reg.contains(u, v); }, (1.0 + u) * v_box_factor);
    };
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        slice, 0.0, u_max, 10, rel_tol, &err);
    if (!std::isfinite(value) || err > std::max(rel_tol * std::abs(value), 1e-300)) {
        std::ostringstream msg;
        msg << "region_integral: requested relative tolerance " << rel_tol
            << " not reached (error estimate " << err << ")";
        throw NumericalError(msg.str());
    }
    return {value, err};
}

RegionIntegral integrate_monte_carlo(const Region& reg, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw NumericalError("region_integral: monte_carlo needs at least one sample");
    const double u_box = std::expm1(reg.rate);
    const double v_box = std::expm1(reg.rate / reg.t_b);
    const double area = u_box * v_box;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double u = u_box * unif(rng);
        const double v = v_box * unif(rng);
        hits += reg.contains(u, v) ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {area * p, area * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace

RegionIntegral region_integral(double t_a, double t_b, double rate, const RegionIntegralOptions& opts) {
    if (!in_unit_open(t_a) || !in_unit_open(t_b) || std::abs(t_a + t_b - 1.0) > 1e-12)
        throw InvalidArgument("region_integral: slot fractions must lie in (0,1) and sum to 1");
    check_rate(rate);
    if (rate == 0.0) return {0.0, 0.0};
    const Region reg{t_a, t_b, rate};
    if (opts.method == IntegrationMethod::monte_carlo)
        return integrate_monte_carlo(reg, opts.samples, opts.seed);
    if (!(opts.rel_tol > 0.0)) throw InvalidArgument("region_integral: tolerance must be positive");
    return integrate_quadrature(reg, opts.rel_tol);
}

}  // namespace doqf
