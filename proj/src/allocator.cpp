#include "doqf/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace doqf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_unit(double x) { return std::clamp(x, kAllocationClamp, 1.0 - kAllocationClamp); }

struct Objective {
    const LinkConstants& c;
    double rate;
    double operator()(double t1, double b0) const {
        const double v = allocation_objective(t1, b0, c, rate);
        return std::isfinite(v) ? v : kInf;
    }
};

// Stationarity is judged on a gradient with a larger step than the public
// default; it keeps cancellation noise well below the default tolerance.
constexpr double kSearchStep = 1e-5;
constexpr double kHessianStep = 1e-4;

}  // namespace

double allocation_objective(double t1, double beta0, const LinkConstants& c, double rate) {
    return xi_doqf_convex(t1, beta0, 1.0 - beta0, c, rate);
}

std::array<double, 2> allocation_gradient(double t1, double beta0, const LinkConstants& c, double rate,
                                          double step) {
    Objective f{c, rate};
    return {(f(t1 + step, beta0) - f(t1 - step, beta0)) / (2.0 * step),
            (f(t1, beta0 + step) - f(t1, beta0 - step)) / (2.0 * step)};
}

AllocationResult minimize_outage_gain(const LinkConstants& c, double rate, const AllocatorOptions& opts) {
    c.validate();
    if (!(rate > 0.0)) throw InvalidArgument("allocation needs a positive rate");
    if (!(opts.tolerance > 0.0)) throw InvalidArgument("allocation tolerance must be positive");
    Objective f{c, rate};

    double x = clamp_unit(opts.t1_start);
    double y = clamp_unit(opts.beta0_start);
    double fx = f(x, y);
    if (!std::isfinite(fx)) throw InvalidArgument("allocation start point has an infinite outage gain");

    AllocationResult res;
    auto record = [&](int it, double gn) {
        res = {x, y, 1.0 - y, fx, gn, it};
    };

    for (int it = 0; it <= opts.max_iterations; ++it) {
        const auto g = allocation_gradient(x, y, c, rate, kSearchStep);
        const double gn = std::hypot(g[0], g[1]);
        record(it, gn);
        if (gn < opts.tolerance) return res;
        if (it == opts.max_iterations) break;

        // Newton direction from a finite-difference Hessian when it is positive definite.
        const double h = kHessianStep;
        const double hxx = (f(x + h, y) - 2.0 * fx + f(x - h, y)) / (h * h);
        const double hyy = (f(x, y + h) - 2.0 * fx + f(x, y - h)) / (h * h);
        const double hxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
        const double det = hxx * hyy - hxy * hxy;
        std::array<double, 2> newton{-g[0], -g[1]};
        bool use_newton = std::isfinite(det) && hxx > 0.0 && det > 0.0;
        if (use_newton) newton = {-(hyy * g[0] - hxy * g[1]) / det, -(hxx * g[1] - hxy * g[0]) / det};

        bool moved = false;
        for (int attempt = 0; attempt < 2 && !moved; ++attempt) {
            const std::array<double, 2> d = (attempt == 0 && use_newton) ? newton : std::array<double, 2>{-g[0], -g[1]};
            double s = 1.0;
            for (int k = 0; k < 80; ++k, s *= 0.5) {
                const double nx = clamp_unit(x + s * d[0]);
                const double ny = clamp_unit(y + s * d[1]);
                if (nx == x && ny == y) break;
                const double fn = f(nx, ny);
                const double decrease = g[0] * (nx - x) + g[1] * (ny - y);
                if (fn <= fx + 1e-4 * decrease && fn < fx) {
                    x = nx;
                    y = ny;
                    fx = fn;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved && use_newton) {
            // Close to the minimum the decrease in f drops below its rounding
            // error; accept the full Newton step if it shrinks the gradient.
            const double nx = clamp_unit(x + newton[0]);
            const double ny = clamp_unit(y + newton[1]);
            const double fn = f(nx, ny);
            const auto gn_new = allocation_gradient(nx, ny, c, rate, kSearchStep);
            if (fn <= fx + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(fx) &&
                std::hypot(gn_new[0], gn_new[1]) < gn) {
                x = nx;
                y = ny;
                fx = fn;
                moved = true;
            }
        }
        if (!moved) {
            std::ostringstream msg;
            msg << "allocation line search stalled at t1=" << x << " beta0=" << y << " with gradient norm " << gn;
            throw AllocationError(msg.str(), res);
        }
    }
    std::ostringstream msg;
    msg << "allocation did not reach gradient norm " << opts.tolerance << " in " << opts.max_iterations
        << " iterations (best " << res.grad_norm << ")";
    throw AllocationError(msg.str(), res);
}

double midpoint_gap(const LinkConstants& c, double rate, std::array<double, 2> p, std::array<double, 2> q) {
    Objective f{c, rate};
    const double fp = f(p[0], p[1]);
    const double fq = f(q[0], q[1]);
    const double fm = f(0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]));
    if (fm == kInf) return fp == kInf || fq == kInf ? 0.0 : kInf;
    if (fp == kInf || fq == kInf) return -kInf;
    return fm - 0.5 * (fp + fq);
}

ConvexityReport midpoint_convexity_check(const LinkConstants& c, double rate, std::size_t n_pairs, Rng& rng) {
    if (n_pairs == 0) throw InvalidArgument("convexity check needs at least one pair");
    Objective f{c, rate};
    std::uniform_real_distribution<double> coord(0.01, 0.99);
    ConvexityReport rep;
    rep.worst_gap = -kInf;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const std::array<double, 2> p{coord(rng), coord(rng)};
        const std::array<double, 2> q{coord(rng), coord(rng)};
        const double gap = midpoint_gap(c, rate, p, q);
        // 1e-9 slack, scaled up for values far above one where rounding dominates
        const double scale = std::max(1.0, 0.5 * (f(p[0], p[1]) + f(q[0], q[1])));
        const double rel = gap / scale;
        ++rep.pairs_checked;
        rep.worst_gap = std::max(rep.worst_gap, rel);
        if (rel > 1e-9) {
            rep.passed = false;
            rep.violation = std::array<double, 4>{p[0], p[1], q[0], q[1]};
            break;
        }
    }
    return rep;
}

}  // namespace doqf
