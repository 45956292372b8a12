#include "doqf/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doqf/error.hpp"

namespace doqf::dmt {

namespace {

const double kSqrt5 = std::sqrt(5.0);

double pos(double x) { return x > 0.0 ? x : 0.0; }

// (1 - r/t0)^+
double listen_margin(double t0, double r) { return pos(1.0 - r / t0); }

void check_query(double t0, double r) {
    if (!(t0 > 0.0 && t0 < 1.0)) throw InvalidArgument("t0 must lie in (0,1)");
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("multiplexing gain must lie in [0,1]");
}

double df_t0(double r) { return r <= r3() ? 2.0 / (kSqrt5 + 1.0) : 1.0 / (2.0 - r); }

}  // namespace

double r1() { return 0.25; }
double r2() { return 2.0 * (kSqrt5 - 1.0) / (9.0 - kSqrt5); }
double r3() { return (kSqrt5 - 1.0) / (kSqrt5 + 1.0); }

double miso_bound(double r) { return 2.0 * pos(1.0 - r); }

double d1(double t0, double r) {
    check_query(t0, r);
    if (t0 <= 0.5) return 2.0 * pos(1.0 - r);
    if (r < 1.0 - t0) return 2.0 - r / (1.0 - t0);
    return pos(1.0 - r) / t0;
}

double d2(double t0, double delta, double r) {
    check_query(t0, r);
    const double t1 = 1.0 - t0;
    const double p = listen_margin(t0, r);
    if (delta <= 0.0 || delta > 1.0 - p) return 2.0 * pos(1.0 - r);
    if (t0 >= 0.5) {
        const double lead = r / t1 - p - (t0 / t1) * delta;
        if (lead <= 1.0 - r) return pos(1.0 - r) + std::max(p, 1.0 - r - delta);
        return lead + std::max((1.0 - 2.0 * r) / t0 + (t1 / t0) * p, p);
    }
    if (2.0 * t0 * t1 <= r)
        return p + std::max(pos(1.0 - r), (1.0 - r) / t1 - (t0 / t1) * p - (t0 / t1) * delta);
    return p + r / t1 - p - (t0 / t1) * delta;
}

double d3(double t0, double delta, double r) {
    check_query(t0, r);
    const double t1 = 1.0 - t0;
    const double p = listen_margin(t0, r);
    if (delta > 1.0 - p) return 2.0 * pos(1.0 - r);
    return 2.0 * p + pos(2.0 * p + (t0 / t1) * delta - r / t1);
}

double d4(double t0, double delta, double r) {
    check_query(t0, r);
    if (delta <= 0.0) return 2.0 * pos(1.0 - r);
    return pos(1.0 - r) + std::max(listen_margin(t0, r), pos(1.0 - delta));
}

double d_of(double t0, double delta, double r) {
    return std::min({d1(t0, r), d2(t0, delta, r), d3(t0, delta, r), d4(t0, delta, r)});
}

double v_star_cubic(double v, double r) {
    return ((2.0 * (1.0 + r) * v - (4.0 + 5.0 * r)) * v + 2.0 * (1.0 + 4.0 * r)) * v - 4.0 * r;
}

double solve_v_star(double r) {
    double lo = 0.5;
    double hi = 2.0 / (kSqrt5 + 1.0);
    double f_lo = v_star_cubic(lo, r);
    const double f_hi = v_star_cubic(hi, r);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        // Endpoint roots are only reproduced up to rounding.
        if (std::abs(f_lo) < 1e-14) return lo;
        if (std::abs(f_hi) < 1e-14) return hi;
        std::ostringstream msg;
        msg << "no sign change of the optimal-slot cubic on [1/2, 2/(sqrt5+1)] at r=" << r;
        throw NumericalError(msg.str());
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = v_star_cubic(mid, r);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    double v = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double f = v_star_cubic(v, r);
        if (std::abs(f) < 1e-15) break;
        const double df = (6.0 * (1.0 + r) * v - 2.0 * (4.0 + 5.0 * r)) * v + 2.0 * (1.0 + 4.0 * r);
        const double next = v - f / df;
        if (next == v) break;
        v = next;
    }
    if (!(std::abs(v_star_cubic(v, r)) < 1e-12))
        throw NumericalError("optimal-slot cubic did not converge");
    return v;
}

DmtPoint dmt_doqf_star(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("multiplexing gain must lie in [0,1]");
    if (r <= r1()) return {r, 2.0 * pos(1.0 - r), 0.5, 0.0};
    if (r <= r2()) {
        const double v = solve_v_star(r);
        const double delta = 4.0 * r / v + 2.0 * (r + 1.0) * v - 2.0 - 5.0 * r;
        return {r, 2.0 - r / (1.0 - v), v, delta};
    }
    if (r <= r3()) {
        const double t0 = 2.0 / (kSqrt5 + 1.0);
        return {r, 2.0 - 2.0 * r / (3.0 - kSqrt5), t0, r / t0};
    }
    const double t0 = 1.0 / (2.0 - r);
    return {r, (2.0 - r) * (1.0 - r), t0, r / t0};
}

DmtPoint dmt_df_star(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("multiplexing gain must lie in [0,1]");
    const double d = r <= r3() ? 2.0 - 2.0 * r / (3.0 - kSqrt5) : (2.0 - r) * (1.0 - r);
    return {r, d, df_t0(r), 0.0};
}

DmtCurve dmt_curve(CurveProtocol protocol, const std::vector<double>& r_values) {
    DmtCurve curve{protocol, {}};
    curve.points.reserve(r_values.size());
    for (double r : r_values) {
        switch (protocol) {
            case CurveProtocol::doqf: curve.points.push_back(dmt_doqf_star(r)); break;
            case CurveProtocol::df: curve.points.push_back(dmt_df_star(r)); break;
            case CurveProtocol::miso: curve.points.push_back({r, miso_bound(r), 0.0, 0.0}); break;
        }
    }
    return curve;
}

std::string to_string(CurveProtocol p) {
    switch (p) {
        case CurveProtocol::doqf: return "doqf";
        case CurveProtocol::df: return "df";
        case CurveProtocol::miso: return "miso";
    }
    return "unknown";
}

}  // namespace doqf::dmt
