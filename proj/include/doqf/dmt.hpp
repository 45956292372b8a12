#pragma once

#include <string>
#include <vector>

namespace doqf::dmt {

// Breakpoints of the optimal tradeoff curve.
double r1();  // 1/4
double r2();  // 2(sqrt5 - 1)/(9 - sqrt5)
double r3();  // (sqrt5 - 1)/(sqrt5 + 1)

// Diversity orders of the four outage branches for listening fraction t0,
// distortion exponent delta and multiplexing gain r.
double d1(double t0, double r);
double d2(double t0, double delta, double r);
double d3(double t0, double delta, double r);
double d4(double t0, double delta, double r);
double d_of(double t0, double delta, double r);

// Root of 2(1+r)v^3 - (4+5r)v^2 + 2(1+4r)v - 4r on [1/2, 2/(sqrt5+1)].
double solve_v_star(double r);
double v_star_cubic(double v, double r);

struct DmtPoint {
    double r = 0.0;
    double d = 0.0;
    double t0_star = 0.0;
    double delta_star = 0.0;  // 0 for curves without a distortion parameter
};

DmtPoint dmt_doqf_star(double r);
DmtPoint dmt_df_star(double r);
double miso_bound(double r);

enum class CurveProtocol { doqf, df, miso };

struct DmtCurve {
    CurveProtocol protocol = CurveProtocol::doqf;
    std::vector<DmtPoint> points;
};

DmtCurve dmt_curve(CurveProtocol protocol, const std::vector<double>& r_values);

std::string to_string(CurveProtocol p);

}  // namespace doqf::dmt
