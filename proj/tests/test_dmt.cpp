#include <doctest.h>

#include <cmath>

#include "doqf/dmt.hpp"
#include "doqf/error.hpp"

using namespace doqf::dmt;

TEST_CASE("breakpoints") {
    CHECK(r1() == 0.25);
    CHECK(r2() == doctest::Approx(0.36548799526311362).epsilon(1e-15));
    CHECK(r3() == doctest::Approx(0.38196601125010515).epsilon(1e-15));
}

TEST_CASE("relay-decoding branch") {
    CHECK(d1(0.5, 0.3) == doctest::Approx(1.4));
    CHECK(d1(0.6, 0.3) == doctest::Approx(1.25));
    CHECK(d1(0.6, 0.5) == doctest::Approx(0.5 / 0.6));
    CHECK(d1(0.3, 1.0) == 0.0);
}

TEST_CASE("quantize-and-recover branch") {
    for (double t0 : {0.3, 0.5, 0.7})
        for (double r : {0.0, 0.2, 0.6}) {
            CHECK(d2(t0, 0.0, r) == doctest::Approx(2.0 * (1.0 - r)));
            CHECK(d2(t0, -0.4, r) == doctest::Approx(2.0 * (1.0 - r)));
        }
    // small positive delta at t0 = 1/2, r = 0.2
    CHECK(d2(0.5, 1e-12, 0.2) == doctest::Approx(1.6).epsilon(1e-10));
    // beyond the quantization feasibility bound
    CHECK(d2(0.5, 0.9, 0.3) == doctest::Approx(1.4));
    // second max-branch of the t0 >= 1/2 regime
    CHECK(d2(0.8, 0.05, 0.5) ==
          doctest::Approx(0.5 / 0.2 - 0.375 - 4.0 * 0.05 + std::max((1.0 - 1.0) / 0.8 + 0.25 * 0.375, 0.375)));
    // t0 < 1/2 regimes
    CHECK(d2(0.4, 0.1, 0.3) == doctest::Approx(0.3 / 0.6 - (0.4 / 0.6) * 0.1));
    CHECK(d2(0.4, 0.1, 0.5) ==
          doctest::Approx(0.0 + std::max(0.5, 0.5 / 0.6 - (0.4 / 0.6) * 0.1)));
}

TEST_CASE("quantize-and-lose branch") {
    CHECK(d3(0.5, 0.0, 0.25) == doctest::Approx(1.5));
    CHECK(d3(0.5, 0.0, 0.2) == doctest::Approx(2.0));
    CHECK(d3(0.5, 0.8, 0.3) == doctest::Approx(1.4));
    CHECK(d3(0.5, 0.4, 0.3) == doctest::Approx(0.8 + std::max(0.0, 0.8 + 0.4 - 0.6)));
}

TEST_CASE("silent-relay branch") {
    CHECK(d4(0.5, 0.3, 0.3) == doctest::Approx(1.4));
    CHECK(d4(0.5, 0.0, 0.3) == doctest::Approx(1.4));
    CHECK(d4(0.5, -1.0, 0.6) == doctest::Approx(0.8));
    CHECK(d4(0.4, 1.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("combined diversity") {
    CHECK(d_of(0.5, 0.0, 0.2) == doctest::Approx(1.6));
    CHECK(d_of(0.5, 0.0, 0.25) == doctest::Approx(1.5));
    // Above r2 the optimal delta sits on the edge where d3 switches to its
    // second branch, so the optimum is reached as a limit from above.
    for (int i = 0; i < 100; ++i) {
        const double r = i / 100.0;
        auto s = dmt_doqf_star(r);
        const double delta = r > r2() ? s.delta_star * (1.0 + 1e-12) : s.delta_star;
        CHECK(d_of(s.t0_star, delta, r) == doctest::Approx(s.d).epsilon(1e-10));
    }
    auto hi = dmt_doqf_star(0.9);
    CHECK(d_of(hi.t0_star, hi.delta_star, 0.9) == doctest::Approx(4.0 * 0.1 * 0.1).epsilon(1e-6));
}

TEST_CASE("optimal-slot cubic") {
    CHECK(v_star_cubic(0.5, 0.25) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(solve_v_star(0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(solve_v_star(0.3) == doctest::Approx(0.56618155524259301).epsilon(1e-13));
    CHECK(solve_v_star(0.26) == doctest::Approx(0.51545325552595072).epsilon(1e-13));
    CHECK(solve_v_star(r2()) == doctest::Approx(2.0 / (std::sqrt(5.0) + 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(solve_v_star(0.1), doqf::NumericalError);
    CHECK_THROWS_AS(solve_v_star(0.5), doqf::NumericalError);
}

TEST_CASE("optimal tradeoff values") {
    auto z = dmt_doqf_star(0.0);
    CHECK(z.d == 2.0);
    CHECK(z.t0_star == 0.5);
    CHECK(z.delta_star == 0.0);
    auto p = dmt_doqf_star(0.3);
    CHECK(p.d == doctest::Approx(1.3084664711115241).epsilon(1e-12));
    CHECK(p.t0_star == doctest::Approx(0.56618155524259301).epsilon(1e-12));
    CHECK(p.delta_star == doctest::Approx(0.091533528888475912).epsilon(1e-11));
    CHECK(dmt_doqf_star(0.35).d == doctest::Approx(1.1062114918283386).epsilon(1e-12));
    CHECK(dmt_doqf_star(r3()).d == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dmt_df_star(0.0).d == 2.0);
    CHECK(dmt_df_star(0.3).d == doctest::Approx(2.0 - 0.3 * (3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
    CHECK(dmt_df_star(1.0).d == 0.0);
    CHECK(miso_bound(0.0) == 2.0);
    CHECK(miso_bound(1.0) == 0.0);
    CHECK(miso_bound(0.25) == 1.5);
    CHECK_THROWS_AS(dmt_doqf_star(1.5), doqf::InvalidArgument);
}

TEST_CASE("tradeoff curve properties") {
    double prev = 3.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = i / 100.0;
        auto s = dmt_doqf_star(r);
        auto f = dmt_df_star(r);
        CHECK(s.d <= prev + 1e-15);
        prev = s.d;
        CHECK(s.d >= f.d - 1e-15);
        if (r <= 0.25) CHECK(s.d == miso_bound(r));
        if (r > r2()) CHECK(s.d == doctest::Approx(f.d).epsilon(1e-14));
        CHECK(s.t0_star >= 0.5);
        CHECK(s.t0_star <= f.t0_star + 1e-15);
        CHECK(r <= s.t0_star);
        const double bound = 1.0 - std::max(0.0, 1.0 - r / s.t0_star);
        if (r > 0.25 && r <= r2()) {
            CHECK(s.delta_star > 0.0);
            CHECK(s.delta_star < bound);
            CHECK(d1(s.t0_star, r) == doctest::Approx(s.d).epsilon(1e-8));
            CHECK(d2(s.t0_star, s.delta_star, r) == doctest::Approx(s.d).epsilon(1e-8));
            CHECK(d3(s.t0_star, s.delta_star, r) == doctest::Approx(s.d).epsilon(1e-8));
        } else if (r > r2()) {
            CHECK(s.delta_star == doctest::Approx(bound).epsilon(1e-14));
        }
    }
    CHECK(dmt_doqf_star(1.0).d == 0.0);
}

TEST_CASE("continuity at breakpoints") {
    for (double b : {r1(), r2(), r3()}) {
        const double below = dmt_doqf_star(b).d;
        const double above = dmt_doqf_star(std::nextafter(b, 1.0)).d;
        CHECK(std::abs(below - above) < 1e-10);
    }
}

TEST_CASE("curves") {
    std::vector<double> rs{0.0, 0.5, 1.0};
    for (auto p : {CurveProtocol::doqf, CurveProtocol::df, CurveProtocol::miso}) {
        auto c = dmt_curve(p, rs);
        REQUIRE(c.points.size() == 3);
        CHECK(c.points.front().d == 2.0);
        CHECK(c.points.back().d == 0.0);
    }
    CHECK(to_string(CurveProtocol::miso) == "miso");
}
