#pragma once

#include <vector>

namespace doqf::dmt {

// Exponential orders a_ij are taken on [0, kOrderBound]^3.
inline constexpr double kOrderBound = 2.5;

struct OrderRegionSpec {
    int event_index = 2;  // 1..4, same numbering as d1..d4
    double t0 = 0.5;
    double delta = 0.0;
    double r = 0.0;
};

// Membership of (a01, a02, a12) in the asymptotic outage region of one branch.
bool in_region(const OrderRegionSpec& spec, double a01, double a02, double a12);

// Grid minimum of a01 + a02 + a12 over the region; +infinity if the grid misses it.
double infimum_grid(const OrderRegionSpec& spec, double grid_step);

// min over the four branch infima.
double oracle_diversity(double t0, double delta, double r, double grid_step);

enum class SupMode { analytic, oracle };

struct SupResult {
    double d_best = 0.0;
    double t0_best = 0.0;
    double delta_best = 0.0;
};

// Best (t0, delta) on the product grid. Oracle mode skips t0 <= r, where
// the relay can never decode.
SupResult sup_grid(double r, const std::vector<double>& t0_grid, const std::vector<double>& delta_grid,
                   double inner_step, SupMode mode = SupMode::oracle, unsigned workers = 1);

// Coarse scan of (0,1) x [0,1] followed by two local refinements.
SupResult sup_refined(double r, double inner_step, SupMode mode = SupMode::oracle, unsigned workers = 1);

}  // namespace doqf::dmt
