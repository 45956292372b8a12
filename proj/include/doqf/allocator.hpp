#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "doqf/channel.hpp"
#include "doqf/error.hpp"
#include "doqf/gain.hpp"

namespace doqf {

struct AllocationResult {
    double t1_star = 0.5;
    double beta0_star = 0.5;
    double beta1_star = 0.5;
    double xi_star = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
};

struct AllocatorOptions {
    double tolerance = 1e-8;  // on the gradient norm
    int max_iterations = 500;
    double t1_start = 0.5;
    double beta0_start = 0.5;
};

class AllocationError : public NumericalError {
public:
    AllocationError(const std::string& what, AllocationResult best) : NumericalError(what), best_(best) {}
    const AllocationResult& best() const { return best_; }

private:
    AllocationResult best_;
};

inline constexpr double kAllocationClamp = 1e-4;

// Outage gain on the budget line beta1 = 1 - beta0.
double allocation_objective(double t1, double beta0, const LinkConstants& c, double rate);

// Central-difference gradient of allocation_objective.
std::array<double, 2> allocation_gradient(double t1, double beta0, const LinkConstants& c, double rate,
                                          double step = 1e-6);

AllocationResult minimize_outage_gain(const LinkConstants& c, double rate, const AllocatorOptions& opts = {});

struct ConvexityReport {
    bool passed = true;
    std::size_t pairs_checked = 0;
    double worst_gap = 0.0;  // max of f(mid) - (f(P)+f(Q))/2, relative to the slack scale
    std::optional<std::array<double, 4>> violation;  // t1_P, beta0_P, t1_Q, beta0_Q
};

// f(mid) - (f(P) + f(Q))/2 for one pair.
double midpoint_gap(const LinkConstants& c, double rate, std::array<double, 2> p, std::array<double, 2> q);

ConvexityReport midpoint_convexity_check(const LinkConstants& c, double rate, std::size_t n_pairs, Rng& rng);

}  // namespace doqf
