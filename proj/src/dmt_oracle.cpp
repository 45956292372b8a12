#include "doqf/dmt_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "doqf/dmt.hpp"
#include "doqf/error.hpp"

namespace doqf::dmt {

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool in_region(const OrderRegionSpec& s, double a01, double a02, double a12) {
    if (a01 < 0.0 || a02 < 0.0 || a12 < 0.0) throw InvalidArgument("exponential orders must be nonnegative");
    const double t0 = s.t0;
    const double t1 = 1.0 - t0;
    const double r = s.r;
    const double p = pos(1.0 - r / t0);
    switch (s.event_index) {
        case 1:
            return t0 * pos(1.0 - a02) + t1 * pos(1.0 - std::min(a02, a12)) < r &&
                   t0 * pos(1.0 - a01) > r;
        case 2:
            return t1 * pos(1.0 - a02) + t0 * pos(1.0 - std::min(a02, a01 + s.delta)) < r &&
                   pos(1.0 - a01) < r / t0 &&
                   pos(1.0 + p - a12 - pos(1.0 - a02)) > r / t1 - (t0 / t1) * s.delta &&
                   s.delta <= pos(1.0 - a01);
        case 3:
            return t0 * pos(1.0 - a02) < r && pos(1.0 - a01) < r / t0 &&
                   pos(1.0 + p - a12 - pos(1.0 - a02)) <= r / t1 - (t0 / t1) * s.delta &&
                   s.delta <= pos(1.0 - a01);
        case 4:
            return pos(1.0 - a02) < r && pos(1.0 - a01) < r / t0 && s.delta > pos(1.0 - a01);
        default:
            throw InvalidArgument("event index must be 1, 2, 3 or 4");
    }
}

double infimum_grid(const OrderRegionSpec& spec, double grid_step) {
    if (!(grid_step > 0.0)) throw InvalidArgument("grid step must be positive");
    if (!(spec.t0 > 0.0 && spec.t0 < 1.0)) throw InvalidArgument("t0 must lie in (0,1)");
    const long n = static_cast<long>(std::floor(kOrderBound / grid_step + 1e-9));
    const double h = grid_step;
    auto member = [&](long i, long j, long k) { return in_region(spec, i * h, j * h, k * h); };

    // Every region is monotone in a12 (up- or down-closed), so for fixed
    // (a01, a02) checking both ends of the useful a12 range decides feasibility.
    double best = kInf;
    for (long i = 0; i <= n; ++i) {
        if (i * h >= best) break;
        for (long j = 0; j <= n; ++j) {
            const double base = i * h + j * h;
            if (base >= best) break;
            long k_cap = n;
            if (std::isfinite(best)) {
                k_cap = std::min(n, static_cast<long>(std::ceil((best - base) / h)) - 1);
                while (k_cap >= 0 && base + k_cap * h >= best) --k_cap;
            }
            if (k_cap < 0) continue;
            if (member(i, j, 0)) {
                best = base;
                break;
            }
            if (!member(i, j, k_cap)) continue;
            long lo = 0, hi = k_cap;  // member(hi) holds, member(lo) does not
            while (hi - lo > 1) {
                const long mid = lo + (hi - lo) / 2;
                (member(i, j, mid) ? hi : lo) = mid;
            }
            best = base + hi * h;
        }
    }
    return best;
}

double oracle_diversity(double t0, double delta, double r, double grid_step) {
    double d = kInf;
    for (int e = 1; e <= 4; ++e) d = std::min(d, infimum_grid({e, t0, delta, r}, grid_step));
    return d;
}

namespace {

struct Candidate {
    double d;
    double t0;
    double delta;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.d != b.d) return a.d > b.d;
    return a.t0 > b.t0;
}

std::vector<Candidate> evaluate_grid(double r, const std::vector<double>& t0_grid,
                                     const std::vector<double>& delta_grid, double inner_step, SupMode mode,
                                     unsigned workers) {
    std::vector<Candidate> pts;
    for (double t0 : t0_grid) {
        if (!(t0 > 0.0 && t0 < 1.0)) throw InvalidArgument("t0 grid must lie in (0,1)");
        if (mode == SupMode::oracle && t0 <= r) continue;
        for (double delta : delta_grid) {
            if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("delta grid must lie in [0,1]");
            pts.push_back({0.0, t0, delta});
        }
    }
    auto eval = [&](std::size_t idx) {
        auto& c = pts[idx];
        c.d = mode == SupMode::analytic ? d_of(c.t0, c.delta, r) : oracle_diversity(c.t0, c.delta, r, inner_step);
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(pts.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < pts.size(); ++i) eval(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < pts.size(); i += workers) eval(i);
            });
        for (auto& t : pool) t.join();
    }
    return pts;
}

SupResult pick_best(const std::vector<Candidate>& pts) {
    if (pts.empty()) throw InvalidArgument("empty search grid");
    Candidate best = pts.front();
    for (const auto& c : pts)
        if (better(c, best)) best = c;
    return {best.d, best.t0, best.delta};
}

std::vector<double> local_axis(double centre, double half_width, double step, double lo, double hi) {
    std::vector<double> axis;
    const long m = static_cast<long>(std::round(half_width / step));
    for (long i = -m; i <= m; ++i) {
        const double x = centre + i * step;
        if (x >= lo && x <= hi) axis.push_back(x);
    }
    return axis;
}

}  // namespace

SupResult sup_grid(double r, const std::vector<double>& t0_grid, const std::vector<double>& delta_grid,
                   double inner_step, SupMode mode, unsigned workers) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("multiplexing gain must lie in [0,1]");
    return pick_best(evaluate_grid(r, t0_grid, delta_grid, inner_step, mode, workers));
}

SupResult sup_refined(double r, double inner_step, SupMode mode, unsigned workers) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("multiplexing gain must lie in [0,1]");
    const double t0_lo = 1e-3, t0_hi = 1.0 - 1e-3;

    std::vector<double> t0_axis, delta_axis;
    for (int i = 1; i < 50; ++i) t0_axis.push_back(i * 0.02);
    for (int i = 0; i <= 50; ++i) delta_axis.push_back(i * 0.02);
    const double coarse_step = std::max(inner_step, 0.02);
    auto coarse = evaluate_grid(r, t0_axis, delta_axis, coarse_step, mode, workers);
    if (coarse.empty()) throw InvalidArgument("no listening fraction above the multiplexing gain");
    std::sort(coarse.begin(), coarse.end(), better);

    // A few well separated coarse winners, since the coarse inner grid can misrank close values.
    std::vector<Candidate> seeds;
    for (const auto& c : coarse) {
        bool far = std::all_of(seeds.begin(), seeds.end(), [&](const Candidate& s) {
            return std::abs(s.t0 - c.t0) > 0.05 || std::abs(s.delta - c.delta) > 0.05;
        });
        if (far) seeds.push_back(c);
        if (seeds.size() == 6) break;
    }

    std::vector<Candidate> fine;
    for (const auto& s : seeds) {
        auto pts = evaluate_grid(r, local_axis(s.t0, 0.03, 0.005, t0_lo, t0_hi),
                                 local_axis(s.delta, 0.03, 0.005, 0.0, 1.0), inner_step, mode, workers);
        fine.insert(fine.end(), pts.begin(), pts.end());
    }
    const SupResult mid = pick_best(fine);
    auto last = evaluate_grid(r, local_axis(mid.t0_best, 0.006, 0.001, t0_lo, t0_hi),
                              local_axis(mid.delta_best, 0.006, 0.001, 0.0, 1.0), inner_step, mode, workers);
    last.push_back({mid.d_best, mid.t0_best, mid.delta_best});
    return pick_best(last);
}

}  // namespace doqf::dmt
