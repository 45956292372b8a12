#include "doqf/channel.hpp"

#include <cmath>
#include <string>

#include "doqf/error.hpp"

namespace doqf {

namespace {

void check_model(const ChannelModel& m) {
    if (!(m.sigma2 > 0.0) || !std::isfinite(m.sigma2))
        throw InvalidArgument("channel variance must be positive, got " + std::to_string(m.sigma2));
    if (!(m.mean_mag >= 0.0) || !std::isfinite(m.mean_mag))
        throw InvalidArgument("line-of-sight magnitude must be nonnegative");
}

double link_variance(const NetworkGeometry& g, double d) {
    return g.normalization() * std::pow(d, -g.exponent);
}

}  // namespace

ChannelModel ChannelModel::rayleigh(double sigma2) {
    ChannelModel m{FadingKind::rayleigh, sigma2, 0.0};
    check_model(m);
    return m;
}

ChannelModel ChannelModel::rice(double mean_mag, double sigma2) {
    ChannelModel m{FadingKind::rice, sigma2, mean_mag};
    check_model(m);
    return m;
}

double density_at_zero(const ChannelModel& model) {
    check_model(model);
    if (model.kind == FadingKind::rayleigh)
        return 1.0 / model.sigma2;
    // exp(-|m|^2/s2 - x/s2) I0(2|m|sqrt(x)/s2) / s2 at x = 0
    return std::exp(-model.mean_mag * model.mean_mag / model.sigma2) / model.sigma2;
}

double sample_gain(const ChannelModel& model, Rng& rng) {
    if (model.kind == FadingKind::rayleigh) {
        std::exponential_distribution<double> exp_dist(1.0 / model.sigma2);
        return exp_dist(rng);
    }
    // H = m + sqrt(s2/2)(X + iY); the phase of m does not affect |H|^2.
    std::normal_distribution<double> normal(0.0, std::sqrt(model.sigma2 / 2.0));
    const double re = model.mean_mag + normal(rng);
    const double im = normal(rng);
    return re * re + im * im;
}

double NetworkGeometry::normalization() const {
    if (scale) {
        if (!(*scale > 0.0)) throw InvalidArgument("path-loss constant must be positive");
        return *scale;
    }
    return std::pow(d02, exponent);
}

LinkModels geometry_to_models(const NetworkGeometry& geom) {
    if (!(geom.d01 > 0.0) || !(geom.d12 > 0.0) || !(geom.d02 > 0.0))
        throw InvalidArgument("node distances must be positive");
    if (!std::isfinite(geom.exponent))
        throw InvalidArgument("path-loss exponent must be finite");
    return LinkModels{ChannelModel::rayleigh(link_variance(geom, geom.d01)),
                      ChannelModel::rayleigh(link_variance(geom, geom.d12)),
                      ChannelModel::rayleigh(link_variance(geom, geom.d02))};
}

LinkModels geometry_to_rice_models(const NetworkGeometry& geom, double mean_mag) {
    LinkModels base = geometry_to_models(geom);
    return LinkModels{ChannelModel::rice(mean_mag, base.source_relay.sigma2),
                      ChannelModel::rice(mean_mag, base.relay_dest.sigma2),
                      ChannelModel::rice(mean_mag, base.source_dest.sigma2)};
}

}  // namespace doqf
