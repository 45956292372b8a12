#pragma once

#include <optional>
#include <random>

namespace doqf {

using Rng = std::mt19937_64;

enum class FadingKind { rayleigh, rice };

// Distribution of a channel power gain G = |H|^2 with H ~ CN(m, sigma2).
struct ChannelModel {
    FadingKind kind = FadingKind::rayleigh;
    double sigma2 = 1.0;
    double mean_mag = 0.0;

    static ChannelModel rayleigh(double sigma2);
    static ChannelModel rice(double mean_mag, double sigma2);
};

// f_G(0+), the density of the gain at zero.
double density_at_zero(const ChannelModel& model);

double sample_gain(const ChannelModel& model, Rng& rng);

struct NetworkGeometry {
    double d01 = 2.0 / 3.0;
    double d12 = 1.0 / 3.0;
    double d02 = 1.0;
    double exponent = 3.0;
    // Unset means C = d02^exponent, which makes the direct link variance 1.
    std::optional<double> scale;

    double normalization() const;
};

struct LinkModels {
    ChannelModel source_relay;  // 0 -> 1
    ChannelModel relay_dest;    // 1 -> 2
    ChannelModel source_dest;   // 0 -> 2
};

LinkModels geometry_to_models(const NetworkGeometry& geom);

// Same variances as geometry_to_models, Rice fading with a common line-of-sight magnitude.
LinkModels geometry_to_rice_models(const NetworkGeometry& geom, double mean_mag);

}  // namespace doqf
