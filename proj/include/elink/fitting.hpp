#pragma once

#include <span>

namespace elink::fit {

struct Line {
    double slope = 0.0;
    double intercept = 0.0;
};

Line linear(std::span<const double> xs, std::span<const double> ys);

double slope_through_origin(std::span<const double> xs, std::span<const double> ys);

// Two-segment least squares with the knee scanned over the sample grid.
struct Knee {
    double knee = 0.0;  // abscissa of the break
    double slope = 0.0; // slope of the sloped segment
    double level = 0.0; // value of the flat segment
    double sse = 0.0;
};

// y = c + m * min(x, T): linear rise saturating at T (quench growth curves).
Knee rise_then_flat(std::span<const double> xs, std::span<const double> ys);

// y = c + m * max(x - T, 0): plateau that starts moving at T (lateral decay).
Knee flat_then_fall(std::span<const double> xs, std::span<const double> ys);

// y = A * x^alpha via log-log regression; requires positive data.
struct PowerLaw {
    double prefactor = 0.0;
    double exponent = 0.0;
};

PowerLaw power_law(std::span<const double> xs, std::span<const double> ys);

} // namespace elink::fit
