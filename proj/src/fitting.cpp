#include "elink/fitting.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "elink/common.hpp"

namespace elink::fit {

namespace {

void check_sizes(std::span<const double> xs, std::span<const double> ys, std::size_t min_size) {
    if (xs.size() != ys.size()) throw ValidationError("fit: size mismatch");
    if (xs.size() < min_size) throw ValidationError("fit: too few samples");
}

// Least squares of y on a single regressor r plus a constant.
Line regress(std::span<const double> rs, std::span<const double> ys) {
    const auto n = static_cast<double>(rs.size());
    double sr = 0.0, sy = 0.0, srr = 0.0, sry = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        sr += rs[k];
        sy += ys[k];
        srr += rs[k] * rs[k];
        sry += rs[k] * ys[k];
    }
    double denom = n * srr - sr * sr;
    Line fit;
    if (std::abs(denom) < 1e-300) {
        fit.slope = 0.0;
        fit.intercept = sy / n;
    } else {
        fit.slope = (n * sry - sr * sy) / denom;
        fit.intercept = (sy - fit.slope * sr) / n;
    }
    return fit;
}

template <typename Shape>
Knee knee_scan(std::span<const double> xs, std::span<const double> ys, Shape shape) {
    check_sizes(xs, ys, 3);
    Knee best;
    best.sse = std::numeric_limits<double>::infinity();
    std::vector<double> r(xs.size());
    for (double candidate : xs) {
        for (std::size_t k = 0; k < xs.size(); ++k) r[k] = shape(xs[k], candidate);
        Line line = regress(r, ys);
        double sse = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            double resid = ys[k] - (line.intercept + line.slope * r[k]);
            sse += resid * resid;
        }
        if (sse < best.sse) {
            best.sse = sse;
            best.knee = candidate;
            best.slope = line.slope;
            best.level = line.intercept;
        }
    }
    return best;
}

} // namespace

Line linear(std::span<const double> xs, std::span<const double> ys) {
    check_sizes(xs, ys, 2);
    return regress(xs, ys);
}

double slope_through_origin(std::span<const double> xs, std::span<const double> ys) {
    check_sizes(xs, ys, 1);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    if (sxx < 1e-300) throw ValidationError("fit: degenerate abscissa");
    return sxy / sxx;
}

Knee rise_then_flat(std::span<const double> xs, std::span<const double> ys) {
    Knee k = knee_scan(xs, ys, [](double x, double t) { return std::min(x, t); });
    // level of the flat part, not the intercept at x = 0
    k.level = k.level + k.slope * k.knee;
    return k;
}

Knee flat_then_fall(std::span<const double> xs, std::span<const double> ys) {
    return knee_scan(xs, ys, [](double x, double t) { return std::max(x - t, 0.0); });
}

PowerLaw power_law(std::span<const double> xs, std::span<const double> ys) {
    check_sizes(xs, ys, 2);
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!(xs[k] > 0.0) || !(ys[k] > 0.0))
            throw ValidationError("power_law: data must be positive");
        lx[k] = std::log(xs[k]);
        ly[k] = std::log(ys[k]);
    }
    Line line = regress(lx, ly);
    return {std::exp(line.intercept), line.slope};
}

} // namespace elink::fit
