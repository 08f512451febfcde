#include "elink/qpp.hpp"

#include <algorithm>
#include <cmath>

namespace elink::qpp {

namespace {

void check_params(const QPPParams& p) {
    if (!(p.v > 0.0) || !std::isfinite(p.v)) throw ValidationError("qpp: v must be positive");
    if (!(p.length > 0.0)) throw ValidationError("qpp: length must be positive");
    if (p.sigma < 0.0 || !std::isfinite(p.sigma))
        throw ValidationError("qpp: sigma must be finite and nonnegative");
}

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

// Sorted disjoint intervals within [0, N]; all block arithmetic runs on this.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet from(std::span<const Interval> parts, double n) {
        IntervalSet s;
        for (const Interval& p : parts) {
            double lo = std::max(0.0, p.lo);
            double hi = std::min(n, p.hi);
            if (hi > lo) s.parts_.push_back({lo, hi});
        }
        s.normalize();
        return s;
    }

    static IntervalSet single(double lo, double hi) {
        IntervalSet s;
        if (hi > lo) s.parts_.push_back({lo, hi});
        return s;
    }

    IntervalSet intersect(const IntervalSet& other) const {
        IntervalSet out;
        std::size_t i = 0, j = 0;
        while (i < parts_.size() && j < other.parts_.size()) {
            double lo = std::max(parts_[i].lo, other.parts_[j].lo);
            double hi = std::min(parts_[i].hi, other.parts_[j].hi);
            if (hi > lo) out.parts_.push_back({lo, hi});
            if (parts_[i].hi < other.parts_[j].hi)
                ++i;
            else
                ++j;
        }
        return out;
    }

    IntervalSet shifted(double d) const {
        IntervalSet out;
        for (const Interval& p : parts_) out.parts_.push_back({p.lo + d, p.hi + d});
        return out;
    }

    // {x : c - x in this}
    IntervalSet reflected_about(double c) const {
        IntervalSet out;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
            out.parts_.push_back({c - it->hi, c - it->lo});
        return out;
    }

    double measure() const {
        double m = 0.0;
        for (const Interval& p : parts_) m += p.hi - p.lo;
        return m;
    }

private:
    void normalize() {
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Interval> merged;
        for (const Interval& p : parts_) {
            if (!merged.empty() && p.lo <= merged.back().hi)
                merged.back().hi = std::max(merged.back().hi, p.hi);
            else
                merged.push_back(p);
        }
        parts_ = std::move(merged);
    }

    std::vector<Interval> parts_;
};

// Contribution of one in-square line representative to the A x comp(A)
// integral: weight times |{x in X∩B : partner(x) not in B}|, where X is the
// x-range with the partner coordinate inside [0, N].
double diagonal_contribution(double d, double w, const IntervalSet& block, double n) {
    IntervalSet x_range = IntervalSet::single(std::max(0.0, d), std::min(n, n + d));
    IntervalSet inside = x_range.intersect(block);
    double same = inside.intersect(block.shifted(d)).measure();
    return w * (inside.measure() - same);
}

double antidiagonal_contribution(double c, double w, const IntervalSet& block, double n) {
    IntervalSet x_range = IntervalSet::single(std::max(0.0, c - n), std::min(n, c));
    IntervalSet inside = x_range.intersect(block);
    double same = inside.intersect(block.reflected_about(c)).measure();
    return w * (inside.measure() - same);
}

} // namespace

double short_range_entropy(double ell, double t, const QPPParams& p) {
    check_params(p);
    if (ell < 0.0 || ell > p.length)
        throw ValidationError("short_range_entropy: block size out of range");
    double s = p.v * t;
    return p.sigma * std::min(s, ell);
}

double rainbow_lateral_entropy(double a, double t, const QPPParams& p) {
    check_params(p);
    const double n = p.length;
    if (a < 0.0 || a > n) throw ValidationError("rainbow_lateral_entropy: a out of range");
    double ae = std::min(a, n - a);
    double s = p.v * t;
    if (s <= n - 2.0 * ae) return p.sigma * ae;
    if (s >= n) return 0.0;
    return p.sigma * (ae - 0.5 * (s - (n - 2.0 * ae)));
}

double rainbow_central_entropy(double a, double t, const QPPParams& p) {
    check_params(p);
    const double n = p.length;
    if (a < 0.0 || a > 0.5 * n)
        throw ValidationError("rainbow_central_entropy: a out of range");
    // [a, N-a] and its mirror [N/2-a, N/2+a] share one curve
    double ae = std::min(a, 0.5 * n - a);
    double s = p.v * t;
    if (s <= 2.0 * ae) return p.sigma * s;
    if (s <= n - 2.0 * ae) return 2.0 * p.sigma * ae;
    if (s >= n) return 0.0;
    return p.sigma * (n - s);
}

double bridge_block_entropy(double ell, double t, const QPPParams& p) {
    check_params(p);
    const double n = p.length;
    if (ell < 0.0 || ell > n) throw ValidationError("bridge_block_entropy: ell out of range");
    double le = std::min(ell, n - ell);
    double s = p.v * t;
    if (s <= 0.5 * n - le) return p.sigma * le;
    if (s >= 0.5 * n) return 0.0;
    return p.sigma * (0.5 * n - s);
}

FrontSet make_front(Orientation orientation, double offset, double weight, double length,
                    Boundary boundary, double time) {
    if (!(length > 0.0)) throw ValidationError("make_front: length must be positive");
    if (weight < 0.0) throw ValidationError("make_front: weight must be nonnegative");
    FrontSet f;
    f.length = length;
    f.time = time;
    f.boundary = boundary;
    const double period = f.period();
    if (boundary == Boundary::periodic) {
        f.lines.push_back({orientation, Motion::standing, wrap(offset, period), weight});
        return f;
    }
    // Even unfolding to the 2N torus: the orbit of a line under reflections
    // in all four walls mixes both orientations at offsets +-c.
    auto add_unique = [&f](Orientation o, double c, double w) {
        for (const DeltaLine& l : f.lines)
            if (l.orientation == o && std::abs(l.offset - c) < 1e-12) return;
        f.lines.push_back({o, Motion::standing, c, w});
    };
    double c = wrap(offset, period);
    add_unique(orientation, c, weight);
    add_unique(orientation, wrap(-c, period), weight);
    Orientation other = orientation == Orientation::diagonal ? Orientation::antidiagonal
                                                             : Orientation::diagonal;
    add_unique(other, c, weight);
    add_unique(other, wrap(-c, period), weight);
    return f;
}

FrontSet initial_fronts(StateKind kind, const QPPParams& p) {
    check_params(p);
    switch (kind) {
    case StateKind::dimer:
        // local entanglement: line on the main diagonal
        return make_front(Orientation::diagonal, 0.0, p.sigma, p.length, p.boundary);
    case StateKind::rainbow:
        if (p.boundary != Boundary::open)
            throw ValidationError("initial_fronts: rainbow state has open boundaries");
        return make_front(Orientation::antidiagonal, p.length, p.sigma, p.length, p.boundary);
    case StateKind::bridge:
        if (p.boundary != Boundary::periodic)
            throw ValidationError("initial_fronts: bridge state is periodic");
        return make_front(Orientation::diagonal, 0.5 * p.length, p.sigma, p.length, p.boundary);
    }
    throw ValidationError("initial_fronts: unknown state kind");
}

FrontSet propagate_fronts(const FrontSet& f, double t, const QPPParams& p) {
    check_params(p);
    if (t < f.time) throw ValidationError("propagate_fronts: cannot propagate backwards");
    const double shift = p.v * (t - f.time);
    FrontSet out;
    out.length = f.length;
    out.time = t;
    out.boundary = f.boundary;
    if (shift == 0.0) {
        out.lines = f.lines;
        return out;
    }
    const double period = f.period();
    for (const DeltaLine& line : f.lines) {
        switch (line.motion) {
        case Motion::standing:
            out.lines.push_back({line.orientation, Motion::forward,
                                 wrap(line.offset + shift, period), 0.5 * line.weight});
            out.lines.push_back({line.orientation, Motion::backward,
                                 wrap(line.offset - shift, period), 0.5 * line.weight});
            break;
        case Motion::forward:
            out.lines.push_back({line.orientation, Motion::forward,
                                 wrap(line.offset + shift, period), line.weight});
            break;
        case Motion::backward:
            out.lines.push_back({line.orientation, Motion::backward,
                                 wrap(line.offset - shift, period), line.weight});
            break;
        }
    }
    // merge coincident lines so repeated propagation cannot grow the set
    std::sort(out.lines.begin(), out.lines.end(), [](const DeltaLine& a, const DeltaLine& b) {
        if (a.orientation != b.orientation) return a.orientation < b.orientation;
        if (a.motion != b.motion) return a.motion < b.motion;
        return a.offset < b.offset;
    });
    std::vector<DeltaLine> merged;
    for (const DeltaLine& l : out.lines) {
        if (!merged.empty() && merged.back().orientation == l.orientation &&
            merged.back().motion == l.motion && std::abs(merged.back().offset - l.offset) < 1e-12)
            merged.back().weight += l.weight;
        else
            merged.push_back(l);
    }
    out.lines = std::move(merged);
    return out;
}

double integrate_fronts(const FrontSet& f, std::span<const Interval> block) {
    const double n = f.length;
    for (const Interval& part : block)
        if (!(part.lo < part.hi) || part.lo < -1e-12 || part.hi > n + 1e-12)
            throw ValidationError("integrate_fronts: invalid block interval");
    IntervalSet b = IntervalSet::from(block, n);
    double total = 0.0;
    for (const DeltaLine& line : f.lines) {
        if (line.weight == 0.0) continue;
        if (f.boundary == Boundary::periodic) {
            // torus line: two square representatives per orientation
            if (line.orientation == Orientation::diagonal) {
                double d = wrap(line.offset, n);
                total += diagonal_contribution(d, line.weight, b, n);
                total += diagonal_contribution(d - n, line.weight, b, n);
            } else {
                double c = wrap(line.offset, n);
                total += antidiagonal_contribution(c, line.weight, b, n);
                total += antidiagonal_contribution(c + n, line.weight, b, n);
            }
        } else {
            // offsets live on the 2N torus; exactly one representative
            // intersects the square
            double c = wrap(line.offset, 2.0 * n);
            if (line.orientation == Orientation::diagonal) {
                double d = c <= n ? c : c - 2.0 * n;
                total += diagonal_contribution(d, line.weight, b, n);
            } else {
                total += antidiagonal_contribution(c, line.weight, b, n);
            }
        }
    }
    return total;
}

double integrate_fronts(const FrontSet& f, const Interval& block) {
    return integrate_fronts(f, std::span<const Interval>(&block, 1));
}

double total_weight(const FrontSet& f) {
    double w = 0.0;
    for (const DeltaLine& line : f.lines) w += line.weight;
    return w;
}

} // namespace elink::qpp
