#include "elink/wavesolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace elink::wave {

namespace {

double node_spacing(double length, int m, Boundary boundary) {
    return boundary == Boundary::periodic ? length / m : length / (m - 1);
}

void check_geometry(int m, double v, double dx, double dt) {
    if (m < 2) throw ValidationError("wave: need at least 2 nodes per side");
    if (!(v > 0.0)) throw ValidationError("wave: v must be positive");
    if (!(dt > 0.0)) throw ValidationError("wave: dt must be positive");
    if (v * dt / dx > 1.0 + 1e-12)
        throw ValidationError("wave: CFL violation, v*dt/dx = " + std::to_string(v * dt / dx) +
                              " exceeds 1");
}

int mirror_or_wrap(int i, int m, Boundary boundary) {
    if (boundary == Boundary::periodic) return (i + m) % m;
    if (i < 0) return -i;
    if (i >= m) return 2 * (m - 1) - i;
    return i;
}

double wrap_offset(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

} // namespace

double default_dt(double dx, double v) { return 0.5 * std::sqrt(2.0) * dx / v; }

WaveField init_field(const ELMatrix& el, double v, Boundary boundary, int m, double dt) {
    const int n = el.n_sites;
    if (m < n) throw ValidationError("init_field: resolution below the chain length");
    if (!el.links.allFinite()) throw ValidationError("init_field: nonfinite EL input");
    if ((el.links - el.links.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw ValidationError("init_field: asymmetric EL input");

    WaveField f;
    f.m = m;
    f.length = static_cast<double>(n);
    f.boundary = boundary;
    f.v = v;
    f.dx = node_spacing(f.length, m, boundary);
    f.dt = dt > 0.0 ? dt : default_dt(f.dx, v);
    f.time = el.time;
    check_geometry(m, v, f.dx, f.dt);

    // site i sits at continuum coordinate i - 1/2
    auto site_coord = [&](int node) { return node * f.dx - 0.5; };
    auto sample = [&](double s, double t_) {
        double si = std::clamp(s, 0.0, static_cast<double>(n - 1));
        double sj = std::clamp(t_, 0.0, static_cast<double>(n - 1));
        int i0 = std::min(static_cast<int>(si), n - 2);
        int j0 = std::min(static_cast<int>(sj), n - 2);
        if (n == 1) return el.links(0, 0);
        double u = si - i0, w = sj - j0;
        return (1 - u) * (1 - w) * el.links(i0, j0) + u * (1 - w) * el.links(i0 + 1, j0) +
               (1 - u) * w * el.links(i0, j0 + 1) + u * w * el.links(i0 + 1, j0 + 1);
    };
    f.grid.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            double value = sample(site_coord(i), site_coord(j));
            f.grid(i, j) = value;
            f.grid(j, i) = value;
        }
    f.prev = f.grid;
    return f;
}

Eigen::MatrixXd rasterize_fronts(const qpp::FrontSet& fronts, int m) {
    const double n = fronts.length;
    const double dx = node_spacing(n, m, fronts.boundary);
    const double width = 2.0 * dx; // tent half-width, unit transverse integral
    Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(m, m);
    auto tent = [&](double delta) {
        double a = std::abs(delta);
        return a >= width ? 0.0 : (1.0 - a / width) / width;
    };

    struct Rep {
        bool diagonal;
        double c;
    };
    for (const qpp::DeltaLine& line : fronts.lines) {
        std::vector<Rep> reps;
        if (fronts.boundary == Boundary::periodic) {
            if (line.orientation == qpp::Orientation::diagonal) {
                double d = wrap_offset(line.offset, n);
                reps.push_back({true, d});
                reps.push_back({true, d - n});
            } else {
                double c = wrap_offset(line.offset, n);
                reps.push_back({false, c});
                reps.push_back({false, c + n});
            }
        } else {
            double c = wrap_offset(line.offset, 2.0 * n);
            if (line.orientation == qpp::Orientation::diagonal)
                reps.push_back({true, c <= n ? c : c - 2.0 * n});
            else
                reps.push_back({false, c});
        }
        for (const Rep& rep : reps) {
            for (int i = 0; i < m; ++i) {
                double x = i * dx;
                for (int j = 0; j < m; ++j) {
                    double y = j * dx;
                    double delta = rep.diagonal ? x - y - rep.c : x + y - rep.c;
                    grid(i, j) += line.weight * tent(delta);
                }
            }
        }
    }
    return grid;
}

WaveField init_field(const qpp::FrontSet& fronts, double v, int m, double dt) {
    WaveField f;
    f.m = m;
    f.length = fronts.length;
    f.boundary = fronts.boundary;
    f.v = v;
    f.dx = node_spacing(f.length, m, f.boundary);
    f.dt = dt > 0.0 ? dt : default_dt(f.dx, v);
    f.time = fronts.time;
    check_geometry(m, v, f.dx, f.dt);
    f.grid = rasterize_fronts(fronts, m);
    f.prev = f.grid;
    return f;
}

WaveField step(const WaveField& f) {
    check_geometry(f.m, f.v, f.dx, f.dt);
    const int m = f.m;
    const double coef = 0.5 * f.v * f.v * f.dt * f.dt / (f.dx * f.dx);
    WaveField out = f;
    out.prev = f.grid;
    out.time = f.time + f.dt;
    out.grid.resize(m, m);
    for (int i = 0; i < m; ++i) {
        int im = mirror_or_wrap(i - 1, m, f.boundary);
        int ip = mirror_or_wrap(i + 1, m, f.boundary);
        for (int j = 0; j < m; ++j) {
            int jm = mirror_or_wrap(j - 1, m, f.boundary);
            int jp = mirror_or_wrap(j + 1, m, f.boundary);
            double lap = (f.grid(im, j) + f.grid(ip, j)) + (f.grid(i, jm) + f.grid(i, jp)) -
                         4.0 * f.grid(i, j);
            out.grid(i, j) = 2.0 * f.grid(i, j) - f.prev(i, j) + coef * lap;
        }
    }
    return out;
}

std::vector<WaveField> run(const WaveField& f, std::span<const double> t_targets) {
    for (std::size_t k = 1; k < t_targets.size(); ++k)
        if (t_targets[k] < t_targets[k - 1])
            throw ValidationError("run: targets must ascend");
    std::vector<WaveField> snapshots;
    if (t_targets.empty()) return snapshots;
    WaveField state = f;
    long done = 0;
    double e_ref = 0.0;
    bool have_ref = false;
    for (double target : t_targets) {
        if (target < f.time - 0.5 * f.dt)
            throw ValidationError("run: target before the initial time");
        long want = std::lround((target - f.time) / f.dt);
        while (done < want) {
            state = step(state);
            ++done;
            if (!have_ref) {
                e_ref = leapfrog_energy(state);
                have_ref = true;
            }
        }
        snapshots.push_back(state);
    }
    if (have_ref && e_ref > 1e-12) {
        double drift = std::abs(leapfrog_energy(state) - e_ref) / e_ref;
        if (drift > 0.01)
            throw PhysicsError("run: leapfrog energy drifted by " + std::to_string(drift));
    }
    return snapshots;
}

double total_mass(const WaveField& f) { return f.grid.sum() * f.dx * f.dx; }

double leapfrog_energy(const WaveField& f) {
    const int m = f.m;
    const double c2 = 0.5 * f.v * f.v;
    double kinetic = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double r = (f.grid(i, j) - f.prev(i, j)) / f.dt;
            kinetic += r * r;
        }
    // gradient cross term between the two time levels (conserved pairing)
    double grad = 0.0;
    const int top = f.boundary == Boundary::periodic ? m : m - 1;
    for (int i = 0; i < top; ++i) {
        int ip = (i + 1) % m;
        for (int j = 0; j < m; ++j) {
            double a = (f.grid(ip, j) - f.grid(i, j)) / f.dx;
            double b = (f.prev(ip, j) - f.prev(i, j)) / f.dx;
            grad += a * b;
        }
    }
    for (int j = 0; j < top; ++j) {
        int jp = (j + 1) % m;
        for (int i = 0; i < m; ++i) {
            double a = (f.grid(i, jp) - f.grid(i, j)) / f.dx;
            double b = (f.prev(i, jp) - f.prev(i, j)) / f.dx;
            grad += a * b;
        }
    }
    return (0.5 * kinetic + 0.5 * c2 * grad) * f.dx * f.dx;
}

void mask_diagonal_band(Eigen::MatrixXd& grid, int half_width) {
    const int m = static_cast<int>(grid.rows());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (std::abs(i - j) <= half_width) grid(i, j) = 0.0;
}

ELMatrix masked_links(const ELMatrix& el, int half_width) {
    ELMatrix out = el;
    mask_diagonal_band(out.links, half_width);
    return out;
}

namespace {

struct Peak {
    double position; // fractional column index
    double height;
};

// Local maxima of |row| above the threshold, with parabolic refinement.
std::vector<Peak> row_peaks(const Eigen::VectorXd& row, double threshold) {
    std::vector<Peak> peaks;
    const int m = static_cast<int>(row.size());
    for (int j = 0; j < m; ++j) {
        double c = std::abs(row(j));
        if (c < threshold) continue;
        double l = j > 0 ? std::abs(row(j - 1)) : 0.0;
        double r = j + 1 < m ? std::abs(row(j + 1)) : 0.0;
        if (c < l || c < r) continue;
        double denom = l - 2.0 * c + r;
        double frac = std::abs(denom) > 1e-300 ? 0.5 * (l - r) / denom : 0.0;
        peaks.push_back({j + std::clamp(frac, -0.5, 0.5), c});
    }
    return peaks;
}

double nearest_peak_distance(double position, const std::vector<Peak>& peaks) {
    double best = std::numeric_limits<double>::infinity();
    for (const Peak& p : peaks) best = std::min(best, std::abs(p.position - position));
    return best;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace

FieldError field_error(const WaveField& f, const Eigen::MatrixXd& reference, int band_cells) {
    if (reference.rows() != f.m || reference.cols() != f.m)
        throw ValidationError("field_error: reference grid dimension mismatch");
    Eigen::MatrixXd a = f.grid;
    Eigen::MatrixXd b = reference;
    mask_diagonal_band(a, band_cells);
    mask_diagonal_band(b, band_cells);

    FieldError err;
    double mass_a = a.cwiseAbs().sum();
    double mass_b = b.cwiseAbs().sum();
    if (mass_a > 0.0) a /= mass_a;
    if (mass_b > 0.0) b /= mass_b;
    err.l1 = 0.5 * (a - b).cwiseAbs().sum();

    double global_a = a.cwiseAbs().maxCoeff();
    double global_b = b.cwiseAbs().maxCoeff();
    std::vector<double> distances;
    for (int i = 0; i < f.m; ++i) {
        Eigen::VectorXd row_a = a.row(i);
        Eigen::VectorXd row_b = b.row(i);
        double max_a = row_a.cwiseAbs().maxCoeff();
        double max_b = row_b.cwiseAbs().maxCoeff();
        if (max_a < 0.2 * global_a || max_b < 0.2 * global_b) continue;
        auto peaks_a = row_peaks(row_a, 0.3 * max_a);
        auto peaks_b = row_peaks(row_b, 0.3 * max_b);
        if (peaks_a.empty() || peaks_b.empty()) continue;
        // strongest ridge of each field against the other's nearest peak
        auto strongest = [](const std::vector<Peak>& ps) {
            return std::max_element(ps.begin(), ps.end(), [](const Peak& x, const Peak& y) {
                return x.height < y.height;
            });
        };
        distances.push_back(nearest_peak_distance(strongest(peaks_a)->position, peaks_b));
        distances.push_back(nearest_peak_distance(strongest(peaks_b)->position, peaks_a));
    }
    err.front_offset_cells = median(std::move(distances));
    return err;
}

FieldError field_error(const WaveField& f, const WaveField& reference, int band_cells) {
    return field_error(f, reference.grid, band_cells);
}

FieldError field_error(const WaveField& f, const ELMatrix& reference, int band_cells) {
    WaveField embedded = init_field(reference, f.v, f.boundary, f.m, f.dt);
    return field_error(f, embedded.grid, band_cells);
}

FieldError field_error(const WaveField& f, const qpp::FrontSet& reference, int band_cells) {
    return field_error(f, rasterize_fronts(reference, f.m), band_cells);
}

} // namespace elink::wave
