#include "elink/entanglement.hpp"

#include <cmath>
#include <string>

namespace elink {

namespace {

constexpr double kOccupationSlack = 1e-8;

double binary_entropy_sum(const Eigen::VectorXd& occupations) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < occupations.size(); ++k) {
        double nu = occupations(k);
        if (nu < -kOccupationSlack || nu > 1.0 + kOccupationSlack)
            throw PhysicsError("block_entropy: occupation " + std::to_string(nu) +
                               " outside [0,1]; state is corrupted");
        nu = std::clamp(nu, 0.0, 1.0);
        if (nu > 0.0 && nu < 1.0)
            s += -nu * std::log(nu) - (1.0 - nu) * std::log1p(-nu);
    }
    return s;
}

double contiguous_block_entropy(const Eigen::MatrixXcd& c, int a, int len) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(c.block(a, a, len, len), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigensolveFailure("contiguous_entropy_table: eigensolver failed");
    return binary_entropy_sum(solver.eigenvalues());
}

// Entropy of a two-site restriction [[p, q], [q*, r]] in closed form.
double two_site_entropy(double p, double r, std::complex<double> q) {
    double mean = 0.5 * (p + r);
    double rad = std::sqrt(0.25 * (p - r) * (p - r) + std::norm(q));
    Eigen::Vector2d nu(mean - rad, mean + rad);
    return binary_entropy_sum(nu);
}

double single_site_entropy(double p) {
    Eigen::VectorXd nu(1);
    nu(0) = p;
    return binary_entropy_sum(nu);
}

} // namespace

double block_entropy(const CorrelationMatrix& c, std::span<const int> block_sites) {
    if (block_sites.empty()) throw ValidationError("block_entropy: empty block");
    std::vector<int> sites(block_sites.begin(), block_sites.end());
    std::sort(sites.begin(), sites.end());
    for (std::size_t k = 0; k < sites.size(); ++k) {
        if (sites[k] < 1 || sites[k] > c.n_sites)
            throw ValidationError("block_entropy: site index out of range");
        if (k > 0 && sites[k] == sites[k - 1])
            throw ValidationError("block_entropy: repeated site index");
    }
    const auto len = static_cast<Eigen::Index>(sites.size());
    Eigen::MatrixXcd sub(len, len);
    for (Eigen::Index r = 0; r < len; ++r)
        for (Eigen::Index s = 0; s < len; ++s)
            sub(r, s) = c.mat(sites[static_cast<std::size_t>(r)] - 1,
                              sites[static_cast<std::size_t>(s)] - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigensolveFailure("block_entropy: eigensolver failed");
    return binary_entropy_sum(solver.eigenvalues());
}

std::size_t EntropyTable::entry_count(int n_sites) {
    auto m = static_cast<std::size_t>(n_sites) + 1;
    return m * (m + 1) / 2;
}

std::size_t EntropyTable::index(int a, int b) const {
    const int m = n_sites + 1;
    if (a < 1 || b < a || b > m) throw ValidationError("EntropyTable: index out of range");
    auto ua = static_cast<std::size_t>(a - 1);
    return ua * static_cast<std::size_t>(m) - ua * (ua - 1) / 2 + static_cast<std::size_t>(b - a);
}

EntropyTable contiguous_entropy_table(const CorrelationMatrix& c, double time, int threads) {
    const int n = c.n_sites;
    if (c.mat.rows() != n || c.mat.cols() != n)
        throw ValidationError("contiguous_entropy_table: malformed correlation matrix");
    EntropyTable table;
    table.n_sites = n;
    table.time = time;
    table.values.assign(EntropyTable::entry_count(n), 0.0);

    // One task per nonempty block; S_{a,a} stays zero.
    struct Task {
        int a, b;
    };
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n + 1; ++b) tasks.push_back({a, b});

    std::vector<double> results(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t k) {
        const Task& task = tasks[k];
        results[k] = contiguous_block_entropy(c.mat, task.a - 1, task.b - task.a);
    });
    for (std::size_t k = 0; k < tasks.size(); ++k)
        table.at(tasks[k].a, tasks[k].b) = results[k];
    return table;
}

ELMatrix el_matrix(const EntropyTable& table) {
    const int n = table.n_sites;
    ELMatrix el;
    el.n_sites = n;
    el.time = table.time;
    el.links = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            double v = 0.5 * (table.at(i, j) - table.at(i + 1, j) - table.at(i, j + 1) +
                              table.at(i + 1, j + 1));
            el.links(i - 1, j - 1) = v;
            el.links(j - 1, i - 1) = v;
        }
    }
    return el;
}

double reconstruct_entropy(const ELMatrix& el, std::span<const int> block_sites) {
    const int n = el.n_sites;
    std::vector<char> in_block(static_cast<std::size_t>(n) + 1, 0);
    for (int site : block_sites) {
        if (site < 1 || site > n)
            throw ValidationError("reconstruct_entropy: site index out of range");
        in_block[static_cast<std::size_t>(site)] = 1;
    }
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
        if (!in_block[static_cast<std::size_t>(i)]) continue;
        for (int j = 1; j <= n; ++j)
            if (!in_block[static_cast<std::size_t>(j)]) s += el.links(i - 1, j - 1);
    }
    return s;
}

SubdiagonalSeries subdiagonal_series(const std::vector<ELMatrix>& snapshots, Boundary boundary) {
    SubdiagonalSeries series;
    if (snapshots.empty()) return series;
    const int n = snapshots.front().n_sites;
    const int cols = boundary == Boundary::periodic ? n : n - 1;
    series.links.resize(static_cast<Eigen::Index>(snapshots.size()), cols);
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const ELMatrix& el = snapshots[k];
        if (el.n_sites != n)
            throw ValidationError("subdiagonal_series: snapshot dimensions differ");
        if (k > 0 && el.time <= snapshots[k - 1].time)
            throw ValidationError("subdiagonal_series: snapshot times must ascend");
        series.times.push_back(el.time);
        for (int i = 0; i < n - 1; ++i)
            series.links(static_cast<Eigen::Index>(k), i) = el.links(i, i + 1);
        if (boundary == Boundary::periodic)
            series.links(static_cast<Eigen::Index>(k), n - 1) = el.links(n - 1, 0);
    }
    return series;
}

std::vector<double> nearest_neighbor_links(const CorrelationMatrix& c, Boundary boundary) {
    const int n = c.n_sites;
    std::vector<double> single(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) single[static_cast<std::size_t>(i)] = single_site_entropy(c.mat(i, i).real());
    const int bonds = boundary == Boundary::periodic ? n : n - 1;
    std::vector<double> links(static_cast<std::size_t>(bonds));
    for (int k = 0; k < bonds; ++k) {
        int i = k;
        int j = (k + 1) % n;
        double pair = two_site_entropy(c.mat(i, i).real(), c.mat(j, j).real(), c.mat(i, j));
        links[static_cast<std::size_t>(k)] =
            0.5 * (single[static_cast<std::size_t>(i)] + single[static_cast<std::size_t>(j)] - pair);
    }
    return links;
}

} // namespace elink
