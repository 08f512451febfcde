#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "elink/common.hpp"
#include "elink/gaussian.hpp"

namespace elink {

// Von Neumann entropy (nats) of an arbitrary site subset, from the
// eigenvalues of the block-restricted correlation matrix. Eigenvalues are
// checked against [-1e-8, 1+1e-8] (outside signals a corrupted state) and
// then clamped to [0, 1], with 0 ln 0 = 0.
double block_entropy(const CorrelationMatrix& c, std::span<const int> block_sites);

// Entropies S_{a,b} of every contiguous block {a, ..., b-1}, 1 <= a <= b <= N+1,
// at a fixed time. S_{a,a} = 0 by definition.
struct EntropyTable {
    int n_sites = 0;
    double time = 0.0;
    std::vector<double> values;

    static std::size_t entry_count(int n_sites);
    std::size_t index(int a, int b) const;
    double at(int a, int b) const { return values[index(a, b)]; }
    double& at(int a, int b) { return values[index(a, b)]; }
};

// Fills the full table with one independent eigensolve per block,
// parallelized over blocks (threads = 0 uses all cores). The result is
// schedule-independent.
EntropyTable contiguous_entropy_table(const CorrelationMatrix& c, double time, int threads = 0);

// Entanglement links J_ij: symmetric, zero diagonal. Entries may carry small
// negative estimator noise; they are reported raw, not clamped.
struct ELMatrix {
    int n_sites = 0;
    double time = 0.0;
    Eigen::MatrixXd links;
};

// Double finite difference of the entropy table,
//   J_ij = (S_{i,j} - S_{i+1,j} - S_{i,j+1} + S_{i+1,j+1}) / 2,  i < j,
// with the S_{a,a} = 0 convention closing the edges.
ELMatrix el_matrix(const EntropyTable& table);

// S_A = sum_{i in A, j not in A} J_ij, summed in a fixed order.
double reconstruct_entropy(const ELMatrix& el, std::span<const int> block_sites);

// Nearest-neighbour link time series extracted from EL snapshots. Column i
// holds J_{i+1,i+2}; periodic chains append the corner link J_{1,N}.
struct SubdiagonalSeries {
    std::vector<double> times;
    Eigen::MatrixXd links; // rows = times
};

SubdiagonalSeries subdiagonal_series(const std::vector<ELMatrix>& snapshots, Boundary boundary);

// Direct route to the same numbers: J_{i,i+1} = (S_i + S_{i+1} - S_{i,i+1})/2
// needs only one- and two-site blocks, so per-time cost is O(N) eigensolves
// instead of a full table.
std::vector<double> nearest_neighbor_links(const CorrelationMatrix& c, Boundary boundary);

} // namespace elink
