#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "elink/common.hpp"
#include "elink/lattice.hpp"

namespace elink::fock {

// Many-body basis of a fixed particle-number sector: bitmasks with
// popcount == n_particles, ascending, bit i <-> site i+1. Number
// conservation keeps all oracle computations inside one sector.
struct SectorBasis {
    int n_sites = 0;
    int n_particles = 0;
    std::vector<std::uint32_t> states;

    static SectorBasis make(int n_sites, int n_particles);
    int dim() const { return static_cast<int>(states.size()); }
    int index_of(std::uint32_t state) const;
};

// Maximum chain length for the brute-force oracle (state vectors of size 2^N).
inline constexpr int kMaxOracleSites = 12;

// Slater determinant with the given orthonormal single-particle orbitals
// occupied (columns). Amplitude on a configuration is the determinant of the
// orbital matrix restricted to its occupied rows.
Eigen::VectorXcd slater_state(const SectorBasis& basis, const Eigen::MatrixXd& occupied_orbitals);

// Product state prod_k (c^dag_k + (-1)^k c^dag_{k+N/2}) / sqrt(2) |0>.
Eigen::VectorXcd bridge_state_vector(const SectorBasis& basis);

// Dense sector matrix of H = sum_ij h_ij c^dag_i c_j with Jordan-Wigner signs.
Eigen::MatrixXd many_body_hamiltonian(const SectorBasis& basis, const Eigen::MatrixXd& h);

// |psi(t)> = e^{-iHt} |psi> via dense diagonalization of the sector matrix.
Eigen::VectorXcd evolve_state(const SectorBasis& basis, const Eigen::MatrixXd& h,
                              const Eigen::VectorXcd& psi, double t);

// Von Neumann entropy (nats) of an arbitrary subset of sites, by fermionic
// Schmidt decomposition of the sector state.
double block_entropy(const SectorBasis& basis, const Eigen::VectorXcd& psi,
                     const std::vector<int>& block_sites);

// C_ij = <psi| c^dag_i c_j |psi>, for cross-checking the Gaussian evolution
// convention entry by entry.
Eigen::MatrixXcd correlation_matrix(const SectorBasis& basis, const Eigen::VectorXcd& psi);

// Initial state description accepted by the oracle.
struct OracleState {
    enum class Kind { ground, bridge };
    Kind kind = Kind::ground;
    SingleParticleHamiltonian hamiltonian; // ground
    int n_particles = 0;

    static OracleState ground(SingleParticleHamiltonian h, int n_particles);
    static OracleState bridge(int n_sites);
    int n_sites() const;
};

// Independent verification oracle: build the many-body state, evolve it with
// the dense sector Hamiltonian, partial-trace, return entropy in nats.
double oracle_entropy(const OracleState& initial, const SingleParticleHamiltonian& quench_h,
                      const std::vector<int>& block_sites, double t);

// Same pipeline, returning the full correlation matrix at time t.
Eigen::MatrixXcd oracle_correlations(const OracleState& initial,
                                     const SingleParticleHamiltonian& quench_h, double t);

} // namespace elink::fock
