#pragma once

#include <Eigen/Dense>

#include <vector>

#include "elink/common.hpp"

namespace elink {

// Hopping pattern of a nearest-neighbour fermion chain. Couplings g_i join
// sites i and i+1 (1-based); periodic chains add g_N joining N and 1.
struct CouplingSpec {
    enum class Kind { homogeneous, dimer, rainbow, custom };

    Kind kind = Kind::homogeneous;
    int n_sites = 0;
    Boundary boundary = Boundary::open;
    double delta = 0.0;            // dimer modulation, |delta| <= 1
    double h = 0.0;                // rainbow deformation, h > 0
    std::vector<double> custom_g;  // custom couplings

    static CouplingSpec homogeneous(int n_sites, Boundary boundary);
    static CouplingSpec dimer(int n_sites, double delta, Boundary boundary);
    static CouplingSpec rainbow(int n_sites, double h);
    static CouplingSpec custom(std::vector<double> g, Boundary boundary);

    int n_bonds() const { return boundary == Boundary::open ? n_sites - 1 : n_sites; }

    // Throws ValidationError on any broken invariant.
    void validate() const;
};

// Hopping amplitudes for the spec. Conventions:
//   homogeneous: g_i = 1/2 (so the quench Hamiltonian has front speed v = 2),
//   dimer:       g_i = (1 + (-1)^i delta) / 2, i from 1,
//   rainbow:     g_{N/2} = 1, g_i = exp(-h(|N/2 - i| - 1/2)) elsewhere (unit scale).
std::vector<double> build_couplings(const CouplingSpec& spec);

// One-body Hamiltonian matrix h with h_{i,i+1} = -g_i (tridiagonal, plus the
// corner entry for periodic chains).
struct SingleParticleHamiltonian {
    int n_sites = 0;
    Boundary boundary = Boundary::open;
    Eigen::MatrixXd mat;
};

SingleParticleHamiltonian single_particle_matrix(const std::vector<double>& g, int n_sites,
                                                 Boundary boundary);

SingleParticleHamiltonian single_particle_matrix(const CouplingSpec& spec);

// Eigenbasis of a one-body Hamiltonian: energies ascending, orthonormal
// columns, and a fixed sign convention (first component of magnitude above
// 1e-8 is positive) so downstream output is reproducible bit for bit.
struct ModeBasis {
    Eigen::VectorXd energies;
    Eigen::MatrixXd modes;
};

ModeBasis diagonalize(const SingleParticleHamiltonian& h);

} // namespace elink
