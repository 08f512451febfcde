#pragma once

#include <Eigen/Dense>

#include "elink/common.hpp"
#include "elink/lattice.hpp"

namespace elink {

// Fermionic Gaussian state represented by C_ij = <c^dag_i c_j>. This is the
// only state representation used for dynamics and measurement; eigenstates
// and quenches of a one-body Hamiltonian never leave this class.
struct CorrelationMatrix {
    int n_sites = 0;
    Eigen::MatrixXcd mat;

    // Throws PhysicsError if the matrix is not Hermitian to 1e-10 or has
    // eigenvalues outside [-1e-9, 1 + 1e-9].
    void validate() const;
};

// Behaviour when the single-particle gap at the requested filling is below
// 1e-8. `require_gap` fails loudly (periodic homogeneous chains with
// N % 4 == 0 have exact zero modes, so "the" ground state is ill-defined).
// `resolve_tiny_gap` re-diagonalizes in quad precision, which separates the
// exponentially small but nonzero gaps of strongly deformed chains (rainbow
// gaps reach ~1e-20 at N=128, h=0.7); exact degeneracies still fail, at a
// 1e-30 threshold.
enum class GapPolicy { require_gap, resolve_tiny_gap };

CorrelationMatrix ground_state_correlations(const SingleParticleHamiltonian& h, int n_particles,
                                            GapPolicy policy = GapPolicy::require_gap);

// Valence-bond state pairing site k with k + N/2, amplitudes (-1)^k (Fock
// product state of N/2 two-site bonds). Requires N divisible by 4.
CorrelationMatrix bridge_state_correlations(int n_sites);

// Heisenberg evolution C(t) = e^{+iht} C(0) e^{-iht}, computed in the
// eigenbasis of h. The sign convention is pinned by the Fock-space oracle
// bootstrap test, not by a runtime check.
CorrelationMatrix evolve(const CorrelationMatrix& c0, const SingleParticleHamiltonian& h,
                         double t);

// Precomputed quench pipeline for many evaluation times from one initial
// state: diagonalizes h once and rotates C(0) into its eigenbasis.
class QuenchEvolver {
public:
    QuenchEvolver(const CorrelationMatrix& c0, const SingleParticleHamiltonian& h);

    CorrelationMatrix at(double t) const;
    int n_sites() const { return n_; }

private:
    int n_ = 0;
    Eigen::MatrixXd modes_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd rotated_c0_;
};

} // namespace elink
