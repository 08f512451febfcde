#include "elink/gaussian.hpp"

#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <complex>
#include <string>

namespace elink {

namespace {

using quad = boost::multiprecision::float128;
using MatrixXq = Eigen::Matrix<quad, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kGapGuard = 1e-8;

Eigen::MatrixXcd occupied_projector(const Eigen::MatrixXd& modes, int n_particles) {
    Eigen::MatrixXd v = modes.leftCols(n_particles);
    return (v * v.transpose()).cast<std::complex<double>>();
}

// Quad-precision ground-state projector for fillings where the double
// eigensolver cannot separate the Fermi-level pair.
Eigen::MatrixXcd quad_projector(const SingleParticleHamiltonian& h, int n_particles) {
    const int n = h.n_sites;
    MatrixXq hq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hq(i, j) = quad(h.mat(i, j));
    Eigen::SelfAdjointEigenSolver<MatrixXq> solver(hq);
    if (solver.info() != Eigen::Success)
        throw EigensolveFailure("ground_state_correlations: quad eigensolver failed");
    quad gap = solver.eigenvalues()(n_particles) - solver.eigenvalues()(n_particles - 1);
    if (gap < quad(1e-30))
        throw DegenerateGroundState(
            "ground_state_correlations: spectrum degenerate at the Fermi level "
            "even in quad precision");
    MatrixXq c = MatrixXq::Zero(n, n);
    for (int k = 0; k < n_particles; ++k)
        c += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).transpose();
    Eigen::MatrixXcd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::complex<double>(static_cast<double>(c(i, j)), 0.0);
    return out;
}

} // namespace

void CorrelationMatrix::validate() const {
    if (mat.rows() != n_sites || mat.cols() != n_sites)
        throw ValidationError("CorrelationMatrix: dimension mismatch");
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw PhysicsError("CorrelationMatrix: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat, Eigen::EigenvaluesOnly);
    double lo = solver.eigenvalues().minCoeff();
    double hi = solver.eigenvalues().maxCoeff();
    if (lo < -1e-9 || hi > 1.0 + 1e-9)
        throw PhysicsError("CorrelationMatrix: occupation spectrum outside [0,1]");
}

CorrelationMatrix ground_state_correlations(const SingleParticleHamiltonian& h, int n_particles,
                                            GapPolicy policy) {
    const int n = h.n_sites;
    if (n_particles < 0 || n_particles > n)
        throw ValidationError("ground_state_correlations: filling out of range");
    CorrelationMatrix c;
    c.n_sites = n;
    if (n_particles == 0) {
        c.mat = Eigen::MatrixXcd::Zero(n, n);
        return c;
    }
    if (n_particles == n) {
        c.mat = Eigen::MatrixXcd::Identity(n, n);
        return c;
    }
    ModeBasis basis = diagonalize(h);
    double gap = basis.energies(n_particles) - basis.energies(n_particles - 1);
    if (gap > kGapGuard) {
        c.mat = occupied_projector(basis.modes, n_particles);
        return c;
    }
    if (policy == GapPolicy::require_gap)
        throw DegenerateGroundState("ground_state_correlations: gap " + std::to_string(gap) +
                                    " at filling " + std::to_string(n_particles) +
                                    " is below the 1e-8 guard");
    c.mat = quad_projector(h, n_particles);
    return c;
}

CorrelationMatrix bridge_state_correlations(int n_sites) {
    if (n_sites < 4 || n_sites % 4 != 0)
        throw ValidationError("bridge_state_correlations: n_sites must be divisible by 4");
    const int half = n_sites / 2;
    CorrelationMatrix c;
    c.n_sites = n_sites;
    c.mat = Eigen::MatrixXcd::Zero(n_sites, n_sites);
    for (int k = 1; k <= half; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        c.mat(k - 1, k - 1) = 0.5;
        c.mat(k + half - 1, k + half - 1) = 0.5;
        c.mat(k - 1, k + half - 1) = 0.5 * sign;
        c.mat(k + half - 1, k - 1) = 0.5 * sign;
    }
    return c;
}

CorrelationMatrix evolve(const CorrelationMatrix& c0, const SingleParticleHamiltonian& h,
                         double t) {
    return QuenchEvolver(c0, h).at(t);
}

QuenchEvolver::QuenchEvolver(const CorrelationMatrix& c0, const SingleParticleHamiltonian& h) {
    if (c0.n_sites != h.n_sites)
        throw ValidationError("QuenchEvolver: state and Hamiltonian dimensions differ");
    n_ = c0.n_sites;
    ModeBasis basis = diagonalize(h);
    modes_ = basis.modes;
    energies_ = basis.energies;
    rotated_c0_ = modes_.transpose() * c0.mat * modes_;
}

CorrelationMatrix QuenchEvolver::at(double t) const {
    if (!std::isfinite(t)) throw ValidationError("QuenchEvolver: time must be finite");
    CorrelationMatrix c;
    c.n_sites = n_;
    if (t == 0.0) {
        c.mat = modes_ * rotated_c0_ * modes_.transpose();
        return c;
    }
    Eigen::VectorXcd phase(n_);
    for (int k = 0; k < n_; ++k)
        phase(k) = std::exp(std::complex<double>(0.0, energies_(k) * t));
    // C(t) = V diag(e^{iEt}) (V^T C0 V) diag(e^{-iEt}) V^T
    Eigen::MatrixXcd w = phase.asDiagonal() * rotated_c0_ * phase.conjugate().asDiagonal();
    c.mat = modes_ * w * modes_.transpose();
    return c;
}

} // namespace elink
