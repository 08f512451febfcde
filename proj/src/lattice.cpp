#include "elink/lattice.hpp"

#include <cmath>
#include <string>

namespace elink {

CouplingSpec CouplingSpec::homogeneous(int n_sites, Boundary boundary) {
    CouplingSpec s;
    s.kind = Kind::homogeneous;
    s.n_sites = n_sites;
    s.boundary = boundary;
    s.validate();
    return s;
}

CouplingSpec CouplingSpec::dimer(int n_sites, double delta, Boundary boundary) {
    CouplingSpec s;
    s.kind = Kind::dimer;
    s.n_sites = n_sites;
    s.boundary = boundary;
    s.delta = delta;
    s.validate();
    return s;
}

CouplingSpec CouplingSpec::rainbow(int n_sites, double h) {
    CouplingSpec s;
    s.kind = Kind::rainbow;
    s.n_sites = n_sites;
    s.boundary = Boundary::open;
    s.h = h;
    s.validate();
    return s;
}

CouplingSpec CouplingSpec::custom(std::vector<double> g, Boundary boundary) {
    CouplingSpec s;
    s.kind = Kind::custom;
    s.n_sites = boundary == Boundary::open ? static_cast<int>(g.size()) + 1
                                           : static_cast<int>(g.size());
    s.boundary = boundary;
    s.custom_g = std::move(g);
    s.validate();
    return s;
}

void CouplingSpec::validate() const {
    if (n_sites < 2) throw ValidationError("CouplingSpec: need at least 2 sites");
    switch (kind) {
    case Kind::homogeneous:
        break;
    case Kind::dimer:
        if (!std::isfinite(delta)) throw ValidationError("dimer: delta must be finite");
        if (std::abs(delta) > 1.0) throw ValidationError("dimer: |delta| must be <= 1");
        if (n_sites % 2 != 0) throw ValidationError("dimer: n_sites must be even");
        break;
    case Kind::rainbow:
        if (!std::isfinite(h) || h <= 0.0) throw ValidationError("rainbow: h must be positive");
        if (n_sites % 2 != 0) throw ValidationError("rainbow: n_sites must be even");
        if (boundary != Boundary::open)
            throw ValidationError("rainbow: defined for open boundaries");
        break;
    case Kind::custom:
        if (static_cast<int>(custom_g.size()) != n_bonds())
            throw ValidationError("custom: expected " + std::to_string(n_bonds()) +
                                  " couplings, got " + std::to_string(custom_g.size()));
        for (double g : custom_g)
            if (!std::isfinite(g)) throw ValidationError("custom: couplings must be finite");
        break;
    }
}

std::vector<double> build_couplings(const CouplingSpec& spec) {
    spec.validate();
    const int nb = spec.n_bonds();
    std::vector<double> g(static_cast<std::size_t>(nb));
    switch (spec.kind) {
    case CouplingSpec::Kind::homogeneous:
        for (int i = 0; i < nb; ++i) g[i] = 0.5;
        break;
    case CouplingSpec::Kind::dimer:
        // bond index i from 1; the global 1/2 matches the homogeneous scale
        for (int i = 1; i <= nb; ++i)
            g[i - 1] = 0.5 * (1.0 + (i % 2 == 0 ? spec.delta : -spec.delta));
        break;
    case CouplingSpec::Kind::rainbow:
        for (int i = 1; i <= nb; ++i) {
            if (i == spec.n_sites / 2)
                g[i - 1] = 1.0;
            else
                g[i - 1] = std::exp(-spec.h * (std::abs(spec.n_sites / 2.0 - i) - 0.5));
        }
        break;
    case CouplingSpec::Kind::custom:
        g = spec.custom_g;
        break;
    }
    return g;
}

SingleParticleHamiltonian single_particle_matrix(const std::vector<double>& g, int n_sites,
                                                 Boundary boundary) {
    const int nb = boundary == Boundary::open ? n_sites - 1 : n_sites;
    if (n_sites < 2) throw ValidationError("single_particle_matrix: need at least 2 sites");
    if (static_cast<int>(g.size()) != nb)
        throw ValidationError("single_particle_matrix: expected " + std::to_string(nb) +
                              " couplings, got " + std::to_string(g.size()));
    SingleParticleHamiltonian h;
    h.n_sites = n_sites;
    h.boundary = boundary;
    h.mat = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int i = 0; i + 1 < n_sites; ++i) {
        h.mat(i, i + 1) = -g[static_cast<std::size_t>(i)];
        h.mat(i + 1, i) = -g[static_cast<std::size_t>(i)];
    }
    if (boundary == Boundary::periodic) {
        h.mat(n_sites - 1, 0) = -g[static_cast<std::size_t>(n_sites - 1)];
        h.mat(0, n_sites - 1) = -g[static_cast<std::size_t>(n_sites - 1)];
    }
    return h;
}

SingleParticleHamiltonian single_particle_matrix(const CouplingSpec& spec) {
    return single_particle_matrix(build_couplings(spec), spec.n_sites, spec.boundary);
}

namespace {

// Sign convention: the first component of each mode with |v_i| > 1e-8 is
// made positive. Unit-norm columns always have such a component.
void fix_mode_signs(Eigen::MatrixXd& modes) {
    for (Eigen::Index c = 0; c < modes.cols(); ++c) {
        for (Eigen::Index r = 0; r < modes.rows(); ++r) {
            double v = modes(r, c);
            if (std::abs(v) > 1e-8) {
                if (v < 0.0) modes.col(c) = -modes.col(c);
                break;
            }
        }
    }
}

} // namespace

ModeBasis diagonalize(const SingleParticleHamiltonian& h) {
    if (h.mat.rows() != h.mat.cols() || h.mat.rows() != h.n_sites)
        throw ValidationError("diagonalize: malformed Hamiltonian");
    if ((h.mat - h.mat.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("diagonalize: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.mat);
    if (solver.info() != Eigen::Success)
        throw EigensolveFailure("diagonalize: eigensolver did not converge");
    ModeBasis basis;
    basis.energies = solver.eigenvalues();
    basis.modes = solver.eigenvectors();
    fix_mode_signs(basis.modes);
    return basis;
}

} // namespace elink
