#include "elink/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

namespace elink::fock {

namespace {

int popcount(std::uint32_t s) { return std::popcount(s); }

// Parity of occupied sites below bit `pos` (Jordan-Wigner string).
int string_parity(std::uint32_t state, int pos) {
    std::uint32_t below = state & ((1u << pos) - 1u);
    return popcount(below) % 2 == 0 ? 1 : -1;
}

void check_sites(int n_sites) {
    if (n_sites < 1 || n_sites > kMaxOracleSites)
        throw ValidationError("fock: n_sites must be in [1, " +
                              std::to_string(kMaxOracleSites) + "]");
}

} // namespace

SectorBasis SectorBasis::make(int n_sites, int n_particles) {
    check_sites(n_sites);
    if (n_particles < 0 || n_particles > n_sites)
        throw ValidationError("fock: filling out of range");
    SectorBasis b;
    b.n_sites = n_sites;
    b.n_particles = n_particles;
    for (std::uint32_t s = 0; s < (1u << n_sites); ++s)
        if (popcount(s) == n_particles) b.states.push_back(s);
    return b;
}

int SectorBasis::index_of(std::uint32_t state) const {
    auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
        throw PhysicsError("fock: state left the particle-number sector");
    return static_cast<int>(it - states.begin());
}

Eigen::VectorXcd slater_state(const SectorBasis& basis, const Eigen::MatrixXd& occupied_orbitals) {
    if (occupied_orbitals.rows() != basis.n_sites ||
        occupied_orbitals.cols() != basis.n_particles)
        throw ValidationError("slater_state: orbital matrix shape mismatch");
    const int n = basis.n_particles;
    Eigen::VectorXcd psi(basis.dim());
    Eigen::MatrixXd sub(n, n);
    for (int idx = 0; idx < basis.dim(); ++idx) {
        std::uint32_t s = basis.states[static_cast<std::size_t>(idx)];
        int row = 0;
        for (int site = 0; site < basis.n_sites; ++site)
            if (s & (1u << site)) sub.row(row++) = occupied_orbitals.row(site);
        psi(idx) = (n == 0) ? 1.0 : sub.determinant();
    }
    return psi;
}

Eigen::VectorXcd bridge_state_vector(const SectorBasis& basis) {
    const int n = basis.n_sites;
    if (n % 4 != 0) throw ValidationError("bridge_state_vector: n_sites must be divisible by 4");
    if (basis.n_particles != n / 2)
        throw ValidationError("bridge_state_vector: bridge state is half filled");
    // Bond orbitals (e_k + (-1)^k e_{k+N/2}) / sqrt(2); the product over bonds
    // is the Slater determinant of these orthonormal columns.
    Eigen::MatrixXd orbitals = Eigen::MatrixXd::Zero(n, n / 2);
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= n / 2; ++k) {
        orbitals(k - 1, k - 1) = r;
        orbitals(k + n / 2 - 1, k - 1) = (k % 2 == 0 ? r : -r);
    }
    return slater_state(basis, orbitals);
}

Eigen::MatrixXd many_body_hamiltonian(const SectorBasis& basis, const Eigen::MatrixXd& h) {
    if (h.rows() != basis.n_sites || h.cols() != basis.n_sites)
        throw ValidationError("many_body_hamiltonian: dimension mismatch");
    const int dim = basis.dim();
    Eigen::MatrixXd hm = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        std::uint32_t s = basis.states[static_cast<std::size_t>(col)];
        for (int j = 0; j < basis.n_sites; ++j) {
            if (!(s & (1u << j))) continue;
            for (int i = 0; i < basis.n_sites; ++i) {
                if (h(i, j) == 0.0) continue;
                if (i == j) {
                    hm(col, col) += h(i, i);
                    continue;
                }
                if (s & (1u << i)) continue;
                std::uint32_t mid = s & ~(1u << j);
                int sign = string_parity(s, j) * string_parity(mid, i);
                std::uint32_t out = mid | (1u << i);
                hm(basis.index_of(out), col) += sign * h(i, j);
            }
        }
    }
    return hm;
}

Eigen::VectorXcd evolve_state(const SectorBasis& basis, const Eigen::MatrixXd& h,
                              const Eigen::VectorXcd& psi, double t) {
    if (psi.size() != basis.dim()) throw ValidationError("evolve_state: state size mismatch");
    Eigen::MatrixXd hm = many_body_hamiltonian(basis, h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hm);
    if (solver.info() != Eigen::Success)
        throw EigensolveFailure("evolve_state: sector eigensolver failed");
    Eigen::VectorXcd coeff = solver.eigenvectors().transpose().cast<std::complex<double>>() * psi;
    for (int k = 0; k < coeff.size(); ++k)
        coeff(k) *= std::exp(std::complex<double>(0.0, -solver.eigenvalues()(k) * t));
    return solver.eigenvectors().cast<std::complex<double>>() * coeff;
}

double block_entropy(const SectorBasis& basis, const Eigen::VectorXcd& psi,
                     const std::vector<int>& block_sites) {
    if (psi.size() != basis.dim()) throw ValidationError("block_entropy: state size mismatch");
    if (block_sites.empty()) throw ValidationError("block_entropy: empty block");
    std::uint32_t mask_a = 0;
    for (int site : block_sites) {
        if (site < 1 || site > basis.n_sites)
            throw ValidationError("block_entropy: site index out of range");
        if (mask_a & (1u << (site - 1)))
            throw ValidationError("block_entropy: repeated site index");
        mask_a |= 1u << (site - 1);
    }
    const int na = popcount(mask_a);
    const int nb = basis.n_sites - na;

    // Compressed index of the A-part (B-part) of a configuration.
    auto compress = [&](std::uint32_t s, std::uint32_t mask) {
        int idx = 0, bit = 0;
        for (int site = 0; site < basis.n_sites; ++site) {
            if (!(mask & (1u << site))) continue;
            if (s & (1u << site)) idx |= 1 << bit;
            ++bit;
        }
        return idx;
    };

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(1 << na, 1 << nb);
    const std::uint32_t mask_b = ~mask_a & ((1u << basis.n_sites) - 1u);
    for (int idx = 0; idx < basis.dim(); ++idx) {
        std::uint32_t s = basis.states[static_cast<std::size_t>(idx)];
        // Reordering sign: move all A-site operators in front of B-site ones;
        // count (B occupied, A occupied) pairs with the B site at a lower index.
        int crossings = 0, b_seen = 0;
        for (int site = 0; site < basis.n_sites; ++site) {
            if (!(s & (1u << site))) continue;
            if (mask_a & (1u << site))
                crossings += b_seen;
            else
                ++b_seen;
        }
        double sign = crossings % 2 == 0 ? 1.0 : -1.0;
        m(compress(s, mask_a), compress(s, mask_b)) = sign * psi(idx);
    }

    // Schmidt spectrum from the smaller Gram matrix.
    Eigen::MatrixXcd gram = (na <= nb) ? (m * m.adjoint()).eval() : (m.adjoint() * m).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        double lam = solver.eigenvalues()(k);
        if (lam > 1e-14) entropy -= lam * std::log(lam);
    }
    return entropy;
}

Eigen::MatrixXcd correlation_matrix(const SectorBasis& basis, const Eigen::VectorXcd& psi) {
    if (psi.size() != basis.dim())
        throw ValidationError("correlation_matrix: state size mismatch");
    const int n = basis.n_sites;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int idx = 0; idx < basis.dim(); ++idx) {
        std::uint32_t s = basis.states[static_cast<std::size_t>(idx)];
        for (int j = 0; j < n; ++j) {
            if (!(s & (1u << j))) continue;
            c(j, j) += std::norm(psi(idx));
            std::uint32_t mid = s & ~(1u << j);
            for (int i = 0; i < n; ++i) {
                if (i == j || (s & (1u << i))) continue;
                int sign = string_parity(s, j) * string_parity(mid, i);
                std::uint32_t out = mid | (1u << i);
                c(i, j) += static_cast<double>(sign) * std::conj(psi(basis.index_of(out))) * psi(idx);
            }
        }
    }
    return c;
}

OracleState OracleState::ground(SingleParticleHamiltonian h, int n_particles) {
    check_sites(h.n_sites);
    OracleState st;
    st.kind = Kind::ground;
    st.hamiltonian = std::move(h);
    st.n_particles = n_particles;
    return st;
}

OracleState OracleState::bridge(int n_sites) {
    check_sites(n_sites);
    OracleState st;
    st.kind = Kind::bridge;
    st.n_particles = n_sites / 2;
    st.hamiltonian.n_sites = n_sites;
    return st;
}

int OracleState::n_sites() const { return hamiltonian.n_sites; }

namespace {

std::pair<SectorBasis, Eigen::VectorXcd> build_initial(const OracleState& initial) {
    SectorBasis basis = SectorBasis::make(initial.n_sites(), initial.n_particles);
    if (initial.kind == OracleState::Kind::bridge)
        return {basis, bridge_state_vector(basis)};
    ModeBasis modes = diagonalize(initial.hamiltonian);
    return {basis, slater_state(basis, modes.modes.leftCols(initial.n_particles))};
}

} // namespace

double oracle_entropy(const OracleState& initial, const SingleParticleHamiltonian& quench_h,
                      const std::vector<int>& block_sites, double t) {
    if (quench_h.n_sites != initial.n_sites())
        throw ValidationError("oracle_entropy: quench dimension mismatch");
    auto [basis, psi] = build_initial(initial);
    if (t != 0.0) psi = evolve_state(basis, quench_h.mat, psi, t);
    return block_entropy(basis, psi, block_sites);
}

Eigen::MatrixXcd oracle_correlations(const OracleState& initial,
                                     const SingleParticleHamiltonian& quench_h, double t) {
    if (quench_h.n_sites != initial.n_sites())
        throw ValidationError("oracle_correlations: quench dimension mismatch");
    auto [basis, psi] = build_initial(initial);
    if (t != 0.0) psi = evolve_state(basis, quench_h.mat, psi, t);
    return correlation_matrix(basis, psi);
}

} // namespace elink::fock
