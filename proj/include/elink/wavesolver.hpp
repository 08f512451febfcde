#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "elink/common.hpp"
#include "elink/entanglement.hpp"
#include "elink/qpp.hpp"

namespace elink::wave {

// Discretized EL field J(x, y, t) on [0, N]^2, stepped by leapfrog for
//   (1/v^2) d^2_t J = (1/2) (d^2_x + d^2_y) J.
// Site i of the chain sits at continuum coordinate i - 1/2. Neumann
// (mirrored ghost) walls model open chains, wrapped indices periodic ones.
struct WaveField {
    int m = 0;          // nodes per side
    double length = 0.0;
    double dx = 0.0;
    double dt = 0.0;
    double v = 2.0;
    double time = 0.0;
    Boundary boundary = Boundary::open;
    Eigen::MatrixXd grid;
    Eigen::MatrixXd prev; // previous step; equals grid at init (zero velocity)
};

// Default step: dt = 0.5 * sqrt(2) * dx / v (half the nominal stability
// margin). Construction refuses v * dt / dx > 1, the sharp leapfrog bound
// for the half-Laplacian equation.
double default_dt(double dx, double v);

// Bilinear embedding of an EL matrix; requires m >= N and symmetric input
// (asymmetry beyond 1e-9 is rejected). prev = grid encodes zero initial
// velocity.
WaveField init_field(const ELMatrix& el, double v, Boundary boundary, int m, double dt = 0.0);

// Rasterizes delta lines as tent ridges two cells wide with unit transverse
// integral per unit weight.
WaveField init_field(const qpp::FrontSet& fronts, double v, int m, double dt = 0.0);

Eigen::MatrixXd rasterize_fronts(const qpp::FrontSet& fronts, int m);

// One leapfrog step with the 5-point Laplacian; exact mirror of the grid
// symmetry J(x,y) = J(y,x).
WaveField step(const WaveField& f);

// Snapshots at the grid times nearest the targets (ascending). Throws
// PhysicsError if the discrete leapfrog energy drifts by more than 1%.
std::vector<WaveField> run(const WaveField& f, std::span<const double> t_targets);

double total_mass(const WaveField& f);

// Discrete energy conserved by the leapfrog update (up to roundoff).
double leapfrog_energy(const WaveField& f);

// Zeroes entries with |i - j| <= half_width (the non-universal diagonal band).
void mask_diagonal_band(Eigen::MatrixXd& grid, int half_width);
ELMatrix masked_links(const ELMatrix& el, int half_width);

struct FieldError {
    double l1 = 0.0;                 // half L1 distance of band-masked, mass-normalized fields
    double front_offset_cells = 0.0; // median row-wise distance between ridge maxima
};

FieldError field_error(const WaveField& f, const Eigen::MatrixXd& reference, int band_cells = 3);
FieldError field_error(const WaveField& f, const WaveField& reference, int band_cells = 3);
FieldError field_error(const WaveField& f, const ELMatrix& reference, int band_cells = 3);
FieldError field_error(const WaveField& f, const qpp::FrontSet& reference, int band_cells = 3);

} // namespace elink::wave
