#pragma once

#include <span>
#include <vector>

#include "elink/common.hpp"

namespace elink::qpp {

// Parameters of the extended quasiparticle picture: sigma is the entropy
// density at saturation (nats per site, fitted from data except for the
// bridge where it is ln 2 exactly), v the front speed in sites per unit time
// (2 for quenches to the homogeneous chain).
struct QPPParams {
    double sigma = 0.0;
    double v = 2.0;
    double length = 0.0; // chain length N, continuum domain [0, N]
    Boundary boundary = Boundary::open;
};

// Piecewise entropy of a block of size ell after a short-range quench:
// sigma*v*t while the fronts are inside, sigma*ell after saturation
// (pre-revival branch; valid for v*t < N - ell on periodic chains).
double short_range_entropy(double ell, double t, const QPPParams& p);

// Lateral rainbow block [0, a]: holds sigma*a until v*t = N - 2a, then
// decreases at rate sigma*v/2, reaching zero at v*t = N. Blocks with
// a > N/2 behave as their mirror of size N - a.
double rainbow_lateral_entropy(double a, double t, const QPPParams& p);

// Central rainbow block [a, N-a]: grows at rate sigma*v until v*t = 2a,
// plateaus at 2*sigma*a, and decays at rate sigma*v to zero at v*t = N.
// For a > N/4 the curve is that of the mirrored parameter N/2 - a.
double rainbow_central_entropy(double a, double t, const QPPParams& p);

// Bridge block of size ell (periodic): sigma*ell until v*t = N/2 - ell, then
// sigma*(N/2 - v*t), reaching zero at v*t = N/2 (pre-revival form).
double bridge_block_entropy(double ell, double t, const QPPParams& p);

enum class Orientation { diagonal, antidiagonal }; // x - y = c  /  x + y = c

// d'Alembert characteristic: standing lines split into two half-weight
// travelers; travelers translate rigidly at offset speed v.
enum class Motion { standing, forward, backward };

// Entropy line density concentrated on x -/+ y = offset. Offsets live on the
// torus of the configuration square: period N for periodic chains, period 2N
// for open chains, where the even (Neumann) unfolding turns boundary
// reflections into plain translations. In-square segments are recovered by
// clipping at integration time.
struct DeltaLine {
    Orientation orientation = Orientation::diagonal;
    Motion motion = Motion::standing;
    double offset = 0.0;
    double weight = 0.0;
};

enum class StateKind { dimer, rainbow, bridge };

struct FrontSet {
    double length = 0.0;
    double time = 0.0;
    Boundary boundary = Boundary::open;
    std::vector<DeltaLine> lines;

    double period() const { return boundary == Boundary::periodic ? length : 2.0 * length; }
};

// Initial EL line pattern of the three reference states: dimer -> diagonal
// at offset 0, rainbow -> antidiagonal at offset N (plus its reflection
// image), bridge -> diagonal at offset N/2.
FrontSet initial_fronts(StateKind kind, const QPPParams& p);

// General constructor: one standing line, unfolded to the reflection-closed
// family for open boundaries.
FrontSet make_front(Orientation orientation, double offset, double weight, double length,
                    Boundary boundary, double time = 0.0);

FrontSet propagate_fronts(const FrontSet& f, double t, const QPPParams& p);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// S_A = integral over A x complement(A) of the line field (Eq.-(2) sense):
// each line contributes weight times the x-projection length of its segment
// inside the region. Blocks may be unions of disjoint intervals in [0, N].
double integrate_fronts(const FrontSet& f, std::span<const Interval> block);
double integrate_fronts(const FrontSet& f, const Interval& block);

// Conserved under propagation in periodic geometry: sum of line weights.
double total_weight(const FrontSet& f);

} // namespace elink::qpp
