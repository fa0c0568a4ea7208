#ifndef MCDECK_MEMBERSHIP_HPP
#define MCDECK_MEMBERSHIP_HPP

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Point-membership evaluator used as the independent semantic check for
// renumbering, transformation and assembly. Supports the plane, sphere and
// cylinder families plus the sph/rpp macrobodies; anything else throws
// UnsupportedMnemonic so a test can never silently skip geometry.

// Sign of the surface quadric at p: -1 inside (negative sense), +1 outside,
// 0 within a tolerance band of the surface. p is mapped into the surface's
// auxiliary frame through its transform card first.
int surface_sense(const Deck& deck, const SurfaceCard& surface, const Vec3& p);

// Evaluates the cell's geometry expression at p; sense 0 counts as outside
// everything. `#n` references and cell trcl transforms are honored.
bool point_in_cell(const Deck& deck, int cell_id, const Vec3& p);

// True when p sits within `tol` of any surface of the deck, including
// trcl-shifted copies. Samplers redraw such points to keep comparisons
// deterministic.
bool near_any_surface(const Deck& deck, const Vec3& p, double tol = 1e-7);

} // namespace mcdeck

#endif
