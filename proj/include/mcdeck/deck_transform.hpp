#ifndef MCDECK_DECK_TRANSFORM_HPP
#define MCDECK_DECK_TRANSFORM_HPP

#include <string>
#include <vector>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Rigidly moves the whole deck by t. Surface positioning is expressed only
// through transform cards: existing cards referenced by surfaces are
// composed in place, cards referenced only by trcl/fill are composed with
// the cell rule, and surfaces with no card yet share one new card holding t.
// A card referenced by both surfaces and cells keeps its surface role; the
// cell references are detached into inline transforms first.
// `description` is recorded in the provenance header.
std::vector<Diagnostic> transform_deck(Deck& deck, const Transform3D& t,
                                       const std::string& description);

std::vector<Diagnostic> translate_deck(Deck& deck, const Vec3& shift);

// Rotation about a coordinate axis through the origin, then shift.
std::vector<Diagnostic> rotate_deck_axis(Deck& deck, Axis axis,
                                         double angle_deg,
                                         const Vec3& shift = {});

// Rotation about an arbitrary axis direction through the origin, then shift.
std::vector<Diagnostic> rotate_deck_arbitrary(Deck& deck, const Vec3& axis,
                                              double angle_deg,
                                              const Vec3& shift = {});

// Applies a raw 12-entry card (o1 o2 o3 b1..b9, cosine form).
std::vector<Diagnostic> apply_tr_card(Deck& deck,
                                      const std::array<double, 12>& entries);

// Net transform applied since the deck was loaded; feeding it to
// transform_deck on a fresh copy replays the same motion.
Transform3D get_cumulative_transform(const Deck& deck);

// Ensures every surface used by a trcl-carrying cell has an id <= 999 (MCNP
// rejects cell transforms on higher-numbered surfaces). Offending surfaces
// are renumbered into free low ids; when one is shared with plain cells it
// is duplicated instead and only the trcl cells are repointed. Idempotent.
// Throws CapacityExceeded when no id <= 999 is free.
std::vector<Diagnostic> resolve_trcl(Deck& deck);

} // namespace mcdeck

#endif
