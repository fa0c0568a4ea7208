#ifndef MCDECK_ASSEMBLE_HPP
#define MCDECK_ASSEMBLE_HPP

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Where the guest sits relative to the host's content (the Figure-1 cases):
// Default appends the guest bounding expression to both the gas cell and the
// graveyard; Inside touches only the gas cell; Outside only the graveyard.
enum class InsertLocation { Default, Inside, Outside };

// Id-agnostic content comparison: same nuclide/library/fraction multiset and
// the same attached mt/mx/mpn cards.
bool materials_equal(const MaterialCard& a, const MaterialCard& b);

// Inserts guest into host by bounding surface. Conflicting guest ids move to
// fresh ids above the host maxima, duplicate materials collapse onto the
// host card, the guest graveyard is dropped and the remaining guest cells
// are spliced in front of the host gas cell. The guest deck is consumed.
std::vector<Diagnostic> insert(Deck& host, Deck guest,
                               InsertLocation location = InsertLocation::Default);

// Inserts guest by cell exclusion: the guest's last two cells (its gas and
// graveyard) are deleted and every remaining top-level guest cell is
// excluded from the host gas cell with a `#n` term. Intended for decks whose
// bounding surface is not meaningful, e.g. extraction output.
std::vector<Diagnostic> insert_cells(Deck& host, Deck guest);

} // namespace mcdeck

#endif
