#ifndef MCDECK_EXTRACT_HPP
#define MCDECK_EXTRACT_HPP

#include <set>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Everything the given cells depend on: their surfaces, the cells behind
// `#n` complements, the universes they fill (with all member cells,
// recursively), referenced transform cards and materials.
struct Closure {
  std::set<int> cells;
  std::set<int> surfaces;
  std::set<int> transforms;
  std::set<int> materials;
  std::set<int> universes;
};

Closure dependency_closure(const Deck& deck, const std::set<int>& cell_ids);

// Cuts the given cells into a new self-contained deck: the dependency
// closure keeps its ids, a fresh origin-centred sphere of radius 2000 cm
// becomes the bounding surface, and generated gas/graveyard cells take the
// two highest cell ids. Metadata groups survive when every id they name
// does. Diagnostics (dropped groups, void gas fallback) go to `diags`.
Deck extract(const Deck& deck, const std::set<int>& cell_ids,
             std::vector<Diagnostic>* diags = nullptr);

} // namespace mcdeck

#endif
