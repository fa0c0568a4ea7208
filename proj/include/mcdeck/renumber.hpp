#ifndef MCDECK_RENUMBER_HPP
#define MCDECK_RENUMBER_HPP

#include <map>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Partial id substitutions per namespace; absent ids stay unchanged.
// Universe 0 (the real world) is never remapped.
struct IdMaps {
  std::map<int, int> cell;
  std::map<int, int> surf;
  std::map<int, int> trans;
  std::map<int, int> mat;
  std::map<int, int> universe;

  bool empty() const {
    return cell.empty() && surf.empty() && trans.empty() && mat.empty() &&
           universe.empty();
  }
};

// Applies the substitution everywhere an id can appear: card ids, geometry
// surface/cell references, surface transform numbers, trcl/fill references,
// u=/fill universes, cell material numbers, and metadata reserved keys.
// Cards are re-laid-out only when one of their ids actually changed.
// Throws CollisionError when a target id collides with an unmapped id.
void remap(Deck& deck, const IdMaps& maps);

// Renumbers cells, surfaces and transform cards consecutively from the given
// starts, in block order. Materials and universes keep their numbers.
void renumber(Deck& deck, int cell_start, int surf_start, int trans_start);

// Rewrites the reserved keys ("cell", "surf", "trans") of every group.
void remap_metadata(MetadataBlock& meta, const IdMaps& maps);

} // namespace mcdeck

#endif
