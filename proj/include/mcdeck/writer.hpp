#ifndef MCDECK_WRITER_HPP
#define MCDECK_WRITER_HPP

#include <string>
#include <vector>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// Provenance header: `c` comment lines describing the original file, every
// inserted file (recursively) and the transforms applied to each.
std::vector<std::string> build_header(const ProvenanceNode& root);

// Serializes the deck: title, header comments, the three card blocks, then
// the metadata JSON after a blank line. Cards still holding their source
// bytes are emitted verbatim; modified cards are laid out fresh (<= 80
// columns, 6-blank continuation indent).
std::string write_deck(const Deck& deck);

void write_deck_file(const Deck& deck, const std::string& path);

// Fresh layouts for modified cards (exposed for tests).
std::string layout_cell_card(const CellCard& c);
std::string layout_surface_card(const SurfaceCard& s);
std::string layout_transform_card(const TransformCard& t);
std::string layout_material_card(const MaterialCard& m);

} // namespace mcdeck

#endif
