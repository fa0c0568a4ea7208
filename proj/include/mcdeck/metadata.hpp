#ifndef MCDECK_METADATA_HPP
#define MCDECK_METADATA_HPP

#include <array>
#include <string>
#include <vector>

#include "mcdeck/deck.hpp"
#include "mcdeck/renumber.hpp"

namespace mcdeck {

// Value stored under metadata group `name`, key `key`, as renumbered by any
// operations applied so far. Throws UnknownId when either is missing.
json get_group(const Deck& deck, const std::string& name,
               const std::string& key);

// Transform card content for building cards by hand. A stored position p
// maps forward as rotᵀ·p + translat.
struct TrCardInfo {
  Vec3 translat;
  std::array<double, 9> rot; // row-major
};

TrCardInfo find_tr_card(const Deck& deck, int tr_id);

// Appends raw lines to the end of the data block. Lines that do not start
// like a card become `c` comments; empty lines are rejected.
void add_card(Deck& deck, const std::vector<std::string>& lines);

// Adds guest groups into host after applying the id substitution to the
// guest's reserved keys. Name collisions rename the guest copy to
// "<name>@<guest_file>" (then "#2", "#3", ... if still taken) with a warning.
void merge_metadata(MetadataBlock& host, MetadataBlock guest,
                    const IdMaps& maps, const std::string& guest_file,
                    std::vector<Diagnostic>& diags);

} // namespace mcdeck

#endif
