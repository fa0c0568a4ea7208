#include "mcdeck/assemble.hpp"

#include <algorithm>
#include <set>

#include "mcdeck/errors.hpp"
#include "mcdeck/metadata.hpp"
#include "mcdeck/renumber.hpp"

namespace mcdeck {

bool materials_equal(const MaterialCard& a, const MaterialCard& b) {
  if (a.entries.size() != b.entries.size()) return false;
  // Multiset comparison; decks list nuclides in arbitrary order.
  auto sorted = [](const MaterialCard& m) {
    std::vector<MaterialEntry> e = m.entries;
    std::sort(e.begin(), e.end(), [](const MaterialEntry& x, const MaterialEntry& y) {
      return std::tie(x.zaid, x.library, x.fraction) <
             std::tie(y.zaid, y.library, y.fraction);
    });
    return e;
  };
  if (sorted(a) != sorted(b)) return false;
  if (a.options != b.options) return false;

  auto aux_key = [](const MaterialCard& m) {
    std::vector<std::pair<std::string, std::string>> k;
    for (const auto& x : m.aux) k.emplace_back(x.kind, x.payload);
    std::sort(k.begin(), k.end());
    return k;
  };
  return aux_key(a) == aux_key(b);
}

namespace {

std::string basename_of(const std::string& path) {
  std::size_t p = path.find_last_of('/');
  return p == std::string::npos ? path : path.substr(p + 1);
}

// Builds the guest-side id substitution: duplicate materials collapse onto
// the equal host card, every other id clash moves to a fresh id above the
// host maximum. `dedup_mats` receives the guest material ids to drop.
IdMaps conflict_maps(const Deck& host, const Deck& guest,
                     std::set<int>& dedup_mats) {
  IdMaps maps;

  auto build = [](auto host_ids, auto guest_ids, int start,
                  std::map<int, int>& out) {
    std::set<int> taken(host_ids.begin(), host_ids.end());
    for (int g : guest_ids)
      if (!taken.count(g)) taken.insert(g);
    int next = start;
    for (int g : guest_ids) {
      if (std::count(host_ids.begin(), host_ids.end(), g) == 0) continue;
      while (taken.count(next)) ++next;
      taken.insert(next);
      out[g] = next;
    }
  };

  auto ids_of = [](const auto& cards) {
    std::vector<int> ids;
    for (const auto& c : cards) ids.push_back(c.id);
    return ids;
  };

  build(ids_of(host.cells), ids_of(guest.cells), host.max_cell_id() + 1,
        maps.cell);
  build(ids_of(host.surfaces), ids_of(guest.surfaces),
        host.max_surface_id() + 1, maps.surf);
  build(ids_of(host.transforms), ids_of(guest.transforms),
        host.max_transform_id() + 1, maps.trans);

  // Materials: content dedup first, then clash renumbering for the rest.
  // A host card absorbs at most one guest card; a second identical guest
  // card keeps its own (possibly renumbered) copy.
  std::vector<int> remaining;
  std::set<int> used_targets;
  for (const auto& gm : guest.materials) {
    const MaterialCard* equal = nullptr;
    for (const auto& hm : host.materials)
      if (materials_equal(hm, gm) && !used_targets.count(hm.id)) {
        equal = &hm;
        break;
      }
    if (equal) {
      used_targets.insert(equal->id);
      dedup_mats.insert(gm.id);
      if (equal->id != gm.id) maps.mat[gm.id] = equal->id;
    } else {
      remaining.push_back(gm.id);
    }
  }
  build(ids_of(host.materials), remaining, host.max_material_id() + 1,
        maps.mat);

  std::vector<int> host_univ = declared_universes(host);
  std::vector<int> guest_univ = declared_universes(guest);
  build(host_univ, guest_univ, host.max_universe_id() + 1, maps.universe);

  return maps;
}

void warn_importance_mismatch(const Deck& host, const Deck& guest,
                              std::vector<Diagnostic>& diags) {
  auto imp_keys = [](const Deck& d) {
    std::set<std::string> keys;
    for (const auto& c : d.cells)
      for (const auto& p : c.params)
        if (p.key.rfind("imp", 0) == 0) keys.insert(p.key);
    return keys;
  };
  auto h = imp_keys(host), g = imp_keys(guest);
  if (h != g)
    diags.push_back(Diagnostic::warning(
        "host and guest declare different importance sets; check imp "
        "parameters on the merged cells"));
}

// Shared splice: moves guest cards into host (guest cells go in front of the
// host gas cell) and merges data blocks and metadata.
void splice_guest(Deck& host, Deck& guest, std::vector<Diagnostic>& diags,
                  const std::set<int>& dedup_mats) {
  host.cells.insert(host.cells.end() - 2,
                    std::make_move_iterator(guest.cells.begin()),
                    std::make_move_iterator(guest.cells.end()));
  host.surfaces.insert(host.surfaces.end(),
                       std::make_move_iterator(guest.surfaces.begin()),
                       std::make_move_iterator(guest.surfaces.end()));

  bool dropped_other = false;
  for (const auto& slot : guest.data_order) {
    switch (slot.kind) {
      case DataSlot::Kind::Transform:
        host.transforms.push_back(std::move(guest.transforms.at(slot.index)));
        host.push_data_slot(DataSlot::Kind::Transform,
                            host.transforms.size() - 1);
        break;
      case DataSlot::Kind::Material: {
        MaterialCard& m = guest.materials.at(slot.index);
        if (dedup_mats.count(m.id)) break;
        host.materials.push_back(std::move(m));
        host.push_data_slot(DataSlot::Kind::Material,
                            host.materials.size() - 1);
        break;
      }
      case DataSlot::Kind::Other:
        dropped_other = true;
        break;
    }
  }
  if (dropped_other)
    diags.push_back(Diagnostic::warning(
        "guest data cards other than tr/material were dropped; the host "
        "physics setup is kept"));

  // Guest metadata was already remapped together with the guest cards.
  merge_metadata(host.metadata, std::move(guest.metadata), IdMaps{},
                 basename_of(guest.provenance.source_path), diags);

  host.provenance.children.push_back(std::move(guest.provenance));
}

} // namespace

std::vector<Diagnostic> insert(Deck& host, Deck guest,
                               InsertLocation location) {
  std::vector<Diagnostic> diags;

  if (!is_assemblable(host))
    throw NotAssemblable("host deck (" + host.provenance.source_path +
                         ") fails structural validation");
  if (!is_assemblable(guest))
    throw NotAssemblable("guest deck (" + guest.provenance.source_path +
                         ") fails structural validation");

  if (host.had_cell_insertion)
    diags.push_back(Diagnostic::warning(
        "insert after insert_cells on this host; favor bounding-surface "
        "inserts first to keep the gas cell simple"));

  GeometryExpr bound = bounding_expression(guest);
  if (contains_cell_ref(bound))
    throw UnsupportedBoundingExpression(
        "guest bounding expression contains a #n cell complement");

  warn_importance_mismatch(host, guest, diags);

  std::set<int> dedup_old;
  IdMaps maps = conflict_maps(host, guest, dedup_old);
  // The dedup targets collapse onto host cards: drop the guest cards before
  // remapping so the target ids do not double up inside the guest.
  std::set<int> dedup_new;
  for (int id : dedup_old) {
    auto it = maps.mat.find(id);
    dedup_new.insert(it == maps.mat.end() ? id : it->second);
  }
  remap(guest, maps);

  bound = bounding_expression(guest); // ids moved with the remap
  guest.cells.pop_back();             // guest graveyard

  splice_guest(host, guest, diags, dedup_new);

  CellCard& gas = host.cells[host.cells.size() - 2];
  CellCard& grave = host.cells.back();
  if (location != InsertLocation::Outside) {
    gas.geometry = intersect_with(std::move(gas.geometry), bound);
    gas.mark_dirty();
  }
  if (location != InsertLocation::Inside) {
    grave.geometry = intersect_with(std::move(grave.geometry), bound);
    grave.mark_dirty();
  }
  return diags;
}

std::vector<Diagnostic> insert_cells(Deck& host, Deck guest) {
  std::vector<Diagnostic> diags;

  if (!is_assemblable(host))
    throw NotAssemblable("host deck (" + host.provenance.source_path +
                         ") fails structural validation");

  host.had_cell_insertion = true;

  if (guest.cells.size() <= 2) {
    // Nothing but gas and graveyard: record the lineage, change no cards.
    host.provenance.children.push_back(std::move(guest.provenance));
    return diags;
  }

  warn_importance_mismatch(host, guest, diags);

  std::set<int> dedup_old;
  IdMaps maps = conflict_maps(host, guest, dedup_old);
  std::set<int> dedup_new;
  for (int id : dedup_old) {
    auto it = maps.mat.find(id);
    dedup_new.insert(it == maps.mat.end() ? id : it->second);
  }
  remap(guest, maps);

  guest.cells.pop_back(); // graveyard
  guest.cells.pop_back(); // gas

  std::vector<int> excluded;
  for (const auto& c : guest.cells)
    if (!c.universe()) excluded.push_back(c.id);

  splice_guest(host, guest, diags, dedup_new);

  CellCard& gas = host.cells[host.cells.size() - 2];
  for (int id : excluded)
    gas.geometry = intersect_with(std::move(gas.geometry),
                                  GeometryExpr::cell_ref(id));
  if (!excluded.empty()) gas.mark_dirty();
  return diags;
}

} // namespace mcdeck
