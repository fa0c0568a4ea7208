#include "mcdeck/deck_transform.hpp"

#include <map>
#include <set>

#include "mcdeck/errors.hpp"
#include "mcdeck/numfmt.hpp"
#include "mcdeck/renumber.hpp"

namespace mcdeck {

namespace {

void note_applied(Deck& deck, const Transform3D& t,
                  const std::string& description) {
  deck.cumulative = compose_surface_transform(deck.cumulative, t);
  deck.provenance.net = compose_surface_transform(deck.provenance.net, t);
  deck.provenance.applied_transforms.push_back(description);
}

std::string vec_text(const Vec3& v) {
  return "[" + fmt_shortest(v.x) + ", " + fmt_shortest(v.y) + ", " +
         fmt_shortest(v.z) + "]";
}

} // namespace

std::vector<Diagnostic> transform_deck(Deck& deck, const Transform3D& t,
                                       const std::string& description) {
  std::vector<Diagnostic> diags;
  if (t.is_identity()) {
    note_applied(deck, t, description);
    return diags;
  }

  std::set<int> surf_refs, cell_refs;
  for (const auto& s : deck.surfaces)
    if (s.transform_id) surf_refs.insert(*s.transform_id);
  for (const auto& c : deck.cells) {
    for (const auto& p : c.params) {
      if (const auto* ct = std::get_if<CellTransform>(&p.value)) {
        if (ct->by_card) cell_refs.insert(ct->card_id);
      } else if (const auto* fs = std::get_if<FillSpec>(&p.value)) {
        if (fs->transform && fs->transform->by_card)
          cell_refs.insert(fs->transform->card_id);
      }
    }
  }

  // Old card values, needed when a shared card's cell references must be
  // detached before the card itself is recomposed for its surfaces.
  std::map<int, Transform3D> old_cards;
  for (const auto& tc : deck.transforms) old_cards[tc.id] = tc.t;

  for (auto& cell : deck.cells) {
    bool changed = false;
    bool is_lattice = cell.find_param("lat") != nullptr;
    auto update_slot = [&](CellTransform& ct, bool from_fill) {
      if (ct.by_card) {
        if (!surf_refs.count(ct.card_id)) return; // card updated in place
        auto it = old_cards.find(ct.card_id);
        Transform3D base = it != old_cards.end() ? it->second : Transform3D{};
        ct.by_card = false;
        ct.card_id = 0;
        ct.inline_tr = compose_cell_transform(base, t);
        changed = true;
      } else {
        ct.inline_tr = compose_cell_transform(ct.inline_tr, t);
        changed = true;
      }
      if (from_fill && is_lattice)
        diags.push_back(Diagnostic::warning(
            "lattice fill transform composed with a deck transform; check "
            "the lattice placement",
            "cell " + std::to_string(cell.id)));
    };
    for (auto& p : cell.params) {
      if (auto* ct = std::get_if<CellTransform>(&p.value)) {
        update_slot(*ct, false);
      } else if (auto* fs = std::get_if<FillSpec>(&p.value)) {
        if (fs->transform) update_slot(*fs->transform, true);
      }
    }
    if (changed) cell.mark_dirty();
  }

  for (auto& tc : deck.transforms) {
    bool cell_only = cell_refs.count(tc.id) && !surf_refs.count(tc.id);
    tc.t = cell_only ? compose_cell_transform(tc.t, t)
                     : compose_surface_transform(tc.t, t);
    tc.mark_dirty();
  }

  std::vector<SurfaceCard*> bare;
  for (auto& s : deck.surfaces)
    if (!s.transform_id) bare.push_back(&s);
  if (!bare.empty()) {
    TransformCard nc;
    nc.id = deck.max_transform_id() + 1;
    nc.t = t;
    deck.transforms.push_back(std::move(nc));
    deck.push_data_slot(DataSlot::Kind::Transform, deck.transforms.size() - 1);
    for (SurfaceCard* s : bare) {
      s->transform_id = deck.transforms.back().id;
      s->mark_dirty();
    }
  }

  note_applied(deck, t, description);
  return diags;
}

std::vector<Diagnostic> translate_deck(Deck& deck, const Vec3& shift) {
  Transform3D t{Mat3::identity(), shift};
  return transform_deck(deck, t, "Translation of vector: " + vec_text(shift));
}

std::vector<Diagnostic> rotate_deck_axis(Deck& deck, Axis axis,
                                         double angle_deg, const Vec3& shift) {
  Transform3D t = axis_rotation(axis, angle_deg, shift);
  const char* name = axis == Axis::X ? "X" : axis == Axis::Y ? "Y" : "Z";
  return transform_deck(deck, t,
                        "Translation: " + vec_text(shift) + " Rotation " +
                            name + ": " + fmt_shortest(angle_deg));
}

std::vector<Diagnostic> rotate_deck_arbitrary(Deck& deck, const Vec3& axis,
                                              double angle_deg,
                                              const Vec3& shift) {
  Transform3D t = arbitrary_axis_rotation(axis, angle_deg, shift);
  return transform_deck(deck, t,
                        "Translation: " + vec_text(shift) +
                            " Rotation axis " + vec_text(axis) + ": " +
                            fmt_shortest(angle_deg));
}

std::vector<Diagnostic> apply_tr_card(Deck& deck,
                                      const std::array<double, 12>& entries) {
  Transform3D t = from_tr_entries(entries);
  std::string desc = "Applied transform card: [";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) desc += ", ";
    desc += fmt_shortest(entries[i]);
  }
  desc += "]";
  return transform_deck(deck, t, desc);
}

Transform3D get_cumulative_transform(const Deck& deck) {
  return deck.cumulative;
}

namespace {

// Surfaces used by a cell, following #n complements.
void collect_cell_surfaces(const Deck& deck, const CellCard& cell,
                           std::set<int>& visited_cells,
                           std::set<int>& surfaces) {
  if (!visited_cells.insert(cell.id).second) return;
  for_each_surface_ref(cell.geometry,
                       [&](int id, int) { surfaces.insert(id); });
  for_each_cell_ref(cell.geometry, [&](int id) {
    if (const CellCard* inner = deck.find_cell(id))
      collect_cell_surfaces(deck, *inner, visited_cells, surfaces);
  });
}

} // namespace

std::vector<Diagnostic> resolve_trcl(Deck& deck) {
  std::vector<Diagnostic> diags;

  // Cells whose surfaces MCNP will clone: every cell reachable from a
  // trcl-carrying cell through #n references.
  std::set<int> closure_cells;
  std::set<int> needed_surfaces;
  for (const auto& cell : deck.cells) {
    if (!cell.find_param("trcl")) continue;
    std::set<int> visited;
    collect_cell_surfaces(deck, cell, visited, needed_surfaces);
    closure_cells.insert(visited.begin(), visited.end());
  }

  std::vector<int> offending;
  for (int id : needed_surfaces)
    if (id > 999 && deck.find_surface(id)) offending.push_back(id);
  if (offending.empty()) return diags;

  std::set<int> used;
  for (const auto& s : deck.surfaces) used.insert(s.id);
  auto next_free = [&used]() {
    for (int i = 1; i <= 999; ++i) {
      if (!used.count(i)) {
        used.insert(i);
        return i;
      }
    }
    throw CapacityExceeded(
        "no free surface id <= 999 left for trcl resolution");
  };

  for (int id : offending) {
    bool shared = false;
    for (const auto& cell : deck.cells) {
      if (closure_cells.count(cell.id)) continue;
      bool refs = false;
      for_each_surface_ref(cell.geometry, [&](int sid, int) {
        if (sid == id) refs = true;
      });
      if (refs) {
        shared = true;
        break;
      }
    }

    int fresh = next_free();
    if (!shared) {
      IdMaps maps;
      maps.surf[id] = fresh;
      remap(deck, maps);
    } else {
      const SurfaceCard* orig = deck.find_surface(id);
      SurfaceCard copy = *orig;
      copy.id = fresh;
      copy.mark_dirty();
      auto pos = deck.surfaces.begin();
      while (pos != deck.surfaces.end() && pos->id != id) ++pos;
      deck.surfaces.insert(pos + 1, std::move(copy));

      for (auto& cell : deck.cells) {
        if (!closure_cells.count(cell.id)) continue;
        bool changed = false;
        for_each_surface_ref(cell.geometry, [&](int& sid, int) {
          if (sid == id) {
            sid = fresh;
            changed = true;
          }
        });
        if (changed) cell.mark_dirty();
      }
      diags.push_back(Diagnostic::warning(
          "surface " + std::to_string(id) + " duplicated as " +
              std::to_string(fresh) + " for cells carrying trcl",
          "surface " + std::to_string(id)));
    }
  }
  return diags;
}

} // namespace mcdeck
