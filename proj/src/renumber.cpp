#include "mcdeck/renumber.hpp"

#include <set>
#include <string>

#include "mcdeck/errors.hpp"

namespace mcdeck {

namespace {

int lookup(const std::map<int, int>& m, int id) {
  auto it = m.find(id);
  return it == m.end() ? id : it->second;
}

// The final id multiset per namespace must stay duplicate-free.
template <typename Cards>
void check_targets(const char* what, const Cards& cards,
                   const std::map<int, int>& m) {
  std::set<int> finals;
  for (const auto& c : cards) {
    if (!finals.insert(lookup(m, c.id)).second)
      throw CollisionError(std::string(what) + " id " +
                           std::to_string(lookup(m, c.id)) +
                           " would be assigned twice");
  }
}

void remap_metadata_list(json& group, const char* key,
                         const std::map<int, int>& m, bool& changed) {
  if (m.empty() || !group.contains(key)) return;
  json& list = group[key];
  if (!list.is_array()) return;
  for (auto& v : list) {
    if (!v.is_number_integer()) continue;
    int id = v.get<int>();
    int mapped = lookup(m, id);
    if (mapped != id) {
      v = mapped;
      changed = true;
    }
  }
}

void remap_cell_transform(CellTransform& ct, const std::map<int, int>& m,
                          bool& changed) {
  if (ct.by_card) {
    int mapped = lookup(m, ct.card_id);
    if (mapped != ct.card_id) {
      ct.card_id = mapped;
      changed = true;
    }
  }
}

} // namespace

void remap(Deck& deck, const IdMaps& maps) {
  if (maps.empty()) return;
  if (maps.universe.count(0))
    throw CollisionError("universe 0 cannot be remapped");

  check_targets("cell", deck.cells, maps.cell);
  check_targets("surface", deck.surfaces, maps.surf);
  check_targets("transform", deck.transforms, maps.trans);
  check_targets("material", deck.materials, maps.mat);
  {
    std::set<int> olds, finals;
    for (int u : declared_universes(deck)) olds.insert(u);
    for (int u : olds) {
      if (!finals.insert(lookup(maps.universe, u)).second)
        throw CollisionError("universe id " +
                             std::to_string(lookup(maps.universe, u)) +
                             " would be assigned twice");
    }
  }

  auto map_signed = [](const std::map<int, int>& m, int v) {
    int a = v < 0 ? -v : v;
    int mapped = lookup(m, a);
    return v < 0 ? -mapped : mapped;
  };

  for (auto& cell : deck.cells) {
    bool changed = false;

    int nid = lookup(maps.cell, cell.id);
    if (nid != cell.id) {
      cell.id = nid;
      changed = true;
    }
    if (cell.material_id != 0) {
      int nmat = lookup(maps.mat, cell.material_id);
      if (nmat != cell.material_id) {
        cell.material_id = nmat;
        changed = true;
      }
    }
    if (!maps.surf.empty())
      for_each_surface_ref(cell.geometry, [&](int& ref, int) {
        int mapped = lookup(maps.surf, ref);
        if (mapped != ref) {
          ref = mapped;
          changed = true;
        }
      });
    if (!maps.cell.empty())
      for_each_cell_ref(cell.geometry, [&](int& ref) {
        int mapped = lookup(maps.cell, ref);
        if (mapped != ref) {
          ref = mapped;
          changed = true;
        }
      });
    for (auto& p : cell.params) {
      if (auto* ct = std::get_if<CellTransform>(&p.value)) {
        remap_cell_transform(*ct, maps.trans, changed);
      } else if (auto* fs = std::get_if<FillSpec>(&p.value)) {
        if (fs->is_array) {
          for (int& u : fs->universes) {
            int mapped = map_signed(maps.universe, u);
            if (mapped != u) {
              u = mapped;
              changed = true;
            }
          }
        } else {
          int mapped = map_signed(maps.universe, fs->universe);
          if (mapped != fs->universe) {
            fs->universe = mapped;
            changed = true;
          }
        }
        if (fs->transform) remap_cell_transform(*fs->transform, maps.trans, changed);
      } else if (p.key == "u") {
        if (auto* u = std::get_if<int>(&p.value)) {
          int mapped = map_signed(maps.universe, *u);
          if (mapped != *u) {
            *u = mapped;
            changed = true;
          }
        }
      }
    }
    if (changed) cell.mark_dirty();
  }

  for (auto& s : deck.surfaces) {
    bool changed = false;
    int nid = lookup(maps.surf, s.id);
    if (nid != s.id) {
      s.id = nid;
      changed = true;
    }
    if (s.transform_id) {
      int ntr = lookup(maps.trans, *s.transform_id);
      if (ntr != *s.transform_id) {
        s.transform_id = ntr;
        changed = true;
      }
    }
    if (changed) s.mark_dirty();
  }

  for (auto& t : deck.transforms) {
    int nid = lookup(maps.trans, t.id);
    if (nid != t.id) {
      t.id = nid;
      t.mark_dirty();
    }
  }

  for (auto& m : deck.materials) {
    int nid = lookup(maps.mat, m.id);
    if (nid != m.id) {
      m.id = nid;
      m.mark_dirty();
      // Aux cards carry the material number in their card names.
      for (auto& aux : m.aux) aux.raw_lines.clear();
    }
  }

  remap_metadata(deck.metadata, maps);
}

void remap_metadata(MetadataBlock& meta, const IdMaps& maps) {
  for (auto& [name, group] : meta.groups.items()) {
    (void)name;
    if (!group.is_object()) continue;
    bool changed = false;
    remap_metadata_list(group, "cell", maps.cell, changed);
    remap_metadata_list(group, "surf", maps.surf, changed);
    remap_metadata_list(group, "trans", maps.trans, changed);
  }
}

void renumber(Deck& deck, int cell_start, int surf_start, int trans_start) {
  IdMaps maps;
  int next = cell_start;
  for (const auto& c : deck.cells) {
    if (c.id != next) maps.cell[c.id] = next;
    ++next;
  }
  next = surf_start;
  for (const auto& s : deck.surfaces) {
    if (s.id != next) maps.surf[s.id] = next;
    ++next;
  }
  next = trans_start;
  for (const auto& t : deck.transforms) {
    if (t.id != next) maps.trans[t.id] = next;
    ++next;
  }
  remap(deck, maps);
}

} // namespace mcdeck
