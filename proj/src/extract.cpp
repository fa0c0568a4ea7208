#include "mcdeck/extract.hpp"

#include <algorithm>
#include <map>

#include "mcdeck/errors.hpp"
#include "mcdeck/numfmt.hpp"

namespace mcdeck {

namespace {

void close_over_cell(const Deck& deck, int cell_id, Closure& out,
                     std::map<int, std::vector<const CellCard*>>& by_universe);

void add_universe(const Deck& deck, int universe, Closure& out,
                  std::map<int, std::vector<const CellCard*>>& by_universe) {
  if (universe == 0 || !out.universes.insert(universe).second) return;
  for (const CellCard* member : by_universe[universe])
    close_over_cell(deck, member->id, out, by_universe);
}

void close_over_cell(const Deck& deck, int cell_id, Closure& out,
                     std::map<int, std::vector<const CellCard*>>& by_universe) {
  if (!out.cells.insert(cell_id).second) return;
  const CellCard* cell = deck.find_cell(cell_id);
  if (!cell) throw UnknownId("cell " + std::to_string(cell_id) + " not found");

  if (cell->material_id != 0) out.materials.insert(cell->material_id);
  for_each_surface_ref(cell->geometry,
                       [&](int id, int) { out.surfaces.insert(id); });
  for_each_cell_ref(cell->geometry, [&](int id) {
    close_over_cell(deck, id, out, by_universe);
  });
  if (auto u = cell->universe()) out.universes.insert(*u);

  for (const auto& p : cell->params) {
    if (const auto* ct = std::get_if<CellTransform>(&p.value)) {
      if (ct->by_card) out.transforms.insert(ct->card_id);
    } else if (const auto* fs = std::get_if<FillSpec>(&p.value)) {
      if (fs->transform && fs->transform->by_card)
        out.transforms.insert(fs->transform->card_id);
      if (fs->is_array) {
        for (int u : fs->universes) add_universe(deck, std::abs(u), out, by_universe);
      } else {
        add_universe(deck, std::abs(fs->universe), out, by_universe);
      }
    }
  }
}

} // namespace

Closure dependency_closure(const Deck& deck, const std::set<int>& cell_ids) {
  std::map<int, std::vector<const CellCard*>> by_universe;
  for (const auto& c : deck.cells)
    if (auto u = c.universe()) by_universe[*u].push_back(&c);

  Closure out;
  for (int id : cell_ids) close_over_cell(deck, id, out, by_universe);

  for (int sid : out.surfaces) {
    const SurfaceCard* s = deck.find_surface(sid);
    if (s && s->transform_id && *s->transform_id != 0)
      out.transforms.insert(*s->transform_id);
  }
  return out;
}

Deck extract(const Deck& deck, const std::set<int>& cell_ids,
             std::vector<Diagnostic>* diags) {
  std::vector<Diagnostic> local;
  std::vector<Diagnostic>& d = diags ? *diags : local;

  if (cell_ids.empty()) throw UnknownId("no cells selected for extraction");
  for (int id : cell_ids)
    if (!deck.find_cell(id))
      throw UnknownId("cell " + std::to_string(id) + " not found");
  const CellCard* gas = deck.gas_cell();
  const CellCard* grave = deck.graveyard_cell();
  if ((gas && cell_ids.count(gas->id)) || (grave && cell_ids.count(grave->id)))
    throw GasOrGraveyardSelected(
        "the gas and graveyard cells cannot be extracted");

  Closure closure = dependency_closure(deck, cell_ids);

  Deck out;
  out.title = deck.title;

  for (const auto& c : deck.cells)
    if (closure.cells.count(c.id)) out.cells.push_back(c);
  for (const auto& s : deck.surfaces)
    if (closure.surfaces.count(s.id)) out.surfaces.push_back(s);

  // Ambient material for the generated gas cell comes from the source one.
  int gas_material = 0;
  std::optional<double> gas_density;
  std::string gas_density_text;
  if (gas && is_assemblable(deck)) {
    gas_material = gas->material_id;
    gas_density = gas->density;
    gas_density_text = gas->density_text;
    if (gas_material != 0) closure.materials.insert(gas_material);
  } else {
    d.push_back(Diagnostic::warning(
        "source gas cell unavailable; extracted gas cell is void"));
  }

  // Data block rebuilt in source order, restricted to the closure.
  for (const auto& slot : deck.data_order) {
    if (slot.kind == DataSlot::Kind::Transform) {
      const TransformCard& t = deck.transforms.at(slot.index);
      if (closure.transforms.count(t.id)) {
        out.transforms.push_back(t);
        out.push_data_slot(DataSlot::Kind::Transform, out.transforms.size() - 1);
      }
    } else if (slot.kind == DataSlot::Kind::Material) {
      const MaterialCard& m = deck.materials.at(slot.index);
      if (closure.materials.count(m.id)) {
        out.materials.push_back(m);
        out.push_data_slot(DataSlot::Kind::Material, out.materials.size() - 1);
      }
    }
  }

  // Bounding sphere and the two generated cells.
  SurfaceCard sphere;
  sphere.id = out.surfaces.empty() ? 1 : out.max_surface_id() + 1;
  sphere.mnemonic = "so";
  sphere.coeffs = {2000.0};
  sphere.coeff_texts = {"2000"};
  out.surfaces.push_back(std::move(sphere));
  int sphere_id = out.surfaces.back().id;

  auto copy_imp = [](const CellCard* from, CellCard& to) {
    if (!from) return;
    for (const auto& p : from->params)
      if (p.key.rfind("imp", 0) == 0) to.params.push_back(p);
  };

  CellCard new_gas;
  new_gas.id = out.max_cell_id() + 1;
  new_gas.material_id = gas_material;
  new_gas.density = gas_density;
  new_gas.density_text = gas_density_text;
  new_gas.geometry = GeometryExpr::surface(sphere_id, -1);
  for (const auto& c : out.cells)
    if (!c.universe())
      new_gas.geometry =
          intersect_with(std::move(new_gas.geometry), GeometryExpr::cell_ref(c.id));
  copy_imp(gas, new_gas);

  CellCard new_grave;
  new_grave.id = new_gas.id + 1;
  new_grave.material_id = 0;
  new_grave.geometry = GeometryExpr::surface(sphere_id, +1);
  copy_imp(grave, new_grave);

  out.cells.push_back(std::move(new_gas));
  out.cells.push_back(std::move(new_grave));

  // Metadata groups survive only when everything they name was extracted.
  for (const auto& [name, group] : deck.metadata.groups.items()) {
    bool keep = true;
    if (group.is_object()) {
      auto check = [&](const char* key, const std::set<int>& ids) {
        if (!group.contains(key) || !group[key].is_array()) return;
        for (const auto& v : group[key])
          if (!v.is_number_integer() || !ids.count(v.get<int>())) keep = false;
      };
      check("cell", closure.cells);
      check("surf", closure.surfaces);
      check("trans", closure.transforms);
    }
    if (keep) {
      out.metadata.groups[name] = group;
    } else {
      d.push_back(Diagnostic::warning(
          "metadata group '" + name + "' references cards left behind; dropped"));
    }
  }

  std::string ids_text;
  for (int id : cell_ids) {
    if (!ids_text.empty()) ids_text += ", ";
    ids_text += std::to_string(id);
  }
  out.provenance.source_path = deck.provenance.source_path;
  out.provenance.version_note =
      "extracted from " + deck.provenance.source_path + " cells [" + ids_text + "]";
  return out;
}

} // namespace mcdeck
