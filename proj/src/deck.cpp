#include "mcdeck/deck.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mcdeck/errors.hpp"

namespace mcdeck {

const CellParam* CellCard::find_param(const std::string& key) const {
  for (const auto& p : params)
    if (p.key == key) return &p;
  return nullptr;
}

CellParam* CellCard::find_param(const std::string& key) {
  for (auto& p : params)
    if (p.key == key) return &p;
  return nullptr;
}

std::optional<int> CellCard::universe() const {
  const CellParam* p = find_param("u");
  if (!p) return std::nullopt;
  // A negative number declares the same universe; the sign is only a
  // truncation hint to MCNP.
  if (const int* v = std::get_if<int>(&p->value); v && *v != 0)
    return *v < 0 ? -*v : *v;
  return std::nullopt;
}

bool CellCard::operator==(const CellCard& o) const {
  return id == o.id && material_id == o.material_id && density == o.density &&
         geometry == o.geometry && params == o.params;
}

bool SurfaceCard::operator==(const SurfaceCard& o) const {
  return id == o.id && modifier == o.modifier &&
         transform_id == o.transform_id && mnemonic == o.mnemonic &&
         coeffs == o.coeffs;
}

bool TransformCard::operator==(const TransformCard& o) const {
  return id == o.id && t.rotation.m == o.t.rotation.m &&
         t.translation.x == o.t.translation.x &&
         t.translation.y == o.t.translation.y &&
         t.translation.z == o.t.translation.z;
}

bool MaterialCard::operator==(const MaterialCard& o) const {
  return id == o.id && entries == o.entries && options == o.options &&
         aux == o.aux;
}

namespace {
template <typename T>
T* find_by_id(std::vector<T>& v, int id) {
  for (auto& e : v)
    if (e.id == id) return &e;
  return nullptr;
}
template <typename T>
const T* find_by_id(const std::vector<T>& v, int id) {
  for (const auto& e : v)
    if (e.id == id) return &e;
  return nullptr;
}
template <typename T>
int max_id(const std::vector<T>& v) {
  int m = 0;
  for (const auto& e : v) m = std::max(m, e.id);
  return m;
}
} // namespace

CellCard* Deck::find_cell(int id) { return find_by_id(cells, id); }
const CellCard* Deck::find_cell(int id) const { return find_by_id(cells, id); }
SurfaceCard* Deck::find_surface(int id) { return find_by_id(surfaces, id); }
const SurfaceCard* Deck::find_surface(int id) const {
  return find_by_id(surfaces, id);
}
TransformCard* Deck::find_transform(int id) {
  return find_by_id(transforms, id);
}
const TransformCard* Deck::find_transform(int id) const {
  return find_by_id(transforms, id);
}
MaterialCard* Deck::find_material(int id) { return find_by_id(materials, id); }
const MaterialCard* Deck::find_material(int id) const {
  return find_by_id(materials, id);
}

int Deck::max_cell_id() const { return max_id(cells); }
int Deck::max_surface_id() const { return max_id(surfaces); }
int Deck::max_transform_id() const { return max_id(transforms); }
int Deck::max_material_id() const { return max_id(materials); }

int Deck::max_universe_id() const {
  int m = 0;
  for (const auto& c : cells)
    if (auto u = c.universe()) m = std::max(m, *u);
  return m;
}

const CellCard* Deck::gas_cell() const {
  if (cells.size() < 2) return nullptr;
  return &cells[cells.size() - 2];
}

const CellCard* Deck::graveyard_cell() const {
  if (cells.size() < 2) return nullptr;
  return &cells.back();
}

bool Deck::same_cards(const Deck& o) const {
  return title == o.title && message_lines == o.message_lines &&
         cells == o.cells && surfaces == o.surfaces &&
         transforms == o.transforms && materials == o.materials &&
         other_cards == o.other_cards && metadata == o.metadata;
}

std::string severity_name(Diagnostic::Severity s) {
  return s == Diagnostic::Severity::Error ? "error" : "warning";
}

std::vector<int> declared_universes(const Deck& deck) {
  std::set<int> us;
  for (const auto& c : deck.cells)
    if (auto u = c.universe()) us.insert(*u);
  return {us.begin(), us.end()};
}

namespace {

// Coefficient counts for mnemonics we can sanity-check. Values are the
// accepted counts; mnemonics absent from the table only draw a warning.
const std::map<std::string, std::vector<std::size_t>>& known_mnemonics() {
  static const std::map<std::string, std::vector<std::size_t>> table = {
      {"p", {4, 9}},   {"px", {1}},    {"py", {1}},    {"pz", {1}},
      {"so", {1}},     {"s", {4}},     {"sx", {2}},    {"sy", {2}},
      {"sz", {2}},     {"c/x", {3}},   {"c/y", {3}},   {"c/z", {3}},
      {"cx", {1}},     {"cy", {1}},    {"cz", {1}},    {"k/x", {5, 6}},
      {"k/y", {5, 6}}, {"k/z", {5, 6}},{"kx", {2, 3}}, {"ky", {2, 3}},
      {"kz", {2, 3}},  {"sq", {10}},   {"gq", {10}},   {"tx", {6}},
      {"ty", {6}},     {"tz", {6}},    {"sph", {4}},   {"rpp", {6}},
      {"rcc", {7}},    {"box", {9, 12}},
  };
  return table;
}

void check_duplicates(std::vector<Diagnostic>& out, const Deck& deck) {
  auto dup = [&out](const char* what, const std::set<int>& seen, int id) {
    if (seen.count(id))
      out.push_back(Diagnostic::error("duplicate id " + std::to_string(id),
                                      std::string(what) + " " +
                                          std::to_string(id)));
  };
  std::set<int> seen;
  for (const auto& c : deck.cells) {
    dup("cell", seen, c.id);
    seen.insert(c.id);
  }
  seen.clear();
  for (const auto& s : deck.surfaces) {
    dup("surface", seen, s.id);
    seen.insert(s.id);
  }
  seen.clear();
  for (const auto& t : deck.transforms) {
    dup("transform", seen, t.id);
    seen.insert(t.id);
  }
  seen.clear();
  for (const auto& m : deck.materials) {
    dup("material", seen, m.id);
    seen.insert(m.id);
  }
}

void check_cell_refs(std::vector<Diagnostic>& out, const Deck& deck,
                     const std::set<int>& universes) {
  for (const auto& c : deck.cells) {
    std::string loc = "cell " + std::to_string(c.id);
    for_each_surface_ref(c.geometry, [&](int id, int) {
      if (!deck.find_surface(id))
        out.push_back(Diagnostic::error(
            "reference to undefined surface " + std::to_string(id), loc));
    });
    for_each_cell_ref(c.geometry, [&](int id) {
      if (!deck.find_cell(id))
        out.push_back(Diagnostic::error(
            "reference to undefined cell #" + std::to_string(id), loc));
    });
    if (c.material_id != 0 && !deck.find_material(c.material_id))
      out.push_back(Diagnostic::error(
          "reference to undefined material " + std::to_string(c.material_id),
          loc));
    for (const auto& p : c.params) {
      if (const auto* ct = std::get_if<CellTransform>(&p.value)) {
        if (ct->by_card && !deck.find_transform(ct->card_id))
          out.push_back(Diagnostic::error("reference to undefined transform " +
                                              std::to_string(ct->card_id),
                                          loc));
      } else if (const auto* fs = std::get_if<FillSpec>(&p.value)) {
        auto check_u = [&](int u) {
          if (u < 0) u = -u;
          if (u != 0 && !universes.count(u))
            out.push_back(Diagnostic::error(
                "fill references undeclared universe " + std::to_string(u),
                loc));
        };
        if (fs->is_array)
          for (int u : fs->universes) check_u(u);
        else
          check_u(fs->universe);
        if (fs->transform && fs->transform->by_card &&
            !deck.find_transform(fs->transform->card_id))
          out.push_back(Diagnostic::error(
              "fill references undefined transform " +
                  std::to_string(fs->transform->card_id),
              loc));
      }
    }
  }
}

void check_surfaces(std::vector<Diagnostic>& out, const Deck& deck) {
  for (const auto& s : deck.surfaces) {
    std::string loc = "surface " + std::to_string(s.id);
    if (s.transform_id && !deck.find_transform(*s.transform_id))
      out.push_back(Diagnostic::error("reference to undefined transform " +
                                          std::to_string(*s.transform_id),
                                      loc));
    auto it = known_mnemonics().find(s.mnemonic);
    if (it == known_mnemonics().end()) {
      out.push_back(
          Diagnostic::warning("unknown surface mnemonic '" + s.mnemonic + "'",
                              loc));
    } else if (std::find(it->second.begin(), it->second.end(),
                         s.coeffs.size()) == it->second.end()) {
      out.push_back(Diagnostic::error(
          "mnemonic '" + s.mnemonic + "' does not take " +
              std::to_string(s.coeffs.size()) + " coefficients",
          loc));
    }
  }
}

void check_metadata(std::vector<Diagnostic>& out, const Deck& deck) {
  for (const auto& [group, value] : deck.metadata.groups.items()) {
    std::string loc = "metadata group '" + group + "'";
    if (!value.is_object()) {
      out.push_back(Diagnostic::error("group value must be a JSON object", loc));
      continue;
    }
    for (const char* key : {"cell", "surf", "trans"}) {
      if (!value.contains(key)) continue;
      const json& ids = value[key];
      if (!ids.is_array()) {
        out.push_back(Diagnostic::error(
            std::string("reserved key '") + key + "' must be a flat integer list",
            loc));
        continue;
      }
      for (const json& v : ids) {
        if (!v.is_number_integer()) {
          out.push_back(Diagnostic::error(
              std::string("reserved key '") + key + "' must be a flat integer list",
              loc));
          break;
        }
        int id = v.get<int>();
        bool ok = (std::string(key) == "cell"  ? deck.find_cell(id) != nullptr
                   : std::string(key) == "surf" ? deck.find_surface(id) != nullptr
                                                : deck.find_transform(id) != nullptr);
        if (!ok)
          out.push_back(Diagnostic::error(
              std::string("reserved key '") + key + "' references undefined id " +
                  std::to_string(id),
              loc));
      }
    }
  }
}

} // namespace

std::vector<Diagnostic> validate_structure(const Deck& deck) {
  std::vector<Diagnostic> out = deck.parse_warnings;

  check_duplicates(out, deck);

  std::set<int> universes;
  for (const auto& c : deck.cells)
    if (auto u = c.universe()) universes.insert(*u);

  check_cell_refs(out, deck, universes);
  check_surfaces(out, deck);
  check_metadata(out, deck);

  if (deck.cells.size() < 2) {
    out.push_back(Diagnostic::error(
        "deck needs at least an ambient cell and a graveyard cell"));
  } else {
    const CellCard& grave = deck.cells.back();
    if (grave.material_id != 0)
      out.push_back(Diagnostic::error("graveyard cell must be void",
                                      "cell " + std::to_string(grave.id)));
    if (contains_cell_ref(grave.geometry))
      out.push_back(Diagnostic::warning(
          "graveyard geometry uses cell complements; bounding-surface "
          "insertion will reject it",
          "cell " + std::to_string(grave.id)));
  }

  return out;
}

bool is_assemblable(const Deck& deck) {
  for (const auto& d : validate_structure(deck))
    if (d.is_error()) return false;
  return true;
}

GeometryExpr bounding_expression(const Deck& deck) {
  for (const auto& d : validate_structure(deck))
    if (d.is_error())
      throw NotAssemblable("deck is not assemblable: " + d.message +
                           (d.locator.empty() ? "" : " (" + d.locator + ")"));
  return deck.cells.back().geometry;
}

} // namespace mcdeck
