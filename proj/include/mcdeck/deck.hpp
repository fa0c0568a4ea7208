#ifndef MCDECK_DECK_HPP
#define MCDECK_DECK_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcdeck/geometry.hpp"
#include "mcdeck/transform.hpp"

namespace mcdeck {

using json = nlohmann::ordered_json;

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Warning;
  std::string message;
  std::string locator; // "cell 10", "surface 4", "line 12", ...

  bool is_error() const { return severity == Severity::Error; }
  static Diagnostic warning(std::string msg, std::string loc = {}) {
    return {Severity::Warning, std::move(msg), std::move(loc)};
  }
  static Diagnostic error(std::string msg, std::string loc = {}) {
    return {Severity::Error, std::move(msg), std::move(loc)};
  }
};

// A trcl/fill transform value: a numbered card reference or an inline
// transform. Inline values are normalized to cosine form on parse.
struct CellTransform {
  bool by_card = false;
  int card_id = 0;
  Transform3D inline_tr;

  bool operator==(const CellTransform& o) const {
    if (by_card != o.by_card) return false;
    if (by_card) return card_id == o.card_id;
    return inline_tr.rotation.m == o.inline_tr.rotation.m &&
           inline_tr.translation.x == o.inline_tr.translation.x &&
           inline_tr.translation.y == o.inline_tr.translation.y &&
           inline_tr.translation.z == o.inline_tr.translation.z;
  }
};

struct FillSpec {
  bool is_array = false;
  int universe = 0;                      // scalar form
  std::array<int, 6> bounds{};           // i_lo i_hi j_lo j_hi k_lo k_hi
  std::vector<int> universes;            // array form, k-major like the card
  std::optional<CellTransform> transform;

  bool operator==(const FillSpec& o) const {
    return is_array == o.is_array && universe == o.universe &&
           bounds == o.bounds && universes == o.universes &&
           transform == o.transform;
  }
};

// One keyword parameter on a cell card. trcl/fill/u/lat get structured
// values; everything else keeps its raw value text.
struct CellParam {
  std::string key; // lowercased, includes designator ("imp:p", "trcl", "fill")
  std::variant<std::string, int, CellTransform, FillSpec> value;

  bool operator==(const CellParam& o) const {
    return key == o.key && value == o.value;
  }
};

struct CellCard {
  int id = 0;
  int material_id = 0;
  std::optional<double> density;
  std::string density_text; // original token, reused when rewriting
  GeometryExpr geometry;
  std::vector<CellParam> params;
  std::string trailing_comment;   // first $-comment on any source line
  std::vector<std::string> raw_lines; // source bytes; empty = needs re-layout

  void mark_dirty() { raw_lines.clear(); }
  bool dirty() const { return raw_lines.empty(); }

  const CellParam* find_param(const std::string& key) const;
  CellParam* find_param(const std::string& key);
  std::optional<int> universe() const;

  bool operator==(const CellCard& o) const;
};

struct SurfaceCard {
  int id = 0;
  char modifier = 0; // 0, '*' (reflective) or '+' (white)
  std::optional<int> transform_id;
  std::string mnemonic; // lowercased
  std::vector<double> coeffs;
  std::vector<std::string> coeff_texts; // original tokens
  std::string trailing_comment;
  std::vector<std::string> raw_lines;

  void mark_dirty() { raw_lines.clear(); }
  bool dirty() const { return raw_lines.empty(); }

  bool operator==(const SurfaceCard& o) const;
};

struct TransformCard {
  int id = 0;
  Transform3D t;                  // always forward cosine form
  bool source_was_reverse = false;
  bool source_was_degrees = false;
  std::vector<std::string> raw_lines;

  void mark_dirty() { raw_lines.clear(); }
  bool dirty() const { return raw_lines.empty(); }

  bool operator==(const TransformCard& o) const;
};

struct MaterialEntry {
  std::string zaid;     // "13027"
  std::string library;  // "80c" (may be empty)
  double fraction = 0.0;
  std::string fraction_text;

  bool operator==(const MaterialEntry& o) const {
    return zaid == o.zaid && library == o.library && fraction == o.fraction;
  }
};

// mt/mx/mpn card attached to a material.
struct MaterialAux {
  std::string kind;    // "mt", "mx:p", "mpn"
  std::string payload; // whitespace-normalized text after the card name
  std::vector<std::string> raw_lines;

  bool operator==(const MaterialAux& o) const {
    return kind == o.kind && payload == o.payload;
  }
};

struct MaterialCard {
  int id = 0;
  std::vector<MaterialEntry> entries;
  std::vector<std::string> options; // trailing keyword=value tokens
  std::vector<MaterialAux> aux;
  std::vector<std::string> raw_lines;

  void mark_dirty() { raw_lines.clear(); }
  bool dirty() const { return raw_lines.empty(); }

  bool operator==(const MaterialCard& o) const;
};

// Opaque data card (mode, sdef, imp arrays, tallies, ...). Never rewritten.
struct OtherCard {
  std::string name; // lowercased first token
  std::vector<std::string> raw_lines;

  bool operator==(const OtherCard& o) const { return raw_lines == o.raw_lines; }
};

// Position of one data card within the data block, so untouched decks write
// back in source order.
struct DataSlot {
  enum class Kind { Transform, Material, Other };
  Kind kind = Kind::Other;
  std::size_t index = 0;
};

// Trailing JSON side-channel: one object of named groups.
struct MetadataBlock {
  json groups = json::object();

  bool empty() const { return groups.empty(); }
  bool operator==(const MetadataBlock& o) const { return groups == o.groups; }
};

// History of one source file: where it came from, what was applied to it
// while it was the root object, and everything inserted into it.
struct ProvenanceNode {
  std::string source_path;
  std::optional<std::string> version_note;
  std::vector<std::string> applied_transforms; // human-readable descriptions
  Transform3D net; // left-to-right composition of the applied transforms
  std::vector<ProvenanceNode> children;
};

struct Deck {
  std::string title;
  std::vector<std::string> message_lines; // verbatim message block, if any
  std::vector<CellCard> cells;
  std::vector<SurfaceCard> surfaces;
  std::vector<TransformCard> transforms;
  std::vector<MaterialCard> materials;
  std::vector<OtherCard> other_cards;
  std::vector<DataSlot> data_order;
  MetadataBlock metadata;
  ProvenanceNode provenance;
  Transform3D cumulative;
  std::vector<Diagnostic> parse_warnings;
  bool had_cell_insertion = false;

  CellCard* find_cell(int id);
  const CellCard* find_cell(int id) const;
  SurfaceCard* find_surface(int id);
  const SurfaceCard* find_surface(int id) const;
  TransformCard* find_transform(int id);
  const TransformCard* find_transform(int id) const;
  MaterialCard* find_material(int id);
  const MaterialCard* find_material(int id) const;

  int max_cell_id() const;
  int max_surface_id() const;
  int max_transform_id() const;
  int max_material_id() const;
  int max_universe_id() const;

  const CellCard* gas_cell() const;       // second-to-last, if >= 2 cells
  const CellCard* graveyard_cell() const; // last, if >= 2 cells

  void push_data_slot(DataSlot::Kind kind, std::size_t index) {
    data_order.push_back({kind, index});
  }

  // Card-content equality (title, blocks, metadata); provenance and the
  // cumulative transform are deliberately excluded.
  bool same_cards(const Deck& o) const;
};

// Structural diagnostics: duplicate ids, dangling references, graveyard
// shape, metadata integrity, plus warnings carried over from parsing.
// Returns an empty error set iff the deck is assemblable.
std::vector<Diagnostic> validate_structure(const Deck& deck);

bool is_assemblable(const Deck& deck);

// Geometry of the graveyard (last) cell. Throws NotAssemblable when
// validate_structure reports errors.
GeometryExpr bounding_expression(const Deck& deck);

// All universe ids declared via u= on any cell.
std::vector<int> declared_universes(const Deck& deck);

std::string severity_name(Diagnostic::Severity s);

} // namespace mcdeck

#endif
