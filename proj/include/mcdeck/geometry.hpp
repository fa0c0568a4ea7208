#ifndef MCDECK_GEOMETRY_HPP
#define MCDECK_GEOMETRY_HPP

#include <functional>
#include <string>
#include <vector>

namespace mcdeck {

// Boolean CSG expression over signed surface references. Value-semantic tree
// so Deck copies stay deep. Explicit source parentheses are kept as Group
// nodes; the serializer still adds parentheses wherever precedence needs them.
struct GeometryExpr {
  enum class Kind {
    Surface,      // signed surface reference; ref = id, sign = +1/-1
    CellRef,      // #n complement of cell n; ref = id
    Complement,   // #(expr); children[0]
    Group,        // (expr); children[0]
    Intersection, // children, >= 2
    Union,        // children, >= 2
  };

  Kind kind = Kind::Surface;
  int ref = 0;
  int sign = 1;
  std::vector<GeometryExpr> children;

  static GeometryExpr surface(int id, int sense_sign) {
    GeometryExpr e;
    e.kind = Kind::Surface;
    e.ref = id;
    e.sign = sense_sign;
    return e;
  }
  static GeometryExpr cell_ref(int id) {
    GeometryExpr e;
    e.kind = Kind::CellRef;
    e.ref = id;
    return e;
  }
  static GeometryExpr group(GeometryExpr inner) {
    GeometryExpr e;
    e.kind = Kind::Group;
    e.children.push_back(std::move(inner));
    return e;
  }
  static GeometryExpr complement(GeometryExpr inner) {
    GeometryExpr e;
    e.kind = Kind::Complement;
    e.children.push_back(std::move(inner));
    return e;
  }
  static GeometryExpr intersection(std::vector<GeometryExpr> parts);
  static GeometryExpr union_of(std::vector<GeometryExpr> parts);

  bool operator==(const GeometryExpr& o) const;
};

// Parses an MCNP cell geometry expression ("(1 #3 9) (-3:-4)").
GeometryExpr parse_geometry(const std::string& text);

std::string to_string(const GeometryExpr& e);

// Appends `extra` to `base` as one more intersected factor, preserving the
// existing grouping. Non-atomic extras get wrapped in a Group.
GeometryExpr intersect_with(GeometryExpr base, GeometryExpr extra);

void for_each_surface_ref(GeometryExpr& e, const std::function<void(int&, int)>& fn);
void for_each_surface_ref(const GeometryExpr& e,
                          const std::function<void(int, int)>& fn);
void for_each_cell_ref(GeometryExpr& e, const std::function<void(int&)>& fn);
void for_each_cell_ref(const GeometryExpr& e, const std::function<void(int)>& fn);

bool contains_cell_ref(const GeometryExpr& e);

} // namespace mcdeck

#endif
