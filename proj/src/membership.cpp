#include "mcdeck/membership.hpp"

#include <algorithm>
#include <cmath>

#include "mcdeck/errors.hpp"

namespace mcdeck {

namespace {

constexpr double kBand = 1e-9;

// Signed quadric value; negative inside. The band check scales with the
// point so large geometries (radius 2000) are treated consistently.
struct SenseValue {
  double f = 0.0;
  double scale = 1.0;

  int sign(double band) const {
    double tol = band * scale;
    if (f > tol) return 1;
    if (f < -tol) return -1;
    return 0;
  }
};

SenseValue eval_quadric(const SurfaceCard& s, const Vec3& q) {
  const std::vector<double>& c = s.coeffs;
  auto need = [&](std::size_t n) {
    if (c.size() < n)
      throw UnsupportedMnemonic("surface " + std::to_string(s.id) + " (" +
                                s.mnemonic + ") has too few coefficients");
  };
  auto sq = [](double v) { return v * v; };

  const std::string& m = s.mnemonic;
  if (m == "p") {
    need(4);
    return {c[0] * q.x + c[1] * q.y + c[2] * q.z - c[3],
            1.0 + std::abs(q.x) + std::abs(q.y) + std::abs(q.z)};
  }
  if (m == "px") {
    need(1);
    return {q.x - c[0], 1.0 + std::abs(q.x)};
  }
  if (m == "py") {
    need(1);
    return {q.y - c[0], 1.0 + std::abs(q.y)};
  }
  if (m == "pz") {
    need(1);
    return {q.z - c[0], 1.0 + std::abs(q.z)};
  }

  double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
  if (m == "so") {
    need(1);
    return {r2 - sq(c[0]), 1.0 + r2};
  }
  if (m == "s" || m == "sph") {
    need(4);
    double f = sq(q.x - c[0]) + sq(q.y - c[1]) + sq(q.z - c[2]) - sq(c[3]);
    return {f, 1.0 + r2};
  }
  if (m == "sx") {
    need(2);
    return {sq(q.x - c[0]) + q.y * q.y + q.z * q.z - sq(c[1]), 1.0 + r2};
  }
  if (m == "sy") {
    need(2);
    return {q.x * q.x + sq(q.y - c[0]) + q.z * q.z - sq(c[1]), 1.0 + r2};
  }
  if (m == "sz") {
    need(2);
    return {q.x * q.x + q.y * q.y + sq(q.z - c[0]) - sq(c[1]), 1.0 + r2};
  }
  if (m == "cx") {
    need(1);
    return {q.y * q.y + q.z * q.z - sq(c[0]), 1.0 + r2};
  }
  if (m == "cy") {
    need(1);
    return {q.x * q.x + q.z * q.z - sq(c[0]), 1.0 + r2};
  }
  if (m == "cz") {
    need(1);
    return {q.x * q.x + q.y * q.y - sq(c[0]), 1.0 + r2};
  }
  if (m == "c/x") {
    need(3);
    return {sq(q.y - c[0]) + sq(q.z - c[1]) - sq(c[2]), 1.0 + r2};
  }
  if (m == "c/y") {
    need(3);
    return {sq(q.x - c[0]) + sq(q.z - c[1]) - sq(c[2]), 1.0 + r2};
  }
  if (m == "c/z") {
    need(3);
    return {sq(q.x - c[0]) + sq(q.y - c[1]) - sq(c[2]), 1.0 + r2};
  }
  if (m == "rpp") {
    need(6);
    // Decomposed into six slabs; the largest violation wins.
    double f = c[0] - q.x;
    f = std::max(f, q.x - c[1]);
    f = std::max(f, c[2] - q.y);
    f = std::max(f, q.y - c[3]);
    f = std::max(f, c[4] - q.z);
    f = std::max(f, q.z - c[5]);
    return {f, 1.0 + std::abs(q.x) + std::abs(q.y) + std::abs(q.z)};
  }
  throw UnsupportedMnemonic("surface " + std::to_string(s.id) +
                            " uses unsupported mnemonic '" + m + "'");
}

SenseValue surface_value(const Deck& deck, const SurfaceCard& s,
                         const Vec3& p) {
  Vec3 q = p;
  if (s.transform_id && *s.transform_id != 0) {
    const TransformCard* tc = deck.find_transform(*s.transform_id);
    if (!tc)
      throw UnknownId("surface " + std::to_string(s.id) +
                      " references missing transform " +
                      std::to_string(*s.transform_id));
    q = apply_inverse_to_point(tc->t, p);
  }
  return eval_quadric(s, q);
}

const Transform3D* cell_trcl(const Deck& deck, const CellCard& cell,
                             Transform3D& storage) {
  const CellParam* p = cell.find_param("trcl");
  if (!p) return nullptr;
  const auto* ct = std::get_if<CellTransform>(&p->value);
  if (!ct) return nullptr;
  if (ct->by_card) {
    const TransformCard* tc = deck.find_transform(ct->card_id);
    if (!tc)
      throw UnknownId("cell " + std::to_string(cell.id) +
                      " references missing transform " +
                      std::to_string(ct->card_id));
    storage = tc->t;
  } else {
    storage = ct->inline_tr;
  }
  return &storage;
}

bool eval_geometry(const Deck& deck, const GeometryExpr& e, const Vec3& p);

bool cell_contains(const Deck& deck, const CellCard& cell, const Vec3& p) {
  // trcl moves the cell's content by the card's forward map; membership of p
  // is membership of the pulled-back point in the untransformed geometry.
  Transform3D storage;
  const Transform3D* tr = cell_trcl(deck, cell, storage);
  Vec3 q = tr ? apply_inverse_to_point(*tr, p) : p;
  return eval_geometry(deck, cell.geometry, q);
}

bool eval_geometry(const Deck& deck, const GeometryExpr& e, const Vec3& p) {
  switch (e.kind) {
    case GeometryExpr::Kind::Surface: {
      const SurfaceCard* s = deck.find_surface(e.ref);
      if (!s) throw UnknownId("surface " + std::to_string(e.ref) + " not found");
      return surface_value(deck, *s, p).sign(kBand) == e.sign;
    }
    case GeometryExpr::Kind::CellRef: {
      const CellCard* c = deck.find_cell(e.ref);
      if (!c) throw UnknownId("cell " + std::to_string(e.ref) + " not found");
      return !cell_contains(deck, *c, p);
    }
    case GeometryExpr::Kind::Complement:
      return !eval_geometry(deck, e.children[0], p);
    case GeometryExpr::Kind::Group:
      return eval_geometry(deck, e.children[0], p);
    case GeometryExpr::Kind::Intersection:
      for (const auto& child : e.children)
        if (!eval_geometry(deck, child, p)) return false;
      return true;
    case GeometryExpr::Kind::Union:
      for (const auto& child : e.children)
        if (eval_geometry(deck, child, p)) return true;
      return false;
  }
  return false;
}

} // namespace

int surface_sense(const Deck& deck, const SurfaceCard& surface, const Vec3& p) {
  return surface_value(deck, surface, p).sign(kBand);
}

bool point_in_cell(const Deck& deck, int cell_id, const Vec3& p) {
  const CellCard* cell = deck.find_cell(cell_id);
  if (!cell) throw UnknownId("cell " + std::to_string(cell_id) + " not found");
  return cell_contains(deck, *cell, p);
}

bool near_any_surface(const Deck& deck, const Vec3& p, double tol) {
  for (const auto& s : deck.surfaces)
    if (surface_value(deck, s, p).sign(tol) == 0) return true;

  // Surfaces seen through a trcl cell live in a shifted frame.
  for (const auto& cell : deck.cells) {
    Transform3D storage;
    const Transform3D* tr = cell_trcl(deck, cell, storage);
    if (!tr) continue;
    Vec3 q = apply_inverse_to_point(*tr, p);
    bool near = false;
    for_each_surface_ref(cell.geometry, [&](int id, int) {
      if (near) return;
      const SurfaceCard* s = deck.find_surface(id);
      if (s && surface_value(deck, *s, q).sign(tol) == 0) near = true;
    });
    if (near) return true;
  }
  return false;
}

} // namespace mcdeck
