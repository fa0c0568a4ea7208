#include "mcdeck/geometry.hpp"

#include <cctype>
#include <cstdlib>

#include "mcdeck/errors.hpp"

namespace mcdeck {

GeometryExpr GeometryExpr::intersection(std::vector<GeometryExpr> parts) {
  if (parts.empty()) throw SyntaxError("empty intersection");
  if (parts.size() == 1) return std::move(parts[0]);
  GeometryExpr e;
  e.kind = Kind::Intersection;
  e.children = std::move(parts);
  return e;
}

GeometryExpr GeometryExpr::union_of(std::vector<GeometryExpr> parts) {
  if (parts.empty()) throw SyntaxError("empty union");
  if (parts.size() == 1) return std::move(parts[0]);
  GeometryExpr e;
  e.kind = Kind::Union;
  e.children = std::move(parts);
  return e;
}

bool GeometryExpr::operator==(const GeometryExpr& o) const {
  return kind == o.kind && ref == o.ref && sign == o.sign &&
         children == o.children;
}

namespace {

class GeomScanner {
public:
  explicit GeomScanner(const std::string& text) : s_(text) {}

  GeometryExpr parse() {
    GeometryExpr e = parse_union();
    skip_ws();
    if (pos_ != s_.size())
      throw SyntaxError("unexpected character '" + std::string(1, s_[pos_]) +
                        "' in geometry: " + s_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool at_factor_start() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == '#' || c == '+' || c == '-' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  GeometryExpr parse_union() {
    std::vector<GeometryExpr> parts;
    parts.push_back(parse_intersection());
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ':') {
        ++pos_;
        parts.push_back(parse_intersection());
      } else {
        break;
      }
    }
    return GeometryExpr::union_of(std::move(parts));
  }

  GeometryExpr parse_intersection() {
    std::vector<GeometryExpr> parts;
    parts.push_back(parse_factor());
    while (at_factor_start()) parts.push_back(parse_factor());
    return GeometryExpr::intersection(std::move(parts));
  }

  GeometryExpr parse_factor() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("truncated geometry: " + s_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      GeometryExpr inner = parse_union();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw SyntaxError("missing ')' in geometry: " + s_);
      ++pos_;
      return GeometryExpr::group(std::move(inner));
    }
    if (c == '#') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        GeometryExpr inner = parse_union();
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ')')
          throw SyntaxError("missing ')' after '#(' in geometry: " + s_);
        ++pos_;
        return GeometryExpr::complement(std::move(inner));
      }
      return GeometryExpr::cell_ref(parse_int());
    }
    int sign = 1;
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++pos_;
    }
    return GeometryExpr::surface(parse_int(), sign);
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start)
      throw SyntaxError("expected a number in geometry: " + s_);
    return std::atoi(s_.substr(start, pos_ - start).c_str());
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void serialize(const GeometryExpr& e, std::string& out, bool parent_is_intersection) {
  switch (e.kind) {
    case GeometryExpr::Kind::Surface:
      if (e.sign < 0) out += '-';
      out += std::to_string(e.ref);
      break;
    case GeometryExpr::Kind::CellRef:
      out += '#';
      out += std::to_string(e.ref);
      break;
    case GeometryExpr::Kind::Complement:
      out += "#(";
      serialize(e.children[0], out, false);
      out += ')';
      break;
    case GeometryExpr::Kind::Group:
      out += '(';
      serialize(e.children[0], out, false);
      out += ')';
      break;
    case GeometryExpr::Kind::Intersection: {
      bool first = true;
      for (const auto& c : e.children) {
        if (!first) out += ' ';
        first = false;
        serialize(c, out, true);
      }
      break;
    }
    case GeometryExpr::Kind::Union: {
      // A bare union under an intersection needs parentheses to survive
      // re-parsing; Groups normally carry them already.
      if (parent_is_intersection) out += '(';
      bool first = true;
      for (const auto& c : e.children) {
        if (!first) out += ':';
        first = false;
        serialize(c, out, false);
      }
      if (parent_is_intersection) out += ')';
      break;
    }
  }
}

} // namespace

GeometryExpr parse_geometry(const std::string& text) {
  return GeomScanner(text).parse();
}

std::string to_string(const GeometryExpr& e) {
  std::string out;
  serialize(e, out, false);
  return out;
}

GeometryExpr intersect_with(GeometryExpr base, GeometryExpr extra) {
  bool atomic = extra.kind == GeometryExpr::Kind::Surface ||
                extra.kind == GeometryExpr::Kind::CellRef ||
                extra.kind == GeometryExpr::Kind::Group ||
                extra.kind == GeometryExpr::Kind::Complement;
  if (!atomic) extra = GeometryExpr::group(std::move(extra));
  if (base.kind == GeometryExpr::Kind::Intersection) {
    base.children.push_back(std::move(extra));
    return base;
  }
  std::vector<GeometryExpr> parts;
  if (base.kind == GeometryExpr::Kind::Union)
    base = GeometryExpr::group(std::move(base));
  parts.push_back(std::move(base));
  parts.push_back(std::move(extra));
  return GeometryExpr::intersection(std::move(parts));
}

void for_each_surface_ref(GeometryExpr& e,
                          const std::function<void(int&, int)>& fn) {
  if (e.kind == GeometryExpr::Kind::Surface) fn(e.ref, e.sign);
  for (auto& c : e.children) for_each_surface_ref(c, fn);
}

void for_each_surface_ref(const GeometryExpr& e,
                          const std::function<void(int, int)>& fn) {
  if (e.kind == GeometryExpr::Kind::Surface) fn(e.ref, e.sign);
  for (const auto& c : e.children) for_each_surface_ref(c, fn);
}

void for_each_cell_ref(GeometryExpr& e, const std::function<void(int&)>& fn) {
  if (e.kind == GeometryExpr::Kind::CellRef) fn(e.ref);
  for (auto& c : e.children) for_each_cell_ref(c, fn);
}

void for_each_cell_ref(const GeometryExpr& e,
                       const std::function<void(int)>& fn) {
  if (e.kind == GeometryExpr::Kind::CellRef) fn(e.ref);
  for (const auto& c : e.children) for_each_cell_ref(c, fn);
}

bool contains_cell_ref(const GeometryExpr& e) {
  if (e.kind == GeometryExpr::Kind::CellRef) return true;
  for (const auto& c : e.children)
    if (contains_cell_ref(c)) return true;
  return false;
}

} // namespace mcdeck
