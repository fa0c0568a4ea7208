#include "mcdeck/writer.hpp"

#include <filesystem>
#include <fstream>

#include "mcdeck/errors.hpp"
#include "mcdeck/numfmt.hpp"

namespace mcdeck {

namespace {

std::string indent_path(int depth) {
  return "c " + std::string(6 * depth, ' ');
}
std::string indent_detail(int depth) {
  return "c " + std::string(6 * depth + 5, ' ');
}
std::string indent_sub(int depth) {
  return "c " + std::string(6 * depth + 10, ' ');
}

std::string vec_pyfloat(const Vec3& v) {
  return "[" + fmt_pyfloat(v.x) + ", " + fmt_pyfloat(v.y) + ", " +
         fmt_pyfloat(v.z) + "]";
}

std::string matrix_row(const Mat3& m, int r) {
  return "[" + fmt_sig(m[r][0], 8) + " " + fmt_sig(m[r][1], 8) + " " +
         fmt_sig(m[r][2], 8) + "]";
}

void emit_transform_details(const ProvenanceNode& node, int depth,
                            std::vector<std::string>& out) {
  if (node.applied_transforms.empty()) {
    out.push_back(indent_detail(depth) + "No transforms were applied");
    return;
  }
  out.push_back(indent_detail(depth) +
                "Applied translation: " + vec_pyfloat(node.net.translation));
  EulerXzx e = euler_xzx(node.net.rotation);
  out.push_back(indent_detail(depth) + "Applied Euler XZX angles: a=" +
                fmt_pyfloat(e.a) + ", b=" + fmt_pyfloat(e.b) + ", g=" +
                fmt_pyfloat(e.g) + " ");
  out.push_back(indent_detail(depth) + "Rotation matrix:");
  for (int r = 0; r < 3; ++r)
    out.push_back(indent_sub(depth) + matrix_row(node.net.rotation, r));
  out.push_back(indent_detail(depth) + "List of applied transforms:");
  for (const auto& desc : node.applied_transforms)
    out.push_back(indent_sub(depth) + desc);
}

// Keeps a header comment line under 80 columns; overflow continues on
// further "c" lines aligned two columns past the content start.
void push_wrapped(std::string line, std::vector<std::string>& out) {
  std::size_t content = line.find_first_not_of(' ', 2);
  if (content == std::string::npos) content = 2;
  std::string cont = "c " + std::string(content, ' ');
  while (line.size() > 80) {
    std::size_t cut = line.rfind(' ', 80);
    if (cut == std::string::npos || cut <= content) break; // unbreakable
    out.push_back(line.substr(0, cut));
    line = cont + line.substr(cut + 1);
  }
  out.push_back(std::move(line));
}

void emit_node(const ProvenanceNode& node, int depth,
               std::vector<std::string>& out) {
  out.push_back(indent_path(depth) + node.source_path);
  if (node.version_note)
    out.push_back(indent_detail(depth) + *node.version_note);
  emit_transform_details(node, depth, out);
  if (!node.children.empty()) {
    out.push_back(indent_path(depth + 1) + "- Files contained in " +
                  node.source_path + " :");
    for (const auto& child : node.children) emit_node(child, depth + 1, out);
  }
}

} // namespace

std::vector<std::string> build_header(const ProvenanceNode& root) {
  std::vector<std::string> out;
  out.push_back("c  - Original file: ");
  out.push_back(indent_path(0) + root.source_path);
  if (root.version_note)
    out.push_back(indent_detail(0) + *root.version_note);
  emit_transform_details(root, 0, out);
  if (!root.children.empty()) {
    out.push_back("c  - Inserted files: ");
    for (const auto& child : root.children) emit_node(child, 0, out);
  }
  std::vector<std::string> wrapped;
  wrapped.reserve(out.size());
  for (auto& line : out) push_wrapped(std::move(line), wrapped);
  return wrapped;
}

namespace {

// Lays tokens out with single blanks, wrapping below 80 columns onto
// 6-blank continuation lines.
std::string wrap_tokens(const std::vector<std::string>& tokens,
                        const std::string& trailing_comment) {
  const std::string cont(6, ' ');
  std::string out, line;
  for (const auto& tok : tokens) {
    if (line.empty()) {
      line = tok;
    } else if (line.size() + 1 + tok.size() <= 80) {
      line += ' ';
      line += tok;
    } else {
      out += line;
      out += '\n';
      line = cont + tok;
    }
  }
  if (!trailing_comment.empty() &&
      line.size() + 3 + trailing_comment.size() <= 80)
    line += " $ " + trailing_comment;
  out += line;
  return out;
}

std::string transform_value_text(const Transform3D& t) {
  std::string out = fmt_shortest(t.translation.x) + " " +
                    fmt_shortest(t.translation.y) + " " +
                    fmt_shortest(t.translation.z);
  for (const auto& row : t.rotation.m)
    for (double v : row) out += " " + fmt_shortest(v);
  return out;
}

void append_param_tokens(const CellParam& p, std::vector<std::string>& toks) {
  if (const auto* s = std::get_if<std::string>(&p.value)) {
    if (s->empty()) {
      toks.push_back(p.key);
      return;
    }
    std::size_t sp = s->find(' ');
    toks.push_back(p.key + "=" + s->substr(0, sp));
    while (sp != std::string::npos) {
      std::size_t next = s->find(' ', sp + 1);
      toks.push_back(s->substr(sp + 1, next == std::string::npos
                                           ? std::string::npos
                                           : next - sp - 1));
      sp = next;
    }
  } else if (const auto* i = std::get_if<int>(&p.value)) {
    toks.push_back(p.key + "=" + std::to_string(*i));
  } else if (const auto* ct = std::get_if<CellTransform>(&p.value)) {
    if (ct->by_card)
      toks.push_back(p.key + "=" + std::to_string(ct->card_id));
    else
      toks.push_back(p.key + "=(" + transform_value_text(ct->inline_tr) + ")");
  } else if (const auto* fs = std::get_if<FillSpec>(&p.value)) {
    if (fs->is_array) {
      toks.push_back(p.key + "=" + std::to_string(fs->bounds[0]) + ":" +
                     std::to_string(fs->bounds[1]));
      toks.push_back(std::to_string(fs->bounds[2]) + ":" +
                     std::to_string(fs->bounds[3]));
      toks.push_back(std::to_string(fs->bounds[4]) + ":" +
                     std::to_string(fs->bounds[5]));
      for (int u : fs->universes) toks.push_back(std::to_string(u));
    } else {
      std::string v = p.key + "=" + std::to_string(fs->universe);
      if (fs->transform) {
        if (fs->transform->by_card)
          v += " (" + std::to_string(fs->transform->card_id) + ")";
        else
          v += " (" + transform_value_text(fs->transform->inline_tr) + ")";
      }
      toks.push_back(v);
    }
  }
}

} // namespace

std::string layout_cell_card(const CellCard& c) {
  std::vector<std::string> toks;
  toks.push_back(std::to_string(c.id));
  toks.push_back(std::to_string(c.material_id));
  if (c.material_id != 0)
    toks.push_back(!c.density_text.empty() ? c.density_text
                                           : fmt_shortest(c.density.value()));
  // Geometry text tokens re-split so wrapping can break between them.
  std::string geom = to_string(c.geometry);
  std::size_t i = 0;
  while (i < geom.size()) {
    std::size_t sp = geom.find(' ', i);
    toks.push_back(geom.substr(i, sp == std::string::npos ? std::string::npos
                                                          : sp - i));
    if (sp == std::string::npos) break;
    i = sp + 1;
  }
  for (const auto& p : c.params) append_param_tokens(p, toks);
  return wrap_tokens(toks, c.trailing_comment);
}

std::string layout_surface_card(const SurfaceCard& s) {
  std::vector<std::string> toks;
  std::string head;
  if (s.modifier) head += s.modifier;
  head += std::to_string(s.id);
  toks.push_back(head);
  if (s.transform_id) toks.push_back(std::to_string(*s.transform_id));
  toks.push_back(s.mnemonic);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    toks.push_back(i < s.coeff_texts.size() ? s.coeff_texts[i]
                                            : fmt_shortest(s.coeffs[i]));
  return wrap_tokens(toks, s.trailing_comment);
}

std::string layout_transform_card(const TransformCard& t) {
  std::vector<std::string> toks;
  toks.push_back("tr" + std::to_string(t.id));
  toks.push_back(fmt_sig(t.t.translation.x, 15));
  toks.push_back(fmt_sig(t.t.translation.y, 15));
  toks.push_back(fmt_sig(t.t.translation.z, 15));
  for (const auto& row : t.t.rotation.m)
    for (double v : row) toks.push_back(fmt_sig(v, 15));
  return wrap_tokens(toks, {});
}

std::string layout_material_card(const MaterialCard& m) {
  std::vector<std::string> toks;
  toks.push_back("m" + std::to_string(m.id));
  for (const auto& e : m.entries) {
    toks.push_back(e.library.empty() ? e.zaid : e.zaid + "." + e.library);
    toks.push_back(!e.fraction_text.empty() ? e.fraction_text
                                            : fmt_shortest(e.fraction));
  }
  for (const auto& o : m.options) toks.push_back(o);
  return wrap_tokens(toks, {});
}

namespace {

template <typename Card, typename Layout>
void emit_card(const Card& card, Layout layout, std::string& out) {
  if (!card.dirty()) {
    for (const auto& line : card.raw_lines) {
      out += line;
      out += '\n';
    }
  } else {
    out += layout(card);
    out += '\n';
  }
}

} // namespace

std::string write_deck(const Deck& deck) {
  std::string out;
  for (const auto& line : deck.message_lines) {
    out += line;
    out += '\n';
  }
  if (!deck.message_lines.empty()) out += '\n';

  out += deck.title;
  out += '\n';
  for (const auto& line : build_header(deck.provenance)) {
    out += line;
    out += '\n';
  }

  for (const auto& c : deck.cells) emit_card(c, layout_cell_card, out);
  out += '\n';
  for (const auto& s : deck.surfaces) emit_card(s, layout_surface_card, out);
  out += '\n';

  for (const auto& slot : deck.data_order) {
    switch (slot.kind) {
      case DataSlot::Kind::Transform:
        emit_card(deck.transforms.at(slot.index), layout_transform_card, out);
        break;
      case DataSlot::Kind::Material: {
        const MaterialCard& m = deck.materials.at(slot.index);
        emit_card(m, layout_material_card, out);
        for (const auto& aux : m.aux) {
          if (!aux.raw_lines.empty()) {
            for (const auto& line : aux.raw_lines) {
              out += line;
              out += '\n';
            }
          } else {
            // kind may carry a designator ("mx:p"); the id goes before it.
            std::size_t colon = aux.kind.find(':');
            std::string name =
                colon == std::string::npos
                    ? aux.kind + std::to_string(m.id)
                    : aux.kind.substr(0, colon) + std::to_string(m.id) +
                          aux.kind.substr(colon);
            out += name;
            if (!aux.payload.empty()) out += " " + aux.payload;
            out += '\n';
          }
        }
        break;
      }
      case DataSlot::Kind::Other:
        for (const auto& line : deck.other_cards.at(slot.index).raw_lines) {
          out += line;
          out += '\n';
        }
        break;
    }
  }

  if (!deck.metadata.empty()) {
    out += '\n';
    out += deck.metadata.groups.dump(4);
    out += '\n';
  }
  return out;
}

void write_deck_file(const Deck& deck, const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open file for writing: " + path);
  f << write_deck(deck);
}

} // namespace mcdeck
