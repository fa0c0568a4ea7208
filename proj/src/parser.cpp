#include "mcdeck/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mcdeck/errors.hpp"
#include "mcdeck/numfmt.hpp"

namespace mcdeck {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string expand_tabs(const std::string& line) {
  std::string out;
  for (char c : line) {
    if (c == '\t') {
      do out += ' ';
      while (out.size() % 8 != 0);
    } else {
      out += c;
    }
  }
  return out;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Full-line comment: 'c' as the first nonblank character within the first
// five columns, followed by a blank or end of line.
bool is_comment_line(const std::string& raw) {
  std::string line = expand_tabs(raw);
  std::size_t i = line.find_first_not_of(' ');
  if (i == std::string::npos || i > 4) return false;
  if (std::tolower(static_cast<unsigned char>(line[i])) != 'c') return false;
  return i + 1 >= line.size() || line[i + 1] == ' ' || line[i + 1] == '\r';
}

bool is_continuation_line(const std::string& raw) {
  std::string line = expand_tabs(raw);
  if (is_blank(line)) return false;
  std::size_t i = line.find_first_not_of(' ');
  return i != std::string::npos && i >= 5;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> toks;
  std::istringstream in(s);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

} // namespace

SplitDeck split_blocks(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  SplitDeck out;
  std::size_t i = 0;

  if (!lines.empty() && lower(lines[0]).rfind("message:", 0) == 0) {
    while (i < lines.size() && !is_blank(lines[i]))
      out.message_lines.push_back(lines[i++]);
    if (i < lines.size()) ++i; // blank terminator
  }

  if (i >= lines.size()) throw MissingBlock("file has no title line");
  out.title = lines[i++];

  auto read_block = [&](std::vector<std::string>& dst, int& line_no) {
    // Skip stray blank lines between blocks only on input that has already
    // produced a block; the first blank after cards ends the block.
    line_no = static_cast<int>(i) + 1;
    bool any = false;
    while (i < lines.size()) {
      if (is_blank(lines[i])) {
        ++i;
        if (any) return true;
        return false;
      }
      dst.push_back(lines[i++]);
      any = true;
    }
    return any;
  };

  bool have_cells = read_block(out.cell_lines, out.cell_line_no);
  bool have_surfaces = read_block(out.surface_lines, out.surface_line_no);
  if (!have_cells || !have_surfaces || out.cell_lines.empty() ||
      out.surface_lines.empty())
    throw MissingBlock("expected cell, surface and data blocks");

  out.data_line_no = static_cast<int>(i) + 1;
  while (i < lines.size() && !is_blank(lines[i]))
    out.data_lines.push_back(lines[i++]);
  if (out.data_lines.empty())
    throw MissingBlock("expected cell, surface and data blocks");
  if (i < lines.size()) ++i; // blank terminator of the data block

  std::string trailing;
  for (; i < lines.size(); ++i) {
    trailing += lines[i];
    trailing += '\n';
  }
  out.trailing = trailing;
  return out;
}

namespace {

// Strips a trailing $-comment; returns the comment text (without '$').
std::string strip_dollar(std::string& line) {
  std::size_t p = line.find('$');
  if (p == std::string::npos) return {};
  std::string comment = line.substr(p + 1);
  while (!comment.empty() && (comment.front() == ' ')) comment.erase(0, 1);
  line = line.substr(0, p);
  return comment;
}

} // namespace

std::vector<RawCard> join_continuations(const std::vector<std::string>& lines,
                                        int first_line_no,
                                        std::vector<Diagnostic>& warnings) {
  std::vector<RawCard> cards;
  bool ampersand_pending = false;
  int pending_comments = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& raw = lines[i];
    int line_no = first_line_no + static_cast<int>(i);

    if (raw.size() > 80)
      warnings.push_back(Diagnostic::warning(
          "line exceeds 80 columns", "line " + std::to_string(line_no)));

    if (is_comment_line(raw)) {
      ++pending_comments;
      continue;
    }

    std::string body = expand_tabs(raw);
    std::string comment = strip_dollar(body);

    bool continues = ampersand_pending || is_continuation_line(raw);
    if (continues && cards.empty())
      throw SyntaxError("continuation line with no card to continue (line " +
                        std::to_string(line_no) + ")");
    if (continues && pending_comments > 0)
      warnings.push_back(Diagnostic::warning(
          "comment line interrupts a continued card; repaired",
          "line " + std::to_string(line_no)));
    pending_comments = 0;

    // Trailing '&' also continues onto the next line.
    std::string trimmed = body;
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.pop_back();
    bool ends_amp = !trimmed.empty() && trimmed.back() == '&';
    if (ends_amp) trimmed.pop_back();
    ampersand_pending = ends_amp;

    if (continues) {
      RawCard& card = cards.back();
      card.lines.push_back(raw);
      card.comments.push_back(comment);
      card.joined += ' ';
      card.joined += trimmed;
    } else {
      RawCard card;
      card.lines.push_back(raw);
      card.comments.push_back(comment);
      card.joined = trimmed;
      card.line_no = line_no;
      cards.push_back(std::move(card));
    }
  }
  if (ampersand_pending)
    warnings.push_back(Diagnostic::warning(
        "card ends with '&' but no line follows"));

  // Normalize internal whitespace of the joined text.
  for (auto& card : cards) {
    std::string norm;
    for (const std::string& t : tokenize(card.joined)) {
      if (!norm.empty()) norm += ' ';
      norm += t;
    }
    card.joined = std::move(norm);
  }
  return cards;
}

namespace {

bool looks_like_keyword(const std::string& tok) {
  std::size_t i = 0;
  if (i < tok.size() && tok[i] == '*') ++i;
  if (i >= tok.size() || !std::isalpha(static_cast<unsigned char>(tok[i])))
    return false;
  return true;
}

// Parses the inside of a trcl/fill parenthesized transform: a card number or
// 3/8/9/12 numeric entries (cosine or, for starred keys, degree form).
CellTransform parse_paren_transform(const std::string& inside, bool degrees,
                                    std::vector<Diagnostic>& warnings,
                                    const std::string& loc) {
  std::vector<std::string> toks = tokenize(inside);
  CellTransform out;
  if (toks.size() == 1) {
    int card;
    if (try_parse_int(toks[0], card) && card > 0) {
      out.by_card = true;
      out.card_id = card;
      return out;
    }
  }
  std::vector<double> vals;
  for (const auto& t : toks) vals.push_back(parse_number(t));
  if (vals.size() != 3 && vals.size() != 8 && vals.size() != 9 &&
      vals.size() != 12 && vals.size() != 13)
    throw SyntaxError("transform needs 3, 8, 9, 12 or 13 entries, got " +
                      std::to_string(vals.size()));
  bool reverse = false;
  if (vals.size() == 13) {
    if (vals[12] != 1.0 && vals[12] != -1.0)
      throw SyntaxError("transform flag entry must be 1 or -1");
    reverse = vals[12] < 0;
    vals.pop_back();
  }
  std::vector<double> rot(vals.begin() + 3, vals.end());
  if (degrees) rot = degrees_to_cosines(rot);
  bool repaired = false;
  Mat3 m = complete_rotation(rot, repaired);
  if (repaired)
    warnings.push_back(Diagnostic::warning(
        "rotation entries repaired to an orthonormal matrix", loc));
  out.inline_tr = Transform3D{m, Vec3{vals[0], vals[1], vals[2]}};
  if (reverse) out.inline_tr = reverse_to_forward(out.inline_tr);
  return out;
}

// Expands nR (repeat) and nJ (jump) shorthand in a fill array value list.
std::vector<int> expand_fill_values(const std::vector<std::string>& toks,
                                    std::vector<Diagnostic>& warnings,
                                    const std::string& loc) {
  std::vector<int> out;
  for (const auto& raw : toks) {
    std::string t = lower(raw);
    int v;
    if (try_parse_int(t, v)) {
      out.push_back(v);
      continue;
    }
    char suffix = t.back();
    if ((suffix == 'r' || suffix == 'j') && t.size() >= 1) {
      int n = 1;
      if (t.size() > 1 && !try_parse_int(t.substr(0, t.size() - 1), n))
        throw SyntaxError("bad fill array entry '" + raw + "'");
      if (suffix == 'r') {
        if (out.empty())
          throw SyntaxError("repeat shorthand with no previous entry");
        for (int k = 0; k < n; ++k) out.push_back(out.back());
      } else {
        warnings.push_back(Diagnostic::warning(
            "jump entries in fill array treated as universe 0", loc));
        for (int k = 0; k < n; ++k) out.push_back(0);
      }
      continue;
    }
    throw SyntaxError("bad fill array entry '" + raw + "'");
  }
  return out;
}

struct ParamScanner {
  // Raw text of the parameter region and current position.
  std::string text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  // Reads one token, swallowing any balanced parenthesis group it opens
  // (standalone "(...)" or fused forms like "trcl=(...)").
  std::string next_token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '(') ++pos;
    if (pos < text.size() && text[pos] == '(') {
      int depth = 0;
      while (pos < text.size()) {
        if (text[pos] == '(') ++depth;
        if (text[pos] == ')' && --depth == 0) {
          ++pos;
          break;
        }
        ++pos;
      }
      if (depth != 0) throw SyntaxError("unbalanced parentheses in parameters");
    }
    return text.substr(start, pos - start);
  }
  std::string peek_token() {
    std::size_t save = pos;
    std::string t = done() ? std::string() : next_token();
    pos = save;
    return t;
  }
};

void parse_cell_params(const std::string& region, CellCard& cell,
                       std::vector<Diagnostic>& warnings,
                       const std::string& loc) {
  ParamScanner sc{region};
  while (!sc.done()) {
    std::string tok = sc.next_token();
    // Keyword, possibly fused with '=value'.
    std::string key, inline_value;
    std::size_t eq = tok.find('=');
    if (eq != std::string::npos) {
      key = lower(tok.substr(0, eq));
      inline_value = tok.substr(eq + 1);
    } else {
      key = lower(tok);
    }
    if (!looks_like_keyword(key))
      throw SyntaxError("expected a parameter keyword, got '" + tok + "'");

    // Collect value tokens: the fused part, then any tokens up to the next
    // keyword-looking token. A lone '=' after the keyword is skipped.
    std::vector<std::string> values;
    if (!inline_value.empty()) values.push_back(inline_value);
    if (inline_value.empty()) {
      std::string p = sc.peek_token();
      if (p == "=") {
        sc.next_token();
      } else if (!p.empty() && p[0] == '=') {
        sc.next_token();
        values.push_back(p.substr(1));
      }
    }
    for (;;) {
      std::string p = sc.peek_token();
      if (p.empty() || (looks_like_keyword(p) && p[0] != '(')) break;
      values.push_back(sc.next_token());
    }

    bool star = !key.empty() && key[0] == '*';
    std::string base = star ? key.substr(1) : key;

    if (base == "trcl") {
      if (values.size() != 1)
        throw SyntaxError("trcl takes one value or one (...) group");
      CellTransform ct;
      if (values[0].front() == '(') {
        ct = parse_paren_transform(
            values[0].substr(1, values[0].size() - 2), star, warnings, loc);
      } else {
        int card;
        if (!try_parse_int(values[0], card) || card <= 0)
          throw SyntaxError("bad trcl value '" + values[0] + "'");
        ct.by_card = true;
        ct.card_id = card;
      }
      cell.params.push_back({"trcl", ct});
    } else if (base == "fill") {
      FillSpec fs;
      if (values.empty()) throw SyntaxError("fill needs a value");
      if (values[0].find(':') != std::string::npos) {
        fs.is_array = true;
        if (values.size() < 3)
          throw SyntaxError("fill array needs three index ranges");
        for (int d = 0; d < 3; ++d) {
          std::size_t colon = values[d].find(':');
          int lo, hi;
          if (colon == std::string::npos ||
              !try_parse_int(values[d].substr(0, colon), lo) ||
              !try_parse_int(values[d].substr(colon + 1), hi) || hi < lo)
            throw SyntaxError("bad fill range '" + values[d] + "'");
          fs.bounds[2 * d] = lo;
          fs.bounds[2 * d + 1] = hi;
        }
        std::vector<std::string> rest(values.begin() + 3, values.end());
        fs.universes = expand_fill_values(rest, warnings, loc);
        std::size_t need = 1;
        for (int d = 0; d < 3; ++d)
          need *= static_cast<std::size_t>(fs.bounds[2 * d + 1] -
                                           fs.bounds[2 * d] + 1);
        if (fs.universes.size() != need)
          throw SyntaxError("fill array has " +
                            std::to_string(fs.universes.size()) +
                            " entries, expected " + std::to_string(need));
      } else {
        if (!try_parse_int(values[0], fs.universe))
          throw SyntaxError("bad fill value '" + values[0] + "'");
        if (values.size() > 1) {
          if (values.size() != 2 || values[1].front() != '(')
            throw SyntaxError("unexpected tokens after fill universe");
          fs.transform = parse_paren_transform(
              values[1].substr(1, values[1].size() - 2), star, warnings, loc);
        }
      }
      cell.params.push_back({"fill", fs});
    } else if (base == "u" || base == "lat") {
      if (values.size() != 1)
        throw SyntaxError("'" + base + "' takes one integer");
      int v;
      if (!try_parse_int(values[0], v))
        throw SyntaxError("bad '" + base + "' value '" + values[0] + "'");
      cell.params.push_back({base, v});
    } else {
      std::string raw;
      for (const auto& v : values) {
        if (!raw.empty()) raw += ' ';
        raw += v;
      }
      cell.params.push_back({key, raw});
    }
  }
}

} // namespace

CellCard parse_cell_card(const RawCard& raw, std::vector<Diagnostic>& warnings) {
  std::vector<std::string> toks = tokenize(raw.joined);
  if (toks.size() < 3)
    throw SyntaxError("cell card too short: '" + raw.joined + "'");

  CellCard cell;
  cell.raw_lines = raw.lines;
  cell.trailing_comment = raw.first_comment();

  if (!try_parse_int(toks[0], cell.id) || cell.id <= 0)
    throw SyntaxError("bad cell id '" + toks[0] + "'");
  if (lower(toks[1]) == "like")
    throw UnsupportedForm("cell " + std::to_string(cell.id) +
                          " uses the like/but form");
  if (!try_parse_int(toks[1], cell.material_id) || cell.material_id < 0)
    throw SyntaxError("bad material number '" + toks[1] + "'");

  std::size_t i = 2;
  if (cell.material_id != 0) {
    if (i >= toks.size())
      throw SyntaxError("cell " + std::to_string(cell.id) + " lacks a density");
    cell.density_text = toks[i];
    cell.density = parse_number(toks[i]);
    ++i;
  }

  // Geometry tokens run until the first keyword-looking token.
  std::string geom_text;
  for (; i < toks.size(); ++i) {
    // '#' starts a complement, but "#(" vs keyword: geometry tokens never
    // begin with a letter.
    if (looks_like_keyword(toks[i])) break;
    if (!geom_text.empty()) geom_text += ' ';
    geom_text += toks[i];
  }
  if (geom_text.empty())
    throw SyntaxError("cell " + std::to_string(cell.id) + " has no geometry");
  cell.geometry = parse_geometry(geom_text);

  std::string param_text;
  for (; i < toks.size(); ++i) {
    if (!param_text.empty()) param_text += ' ';
    param_text += toks[i];
  }
  if (!param_text.empty())
    parse_cell_params(param_text, cell, warnings,
                      "cell " + std::to_string(cell.id));
  return cell;
}

SurfaceCard parse_surface_card(const RawCard& raw,
                               std::vector<Diagnostic>& warnings) {
  std::vector<std::string> toks = tokenize(raw.joined);
  if (toks.size() < 2)
    throw SyntaxError("surface card too short: '" + raw.joined + "'");

  SurfaceCard s;
  s.raw_lines = raw.lines;
  s.trailing_comment = raw.first_comment();

  std::string id_tok = toks[0];
  if (id_tok[0] == '*' || id_tok[0] == '+') {
    s.modifier = id_tok[0];
    id_tok.erase(0, 1);
  }
  if (!try_parse_int(id_tok, s.id) || s.id <= 0)
    throw SyntaxError("bad surface id '" + toks[0] + "'");

  std::size_t i = 1;
  int maybe_tr;
  if (try_parse_int(toks[1], maybe_tr)) {
    if (maybe_tr < 0)
      throw UnsupportedForm("surface " + std::to_string(s.id) +
                            " is periodic (negative transform entry)");
    s.transform_id = maybe_tr;
    i = 2;
    if (i >= toks.size())
      throw SyntaxError("surface " + std::to_string(s.id) + " has no mnemonic");
  }
  s.mnemonic = lower(toks[i]);
  ++i;
  for (; i < toks.size(); ++i) {
    s.coeff_texts.push_back(toks[i]);
    s.coeffs.push_back(parse_number(toks[i]));
  }
  (void)warnings;
  return s;
}

namespace {

// Splits a data card name like "*tr5", "m12", "mx8:p" into lowercase prefix,
// id and suffix. Returns false when the name has no digit part.
bool split_card_name(const std::string& name, bool& star, std::string& prefix,
                     int& id, std::string& suffix) {
  std::string n = lower(name);
  std::size_t i = 0;
  star = false;
  if (i < n.size() && n[i] == '*') {
    star = true;
    ++i;
  }
  std::size_t p0 = i;
  while (i < n.size() && std::isalpha(static_cast<unsigned char>(n[i]))) ++i;
  prefix = n.substr(p0, i - p0);
  std::size_t d0 = i;
  while (i < n.size() && std::isdigit(static_cast<unsigned char>(n[i]))) ++i;
  if (i == d0) return false;
  id = std::atoi(n.substr(d0, i - d0).c_str());
  suffix = n.substr(i);
  return true;
}

TransformCard parse_tr_card(const RawCard& raw, int id, bool degrees,
                            std::vector<Diagnostic>& warnings) {
  TransformCard tc;
  tc.id = id;
  tc.raw_lines = raw.lines;
  tc.source_was_degrees = degrees;

  std::vector<std::string> toks = tokenize(raw.joined);
  std::vector<double> vals;
  for (std::size_t i = 1; i < toks.size(); ++i)
    vals.push_back(parse_number(toks[i]));

  if (vals.size() != 3 && vals.size() != 8 && vals.size() != 9 &&
      vals.size() != 12 && vals.size() != 13)
    throw SyntaxError("tr" + std::to_string(id) + " needs 3, 8, 9, 12 or 13 "
                      "entries, got " + std::to_string(vals.size()));

  bool reverse = false;
  if (vals.size() == 13) {
    if (vals[12] != 1.0 && vals[12] != -1.0)
      throw SyntaxError("tr" + std::to_string(id) +
                        " flag entry must be 1 or -1");
    reverse = vals[12] < 0;
    vals.pop_back();
  }
  std::vector<double> rot(vals.begin() + 3, vals.end());
  if (degrees) rot = degrees_to_cosines(rot);
  bool repaired = false;
  Mat3 m = complete_rotation(rot, repaired);
  if (repaired)
    warnings.push_back(Diagnostic::warning(
        "rotation entries repaired to an orthonormal matrix",
        "transform " + std::to_string(id)));
  tc.t = Transform3D{m, Vec3{vals[0], vals[1], vals[2]}};
  if (reverse) {
    tc.t = reverse_to_forward(tc.t);
    tc.source_was_reverse = true;
    tc.mark_dirty(); // normalized away from the source form
  }
  if (degrees) tc.mark_dirty();
  return tc;
}

MaterialCard parse_material_card(const RawCard& raw, int id) {
  MaterialCard mc;
  mc.id = id;
  mc.raw_lines = raw.lines;
  std::vector<std::string> toks = tokenize(raw.joined);
  std::size_t i = 1;
  while (i < toks.size()) {
    if (toks[i].find('=') != std::string::npos) {
      mc.options.push_back(lower(toks[i]));
      ++i;
      continue;
    }
    if (i + 1 >= toks.size())
      throw SyntaxError("material m" + std::to_string(id) +
                        ": nuclide '" + toks[i] + "' has no fraction");
    MaterialEntry e;
    std::string zaid = lower(toks[i]);
    std::size_t dot = zaid.find('.');
    if (dot == std::string::npos) {
      e.zaid = zaid;
    } else {
      e.zaid = zaid.substr(0, dot);
      e.library = zaid.substr(dot + 1);
    }
    e.fraction_text = toks[i + 1];
    e.fraction = parse_number(toks[i + 1]);
    mc.entries.push_back(std::move(e));
    i += 2;
  }
  return mc;
}

} // namespace

void parse_data_cards(const std::vector<RawCard>& raws, Deck& deck,
                      std::vector<Diagnostic>& warnings) {
  struct PendingAux {
    MaterialAux aux;
    int material_id;
    int line_no;
  };
  std::vector<PendingAux> pending;

  for (const auto& raw : raws) {
    std::vector<std::string> toks = tokenize(raw.joined);
    if (toks.empty()) continue;
    bool star = false;
    std::string prefix, suffix;
    int id = 0;
    bool has_id = split_card_name(toks[0], star, prefix, id, suffix);
    std::string name = lower(toks[0]);

    if (name == "u" || name == "fill" || name == "*fill")
      throw UnsupportedForm(
          "universes and fill must be declared on cell cards, not in the "
          "data block (line " + std::to_string(raw.line_no) + ")");

    if (has_id && prefix == "tr" && suffix.empty()) {
      deck.transforms.push_back(parse_tr_card(raw, id, star, warnings));
      deck.push_data_slot(DataSlot::Kind::Transform, deck.transforms.size() - 1);
    } else if (has_id && !star && prefix == "m" && suffix.empty()) {
      deck.materials.push_back(parse_material_card(raw, id));
      deck.push_data_slot(DataSlot::Kind::Material, deck.materials.size() - 1);
    } else if (has_id && !star &&
               (prefix == "mt" || prefix == "mx" || prefix == "mpn")) {
      MaterialAux aux;
      aux.kind = prefix + suffix;
      aux.raw_lines = raw.lines;
      std::size_t sp = raw.joined.find(' ');
      aux.payload = sp == std::string::npos ? "" : lower(raw.joined.substr(sp + 1));
      pending.push_back({std::move(aux), id, raw.line_no});
    } else {
      OtherCard oc;
      oc.name = name;
      oc.raw_lines = raw.lines;
      deck.other_cards.push_back(std::move(oc));
      deck.push_data_slot(DataSlot::Kind::Other, deck.other_cards.size() - 1);
    }
  }

  for (auto& p : pending) {
    if (MaterialCard* m = deck.find_material(p.material_id)) {
      m->aux.push_back(std::move(p.aux));
    } else {
      warnings.push_back(Diagnostic::warning(
          p.aux.kind + std::to_string(p.material_id) +
              " has no matching material card; kept verbatim",
          "line " + std::to_string(p.line_no)));
      OtherCard oc;
      oc.name = p.aux.kind + std::to_string(p.material_id);
      oc.raw_lines = p.aux.raw_lines;
      deck.other_cards.push_back(std::move(oc));
      deck.push_data_slot(DataSlot::Kind::Other, deck.other_cards.size() - 1);
    }
  }
}

namespace {

// Extracts at most one JSON object from the trailing text. A second
// parseable object is an error; other junk draws a warning.
void parse_trailing(const std::string& trailing, Deck& deck,
                    std::vector<Diagnostic>& warnings) {
  std::size_t i = 0;
  int objects = 0;
  bool junk = false;
  while (i < trailing.size()) {
    char c = trailing[i];
    if (c == '{') {
      // Balanced-brace candidate, strings respected.
      int depth = 0;
      bool in_str = false;
      std::size_t j = i;
      for (; j < trailing.size(); ++j) {
        char d = trailing[j];
        if (in_str) {
          if (d == '\\') ++j;
          else if (d == '"') in_str = false;
        } else if (d == '"') {
          in_str = true;
        } else if (d == '{') {
          ++depth;
        } else if (d == '}' && --depth == 0) {
          break;
        }
      }
      if (j >= trailing.size()) {
        warnings.push_back(
            Diagnostic::warning("unterminated JSON object in trailing text"));
        return;
      }
      std::string candidate = trailing.substr(i, j - i + 1);
      json parsed = json::parse(candidate, nullptr, false);
      if (parsed.is_discarded() || !parsed.is_object()) {
        junk = true;
      } else {
        if (++objects > 1)
          throw MultipleMetadataBlocks(
              "more than one JSON metadata block after the data block");
        deck.metadata.groups = parsed;
      }
      i = j + 1;
    } else {
      if (!std::isspace(static_cast<unsigned char>(c))) junk = true;
      ++i;
    }
  }
  if (junk)
    warnings.push_back(Diagnostic::warning(
        "non-JSON trailing text after the data block was dropped"));
}

} // namespace

Deck parse_deck(const std::string& text, const std::string& source_path) {
  SplitDeck blocks = split_blocks(text);

  Deck deck;
  deck.title = blocks.title;
  deck.message_lines = blocks.message_lines;
  deck.provenance.source_path = source_path;

  std::vector<Diagnostic> warnings;
  std::vector<std::string> errors;

  auto guard = [&errors](int line_no, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  };

  // Vertical-format blocks start a line with '#' in the card-name position.
  for (const auto* block : {&blocks.cell_lines, &blocks.surface_lines}) {
    for (const auto& line : *block) {
      std::size_t p = line.find_first_not_of(' ');
      if (p != std::string::npos && p < 5 && line[p] == '#')
        throw UnsupportedForm("vertical input format is not supported");
    }
  }

  std::vector<RawCard> cell_raws =
      join_continuations(blocks.cell_lines, blocks.cell_line_no, warnings);
  std::vector<RawCard> surf_raws = join_continuations(
      blocks.surface_lines, blocks.surface_line_no, warnings);
  std::vector<RawCard> data_raws =
      join_continuations(blocks.data_lines, blocks.data_line_no, warnings);

  for (const auto& raw : cell_raws)
    guard(raw.line_no, [&] { deck.cells.push_back(parse_cell_card(raw, warnings)); });
  for (const auto& raw : surf_raws)
    guard(raw.line_no,
          [&] { deck.surfaces.push_back(parse_surface_card(raw, warnings)); });
  guard(blocks.data_line_no, [&] { parse_data_cards(data_raws, deck, warnings); });
  guard(blocks.data_line_no + static_cast<int>(blocks.data_lines.size()),
        [&] { parse_trailing(blocks.trailing, deck, warnings); });

  // Duplicate ids break every id-keyed operation; treat them as parse errors.
  auto check_dups = [&errors](const char* what, const auto& cards) {
    std::set<int> seen;
    for (const auto& c : cards) {
      if (!seen.insert(c.id).second)
        errors.push_back(std::string("duplicate ") + what + " id " +
                         std::to_string(c.id));
    }
  };
  check_dups("cell", deck.cells);
  check_dups("surface", deck.surfaces);
  check_dups("transform", deck.transforms);
  check_dups("material", deck.materials);

  if (!errors.empty()) {
    std::string summary = source_path + ": " +
                          std::to_string(errors.size()) + " parse error(s); first: " +
                          errors.front();
    throw ParseFailure(summary, errors);
  }

  deck.parse_warnings = std::move(warnings);
  return deck;
}

Deck parse_deck_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_deck(ss.str(), path);
}

} // namespace mcdeck
