#include "mcdeck/plan.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mcdeck/assemble.hpp"
#include "mcdeck/deck_transform.hpp"
#include "mcdeck/errors.hpp"
#include "mcdeck/extract.hpp"
#include "mcdeck/metadata.hpp"
#include "mcdeck/numfmt.hpp"
#include "mcdeck/parser.hpp"
#include "mcdeck/renumber.hpp"
#include "mcdeck/writer.hpp"

namespace mcdeck {

namespace {

struct PlanLine {
  std::string text;
  int line_no = 0;
};

struct Runner {
  std::string base_dir;
  PlanResult result;
  std::map<std::string, Deck> handles;
  std::map<std::string, std::string> vars;
  int step_index = 0;

  std::string substitute(const std::string& token) const {
    std::string out = token;
    for (const auto& [name, value] : vars) {
      std::string pattern = "{" + name + "}";
      std::size_t pos;
      while ((pos = out.find(pattern)) != std::string::npos)
        out.replace(pos, pattern.size(), value);
    }
    return out;
  }

  [[noreturn]] void fail(const PlanLine& line, const std::string& msg) const {
    throw Error("plan step " + std::to_string(step_index) + " (line " +
                std::to_string(line.line_no) + "): " + msg);
  }

  Deck& handle(const PlanLine& line, const std::string& name) {
    auto it = handles.find(name);
    if (it == handles.end()) fail(line, "undefined handle '" + name + "'");
    return it->second;
  }

  double number(const PlanLine& line, const std::string& tok) {
    double v;
    if (!try_parse_number(tok, v)) fail(line, "expected a number, got '" + tok + "'");
    return v;
  }

  int integer(const PlanLine& line, const std::string& tok) {
    int v;
    if (!try_parse_int(tok, v)) fail(line, "expected an integer, got '" + tok + "'");
    return v;
  }

  std::string resolve_input(const std::string& path) const {
    if (path.empty() || path.front() == '/') return path;
    return base_dir.empty() ? path : base_dir + "/" + path;
  }

  std::string resolve_output(const std::string& path) const {
    if (path.empty() || path.front() == '/') return path;
    if (const char* outdir = std::getenv("MCDECK_OUTDIR"))
      if (*outdir) return std::string(outdir) + "/" + path;
    return base_dir.empty() ? path : base_dir + "/" + path;
  }

  void note_diags(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
      Diagnostic copy = d;
      copy.locator = "step " + std::to_string(step_index) +
                     (copy.locator.empty() ? "" : ", " + copy.locator);
      result.diagnostics.push_back(std::move(copy));
    }
  }

  Vec3 vec_arg(const PlanLine& line, const std::vector<std::string>& toks,
               std::size_t at) {
    return {number(line, toks.at(at)), number(line, toks.at(at + 1)),
            number(line, toks.at(at + 2))};
  }

  void run_block(const std::vector<PlanLine>& lines, std::size_t begin,
                 std::size_t end);
  std::size_t execute(const std::vector<PlanLine>& lines, std::size_t i);
};

std::vector<std::string> tokens_of(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// Index of the `end` matching the `foreach` at `i`.
std::size_t matching_end(const std::vector<PlanLine>& lines, std::size_t i) {
  int depth = 0;
  for (std::size_t j = i; j < lines.size(); ++j) {
    std::vector<std::string> toks = tokens_of(lines[j].text);
    if (toks.empty()) continue;
    if (toks[0] == "foreach") ++depth;
    if (toks[0] == "end" && --depth == 0) return j;
  }
  throw Error("plan line " + std::to_string(lines[i].line_no) +
              ": foreach without matching end");
}

void Runner::run_block(const std::vector<PlanLine>& lines, std::size_t begin,
                       std::size_t end) {
  for (std::size_t i = begin; i < end;) i = execute(lines, i);
}

std::size_t Runner::execute(const std::vector<PlanLine>& lines,
                            std::size_t i) {
  const PlanLine& line = lines[i];
  std::vector<std::string> raw = tokens_of(line.text);
  if (raw.empty()) return i + 1;

  if (raw[0] == "foreach") {
    if (raw.size() < 3)
      fail(line, "foreach needs a variable name and at least one value");
    std::size_t end = matching_end(lines, i);
    std::string var = raw[1];
    for (std::size_t v = 2; v < raw.size(); ++v) {
      vars[var] = substitute(raw[v]);
      run_block(lines, i + 1, end);
    }
    vars.erase(var);
    return end + 1;
  }
  if (raw[0] == "end") fail(line, "end without foreach");

  ++step_index;
  std::vector<std::string> toks;
  toks.reserve(raw.size());
  for (const auto& t : raw) toks.push_back(substitute(t));
  const std::string& op = toks[0];

  auto want = [&](std::size_t n) {
    if (toks.size() != n)
      fail(line, "'" + op + "' takes " + std::to_string(n - 1) + " arguments");
  };
  auto want_at_least = [&](std::size_t n) {
    if (toks.size() < n)
      fail(line, "'" + op + "' needs at least " + std::to_string(n - 1) +
                     " arguments");
  };

  try {
    if (op == "load") {
      want(3);
      Deck deck = parse_deck_file(resolve_input(toks[2]));
      note_diags(deck.parse_warnings);
      handles[toks[1]] = std::move(deck);
    } else if (op == "copy") {
      want(3);
      handles[toks[1]] = handle(line, toks[2]);
    } else if (op == "translate") {
      want(5);
      note_diags(translate_deck(handle(line, toks[1]), vec_arg(line, toks, 2)));
    } else if (op == "rotate_x" || op == "rotate_y" || op == "rotate_z") {
      if (toks.size() != 3 && toks.size() != 6)
        fail(line, "'" + op + "' takes an angle and an optional shift");
      Axis axis = op == "rotate_x" ? Axis::X
                  : op == "rotate_y" ? Axis::Y
                                     : Axis::Z;
      Vec3 shift = toks.size() == 6 ? vec_arg(line, toks, 3) : Vec3{};
      note_diags(rotate_deck_axis(handle(line, toks[1]), axis,
                                  number(line, toks[2]), shift));
    } else if (op == "rotate_u") {
      if (toks.size() != 6 && toks.size() != 9)
        fail(line, "'rotate_u' takes an axis, an angle and an optional shift");
      Vec3 axis = vec_arg(line, toks, 2);
      double angle = number(line, toks[5]);
      Vec3 shift = toks.size() == 9 ? vec_arg(line, toks, 6) : Vec3{};
      note_diags(rotate_deck_arbitrary(handle(line, toks[1]), axis, angle, shift));
    } else if (op == "transform_card") {
      want(14);
      std::array<double, 12> entries;
      for (int k = 0; k < 12; ++k)
        entries[static_cast<std::size_t>(k)] = number(line, toks[2 + k]);
      note_diags(apply_tr_card(handle(line, toks[1]), entries));
    } else if (op == "renum") {
      want(5);
      renumber(handle(line, toks[1]), integer(line, toks[2]),
               integer(line, toks[3]), integer(line, toks[4]));
    } else if (op == "extract") {
      want_at_least(4);
      std::set<int> ids;
      for (std::size_t k = 3; k < toks.size(); ++k) {
        std::size_t dash = toks[k].find('-', 1);
        if (dash != std::string::npos) {
          int lo = integer(line, toks[k].substr(0, dash));
          int hi = integer(line, toks[k].substr(dash + 1));
          if (hi < lo) fail(line, "bad id range '" + toks[k] + "'");
          for (int id = lo; id <= hi; ++id) ids.insert(id);
        } else {
          ids.insert(integer(line, toks[k]));
        }
      }
      std::vector<Diagnostic> diags;
      Deck extracted = extract(handle(line, toks[2]), ids, &diags);
      note_diags(diags);
      handles[toks[1]] = std::move(extracted);
    } else if (op == "resolve_trcl") {
      want(2);
      note_diags(resolve_trcl(handle(line, toks[1])));
    } else if (op == "add_card") {
      want(3);
      int count = integer(line, toks[2]);
      if (count <= 0 || i + static_cast<std::size_t>(count) >= lines.size() + 1)
        fail(line, "add_card needs that many following lines");
      std::vector<std::string> card_lines;
      for (int k = 1; k <= count; ++k) {
        if (i + static_cast<std::size_t>(k) >= lines.size())
          fail(line, "add_card runs past the end of the plan");
        card_lines.push_back(substitute(lines[i + static_cast<std::size_t>(k)].text));
      }
      add_card(handle(line, toks[1]), card_lines);
      return i + 1 + static_cast<std::size_t>(count);
    } else if (op == "insert" || op == "insert_cells") {
      bool cells_mode = op == "insert_cells";
      if (cells_mode)
        want(3);
      else
        want_at_least(3);
      Deck& host = handle(line, toks[1]);
      Deck& guest = handle(line, toks[2]);
      if (&host == &guest) fail(line, "host and guest are the same handle");
      if (cells_mode) {
        note_diags(insert_cells(host, std::move(guest)));
      } else {
        InsertLocation loc = InsertLocation::Default;
        if (toks.size() == 4) {
          if (toks[3] == "inside")
            loc = InsertLocation::Inside;
          else if (toks[3] == "outside")
            loc = InsertLocation::Outside;
          else if (toks[3] != "default")
            fail(line, "bad location '" + toks[3] + "'");
        } else if (toks.size() > 4) {
          fail(line, "'insert' takes host, guest and an optional location");
        }
        note_diags(insert(host, std::move(guest), loc));
      }
      handles.erase(toks[2]); // consumed
    } else if (op == "write") {
      want(3);
      std::string path = resolve_output(toks[2]);
      write_deck_file(handle(line, toks[1]), path);
      result.written.push_back(path);
    } else {
      fail(line, "unknown step '" + op + "'");
    }
  } catch (const Error& e) {
    std::string what = e.what();
    if (what.rfind("plan step", 0) == 0) throw;
    fail(line, what);
  }
  return i + 1;
}

} // namespace

PlanResult run_plan(const std::string& text, const std::string& base_dir) {
  std::vector<PlanLine> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::size_t first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;
      lines.push_back({raw, no});
    }
  }
  if (lines.empty()) return {};

  std::vector<std::string> head = tokens_of(lines[0].text);
  if (head.size() != 2 || head[0] != "plan" || head[1] != "1")
    throw Error("plan must start with a 'plan 1' version line");

  Runner runner;
  runner.base_dir = base_dir;
  runner.run_block(lines, 1, lines.size());
  return std::move(runner.result);
}

PlanResult run_plan_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open plan file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::size_t slash = path.find_last_of('/');
  std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  return run_plan(ss.str(), dir);
}

} // namespace mcdeck
