#include "mcdeck/cli.hpp"

#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "mcdeck/assemble.hpp"
#include "mcdeck/deck_transform.hpp"
#include "mcdeck/errors.hpp"
#include "mcdeck/extract.hpp"
#include "mcdeck/membership.hpp"
#include "mcdeck/numfmt.hpp"
#include "mcdeck/parser.hpp"
#include "mcdeck/plan.hpp"
#include "mcdeck/renumber.hpp"
#include "mcdeck/writer.hpp"

namespace mcdeck {

namespace {

// Numbers out of "a,b,c" or "a b c" style lists.
std::vector<double> parse_numbers(const std::string& text) {
  std::string spaced = text;
  for (auto& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok));
  return out;
}

Vec3 parse_vec3(const std::string& text, const std::string& flag) {
  std::vector<double> v = parse_numbers(text);
  if (v.size() != 3) throw Error(flag + " needs exactly 3 numbers");
  return {v[0], v[1], v[2]};
}

std::set<int> parse_id_list(const std::string& text) {
  std::set<int> ids;
  std::string item;
  std::istringstream in([&] {
    std::string s = text;
    for (auto& c : s)
      if (c == ',') c = ' ';
    return s;
  }());
  while (in >> item) {
    std::size_t dash = item.find('-', 1);
    int lo, hi;
    if (dash != std::string::npos) {
      if (!try_parse_int(item.substr(0, dash), lo) ||
          !try_parse_int(item.substr(dash + 1), hi) || hi < lo)
        throw Error("bad cell range '" + item + "'");
      for (int id = lo; id <= hi; ++id) ids.insert(id);
    } else {
      if (!try_parse_int(item, lo)) throw Error("bad cell id '" + item + "'");
      ids.insert(lo);
    }
  }
  if (ids.empty()) throw Error("--cells selected nothing");
  return ids;
}

struct DiagnosticSink {
  bool strict = false;
  bool warned = false;
  bool errored = false;

  void take(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
      (d.is_error() ? errored : warned) = true;
      std::cerr << severity_name(d.severity) << ": " << d.message;
      if (!d.locator.empty()) std::cerr << " [" << d.locator << "]";
      std::cerr << "\n";
    }
  }

  int exit_code() const {
    if (errored) return 2;
    if (warned && strict) return 1;
    return 0;
  }
};

void emit(const Deck& deck, const std::string& out_path) {
  if (out_path.empty())
    std::cout << write_deck(deck);
  else
    write_deck_file(deck, out_path);
}

Deck load(const std::string& path, DiagnosticSink& sink) {
  Deck deck = parse_deck_file(path);
  sink.take(deck.parse_warnings);
  return deck;
}

int cmd_info(const std::string& path, DiagnosticSink& sink) {
  // validate_structure already folds in the parse warnings.
  Deck deck = parse_deck_file(path);
  std::vector<Diagnostic> diags = validate_structure(deck);
  bool ok = is_assemblable(deck);

  std::cout << "title: " << deck.title << "\n";
  std::cout << deck.cells.size() << " cells, " << deck.surfaces.size()
            << " surfaces, " << deck.transforms.size() << " transforms, "
            << deck.materials.size() << " materials, "
            << deck.other_cards.size() << " other data cards\n";
  if (!deck.cells.empty())
    std::cout << "cell ids up to " << deck.max_cell_id()
              << ", surface ids up to " << deck.max_surface_id() << "\n";
  if (!deck.metadata.empty()) {
    std::cout << "metadata groups:";
    for (const auto& [name, group] : deck.metadata.groups.items()) {
      (void)group;
      std::cout << " " << name;
    }
    std::cout << "\n";
  }
  std::cout << (ok ? "assemblable" : "not assemblable") << "\n";

  std::function<void(const ProvenanceNode&, int)> show =
      [&](const ProvenanceNode& node, int depth) {
        std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ')
                  << "from " << node.source_path;
        if (!node.applied_transforms.empty())
          std::cout << " (" << node.applied_transforms.size() << " transforms)";
        std::cout << "\n";
        for (const auto& child : node.children) show(child, depth + 1);
      };
  show(deck.provenance, 0);

  // Structural findings are part of the report, not a failure of `info`.
  sink.take(diags);
  return 0;
}

int cmd_verify(const std::string& path, int points, std::uint32_t seed,
               DiagnosticSink& sink) {
  Deck deck = parse_deck_file(path); // validate re-reports its warnings
  std::vector<Diagnostic> diags = validate_structure(deck);
  sink.take(diags);
  for (const auto& d : diags)
    if (d.is_error()) return 2;

  if (points > 0) {
    // Partition check: every sampled point lies in exactly one top-level
    // cell. The sampling cube spans the outermost surface extent.
    double extent = 1.0;
    for (const auto& s : deck.surfaces)
      for (double c : s.coeffs) extent = std::max(extent, std::abs(c));
    extent *= 1.05;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-extent, extent);
    int checked = 0, violations = 0;
    while (checked < points) {
      Vec3 p{dist(rng), dist(rng), dist(rng)};
      if (near_any_surface(deck, p, 1e-7)) continue;
      ++checked;
      int owners = 0;
      for (const auto& c : deck.cells)
        if (!c.universe() && point_in_cell(deck, c.id, p)) ++owners;
      if (owners != 1) {
        ++violations;
        if (violations <= 5)
          std::cerr << "error: point (" << p.x << ", " << p.y << ", " << p.z
                    << ") belongs to " << owners << " cells\n";
      }
    }
    std::cout << checked << " points sampled, " << violations
              << " partition violations\n";
    if (violations > 0) return 2;
  }
  std::cout << "ok\n";
  return sink.exit_code();
}

int cmd_plan(const std::string& path, DiagnosticSink& sink) {
  PlanResult result = run_plan_file(path);
  sink.take(result.diagnostics);
  for (const auto& file : result.written)
    std::cout << "wrote " << file << "\n";
  return sink.exit_code();
}

} // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"MCNP input deck assembly tool"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict,
               "exit with status 1 when warnings were emitted");

  std::string in_path, out_path, guest_path;

  auto* info = app.add_subcommand("info", "summarize a deck");
  info->add_option("file", in_path)->required();

  auto* renum = app.add_subcommand("renum", "renumber cards consecutively");
  int cell_start = 0, surf_start = 0, trans_start = 0;
  renum->add_option("file", in_path)->required();
  renum->add_option("--cell", cell_start, "first cell id")
      ->check(CLI::PositiveNumber);
  renum->add_option("--surf", surf_start, "first surface id")
      ->check(CLI::PositiveNumber);
  renum->add_option("--trans", trans_start, "first transform id")
      ->check(CLI::PositiveNumber);
  renum->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* extract_cmd = app.add_subcommand("extract", "cut cells into a new deck");
  std::string cells_text;
  extract_cmd->add_option("file", in_path)->required();
  extract_cmd->add_option("--cells", cells_text, "ids, e.g. 12-21 or 1,3,9")
      ->required();
  extract_cmd->add_option("-o,--output", out_path);

  auto* tf = app.add_subcommand("transform", "move a whole deck");
  std::string translate_text, rotate_u_text, tr_card_text;
  double rot_x = 0, rot_y = 0, rot_z = 0;
  bool has_rx = false, has_ry = false, has_rz = false;
  tf->add_option("file", in_path)->required();
  tf->add_option("--translate", translate_text, "shift x,y,z");
  tf->add_option("--rotate-x", rot_x, "degrees about X");
  tf->add_option("--rotate-y", rot_y, "degrees about Y");
  tf->add_option("--rotate-z", rot_z, "degrees about Z");
  tf->add_option("--rotate-u", rotate_u_text, "axis rotation ux,uy,uz,deg");
  tf->add_option("--tr-card", tr_card_text, "12 card entries o1..o3 b1..b9");
  tf->add_option("-o,--output", out_path);

  auto* ins = app.add_subcommand("insert", "insert one deck into another");
  std::string location_text = "default";
  bool cells_mode = false;
  ins->add_option("host", in_path)->required();
  ins->add_option("guest", guest_path)->required();
  ins->add_option("--location", location_text)
      ->check(CLI::IsMember({"default", "inside", "outside"}));
  ins->add_flag("--cells-mode", cells_mode,
                "exclude guest cells from the host gas cell instead of using "
                "the guest bounding surface");
  ins->add_option("-o,--output", out_path);

  auto* rtrcl = app.add_subcommand("resolve-trcl",
                                   "move trcl-referenced surfaces below 1000");
  rtrcl->add_option("file", in_path)->required();
  rtrcl->add_option("-o,--output", out_path);

  auto* plan = app.add_subcommand("plan", "run an assembly plan");
  plan->add_option("planfile", in_path)->required();

  auto* verify = app.add_subcommand("verify", "validate a deck");
  int points = 0;
  std::uint32_t seed = 20240815;
  verify->add_option("file", in_path)->required();
  verify->add_option("--points", points,
                     "sample N points and check the cell partition");
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  has_rx = tf->count("--rotate-x") > 0;
  has_ry = tf->count("--rotate-y") > 0;
  has_rz = tf->count("--rotate-z") > 0;

  DiagnosticSink sink;
  sink.strict = strict;

  try {
    if (info->parsed()) return cmd_info(in_path, sink);
    if (plan->parsed()) return cmd_plan(in_path, sink);
    if (verify->parsed()) return cmd_verify(in_path, points, seed, sink);

    if (renum->parsed()) {
      Deck deck = load(in_path, sink);
      IdMaps maps;
      auto fill = [](std::map<int, int>& m, const auto& cards, int start) {
        int next = start;
        for (const auto& c : cards) {
          if (c.id != next) m[c.id] = next;
          ++next;
        }
      };
      if (renum->count("--cell")) fill(maps.cell, deck.cells, cell_start);
      if (renum->count("--surf")) fill(maps.surf, deck.surfaces, surf_start);
      if (renum->count("--trans"))
        fill(maps.trans, deck.transforms, trans_start);
      remap(deck, maps);
      emit(deck, out_path);
      return sink.exit_code();
    }

    if (extract_cmd->parsed()) {
      Deck deck = load(in_path, sink);
      std::vector<Diagnostic> diags;
      Deck result = extract(deck, parse_id_list(cells_text), &diags);
      sink.take(diags);
      emit(result, out_path);
      return sink.exit_code();
    }

    if (tf->parsed()) {
      int rotations = (has_rx ? 1 : 0) + (has_ry ? 1 : 0) + (has_rz ? 1 : 0) +
                      (rotate_u_text.empty() ? 0 : 1) +
                      (tr_card_text.empty() ? 0 : 1);
      if (rotations > 1)
        throw Error("give at most one of --rotate-x/y/z, --rotate-u, --tr-card");
      if (rotations == 0 && translate_text.empty())
        throw Error("nothing to do: give --translate, a rotation or --tr-card");
      if (!tr_card_text.empty() && !translate_text.empty())
        throw Error("--tr-card already contains a translation");

      Deck deck = load(in_path, sink);
      Vec3 shift = translate_text.empty()
                       ? Vec3{}
                       : parse_vec3(translate_text, "--translate");
      if (!tr_card_text.empty()) {
        std::vector<double> v = parse_numbers(tr_card_text);
        if (v.size() != 12) throw Error("--tr-card needs exactly 12 numbers");
        std::array<double, 12> entries;
        std::copy(v.begin(), v.end(), entries.begin());
        sink.take(apply_tr_card(deck, entries));
      } else if (!rotate_u_text.empty()) {
        std::vector<double> v = parse_numbers(rotate_u_text);
        if (v.size() != 4) throw Error("--rotate-u needs ux,uy,uz,deg");
        sink.take(rotate_deck_arbitrary(deck, {v[0], v[1], v[2]}, v[3], shift));
      } else if (has_rx || has_ry || has_rz) {
        Axis axis = has_rx ? Axis::X : has_ry ? Axis::Y : Axis::Z;
        double angle = has_rx ? rot_x : has_ry ? rot_y : rot_z;
        sink.take(rotate_deck_axis(deck, axis, angle, shift));
      } else {
        sink.take(translate_deck(deck, shift));
      }
      emit(deck, out_path);
      return sink.exit_code();
    }

    if (ins->parsed()) {
      Deck host = load(in_path, sink);
      Deck guest = load(guest_path, sink);
      if (cells_mode) {
        sink.take(insert_cells(host, std::move(guest)));
      } else {
        InsertLocation loc = location_text == "inside"
                                 ? InsertLocation::Inside
                             : location_text == "outside"
                                 ? InsertLocation::Outside
                                 : InsertLocation::Default;
        sink.take(insert(host, std::move(guest), loc));
      }
      emit(host, out_path);
      return sink.exit_code();
    }

    if (rtrcl->parsed()) {
      Deck deck = load(in_path, sink);
      sink.take(resolve_trcl(deck));
      emit(deck, out_path);
      return sink.exit_code();
    }
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& detail : e.details()) std::cerr << "  " << detail << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2; // no subcommand matched; require_subcommand should prevent this
}

} // namespace mcdeck
