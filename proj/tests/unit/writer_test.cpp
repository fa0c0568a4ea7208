#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "mcdeck/deck.hpp"
#include "mcdeck/parser.hpp"
#include "mcdeck/writer.hpp"

using namespace mcdeck;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

} // namespace

TEST_CASE("untouched cards are written back verbatim") {
  std::string path = fixture("sample.mcnp");
  std::string original = read_file(path);
  Deck d = parse_deck(original, path);
  std::string out = write_deck(d);

  // Message block first, then the title.
  CHECK(out.rfind("message:", 0) == 0);
  CHECK(out.find("\n\n" + d.title + "\n") != std::string::npos);

  // Every original cell-block line survives byte for byte.
  for (const auto& cell : d.cells)
    for (const auto& line : cell.raw_lines)
      CHECK(out.find(line) != std::string::npos);

  // The provenance header sits between title and cells.
  CHECK(out.find("c  - Original file: ") != std::string::npos);
  CHECK(out.find(path) != std::string::npos);
  CHECK(out.find("No transforms were applied") != std::string::npos);

  // Metadata returns as a trailing JSON block after a blank line.
  Deck det = parse_deck_file(fixture("detector.mcnp"));
  CHECK_FALSE(det.metadata.empty());
  CHECK(write_deck(det).find("\"ScintillatorCell\"") != std::string::npos);
}

TEST_CASE("fresh layouts stay within 80 columns and parse back") {
  CellCard c;
  c.id = 7;
  c.material_id = 100;
  c.density = -1.205e-3;
  c.density_text = "-1.205e-3";
  std::vector<GeometryExpr> parts;
  for (int i = 1; i <= 40; ++i)
    parts.push_back(GeometryExpr::surface(1000 + i, i % 2 ? 1 : -1));
  c.geometry = GeometryExpr::intersection(parts);
  c.params.push_back({"imp:n", std::string("1")});

  std::string laid = layout_cell_card(c);
  auto lines = split_lines(laid);
  REQUIRE(lines.size() > 1);
  for (const auto& line : lines) CHECK(line.size() <= 80);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].rfind("      ", 0) == 0); // continuation indent

  std::vector<Diagnostic> warnings;
  auto raws = join_continuations(lines, 1, warnings);
  REQUIRE(raws.size() == 1);
  CellCard back = parse_cell_card(raws[0], warnings);
  CHECK(back == c);
}

TEST_CASE("trailing comments are kept when they fit") {
  CellCard c;
  c.id = 1;
  c.material_id = 0;
  c.geometry = GeometryExpr::surface(5, -1);
  c.params.push_back({"imp:n", std::string("1")});
  c.trailing_comment = "scintillator crystal";
  std::string laid = layout_cell_card(c);
  CHECK(laid.find(" $ scintillator crystal") != std::string::npos);

  // A comment that cannot fit inside 80 columns is dropped, not mangled.
  c.trailing_comment = std::string(90, 'x');
  auto lines = split_lines(layout_cell_card(c));
  for (const auto& line : lines) {
    CHECK(line.size() <= 80);
    CHECK(line.find('$') == std::string::npos);
  }
}

TEST_CASE("surface layout reuses the original coefficient spelling") {
  SurfaceCard s;
  s.id = 8;
  s.mnemonic = "pz";
  s.coeffs = {0.015};
  s.coeff_texts = {"1.5-2"};
  CHECK(layout_surface_card(s).find("1.5-2") != std::string::npos);

  s.coeff_texts.clear();
  CHECK(layout_surface_card(s).find("0.015") != std::string::npos);
}

TEST_CASE("modified decks round trip through fresh layouts") {
  std::string text =
      "layout check\n"
      "1 100 -1.0 -1 2 trcl=(0.5 0.25 -0.125) imp:n=1 $ moved\n"
      "2 0 1 -2 #1 imp:n=1\n"
      "3 0 2 imp:n=0\n"
      "\n"
      "1 1 s 0 0 0 1.5\n"
      "*2 so 25\n"
      "\n"
      "tr1 0.5 -0.25 0.75\n"
      "m100 7014.80c 0.78 8016.80c 0.22 gas=1\n"
      "mt100 lwtr.10t\n"
      "mode n\n"
      "\n"
      "{\"G\": {\"cell\": [1], \"surf\": [1], \"trans\": [1]}}\n";
  Deck d = parse_deck(text, "layout.mcnp");
  for (auto& c : d.cells) c.mark_dirty();
  for (auto& s : d.surfaces) s.mark_dirty();
  for (auto& t : d.transforms) t.mark_dirty();
  for (auto& m : d.materials) m.mark_dirty();

  Deck back = parse_deck(write_deck(d), "layout.mcnp");
  CHECK(d.same_cards(back));
  // Data cards keep their source order even after relayout.
  REQUIRE(back.data_order.size() == 3);
  CHECK(back.data_order[0].kind == DataSlot::Kind::Transform);
  CHECK(back.data_order[1].kind == DataSlot::Kind::Material);
  CHECK(back.data_order[2].kind == DataSlot::Kind::Other);
}

TEST_CASE("header lines are wrapped below 80 columns") {
  ProvenanceNode root;
  root.source_path = "/some/dir/host.mcnp";
  root.version_note =
      "extracted from /a/very/long/path/that/keeps/going/and/going/"
      "host_assembly_output.mcnp cells [12, 13, 14, 15, 16, 17, 18, 19, 20, "
      "21] on request";
  ProvenanceNode child;
  child.source_path = "/some/dir/guest.mcnp";
  child.applied_transforms.push_back("Translation of vector: [60, 50, 0]");
  child.net.translation = {60, 50, 0};
  root.children.push_back(child);

  auto lines = build_header(root);
  REQUIRE_FALSE(lines.empty());
  for (const auto& line : lines) {
    CHECK(line.size() <= 80);
    CHECK(line.rfind("c", 0) == 0);
  }
  // The note survives, split across lines.
  std::string glued;
  for (const auto& line : lines) glued += line + "\n";
  CHECK(glued.find("extracted from") != std::string::npos);
  CHECK(glued.find("on request") != std::string::npos);
  CHECK(glued.find("Applied translation: [60.0, 50.0, 0.0]") !=
        std::string::npos);
}

TEST_CASE("write_deck_file creates missing parent directories") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mcdeck-writer-test";
  fs::remove_all(dir);
  Deck d = parse_deck_file(fixture("ccd.mcnp"));
  std::string out = (dir / "nested" / "ccd_copy.mcnp").string();
  write_deck_file(d, out);
  Deck back = parse_deck_file(out);
  CHECK(d.same_cards(back));
  fs::remove_all(dir);
}
