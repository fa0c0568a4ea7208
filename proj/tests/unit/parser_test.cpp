#include <string>
#include <vector>

#include <doctest.h>

#include "mcdeck/deck.hpp"
#include "mcdeck/errors.hpp"
#include "mcdeck/parser.hpp"

using namespace mcdeck;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

CellCard cell_from(const std::string& text) {
  std::vector<Diagnostic> warnings;
  RawCard raw;
  raw.joined = text;
  raw.lines.push_back(text);
  raw.comments.push_back("");
  return parse_cell_card(raw, warnings);
}

SurfaceCard surface_from(const std::string& text) {
  std::vector<Diagnostic> warnings;
  RawCard raw;
  raw.joined = text;
  raw.lines.push_back(text);
  raw.comments.push_back("");
  return parse_surface_card(raw, warnings);
}

} // namespace

TEST_CASE("split_blocks separates title, blocks and trailing text") {
  std::string text =
      "message: datapath=/tmp/xs\n"
      "\n"
      "my title\n"
      "1 0 -1 imp:n=1\n"
      "2 0 1 imp:n=0\n"
      "\n"
      "1 so 5\n"
      "\n"
      "mode n\n"
      "\n"
      "{\"A\": {\"cell\": [1]}}\n";
  SplitDeck s = split_blocks(text);
  CHECK(s.message_lines.size() == 1);
  CHECK(s.title == "my title");
  CHECK(s.cell_lines.size() == 2);
  CHECK(s.surface_lines.size() == 1);
  CHECK(s.data_lines.size() == 1);
  CHECK(s.trailing.find("\"A\"") != std::string::npos);

  CHECK_THROWS_AS(split_blocks("title\n1 0 -1\n"), MissingBlock);
  CHECK_THROWS_AS(split_blocks(""), MissingBlock);
}

TEST_CASE("continuation joining handles both styles") {
  std::vector<Diagnostic> warnings;
  std::vector<std::string> lines = {
      "1 100 -1.0 -1 2 $ gas",
      "     imp:n=1 vol=2.0 $ follow-up",
      "2 0 1 &",
      "   imp:n=0",
  };
  auto cards = join_continuations(lines, 10, warnings);
  REQUIRE(cards.size() == 2);
  CHECK(cards[0].joined == "1 100 -1.0 -1 2 imp:n=1 vol=2.0");
  CHECK(cards[0].line_no == 10);
  CHECK(cards[0].comments[0] == "gas");
  CHECK(cards[0].comments[1] == "follow-up");
  CHECK(cards[0].first_comment() == "gas");
  CHECK(cards[1].joined == "2 0 1 imp:n=0");
  CHECK(warnings.empty());
}

TEST_CASE("comment lines inside a continued card are repaired with a warning") {
  std::vector<Diagnostic> warnings;
  std::vector<std::string> lines = {
      "1 0 -1",
      "c interlude",
      "     imp:n=1",
  };
  auto cards = join_continuations(lines, 1, warnings);
  REQUIRE(cards.size() == 1);
  CHECK(cards[0].joined == "1 0 -1 imp:n=1");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].message.find("repaired") != std::string::npos);
}

TEST_CASE("overlong lines draw a warning") {
  std::vector<Diagnostic> warnings;
  std::vector<std::string> lines = {"1 0 -1 imp:n=1" + std::string(70, ' ') +
                                    "$ x"};
  join_continuations(lines, 3, warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].message.find("80 columns") != std::string::npos);
  CHECK(warnings[0].locator == "line 3");
}

TEST_CASE("cell cards parse ids, density and parameters") {
  CellCard c = cell_from("10 26 -7.874 -1 2 imp:n=1 vol=1.5");
  CHECK(c.id == 10);
  CHECK(c.material_id == 26);
  REQUIRE(c.density.has_value());
  CHECK(*c.density == -7.874);
  CHECK(c.density_text == "-7.874");
  REQUIRE(c.find_param("imp:n"));
  REQUIRE(c.find_param("vol"));

  CellCard void_cell = cell_from("3 0 1 -2 imp:n=0");
  CHECK(void_cell.material_id == 0);
  CHECK_FALSE(void_cell.density.has_value());
}

TEST_CASE("trcl forms: card reference, fused inline, degrees") {
  CellCard by_card = cell_from("1 0 -1 trcl=2 imp:n=1");
  const CellParam* p = by_card.find_param("trcl");
  REQUIRE(p);
  const auto& v1 = std::get<CellTransform>(p->value);
  CHECK(v1.by_card);
  CHECK(v1.card_id == 2);

  CellCard inline_fused = cell_from("1 0 -1 trcl=(20 0 0) imp:n=1");
  const auto& v2 =
      std::get<CellTransform>(inline_fused.find_param("trcl")->value);
  CHECK_FALSE(v2.by_card);
  CHECK(v2.inline_tr.translation.x == 20.0);
  CHECK(v2.inline_tr.rotation.distance(Mat3::identity()) == 0.0);

  CellCard spaced = cell_from("1 0 -1 trcl (5 6 7) imp:n=1");
  const auto& v3 = std::get<CellTransform>(spaced.find_param("trcl")->value);
  CHECK(v3.inline_tr.translation.y == 6.0);

  // *trcl gives the rotation in degrees; it is normalized to cosines.
  CellCard degrees =
      cell_from("1 0 -1 *trcl=(0 0 0 45 45 90 135 45 90 90 90 0) imp:n=1");
  const auto& v4 = std::get<CellTransform>(degrees.find_param("trcl")->value);
  CHECK(v4.inline_tr.rotation[0][0] ==
        doctest::Approx(0.70710678).epsilon(1e-7));
}

TEST_CASE("fill forms: scalar, with transform, array with shorthand") {
  CellCard scalar = cell_from("5 0 -17 fill=3 imp:n=1");
  const auto& f1 = std::get<FillSpec>(scalar.find_param("fill")->value);
  CHECK_FALSE(f1.is_array);
  CHECK(f1.universe == 3);
  CHECK_FALSE(f1.transform.has_value());

  CellCard with_tr = cell_from("5 0 -17 fill=3 (0 0 40) imp:n=1");
  const auto& f2 = std::get<FillSpec>(with_tr.find_param("fill")->value);
  REQUIRE(f2.transform.has_value());
  CHECK(f2.transform->inline_tr.translation.z == 40.0);

  CellCard arr = cell_from(
      "4 0 -13 14 -15 16 lat=1 u=3 fill=-1:1 -1:1 0:0 1 2 2r 2 1 2 2 1 imp:n=1");
  const auto& f3 = std::get<FillSpec>(arr.find_param("fill")->value);
  CHECK(f3.is_array);
  CHECK(f3.bounds == std::array<int, 6>{-1, 1, -1, 1, 0, 0});
  CHECK(f3.universes == std::vector<int>({1, 2, 2, 2, 2, 1, 2, 2, 1}));
  CHECK(arr.universe() == 3);
}

TEST_CASE("unsupported cell forms are refused loudly") {
  CHECK_THROWS_AS(cell_from("7 like 6 but imp:n=2"), UnsupportedForm);
  CHECK_THROWS_AS(cell_from("x 0 -1"), SyntaxError);
  CHECK_THROWS_AS(cell_from("1 26 -1"), SyntaxError); // density then nothing
}

TEST_CASE("surface cards parse modifiers and transform numbers") {
  SurfaceCard plain = surface_from("4 so 40");
  CHECK(plain.id == 4);
  CHECK(plain.mnemonic == "so");
  CHECK(plain.coeffs == std::vector<double>({40.0}));
  CHECK_FALSE(plain.transform_id.has_value());

  SurfaceCard with_tr = surface_from("1 2 s 60 -15 0 10");
  REQUIRE(with_tr.transform_id.has_value());
  CHECK(*with_tr.transform_id == 2);
  CHECK(with_tr.mnemonic == "s");
  CHECK(with_tr.coeffs.size() == 4);

  SurfaceCard refl = surface_from("*3 px 5");
  CHECK(refl.modifier == '*');
  CHECK(refl.id == 3);
  SurfaceCard white = surface_from("+9 py 1");
  CHECK(white.modifier == '+');

  // FORTRAN implied exponents are accepted in coefficients.
  SurfaceCard implied = surface_from("8 pz 1.5-2");
  CHECK(implied.coeffs[0] == doctest::Approx(0.015));
}

TEST_CASE("data block classification") {
  std::string text =
      "t\n"
      "1 100 -1.0 -1 imp:n=1\n"
      "2 0 1 imp:n=0\n"
      "\n"
      "1 so 5\n"
      "\n"
      "mode n\n"
      "tr2 1 2 3\n"
      "*tr3 0 0 0 45 45 90 135 45 90 90 90 0\n"
      "tr4 1 0 0 1 0 0 0 1 0 0 0 1 -1\n"
      "m100 7014.80c 0.78 8016.80c 0.22\n"
      "mt100 lwtr.10t\n"
      "sdef pos=0 0 0\n";
  Deck d = parse_deck(text, "inline.mcnp");

  REQUIRE(d.transforms.size() == 3);
  CHECK(d.find_transform(2)->t.translation.y == 2.0);
  CHECK_FALSE(d.find_transform(2)->source_was_degrees);
  CHECK(d.find_transform(3)->source_was_degrees);
  CHECK(d.find_transform(3)->t.rotation[0][0] ==
        doctest::Approx(0.70710678).epsilon(1e-7));
  // 13-entry reverse form: displacement is the main origin in aux coords.
  CHECK(d.find_transform(4)->source_was_reverse);
  CHECK(d.find_transform(4)->t.translation.x == doctest::Approx(-1.0));

  REQUIRE(d.materials.size() == 1);
  const MaterialCard& m = d.materials[0];
  CHECK(m.id == 100);
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].zaid == "7014");
  CHECK(m.entries[0].library == "80c");
  CHECK(m.entries[0].fraction == 0.78);
  REQUIRE(m.aux.size() == 1);
  CHECK(m.aux[0].kind == "mt");
  CHECK(m.aux[0].payload == "lwtr.10t");

  // mode and sdef stay opaque, in source order.
  REQUIRE(d.other_cards.size() == 2);
  CHECK(d.other_cards[0].name == "mode");
  CHECK(d.other_cards[1].name == "sdef");
  CHECK(d.data_order.size() == 6);
}

TEST_CASE("metadata block is parsed and its shape enforced") {
  std::string base =
      "t\n1 0 -1 imp:n=1\n2 0 1 imp:n=0\n\n1 so 5\n\nmode n\n\n";
  Deck with = parse_deck(
      base + "{\"Probe\": {\"cell\": [1], \"surf\": [1], \"note\": \"x\"}}\n",
      "m.mcnp");
  REQUIRE_FALSE(with.metadata.empty());
  CHECK(with.metadata.groups["Probe"]["cell"][0] == 1);

  // A second JSON object is a card error, so it surfaces in the aggregate.
  try {
    parse_deck(base + "{\"A\": {}}\n{\"B\": {}}\n", "m.mcnp");
    FAIL("two metadata blocks must not parse");
  } catch (const ParseFailure& e) {
    CHECK(std::string(e.what()).find("more than one JSON metadata block") !=
          std::string::npos);
  }

  Deck junk = parse_deck(base + "{\"A\": \n", "m.mcnp");
  bool warned = false;
  for (const auto& w : junk.parse_warnings)
    if (w.message.find("JSON") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("card-level failures are aggregated into one ParseFailure") {
  std::string text =
      "t\n"
      "1 0 -1 imp:n=1\n"
      "zz 0 1\n"
      "2 0 1 imp:n=0\n"
      "\n"
      "1 so 5\n"
      "bad mnemonic here\n"
      "\n"
      "mode n\n";
  try {
    parse_deck(text, "broken.mcnp");
    FAIL("expected ParseFailure");
  } catch (const ParseFailure& e) {
    CHECK(e.details().size() == 2);
  }
}

TEST_CASE("all shipped fixtures parse without warnings") {
  for (const char* name : {"room.mcnp", "detector.mcnp", "ccd.mcnp",
                           "lat_ex5.mcnp", "sample.mcnp", "trclfix.mcnp"}) {
    Deck d = parse_deck_file(fixture(name));
    CHECK_MESSAGE(d.parse_warnings.empty(), name);
    CHECK(d.cells.size() >= 2);
  }
}
