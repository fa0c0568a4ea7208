#include <string>

#include <doctest.h>

#include "mcdeck/deck.hpp"
#include "mcdeck/errors.hpp"
#include "mcdeck/membership.hpp"
#include "mcdeck/parser.hpp"

using namespace mcdeck;

namespace {

// One cell per surface family, all mutually disjoint, bathed in gas.
const char* kZoo =
    "surface family zoo\n"
    "1 13 -2.699 -1 imp:n=1\n"
    "2 13 -2.699 -2 imp:n=1\n"
    "3 13 -2.699 -3 -10 11 imp:n=1\n"
    "4 13 -2.699 -4 imp:n=1\n"
    "5 13 -2.699 -5 imp:n=1\n"
    "6 100 -1.205e-3 1 2 (3:10:-11) 4 5 -9 imp:n=1\n"
    "7 0 9 imp:n=0\n"
    "\n"
    "1 s 20 0 0 3\n"
    "2 sph -20 0 0 3\n"
    "3 c/z 0 20 2\n"
    "4 rpp -2 2 -22 -18 -2 2\n"
    "5 2 so 3\n"
    "9 so 60\n"
    "10 pz 4\n"
    "11 pz -4\n"
    "\n"
    "tr2 0 0 20\n"
    "m13 13027.80c 1\n"
    "m100 7014.80c 1\n";

Deck zoo() { return parse_deck(kZoo, "zoo.mcnp"); }

} // namespace

TEST_CASE("surface_sense on planes and spheres") {
  Deck d = zoo();
  const SurfaceCard* pz = d.find_surface(10);
  REQUIRE(pz);
  CHECK(surface_sense(d, *pz, {0, 0, 5}) == 1);
  CHECK(surface_sense(d, *pz, {0, 0, 3}) == -1);
  CHECK(surface_sense(d, *pz, {0, 0, 4.0}) == 0);

  const SurfaceCard* s = d.find_surface(1);
  CHECK(surface_sense(d, *s, {20, 0, 0}) == -1);
  CHECK(surface_sense(d, *s, {24, 0, 0}) == 1);
  CHECK(surface_sense(d, *s, {23, 0, 0}) == 0);
}

TEST_CASE("a surface behind a transform card is evaluated in its aux frame") {
  Deck d = zoo();
  // Surface 5 is an origin sphere of radius 3 pushed to (0, 0, 20) by tr2.
  CHECK(point_in_cell(d, 5, {0, 0, 20}));
  CHECK_FALSE(point_in_cell(d, 5, {0, 0, 0}));
  CHECK_FALSE(point_in_cell(d, 5, {0, 0, 24}));
}

TEST_CASE("cell membership over every supported family") {
  Deck d = zoo();
  CHECK(point_in_cell(d, 1, {20, 0, 0}));       // s
  CHECK(point_in_cell(d, 2, {-20, 0, 0}));      // sph macrobody
  CHECK(point_in_cell(d, 3, {0, 20, 0}));       // c/z cut by two pz planes
  CHECK_FALSE(point_in_cell(d, 3, {0, 20, 5})); // above the upper plane
  CHECK(point_in_cell(d, 4, {0, -20, 0}));      // rpp
  CHECK_FALSE(point_in_cell(d, 4, {0, -20, 3}));
  CHECK(point_in_cell(d, 6, {0, 40, 0}));       // ambient gas
  CHECK_FALSE(point_in_cell(d, 6, {20, 0, 0}));
  CHECK(point_in_cell(d, 7, {0, 0, 70}));       // graveyard
}

TEST_CASE("points within tolerance of a surface belong to no cell") {
  Deck d = zoo();
  Vec3 on_shell{23, 0, 0};
  CHECK_FALSE(point_in_cell(d, 1, on_shell));
  CHECK_FALSE(point_in_cell(d, 6, on_shell));
  CHECK(near_any_surface(d, on_shell, 1e-7));
  CHECK_FALSE(near_any_surface(d, {40, 1, 1}, 1e-7));
}

TEST_CASE("trcl relocates a cell relative to its written surfaces") {
  const char* text =
      "trcl relocation\n"
      "1 13 -2.699 -1 trcl=(0 0 15) imp:n=1\n"
      "2 13 -2.699 -2 trcl=7 imp:n=1\n"
      "3 100 -1.205e-3 #1 #2 -9 imp:n=1\n"
      "4 0 9 imp:n=0\n"
      "\n"
      "1 s 0 0 -15 2\n"
      "2 so 2\n"
      "9 so 40\n"
      "\n"
      "tr7 10 0 0\n"
      "m13 13027.80c 1\n"
      "m100 7014.80c 1\n";
  Deck d = parse_deck(text, "trcl.mcnp");

  // Inline form: the written ball at (0,0,-15) lands at the origin.
  CHECK(point_in_cell(d, 1, {0, 0, 0}));
  CHECK_FALSE(point_in_cell(d, 1, {0, 0, -15}));
  // Card form: the origin ball lands at (10,0,0).
  CHECK(point_in_cell(d, 2, {10, 0, 0}));
  CHECK_FALSE(point_in_cell(d, 2, {0, 0, 0}));
  // The gas excludes the relocated regions, not the written ones.
  CHECK_FALSE(point_in_cell(d, 3, {0, 0, 0}));
  CHECK(point_in_cell(d, 3, {0, 0, -15}));

  // near_any_surface must see the relocated shells too.
  CHECK(near_any_surface(d, {12, 0, 0}, 1e-7));
}

TEST_CASE("complement references evaluate the named cell") {
  const char* text =
      "complement styles\n"
      "1 13 -2.699 -1 imp:n=1\n"
      "2 100 -1.205e-3 #1 #(-2) -9 imp:n=1\n"
      "3 0 9 imp:n=0\n"
      "\n"
      "1 so 2\n"
      "2 s 10 0 0 2\n"
      "9 so 30\n"
      "\n"
      "m13 13027.80c 1\n"
      "m100 7014.80c 1\n";
  Deck e = parse_deck(text, "comp.mcnp");
  CHECK_FALSE(point_in_cell(e, 2, {0, 0, 0}));
  CHECK_FALSE(point_in_cell(e, 2, {10, 0, 0}));
  CHECK(point_in_cell(e, 2, {0, 10, 0}));
}

TEST_CASE("unsupported mnemonics throw instead of guessing") {
  const char* text =
      "torus\n"
      "1 0 -1 imp:n=1\n"
      "2 0 1 imp:n=0\n"
      "\n"
      "1 tz 0 0 0 5 1 1\n"
      "\n"
      "mode n\n";
  Deck d = parse_deck(text, "torus.mcnp");
  CHECK_THROWS_AS(point_in_cell(d, 1, {5, 0, 0}), UnsupportedMnemonic);
}
