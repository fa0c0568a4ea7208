#include <string>
#include <vector>

#include <doctest.h>

#include "mcdeck/deck.hpp"
#include "mcdeck/errors.hpp"
#include "mcdeck/geometry.hpp"
#include "mcdeck/parser.hpp"
#include "mcdeck/renumber.hpp"

using namespace mcdeck;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("remap rewrites every place an id can appear") {
  Deck d = parse_deck_file(fixture("trclfix.mcnp"));
  IdMaps maps;
  maps.cell[1] = 101;
  maps.surf[1200] = 12;
  maps.trans[2] = 20;
  remap(d, maps);

  CHECK(d.find_cell(101));
  CHECK_FALSE(d.find_cell(1));
  // The gas cell's #1 exclusion follows the cell id.
  bool saw_101 = false;
  for_each_cell_ref(d.gas_cell()->geometry, [&](int id) {
    if (id == 101) saw_101 = true;
  });
  CHECK(saw_101);

  CHECK(d.find_surface(12));
  CHECK_FALSE(d.find_surface(1200));
  bool saw_12 = false;
  for_each_surface_ref(d.find_cell(101)->geometry, [&](int id, int) {
    if (id == 12) saw_12 = true;
  });
  CHECK(saw_12);

  // Cell 2 reaches its transform through trcl=2.
  const CellParam* p = d.find_cell(2)->find_param("trcl");
  REQUIRE(p);
  CHECK(std::get<CellTransform>(p->value).card_id == 20);
  CHECK(d.find_transform(20));
  CHECK_FALSE(d.find_transform(2));
}

TEST_CASE("remap rewrites universes and fill arrays") {
  Deck d = parse_deck_file(fixture("lat_ex5.mcnp"));
  IdMaps maps;
  maps.universe[1] = 41;
  maps.universe[3] = 43;
  remap(d, maps);

  int u41 = 0, u43 = 0;
  for (const auto& c : d.cells) {
    auto u = c.universe();
    if (u == 41) ++u41;
    if (u == 43) ++u43;
  }
  CHECK(u41 == 1); // the water-only universe
  CHECK(u43 == 1); // the lattice itself

  for (const auto& c : d.cells) {
    const CellParam* p = c.find_param("fill");
    if (!p) continue;
    const auto& fs = std::get<FillSpec>(p->value);
    if (fs.is_array) {
      // 1 -> 41 inside the window pattern; universe 2 is untouched.
      CHECK(fs.universes ==
            std::vector<int>({41, 2, 41, 2, 2, 2, 41, 2, 41}));
    } else {
      CHECK(fs.universe == 43);
    }
  }
}

TEST_CASE("remap rewrites material ids and metadata keys") {
  Deck d = parse_deck_file(fixture("room.mcnp"));
  IdMaps maps;
  maps.mat[100] = 5;
  maps.cell[4] = 40;
  maps.surf[5] = 50;
  remap(d, maps);

  CHECK(d.find_material(5));
  CHECK_FALSE(d.find_material(100));
  CHECK(d.gas_cell()->material_id == 5);

  CHECK(d.metadata.groups["TargetCell"]["cell"] == json::array({40}));
  CHECK(d.metadata.groups["TargetCell"]["surf"] == json::array({50}));
}

TEST_CASE("remap_metadata leaves non-reserved keys alone") {
  MetadataBlock meta;
  meta.groups["X"] = {{"cell", {1, 2}}, {"surf", {5}}, {"trans", {2}},
                      {"note", "free text"}};
  IdMaps maps;
  maps.cell[2] = 9;
  maps.surf[5] = 50;
  maps.trans[2] = 7;
  remap_metadata(meta, maps);
  CHECK(meta.groups["X"]["cell"] == json::array({1, 9}));
  CHECK(meta.groups["X"]["surf"] == json::array({50}));
  CHECK(meta.groups["X"]["trans"] == json::array({7}));
  CHECK(meta.groups["X"]["note"] == "free text");
}

TEST_CASE("collisions with unmapped ids are refused, swaps are fine") {
  Deck d = parse_deck_file(fixture("trclfix.mcnp"));
  IdMaps bad;
  bad.cell[1] = 2; // cell 2 exists and is not being moved
  CHECK_THROWS_AS(remap(d, bad), CollisionError);

  IdMaps swap;
  swap.cell[1] = 2;
  swap.cell[2] = 1;
  remap(d, swap);
  CHECK(d.cells[0].id == 2);
  CHECK(d.cells[1].id == 1);
}

TEST_CASE("cards whose ids did not change keep their source bytes") {
  Deck d = parse_deck_file(fixture("trclfix.mcnp"));
  IdMaps maps;
  maps.surf[600] = 601;
  remap(d, maps);

  // Cells 1..3 never mention surface 600: still verbatim.
  CHECK_FALSE(d.cells[0].dirty());
  CHECK_FALSE(d.cells[1].dirty());
  CHECK_FALSE(d.cells[2].dirty());
  // The gas and graveyard reference it and must be re-laid-out.
  CHECK(d.cells[3].dirty());
  CHECK(d.cells[4].dirty());
  CHECK(d.find_surface(601)->dirty());
}

TEST_CASE("renumber rewires references consistently") {
  Deck d = parse_deck_file(fixture("lat_ex5.mcnp"));
  renumber(d, 1, 10, 100);

  for (std::size_t i = 0; i < d.cells.size(); ++i)
    CHECK(d.cells[i].id == static_cast<int>(i) + 1);
  for (std::size_t i = 0; i < d.surfaces.size(); ++i)
    CHECK(d.surfaces[i].id == static_cast<int>(i) + 10);

  // The lattice window used surfaces 13..16 (third to sixth in the block);
  // after renumbering it must reference 12..15.
  const CellCard* lattice = nullptr;
  for (const auto& c : d.cells)
    if (c.find_param("lat")) lattice = &c;
  REQUIRE(lattice);
  std::vector<int> refs;
  for_each_surface_ref(lattice->geometry, [&](int id, int) {
    refs.push_back(id);
  });
  CHECK(refs == std::vector<int>({12, 13, 14, 15}));

  // Universes are never renumbered.
  CHECK(d.max_universe_id() == 3);
}
