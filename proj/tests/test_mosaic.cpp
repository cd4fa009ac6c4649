#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "qknot/bracket.hpp"
#include "qknot/errors.hpp"
#include "qknot/mosaic.hpp"

using namespace qknot;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(QKNOT_DATA_DIR) + "/corpus/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PlanarDiagram corpus_pd(const std::string& name) {
    return PlanarDiagram::from_json(slurp(name));
}

}  // namespace

TEST_CASE("tile symmetries") {
    // four rotations return every tile to itself
    for (Tile t = 0; t < kTileCount; ++t) {
        Tile r = t;
        for (int k = 0; k < 4; ++k) r = tile_rotated_ccw(r);
        CHECK(r == t);
        CHECK(tile_reflected(tile_reflected(t)) == t);
    }
    CHECK(tile_rotated_ccw(9) == 10);  // N-S over becomes W-E over
    CHECK(tile_reflected(9) == 9);     // vertical-axis reflection keeps over/under
    CHECK(tile_rotated_ccw(tile_reflected(9)) == 10);  // diagonal reflection swaps them
}

TEST_CASE("all-blank mosaics are suitably connected") {
    const Mosaic m(4);
    CHECK(validate_mosaic(m).suitably_connected);
    const PlanarDiagram d = mosaic_to_pd(m);
    CHECK(d.crossing_count() == 0);
    CHECK(d.free_loops() == 0);
}

TEST_CASE("2x2 circle closes up") {
    const Mosaic m = Mosaic::from_text(slurp("circle3.mosaic"));
    CHECK(validate_mosaic(m).suitably_connected);
    const PlanarDiagram d = mosaic_to_pd(m);
    CHECK(d.crossing_count() == 0);
    CHECK(d.free_loops() == 1);
}

TEST_CASE("a dangling arc tile is reported with its cell") {
    Mosaic m(3);
    m.set(1, 1, 2);  // arc {S,E} surrounded by blanks
    const MosaicReport rep = validate_mosaic(m);
    CHECK_FALSE(rep.suitably_connected);
    std::set<std::pair<int, int>> cells;
    for (const auto& v : rep.violations) cells.insert({v.row, v.col});
    CHECK(cells == std::set<std::pair<int, int>>{{1, 1}});  // one violating cell
    CHECK_THROWS_AS(mosaic_to_pd(m), ValidationError);
}

TEST_CASE("boundary connection points are violations") {
    Mosaic m(2);
    m.set(0, 0, 2);  // S,E: E reaches (0,1) blank, S reaches (1,0) blank
    const MosaicReport rep = validate_mosaic(m);
    CHECK_FALSE(rep.suitably_connected);
    Mosaic edge(1, 5);  // line {W,E} in a 1x1 grid: both ports off-grid
    const MosaicReport rep2 = validate_mosaic(edge);
    REQUIRE(rep2.violations.size() == 2);
    CHECK(rep2.violations[0].off_grid);
}

TEST_CASE("the corpus 4x4 trefoil mosaic extracts to the right-handed trefoil") {
    const Mosaic m = Mosaic::from_text(slurp("trefoil4.mosaic"));
    CHECK(validate_mosaic(m).suitably_connected);
    const PlanarDiagram d = mosaic_to_pd(m);
    CHECK(d.crossing_count() == 3);
    CHECK(d.component_count() == 1);
    CHECK(d.writhe() == 3);
    CHECK(jones(d) == jones(corpus_pd("rh_trefoil.pd.json")));
    CHECK(bracket_q(d) == bracket_q(corpus_pd("rh_trefoil.pd.json")));
}

TEST_CASE("the 6x6 embedding extracts to the same knot") {
    const Mosaic m = Mosaic::from_text(slurp("trefoil6.mosaic"));
    const PlanarDiagram d = mosaic_to_pd(m);
    CHECK(d.crossing_count() == 3);
    CHECK(jones(d) == jones(corpus_pd("rh_trefoil.pd.json")));
}

TEST_CASE("crossing-free circles and strands coexist") {
    // trefoil in 6x6 plus a detached circle in the corner
    Mosaic m = Mosaic::from_text(slurp("trefoil6.mosaic"));
    REQUIRE(m.at(4, 4) == 0);
    m.set(4, 4, 2);
    m.set(4, 5, 1);
    m.set(5, 4, 3);
    m.set(5, 5, 4);
    CHECK(validate_mosaic(m).suitably_connected);
    const PlanarDiagram d = mosaic_to_pd(m);
    CHECK(d.crossing_count() == 3);
    CHECK(d.free_loops() == 1);
    CHECK(bracket_q(d) == delta_q() * bracket_q(corpus_pd("rh_trefoil.pd.json")));
}

TEST_CASE("mosaic text round trip is byte identical") {
    for (const char* name : {"trefoil4.mosaic", "trefoil6.mosaic", "circle3.mosaic"}) {
        const std::string text = slurp(name);
        CHECK(Mosaic::from_text(text).to_text() == text);
    }
    CHECK_THROWS_AS(Mosaic::from_text("0 1\n2"), ValidationError);
    CHECK_THROWS_AS(Mosaic::from_text("11"), ValidationError);
}

TEST_CASE("canonical encoding round trip") {
    const Mosaic m = Mosaic::from_text(slurp("trefoil4.mosaic"));
    CHECK(Mosaic::from_canonical(m.canonical()) == m);
    CHECK_THROWS_AS(Mosaic::from_canonical("garbage-without-length"), ValidationError);
}
