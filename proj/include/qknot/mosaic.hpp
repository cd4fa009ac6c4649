#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qknot/pd.hpp"

namespace qknot {

// Eleven basic tiles; connection points sit at edge midpoints N,E,S,W.
//   T0 blank
//   T1 arc {W,S}   T2 arc {S,E}   T3 arc {E,N}   T4 arc {N,W}
//   T5 line {W,E}  T6 line {N,S}
//   T7 double arc {N,E}+{S,W}     T8 double arc {N,W}+{S,E}
//   T9 crossing, {N,S} strand over   T10 crossing, {W,E} strand over
using Tile = std::uint8_t;
constexpr Tile kTileCount = 11;

enum class Port : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

bool tile_has_port(Tile t, Port p);
// the other end of the strand entering tile t at port p (crossings pass
// straight through); returns false if t has no strand at p
bool tile_traverse(Tile t, Port in, Port& out);
bool tile_is_crossing(Tile t);

Tile tile_rotated_ccw(Tile t);
Tile tile_reflected(Tile t);  // across the vertical axis (W <-> E)

class Mosaic {
public:
    Mosaic(int n, Tile fill = 0);
    explicit Mosaic(std::vector<std::vector<Tile>> grid);

    static Mosaic from_text(const std::string& text);  // n lines of n integers
    std::string to_text() const;

    int size() const { return n_; }
    Tile at(int row, int col) const { return g_[row][col]; }
    void set(int row, int col, Tile t);

    // canonical encoding: row-major tile bytes (prefixed by n)
    std::string canonical() const;
    static Mosaic from_canonical(const std::string& bytes);

    friend bool operator==(const Mosaic&, const Mosaic&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<Tile>> g_;
};

struct MosaicViolation {
    int row, col;
    Port port;
    bool off_grid;  // true: connection point on the outer boundary
};

struct MosaicReport {
    bool suitably_connected = true;
    std::vector<MosaicViolation> violations;
};

MosaicReport validate_mosaic(const Mosaic& m);

// Trace all strands; crossings (in row-major order) become PD crossings with
// the counterclockwise listing from the incoming under-strand; crossing-free
// circles are counted into freeLoops. Throws if not suitably connected.
PlanarDiagram mosaic_to_pd(const Mosaic& m);

}  // namespace qknot
