#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qknot/mosaic.hpp"
#include "qknot/quantize.hpp"

namespace qknot {

// One tile-replacement move: a bounding box with pattern and replacement that
// share a boundary signature (connection points, strand pairing, internal loop
// count), so applying it preserves suitable-connectedness.
struct MosaicMove {
    std::string name;
    int rows = 0, cols = 0;
    std::vector<std::vector<Tile>> pattern;
    std::vector<std::vector<Tile>> replacement;
};

class MoveSet {
public:
    static MoveSet load_json(const std::string& text);
    static MoveSet load_file(const std::string& path);
    // validates signatures; when closure is set, adds the D4 images (with
    // T9/T10 exchanged under diagonal reflections) and all inverses
    static MoveSet build(std::vector<MosaicMove> moves, bool symmetry_closure);

    const std::vector<MosaicMove>& moves() const { return moves_; }

private:
    std::vector<MosaicMove> moves_;
};

struct MovePlacement {
    int move = 0;  // index into MoveSet::moves()
    int row = 0, col = 0;
};

std::vector<MovePlacement> applicable_moves(const Mosaic& m, const MoveSet& s);
Mosaic apply_move(const Mosaic& m, const MosaicMove& mv, int row, int col);

struct OrbitLimits {
    std::size_t max_states = 200000;
    int max_depth = 64;
};

struct OrbitStep {
    std::string parent;  // canonical encoding
    std::string move_name;
    int row = 0, col = 0;
};

struct OrbitResult {
    bool complete = false;
    std::set<std::string> states;              // canonical encodings
    std::map<std::string, OrbitStep> parents;  // BFS tree (start has no entry)
};

OrbitResult orbit_bfs(const Mosaic& m, const MoveSet& s, const OrbitLimits& limits);
OrbitResult orbit_bfs_serial(const Mosaic& m, const MoveSet& s, const OrbitLimits& limits);

enum class OrbitAnswer { Yes, No, Unknown };

struct SameOrbitResult {
    OrbitAnswer answer = OrbitAnswer::Unknown;
    std::vector<OrbitStep> witness;  // from k1 to k2 when answer is Yes
};

SameOrbitResult same_orbit(const Mosaic& k1, const Mosaic& k2, const MoveSet& s,
                           const OrbitLimits& limits);

double invariant_jones_at(const Mosaic& m, double t);
mpz_class invariant_bracket_coefficient(const Mosaic& m, long q_exponent);
int invariant_component_count(const Mosaic& m);
// dispatcher over {jones-at-real-t, bracket-coefficient, component-count};
// returns the value serialized as a JSON scalar
std::string invariant_observable(const Mosaic& m, const std::string& invariant, double param);

// Basis transposition on size-n mosaic kets: pattern-bearing mosaics swap with
// their replacement-bearing images, all other valid mosaics are fixed.
PermutationUnitary move_as_unitary(const MosaicMove& mv, int row, int col, int n);

BasisKet mosaic_ket(const Mosaic& m);

}  // namespace qknot
