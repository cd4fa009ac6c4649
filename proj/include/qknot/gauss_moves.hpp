#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qknot/gauss.hpp"
#include "qknot/quantize.hpp"

namespace qknot {

// Fixed-length token word over V[N]: blanks allowed, every appearing index
// pairs one `o` with one `u` of equal sign, indices bounded by N.
struct QuantumGaussWord {
    std::vector<GaussToken> tokens;
    int index_bound = 0;  // N

    int length() const { return static_cast<int>(tokens.size()); }
    std::string encode() const;  // canonical bytes (ket payload)
    static QuantumGaussWord decode(const std::string& payload, int index_bound);

    friend bool operator==(const QuantumGaussWord&, const QuantumGaussWord&) = default;
};

// throws ValidationError when the invariants fail
void validate_word(const QuantumGaussWord& w);

QuantumGaussWord make_word(const std::string& text, int length, int index_bound);

enum class GaussRule : std::uint8_t { R1, R2, R3, BlankSwap, Cyclic, IndexPerm };

struct GaussMoveInstance {
    GaussRule rule = GaussRule::R1;
    bool forward = true;
    std::vector<int> positions;  // rule-specific anchor positions
    std::vector<int> indices;    // removed/inserted crossing indices
    int variant = 0;             // sign/order variant for r1 and r2
    std::vector<int> permutation;  // IndexPerm: image of 1..N

    GaussMoveInstance inverted() const;
    std::string to_json() const;
};

// move 1: the four adjacent o/u pairs of one index <-> two blanks
QuantumGaussWord apply_r1(const QuantumGaussWord& w, int pos, bool forward,
                          std::optional<int> fresh_index = std::nullopt, int variant = 0);
// move 2: (o i s)(o j -s) X (u..)(u..) <-> four blanks; pos2 is the second pair
QuantumGaussWord apply_r2(const QuantumGaussWord& w, int pos1, int pos2, bool forward,
                          std::optional<std::pair<int, int>> fresh = std::nullopt,
                          int variant = 0);
// move 3: the listed braid-like pattern; three adjacent pairs swap in place
QuantumGaussWord apply_r3(const QuantumGaussWord& w, int p, int q, int r);
// move 4a: |a>|*| <-> |*>|a> at (pos, pos+1), exactly one blank
QuantumGaussWord apply_blank_swap(const QuantumGaussWord& w, int pos);
// move 4b: cyclic rotation; forward brings the last factor to the front
QuantumGaussWord apply_cyclic(const QuantumGaussWord& w, bool forward = true);
// index relabeling by a bijection sigma of 1..N (sigma[i-1] = image of i)
QuantumGaussWord permute_indices(const QuantumGaussWord& w, const std::vector<int>& sigma);

QuantumGaussWord apply_move(const QuantumGaussWord& w, const GaussMoveInstance& mv);

// all words one move away, deduplicated by resulting word; reverse r1/r2 draw
// every unused index <= N (finite branching, symmetric relation)
std::vector<std::pair<GaussMoveInstance, QuantumGaussWord>> neighbors(const QuantumGaussWord& w);

struct GaussSearchLimits {
    std::size_t max_states = 200000;
    int max_depth = 8;
};

enum class GaussSearchStatus { Found, DistinctWithinBound, Unknown };

struct GaussSearchResult {
    GaussSearchStatus status = GaussSearchStatus::Unknown;
    std::vector<GaussMoveInstance> path;  // w1 -> w2 when Found
    int depth_explored = 0;
    std::string path_json() const;
};

// bidirectional breadth-first search over the move relation
GaussSearchResult bounded_equivalence(const QuantumGaussWord& w1, const QuantumGaussWord& w2,
                                      const GaussSearchLimits& limits);

BasisKet gauss_ket(const QuantumGaussWord& w);

}  // namespace qknot
