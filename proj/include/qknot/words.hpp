#pragma once

#include <string>
#include <vector>

#include "qknot/quantize.hpp"

namespace qknot {

// Fixed-length word over {x_1..x_n, inverses, identity *}: letter +i is x_i,
// -i is x_i^{-1}, 0 is the blank identity symbol.
struct GroupWord {
    std::vector<int> letters;
    int generators = 0;

    static GroupWord parse(const std::string& text, int generators);  // "x1 x2^-1 * x3"
    std::string to_string() const;
    std::string encode() const;

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

void validate_group_word(const GroupWord& w);

struct Presentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;  // letters as above, no blanks

    static Presentation from_json(const std::string& text);
};

BasisKet word_ket(const GroupWord& w);

struct WordMove {
    enum Kind : std::uint8_t { Cancel, BlankSwap, Cyclic, Relator } kind = Cancel;
    bool forward = true;  // Cancel: pair -> blanks; Relator: delete occurrence
    int pos = 0;
    int generator = 0;      // Cancel: which x_i; sign via inverse_first
    bool inverse_first = false;
    int relator = 0;        // Relator: index into presentation

    WordMove inverted() const;
    std::string to_json() const;
};

std::vector<std::pair<WordMove, GroupWord>> word_moves(const GroupWord& w,
                                                       const Presentation& pres);
GroupWord apply_word_move(const GroupWord& w, const WordMove& mv, const Presentation& pres);

struct WordSearchLimits {
    std::size_t max_states = 200000;
    int max_depth = 8;
};

enum class WordSearchStatus { Found, DistinctWithinBound, Unknown };

struct WordSearchResult {
    WordSearchStatus status = WordSearchStatus::Unknown;
    std::vector<WordMove> path;
    int depth_explored = 0;
};

WordSearchResult bounded_word_equivalence(const GroupWord& w1, const GroupWord& w2,
                                          const Presentation& pres,
                                          const WordSearchLimits& limits);

}  // namespace qknot
