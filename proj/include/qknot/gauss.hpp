#pragma once

#include <string>
#include <vector>

#include "qknot/pd.hpp"

namespace qknot {

// One site of a (generalized) Gauss code: an over/under crossing visit with a
// sign, or the blank symbol *.
struct GaussToken {
    enum Kind : std::uint8_t { Over, Under, Blank };
    Kind kind = Blank;
    int index = 0;   // 1-based crossing index; 0 for blanks
    int sign = 0;    // +1 or -1; 0 for blanks

    friend bool operator==(const GaussToken&, const GaussToken&) = default;
};

std::string token_to_string(const GaussToken& t);

// Whitespace-separated tokens `o1+ u2- *`; `|` separates components in
// serialized multi-component codes.
std::vector<GaussToken> parse_gauss(const std::string& text);
std::string gauss_to_string(const std::vector<GaussToken>& tokens);

// Validate pairing of a blank-free single-component code: every index appears
// exactly once as `o` and once as `u`, with equal signs. Codes with blanks are
// allowed 0-or-2 occurrences per index. Throws ValidationError.
void validate_gauss_pairing(const std::vector<GaussToken>& tokens);

// Traverse one component of a diagram starting at its smallest arc; crossings
// are renumbered 1,2,... in order of first visit.
std::vector<GaussToken> pd_to_gauss(const PlanarDiagram& d, int component);

}  // namespace qknot
