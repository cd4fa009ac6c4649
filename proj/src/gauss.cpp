#include "qknot/gauss.hpp"

#include <map>
#include <sstream>

#include "qknot/errors.hpp"

namespace qknot {

std::string token_to_string(const GaussToken& t) {
    if (t.kind == GaussToken::Blank) return "*";
    std::string s = t.kind == GaussToken::Over ? "o" : "u";
    s += std::to_string(t.index);
    s += t.sign > 0 ? '+' : '-';
    return s;
}

std::vector<GaussToken> parse_gauss(const std::string& text) {
    // whitespace between tokens is optional, so the paper's concatenated form
    // o1+u2+o3+... parses as well as the spaced serialization
    std::vector<GaussToken> out;
    size_t pos = 0;
    const size_t n = text.size();
    while (pos < n) {
        const char ch = text[pos];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++pos;
            continue;
        }
        if (ch == '*') {
            out.push_back(GaussToken{GaussToken::Blank, 0, 0});
            ++pos;
            continue;
        }
        if (ch == '|') {  // component separator carries no token
            ++pos;
            continue;
        }
        if (ch != 'o' && ch != 'u')
            throw ValidationError(std::string("malformed Gauss token at '") + ch + "'");
        size_t end = pos + 1;
        while (end < n && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos + 1)
            throw ValidationError("Gauss token missing index near position " + std::to_string(pos));
        if (end >= n || (text[end] != '+' && text[end] != '-'))
            throw ValidationError("Gauss token missing sign near position " + std::to_string(pos));
        GaussToken t;
        t.kind = ch == 'o' ? GaussToken::Over : GaussToken::Under;
        t.index = std::stoi(text.substr(pos + 1, end - pos - 1));
        if (t.index < 1) throw ValidationError("Gauss index must be positive");
        t.sign = text[end] == '+' ? +1 : -1;
        out.push_back(t);
        pos = end + 1;
    }
    validate_gauss_pairing(out);
    return out;
}

std::string gauss_to_string(const std::vector<GaussToken>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += token_to_string(tokens[i]);
    }
    return out;
}

void validate_gauss_pairing(const std::vector<GaussToken>& tokens) {
    struct Info {
        int overs = 0, unders = 0, sign = 0;
    };
    std::map<int, Info> seen;
    for (const auto& t : tokens) {
        if (t.kind == GaussToken::Blank) continue;
        auto& info = seen[t.index];
        (t.kind == GaussToken::Over ? info.overs : info.unders)++;
        if (info.sign == 0) info.sign = t.sign;
        else if (info.sign != t.sign)
            throw ValidationError("index " + std::to_string(t.index) +
                                  " appears with both signs; a crossing has one sign");
    }
    for (const auto& [idx, info] : seen) {
        if (info.overs != 1 || info.unders != 1)
            throw ValidationError("index " + std::to_string(idx) + " appears " +
                                  std::to_string(info.overs) + " times as o and " +
                                  std::to_string(info.unders) + " as u; expected once each");
    }
}

std::vector<GaussToken> pd_to_gauss(const PlanarDiagram& d, int component) {
    if (component < 0 || component >= static_cast<int>(d.components().size()))
        throw ValidationError("component index out of range");
    const auto& comp = d.components()[component];

    // arc -> crossing it ends at, and whether that visit is over or under
    struct Arrival {
        int crossing;
        bool over;
    };
    std::vector<Arrival> arrives(d.arc_count() + 1, {-1, false});
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& t = d.crossings()[k];
        arrives[t.a] = {k, false};
        arrives[d.over_in_is_d(k) ? t.d : t.b] = {k, true};
    }

    std::vector<GaussToken> out;
    std::map<int, int> relabel;  // crossing -> 1-based first-visit index
    int arc = comp.front();
    for (size_t step = 0; step < comp.size(); ++step) {
        const auto arr = arrives[arc];
        auto [it, unused] = relabel.try_emplace(arr.crossing, static_cast<int>(relabel.size()) + 1);
        GaussToken t;
        t.kind = arr.over ? GaussToken::Over : GaussToken::Under;
        t.index = it->second;
        t.sign = d.sign(arr.crossing);
        out.push_back(t);
        arc = d.next_arc(arc);
    }
    return out;
}

}  // namespace qknot
