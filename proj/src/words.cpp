#include "qknot/words.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

void validate_group_word(const GroupWord& w) {
    if (w.generators < 0) throw ValidationError("generator count must be nonnegative");
    for (int letter : w.letters) {
        const int g = std::abs(letter);
        if (g > w.generators)
            throw ValidationError("letter references generator " + std::to_string(g) +
                                  " outside 1.." + std::to_string(w.generators));
    }
}

GroupWord GroupWord::parse(const std::string& text, int generators) {
    GroupWord w;
    w.generators = generators;
    std::istringstream is(text);
    std::string tokstr;
    while (is >> tokstr) {
        if (tokstr == "*") {
            w.letters.push_back(0);
            continue;
        }
        if (tokstr[0] != 'x') throw ValidationError("malformed word letter: " + tokstr);
        bool inv = false;
        std::string digits = tokstr.substr(1);
        if (auto caret = digits.find("^-1"); caret != std::string::npos) {
            inv = true;
            digits = digits.substr(0, caret);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("malformed word letter: " + tokstr);
        int g = std::stoi(digits);
        w.letters.push_back(inv ? -g : g);
    }
    validate_group_word(w);
    return w;
}

std::string GroupWord::to_string() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) out += ' ';
        if (letters[i] == 0) out += '*';
        else {
            out += 'x' + std::to_string(std::abs(letters[i]));
            if (letters[i] < 0) out += "^-1";
        }
    }
    return out;
}

std::string GroupWord::encode() const {
    std::string out;
    out.push_back(static_cast<char>(letters.size()));
    for (int l : letters) out.push_back(static_cast<char>(l + 64));
    return out;
}

Presentation Presentation::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("presentation JSON parse failure: ") + e.what());
    }
    Presentation p;
    p.generators = j.at("generators").get<int>();
    if (p.generators < 1) throw ValidationError("presentation needs at least one generator");
    for (const auto& r : j.value("relators", json::array())) {
        std::vector<int> rel;
        for (const auto& v : r) {
            int letter = v.get<int>();
            if (letter == 0 || std::abs(letter) > p.generators)
                throw ValidationError("relator letter out of range");
            rel.push_back(letter);
        }
        if (rel.empty()) throw ValidationError("empty relator");
        p.relators.push_back(std::move(rel));
    }
    return p;
}

BasisKet word_ket(const GroupWord& w) {
    validate_group_word(w);
    return BasisKet{Family::Word, w.encode()};
}

WordMove WordMove::inverted() const {
    WordMove inv = *this;
    switch (kind) {
        case Cancel:
        case Relator:
            inv.forward = !forward;
            break;
        case BlankSwap:
            break;
        case Cyclic:
            inv.forward = !forward;
            break;
    }
    return inv;
}

std::string WordMove::to_json() const {
    json j;
    switch (kind) {
        case Cancel: j["rule"] = "cancel"; break;
        case BlankSwap: j["rule"] = "blankSwap"; break;
        case Cyclic: j["rule"] = "cyclic"; break;
        case Relator: j["rule"] = "relator"; break;
    }
    j["direction"] = forward ? "forward" : "reverse";
    j["pos"] = pos;
    if (kind == Cancel) {
        j["generator"] = generator;
        j["inverseFirst"] = inverse_first;
    }
    if (kind == Relator) j["relator"] = relator;
    return j.dump();
}

GroupWord apply_word_move(const GroupWord& w, const WordMove& mv, const Presentation& pres) {
    validate_group_word(w);
    GroupWord out = w;
    const int m = static_cast<int>(w.letters.size());
    switch (mv.kind) {
        case WordMove::Cancel: {
            if (mv.pos < 0 || mv.pos + 1 >= m) throw ValidationError("cancel position out of range");
            if (mv.forward) {
                const int a = w.letters[mv.pos], b = w.letters[mv.pos + 1];
                if (a == 0 || b == 0 || a != -b)
                    throw ValidationError("free cancellation needs x x^-1 or x^-1 x");
                out.letters[mv.pos] = out.letters[mv.pos + 1] = 0;
            } else {
                if (w.letters[mv.pos] != 0 || w.letters[mv.pos + 1] != 0)
                    throw ValidationError("reverse cancellation needs two blanks");
                if (mv.generator < 1 || mv.generator > w.generators)
                    throw ValidationError("generator out of range");
                const int g = mv.inverse_first ? -mv.generator : mv.generator;
                out.letters[mv.pos] = g;
                out.letters[mv.pos + 1] = -g;
            }
            break;
        }
        case WordMove::BlankSwap: {
            if (mv.pos < 0 || mv.pos + 1 >= m) throw ValidationError("swap position out of range");
            const bool b1 = w.letters[mv.pos] == 0, b2 = w.letters[mv.pos + 1] == 0;
            if (b1 == b2) throw ValidationError("blank transposition needs exactly one blank");
            std::swap(out.letters[mv.pos], out.letters[mv.pos + 1]);
            break;
        }
        case WordMove::Cyclic: {
            if (m > 1) {
                if (mv.forward) std::rotate(out.letters.begin(), out.letters.end() - 1, out.letters.end());
                else std::rotate(out.letters.begin(), out.letters.begin() + 1, out.letters.end());
            }
            break;
        }
        case WordMove::Relator: {
            if (mv.relator < 0 || mv.relator >= static_cast<int>(pres.relators.size()))
                throw ValidationError("relator index out of range");
            const auto& rel = pres.relators[mv.relator];
            const int len = static_cast<int>(rel.size());
            if (mv.pos < 0 || mv.pos + len > m) throw ValidationError("relator placement out of range");
            if (mv.forward) {  // delete an exact occurrence
                for (int i = 0; i < len; ++i)
                    if (w.letters[mv.pos + i] != rel[i])
                        throw ValidationError("relator does not occur at this position");
                for (int i = 0; i < len; ++i) out.letters[mv.pos + i] = 0;
            } else {  // insert into a blank run
                for (int i = 0; i < len; ++i)
                    if (w.letters[mv.pos + i] != 0)
                        throw ValidationError("relator insertion needs a blank run");
                for (int i = 0; i < len; ++i) out.letters[mv.pos + i] = rel[i];
            }
            break;
        }
    }
    return out;
}

std::vector<std::pair<WordMove, GroupWord>> word_moves(const GroupWord& w,
                                                       const Presentation& pres) {
    validate_group_word(w);
    if (w.generators != pres.generators)
        throw ValidationError("word and presentation disagree on generator count");
    std::vector<std::pair<WordMove, GroupWord>> out;
    std::set<std::string> seen;
    auto emit = [&](const WordMove& mv) {
        GroupWord img = apply_word_move(w, mv, pres);
        if (seen.insert(img.encode()).second) out.push_back({mv, std::move(img)});
    };
    const int m = static_cast<int>(w.letters.size());
    for (int p = 0; p + 1 < m; ++p) {
        const int a = w.letters[p], b = w.letters[p + 1];
        if (a != 0 && a == -b) {
            WordMove mv;
            mv.kind = WordMove::Cancel;
            mv.pos = p;
            mv.generator = std::abs(a);
            mv.inverse_first = a < 0;
            emit(mv);
        }
        if (a == 0 && b == 0) {
            for (int g = 1; g <= w.generators; ++g)
                for (bool inv_first : {false, true}) {
                    WordMove mv;
                    mv.kind = WordMove::Cancel;
                    mv.forward = false;
                    mv.pos = p;
                    mv.generator = g;
                    mv.inverse_first = inv_first;
                    emit(mv);
                }
        }
        if ((a == 0) != (b == 0)) {
            WordMove mv;
            mv.kind = WordMove::BlankSwap;
            mv.pos = p;
            emit(mv);
        }
    }
    if (m > 1) {
        WordMove fwd;
        fwd.kind = WordMove::Cyclic;
        emit(fwd);
        WordMove rev;
        rev.kind = WordMove::Cyclic;
        rev.forward = false;
        emit(rev);
    }
    for (int ri = 0; ri < static_cast<int>(pres.relators.size()); ++ri) {
        const int len = static_cast<int>(pres.relators[ri].size());
        for (int p = 0; p + len <= m; ++p) {
            bool occurrence = true, blank_run = true;
            for (int i = 0; i < len; ++i) {
                if (w.letters[p + i] != pres.relators[ri][i]) occurrence = false;
                if (w.letters[p + i] != 0) blank_run = false;
            }
            if (occurrence) {
                WordMove mv;
                mv.kind = WordMove::Relator;
                mv.pos = p;
                mv.relator = ri;
                emit(mv);
            }
            if (blank_run) {
                WordMove mv;
                mv.kind = WordMove::Relator;
                mv.forward = false;
                mv.pos = p;
                mv.relator = ri;
                emit(mv);
            }
        }
    }
    return out;
}

WordSearchResult bounded_word_equivalence(const GroupWord& w1, const GroupWord& w2,
                                          const Presentation& pres,
                                          const WordSearchLimits& limits) {
    if (w1.letters.size() != w2.letters.size())
        throw ValidationError("bounded_word_equivalence: words must have equal length");
    if (w1.generators != w2.generators)
        throw ValidationError("bounded_word_equivalence: generator counts differ");
    WordSearchResult res;
    if (w1 == w2) {
        res.status = WordSearchStatus::Found;
        return res;
    }
    struct Node {
        std::string parent;
        WordMove move;
    };
    std::unordered_map<std::string, Node> tree[2];
    std::vector<GroupWord> frontier[2] = {{w1}, {w2}};
    const std::string start[2] = {w1.encode(), w2.encode()};
    tree[0].emplace(start[0], Node{});
    tree[1].emplace(start[1], Node{});
    bool truncated = false;
    int depth[2] = {0, 0};
    std::optional<std::string> meet;
    while (!meet && depth[0] + depth[1] < limits.max_depth && !truncated) {
        if (frontier[0].empty() || frontier[1].empty()) break;
        const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<GroupWord> next;
        for (const auto& wc : frontier[side]) {
            const std::string parent_enc = wc.encode();
            for (auto& [mv, img] : word_moves(wc, pres)) {
                std::string enc = img.encode();
                if (tree[side].count(enc)) continue;
                if (tree[side].size() >= limits.max_states) {
                    truncated = true;
                    break;
                }
                tree[side].emplace(enc, Node{parent_enc, mv});
                if (tree[1 - side].count(enc)) {
                    meet = enc;
                    break;
                }
                next.push_back(std::move(img));
            }
            if (meet || truncated) break;
        }
        if (!meet && !truncated) frontier[side] = std::move(next);
        depth[side]++;
    }
    res.depth_explored = depth[0] + depth[1];
    if (meet) {
        std::vector<WordMove> fwd;
        std::string cur = *meet;
        while (cur != start[0]) {
            const Node& nd = tree[0].at(cur);
            fwd.push_back(nd.move);
            cur = nd.parent;
        }
        std::reverse(fwd.begin(), fwd.end());
        std::vector<WordMove> bwd;
        cur = *meet;
        while (cur != start[1]) {
            const Node& nd = tree[1].at(cur);
            bwd.push_back(nd.move.inverted());
            cur = nd.parent;
        }
        res.path = std::move(fwd);
        res.path.insert(res.path.end(), bwd.begin(), bwd.end());
        GroupWord check = w1;
        for (const auto& mv : res.path) check = apply_word_move(check, mv, pres);
        if (!(check == w2)) throw InternalError("word witness path verification failed");
        res.status = WordSearchStatus::Found;
        return res;
    }
    res.status = truncated ? WordSearchStatus::Unknown : WordSearchStatus::DistinctWithinBound;
    return res;
}

}  // namespace qknot
