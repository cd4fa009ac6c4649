#include "qknot/gauss_moves.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

namespace {

GaussToken blank_token() { return GaussToken{GaussToken::Blank, 0, 0}; }
GaussToken tok(GaussToken::Kind k, int index, int sign) { return GaussToken{k, index, sign}; }

bool is_blank(const GaussToken& t) { return t.kind == GaussToken::Blank; }

// occurrences of each index in the word
std::vector<int> index_uses(const QuantumGaussWord& w) {
    std::vector<int> uses(w.index_bound + 1, 0);
    for (const auto& t : w.tokens)
        if (!is_blank(t)) uses[t.index]++;
    return uses;
}

// r1 pair variants: (kind of first token, kind of second, sign)
struct R1Variant {
    GaussToken::Kind first, second;
    int sign;
};
constexpr R1Variant kR1Variants[4] = {
    {GaussToken::Over, GaussToken::Under, +1},
    {GaussToken::Under, GaussToken::Over, +1},
    {GaussToken::Over, GaussToken::Under, -1},
    {GaussToken::Under, GaussToken::Over, -1},
};

// r2 variants: sign of index i, and whether the closing pair is (u i)(u j) or
// (u j)(u i)
struct R2Variant {
    int sign_i;
    bool closing_swapped;
};
constexpr R2Variant kR2Variants[4] = {
    {+1, false},
    {+1, true},
    {-1, false},
    {-1, true},
};

}  // namespace

void validate_word(const QuantumGaussWord& w) {
    if (w.index_bound < 0) throw ValidationError("index bound must be nonnegative");
    struct Info {
        int overs = 0, unders = 0, sign = 0;
    };
    std::map<int, Info> seen;
    for (const auto& t : w.tokens) {
        if (is_blank(t)) continue;
        if (t.index < 1 || t.index > w.index_bound)
            throw ValidationError("index " + std::to_string(t.index) + " outside 1..N = 1.." +
                                  std::to_string(w.index_bound));
        auto& info = seen[t.index];
        (t.kind == GaussToken::Over ? info.overs : info.unders)++;
        if (info.sign == 0) info.sign = t.sign;
        else if (info.sign != t.sign)
            throw ValidationError("index " + std::to_string(t.index) + " carries both signs");
    }
    for (const auto& [idx, info] : seen)
        if (info.overs != 1 || info.unders != 1)
            throw ValidationError("index " + std::to_string(idx) +
                                  " must appear exactly once as o and once as u");
}

std::string QuantumGaussWord::encode() const {
    std::string out;
    out.reserve(tokens.size() * 3 + 1);
    out.push_back(static_cast<char>(tokens.size()));
    for (const auto& t : tokens) {
        out.push_back(static_cast<char>(t.kind));
        out.push_back(static_cast<char>(t.index));
        out.push_back(static_cast<char>(t.sign + 2));
    }
    return out;
}

QuantumGaussWord QuantumGaussWord::decode(const std::string& payload, int index_bound) {
    if (payload.empty()) throw ValidationError("empty gauss word encoding");
    const int m = static_cast<unsigned char>(payload[0]);
    if (static_cast<int>(payload.size()) != 1 + 3 * m)
        throw ValidationError("gauss word encoding length mismatch");
    QuantumGaussWord w;
    w.index_bound = index_bound;
    for (int t = 0; t < m; ++t) {
        GaussToken g;
        g.kind = static_cast<GaussToken::Kind>(payload[1 + 3 * t]);
        g.index = static_cast<unsigned char>(payload[2 + 3 * t]);
        g.sign = static_cast<int>(payload[3 + 3 * t]) - 2;
        w.tokens.push_back(g);
    }
    validate_word(w);
    return w;
}

QuantumGaussWord make_word(const std::string& text, int length, int index_bound) {
    QuantumGaussWord w;
    w.tokens = parse_gauss(text);
    if (static_cast<int>(w.tokens.size()) > length)
        throw ValidationError("word longer than requested length M");
    while (static_cast<int>(w.tokens.size()) < length) w.tokens.push_back(blank_token());
    w.index_bound = index_bound;
    validate_word(w);
    return w;
}

QuantumGaussWord apply_r1(const QuantumGaussWord& w, int pos, bool forward,
                          std::optional<int> fresh_index, int variant) {
    if (pos < 0 || pos + 1 >= w.length())
        throw ValidationError("r1 position out of range");
    QuantumGaussWord out = w;
    if (forward) {
        const GaussToken& x = w.tokens[pos];
        const GaussToken& y = w.tokens[pos + 1];
        if (is_blank(x) || is_blank(y)) throw ValidationError("r1: tokens are blank");
        if (x.index != y.index) throw ValidationError("r1: adjacent indices differ");
        if (x.sign != y.sign) throw ValidationError("r1: signs differ");
        if (x.kind == y.kind) throw ValidationError("r1: need one o and one u");
        if (index_uses(w)[x.index] != 2)
            throw ValidationError("r1: index appears elsewhere in the word");
        out.tokens[pos] = blank_token();
        out.tokens[pos + 1] = blank_token();
    } else {
        if (!is_blank(w.tokens[pos]) || !is_blank(w.tokens[pos + 1]))
            throw ValidationError("r1 reverse: both positions must be blank");
        if (!fresh_index) throw ValidationError("r1 reverse: fresh index required");
        const int i = *fresh_index;
        if (i < 1 || i > w.index_bound)
            throw ValidationError("r1 reverse: fresh index outside 1..N");
        if (index_uses(w)[i] != 0)
            throw ValidationError("r1 reverse: index " + std::to_string(i) + " is stale");
        const R1Variant& v = kR1Variants[variant & 3];
        out.tokens[pos] = tok(v.first, i, v.sign);
        out.tokens[pos + 1] = tok(v.second, i, v.sign);
    }
    validate_word(out);
    return out;
}

QuantumGaussWord apply_r2(const QuantumGaussWord& w, int pos1, int pos2, bool forward,
                          std::optional<std::pair<int, int>> fresh, int variant) {
    if (pos1 < 0 || pos1 + 1 >= w.length() || pos2 < 0 || pos2 + 1 >= w.length() ||
        pos2 < pos1 + 2)
        throw ValidationError("r2 positions out of range or overlapping");
    QuantumGaussWord out = w;
    if (forward) {
        const GaussToken& a = w.tokens[pos1];
        const GaussToken& b = w.tokens[pos1 + 1];
        const GaussToken& c = w.tokens[pos2];
        const GaussToken& d = w.tokens[pos2 + 1];
        if (is_blank(a) || is_blank(b) || is_blank(c) || is_blank(d))
            throw ValidationError("r2: tokens are blank");
        if (a.kind != GaussToken::Over || b.kind != GaussToken::Over)
            throw ValidationError("r2: first pair must be two over-tokens");
        if (a.index == b.index) throw ValidationError("r2: indices must differ");
        if (a.sign != -b.sign) throw ValidationError("r2: signs must be opposite");
        const int i = a.index, j = b.index;
        const auto uses = index_uses(w);
        if (uses[i] != 2 || uses[j] != 2)
            throw ValidationError("r2: indices appear elsewhere in the word");
        const bool straight = c.kind == GaussToken::Under && d.kind == GaussToken::Under &&
                              c.index == i && d.index == j && c.sign == a.sign &&
                              d.sign == b.sign;
        const bool swapped = c.kind == GaussToken::Under && d.kind == GaussToken::Under &&
                             c.index == j && d.index == i && c.sign == b.sign &&
                             d.sign == a.sign;
        if (!straight && !swapped)
            throw ValidationError("r2: closing pair does not match");
        out.tokens[pos1] = out.tokens[pos1 + 1] = blank_token();
        out.tokens[pos2] = out.tokens[pos2 + 1] = blank_token();
    } else {
        for (int p : {pos1, pos1 + 1, pos2, pos2 + 1})
            if (!is_blank(w.tokens[p]))
                throw ValidationError("r2 reverse: all four positions must be blank");
        if (!fresh) throw ValidationError("r2 reverse: fresh indices required");
        const auto [i, j] = *fresh;
        if (i == j) throw ValidationError("r2 reverse: fresh indices must differ");
        for (int x : {i, j})
            if (x < 1 || x > w.index_bound)
                throw ValidationError("r2 reverse: fresh index outside 1..N");
        const auto uses = index_uses(w);
        if (uses[i] != 0 || uses[j] != 0) throw ValidationError("r2 reverse: stale index");
        const R2Variant& v = kR2Variants[variant & 3];
        out.tokens[pos1] = tok(GaussToken::Over, i, v.sign_i);
        out.tokens[pos1 + 1] = tok(GaussToken::Over, j, -v.sign_i);
        if (!v.closing_swapped) {
            out.tokens[pos2] = tok(GaussToken::Under, i, v.sign_i);
            out.tokens[pos2 + 1] = tok(GaussToken::Under, j, -v.sign_i);
        } else {
            out.tokens[pos2] = tok(GaussToken::Under, j, -v.sign_i);
            out.tokens[pos2 + 1] = tok(GaussToken::Under, i, v.sign_i);
        }
    }
    validate_word(out);
    return out;
}

namespace {

// the listed r3 pattern: (u a +)(u b +) X (o a +)(u c +) Y (o b +)(o c +),
// or its pair-swapped image; returns distinct a,b,c on match
bool match_r3(const QuantumGaussWord& w, int p, int q, int r, bool& swapped_form) {
    auto at = [&](int pos) -> const GaussToken& { return w.tokens[pos]; };
    auto all_positive = [&](std::initializer_list<int> ps) {
        for (int x : ps)
            if (is_blank(at(x)) || at(x).sign != +1) return false;
        return true;
    };
    if (!all_positive({p, p + 1, q, q + 1, r, r + 1})) return false;
    {
        const GaussToken &t1 = at(p), &t2 = at(p + 1), &t3 = at(q), &t4 = at(q + 1),
                         &t5 = at(r), &t6 = at(r + 1);
        const int a = t1.index, b = t2.index, c = t4.index;
        if (t1.kind == GaussToken::Under && t2.kind == GaussToken::Under &&
            t3.kind == GaussToken::Over && t4.kind == GaussToken::Under &&
            t5.kind == GaussToken::Over && t6.kind == GaussToken::Over && a != b && b != c &&
            a != c && t3.index == a && t5.index == b && t6.index == c) {
            swapped_form = false;
            return true;
        }
    }
    {
        // swapped: (u b)(u a) (u c)(o a) (o c)(o b)
        const GaussToken &t1 = at(p), &t2 = at(p + 1), &t3 = at(q), &t4 = at(q + 1),
                         &t5 = at(r), &t6 = at(r + 1);
        const int b = t1.index, a = t2.index, c = t3.index;
        if (t1.kind == GaussToken::Under && t2.kind == GaussToken::Under &&
            t3.kind == GaussToken::Under && t4.kind == GaussToken::Over &&
            t5.kind == GaussToken::Over && t6.kind == GaussToken::Over && a != b && b != c &&
            a != c && t4.index == a && t5.index == c && t6.index == b) {
            swapped_form = true;
            return true;
        }
    }
    return false;
}

}  // namespace

QuantumGaussWord apply_r3(const QuantumGaussWord& w, int p, int q, int r) {
    if (p < 0 || p + 1 >= q || q + 1 >= r || r + 1 >= w.length())
        throw ValidationError("r3 positions out of range or overlapping");
    bool swapped = false;
    if (!match_r3(w, p, q, r, swapped))
        throw ValidationError("r3: tokens do not match the move pattern");
    QuantumGaussWord out = w;
    std::swap(out.tokens[p], out.tokens[p + 1]);
    std::swap(out.tokens[q], out.tokens[q + 1]);
    std::swap(out.tokens[r], out.tokens[r + 1]);
    validate_word(out);
    return out;
}

QuantumGaussWord apply_blank_swap(const QuantumGaussWord& w, int pos) {
    if (pos < 0 || pos + 1 >= w.length()) throw ValidationError("blank swap position out of range");
    const bool b1 = is_blank(w.tokens[pos]);
    const bool b2 = is_blank(w.tokens[pos + 1]);
    if (b1 == b2)
        throw ValidationError("blank swap needs exactly one blank at the adjacent pair");
    QuantumGaussWord out = w;
    std::swap(out.tokens[pos], out.tokens[pos + 1]);
    return out;
}

QuantumGaussWord apply_cyclic(const QuantumGaussWord& w, bool forward) {
    QuantumGaussWord out = w;
    if (out.tokens.empty()) return out;
    if (forward) {
        std::rotate(out.tokens.begin(), out.tokens.end() - 1, out.tokens.end());
    } else {
        std::rotate(out.tokens.begin(), out.tokens.begin() + 1, out.tokens.end());
    }
    return out;
}

QuantumGaussWord permute_indices(const QuantumGaussWord& w, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != w.index_bound)
        throw ValidationError("permutation must cover 1..N");
    std::vector<bool> hit(w.index_bound + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > w.index_bound || hit[v])
            throw ValidationError("index permutation is not a bijection of 1..N");
        hit[v] = true;
    }
    QuantumGaussWord out = w;
    for (auto& t : out.tokens)
        if (!is_blank(t)) t.index = sigma[t.index - 1];
    validate_word(out);
    return out;
}

GaussMoveInstance GaussMoveInstance::inverted() const {
    GaussMoveInstance inv = *this;
    switch (rule) {
        case GaussRule::R1:
        case GaussRule::R2:
            inv.forward = !forward;
            break;
        case GaussRule::R3:
        case GaussRule::BlankSwap:
            break;  // involutions
        case GaussRule::Cyclic:
            inv.forward = !forward;
            break;
        case GaussRule::IndexPerm: {
            std::vector<int> ip(permutation.size());
            for (size_t i = 0; i < permutation.size(); ++i) ip[permutation[i] - 1] = static_cast<int>(i) + 1;
            inv.permutation = std::move(ip);
            break;
        }
    }
    return inv;
}

std::string GaussMoveInstance::to_json() const {
    json j;
    switch (rule) {
        case GaussRule::R1: j["rule"] = "r1"; break;
        case GaussRule::R2: j["rule"] = "r2"; break;
        case GaussRule::R3: j["rule"] = "r3"; break;
        case GaussRule::BlankSwap: j["rule"] = "blankSwap"; break;
        case GaussRule::Cyclic: j["rule"] = "cyclic"; break;
        case GaussRule::IndexPerm: j["rule"] = "indexPerm"; break;
    }
    j["direction"] = forward ? "forward" : "reverse";
    j["positions"] = positions;
    if (!indices.empty()) j["freshIndices"] = indices;
    if (variant) j["variant"] = variant;
    if (!permutation.empty()) j["permutation"] = permutation;
    return j.dump();
}

QuantumGaussWord apply_move(const QuantumGaussWord& w, const GaussMoveInstance& mv) {
    switch (mv.rule) {
        case GaussRule::R1:
            return apply_r1(w, mv.positions.at(0), mv.forward,
                            mv.indices.empty() ? std::nullopt : std::optional<int>(mv.indices[0]),
                            mv.variant);
        case GaussRule::R2:
            return apply_r2(w, mv.positions.at(0), mv.positions.at(1), mv.forward,
                            mv.indices.size() == 2
                                ? std::optional<std::pair<int, int>>({mv.indices[0], mv.indices[1]})
                                : std::nullopt,
                            mv.variant);
        case GaussRule::R3:
            return apply_r3(w, mv.positions.at(0), mv.positions.at(1), mv.positions.at(2));
        case GaussRule::BlankSwap:
            return apply_blank_swap(w, mv.positions.at(0));
        case GaussRule::Cyclic:
            return apply_cyclic(w, mv.forward);
        case GaussRule::IndexPerm:
            return permute_indices(w, mv.permutation);
    }
    throw InternalError("bad rule");
}

std::vector<std::pair<GaussMoveInstance, QuantumGaussWord>> neighbors(const QuantumGaussWord& w) {
    validate_word(w);
    std::vector<std::pair<GaussMoveInstance, QuantumGaussWord>> out;
    std::set<std::string> seen;
    auto emit = [&](GaussMoveInstance mv, QuantumGaussWord img) {
        std::string enc = img.encode();
        if (seen.insert(enc).second) out.push_back({std::move(mv), std::move(img)});
    };
    const int m = w.length();
    const auto uses = index_uses(w);
    std::vector<int> unused;
    for (int i = 1; i <= w.index_bound; ++i)
        if (uses[i] == 0) unused.push_back(i);

    for (int p = 0; p + 1 < m; ++p) {
        // r1 forward
        const GaussToken& x = w.tokens[p];
        const GaussToken& y = w.tokens[p + 1];
        if (!is_blank(x) && !is_blank(y) && x.index == y.index && x.sign == y.sign &&
            x.kind != y.kind && uses[x.index] == 2) {
            GaussMoveInstance mv;
            mv.rule = GaussRule::R1;
            mv.positions = {p};
            mv.indices = {x.index};
            for (int v = 0; v < 4; ++v)
                if (kR1Variants[v].first == x.kind && kR1Variants[v].sign == x.sign) mv.variant = v;
            emit(mv, apply_r1(w, p, true));
        }
        // r1 reverse
        if (is_blank(x) && is_blank(y)) {
            for (int idx : unused)
                for (int v = 0; v < 4; ++v) {
                    GaussMoveInstance mv;
                    mv.rule = GaussRule::R1;
                    mv.forward = false;
                    mv.positions = {p};
                    mv.indices = {idx};
                    mv.variant = v;
                    emit(mv, apply_r1(w, p, false, idx, v));
                }
        }
        // blank swap
        if (is_blank(x) != is_blank(y)) {
            GaussMoveInstance mv;
            mv.rule = GaussRule::BlankSwap;
            mv.positions = {p};
            emit(mv, apply_blank_swap(w, p));
        }
    }
    // r2
    for (int p = 0; p + 1 < m; ++p)
        for (int r = p + 2; r + 1 < m; ++r) {
            const GaussToken& a = w.tokens[p];
            if (!is_blank(a) && a.kind == GaussToken::Over) {
                bool ok = true;
                try {
                    QuantumGaussWord img = apply_r2(w, p, r, true);
                    GaussMoveInstance mv;
                    mv.rule = GaussRule::R2;
                    mv.positions = {p, r};
                    mv.indices = {a.index, w.tokens[p + 1].index};
                    const bool swapped = w.tokens[r].index != a.index;
                    for (int v = 0; v < 4; ++v)
                        if (kR2Variants[v].sign_i == a.sign &&
                            kR2Variants[v].closing_swapped == swapped)
                            mv.variant = v;
                    emit(mv, std::move(img));
                } catch (const ValidationError&) {
                    ok = false;
                }
                (void)ok;
            }
            if (is_blank(w.tokens[p]) && is_blank(w.tokens[p + 1]) && is_blank(w.tokens[r]) &&
                is_blank(w.tokens[r + 1])) {
                for (size_t xi = 0; xi < unused.size(); ++xi)
                    for (size_t yi = 0; yi < unused.size(); ++yi) {
                        if (xi == yi) continue;
                        for (int v = 0; v < 4; ++v) {
                            GaussMoveInstance mv;
                            mv.rule = GaussRule::R2;
                            mv.forward = false;
                            mv.positions = {p, r};
                            mv.indices = {unused[xi], unused[yi]};
                            mv.variant = v;
                            emit(mv, apply_r2(w, p, r, false,
                                              std::make_pair(unused[xi], unused[yi]), v));
                        }
                    }
            }
        }
    // r3
    for (int p = 0; p + 1 < m; ++p)
        for (int q = p + 2; q + 1 < m; ++q)
            for (int r = q + 2; r + 1 < m; ++r) {
                bool swapped;
                if (match_r3(w, p, q, r, swapped)) {
                    GaussMoveInstance mv;
                    mv.rule = GaussRule::R3;
                    mv.positions = {p, q, r};
                    emit(mv, apply_r3(w, p, q, r));
                }
            }
    // cyclic, both directions
    if (m > 1) {
        GaussMoveInstance fwd;
        fwd.rule = GaussRule::Cyclic;
        emit(fwd, apply_cyclic(w, true));
        GaussMoveInstance rev;
        rev.rule = GaussRule::Cyclic;
        rev.forward = false;
        emit(rev, apply_cyclic(w, false));
    } else if (m == 1) {
        GaussMoveInstance fwd;
        fwd.rule = GaussRule::Cyclic;
        emit(fwd, apply_cyclic(w, true));
    }
    // adjacent index transpositions
    for (int t = 1; t + 1 <= w.index_bound; ++t) {
        std::vector<int> sigma(w.index_bound);
        for (int i = 0; i < w.index_bound; ++i) sigma[i] = i + 1;
        std::swap(sigma[t - 1], sigma[t]);
        GaussMoveInstance mv;
        mv.rule = GaussRule::IndexPerm;
        mv.permutation = sigma;
        emit(mv, permute_indices(w, sigma));
    }
    return out;
}

std::string GaussSearchResult::path_json() const {
    json arr = json::array();
    for (const auto& mv : path) arr.push_back(json::parse(mv.to_json()));
    return arr.dump();
}

GaussSearchResult bounded_equivalence(const QuantumGaussWord& w1, const QuantumGaussWord& w2,
                                      const GaussSearchLimits& limits) {
    if (w1.length() != w2.length() || w1.index_bound != w2.index_bound)
        throw ValidationError("bounded_equivalence: words must share M and N");
    validate_word(w1);
    validate_word(w2);
    GaussSearchResult res;
    if (w1 == w2) {
        res.status = GaussSearchStatus::Found;
        return res;
    }
    struct Node {
        std::string parent;
        GaussMoveInstance move;  // applied to parent to reach this node
    };
    // side 0 grows from w1, side 1 from w2
    std::unordered_map<std::string, Node> tree[2];
    std::vector<QuantumGaussWord> frontier[2] = {{w1}, {w2}};
    const std::string start[2] = {w1.encode(), w2.encode()};
    tree[0].emplace(start[0], Node{});
    tree[1].emplace(start[1], Node{});
    bool truncated = false;
    int depth[2] = {0, 0};
    std::optional<std::string> meet;

    while (!meet && depth[0] + depth[1] < limits.max_depth && !truncated) {
        // a fully exhausted side means the other word is unreachable outright
        if (frontier[0].empty() || frontier[1].empty()) break;
        const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<QuantumGaussWord> next;
        for (const auto& wcur : frontier[side]) {
            const std::string parent_enc = wcur.encode();
            for (auto& [mv, img] : neighbors(wcur)) {
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
        // forward half: w1 .. meet
        std::vector<GaussMoveInstance> fwd;
        std::string cur = *meet;
        while (cur != start[0]) {
            const Node& nd = tree[0].at(cur);
            fwd.push_back(nd.move);
            cur = nd.parent;
        }
        std::reverse(fwd.begin(), fwd.end());
        // backward half: meet .. w2, inverting the side-1 tree edges
        std::vector<GaussMoveInstance> bwd;
        cur = *meet;
        while (cur != start[1]) {
            const Node& nd = tree[1].at(cur);
            bwd.push_back(nd.move.inverted());
            cur = nd.parent;
        }
        res.path = std::move(fwd);
        res.path.insert(res.path.end(), bwd.begin(), bwd.end());
        res.status = GaussSearchStatus::Found;
        // verify the witness end to end
        QuantumGaussWord check = w1;
        for (const auto& mv : res.path) check = apply_move(check, mv);
        if (!(check == w2)) throw InternalError("witness path verification failed");
        return res;
    }
    res.status = truncated ? GaussSearchStatus::Unknown : GaussSearchStatus::DistinctWithinBound;
    return res;
}

BasisKet gauss_ket(const QuantumGaussWord& w) {
    validate_word(w);
    return BasisKet{Family::Gauss, w.encode()};
}

}  // namespace qknot
