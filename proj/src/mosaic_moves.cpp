#include "qknot/mosaic_moves.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qknot/bracket.hpp"
#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

namespace {

using Grid = std::vector<std::vector<Tile>>;

Port opposite(Port p) {
    switch (p) {
        case Port::N: return Port::S;
        case Port::S: return Port::N;
        case Port::E: return Port::W;
        case Port::W: return Port::E;
    }
    throw InternalError("bad port");
}

void port_delta(Port p, int& dr, int& dc) {
    switch (p) {
        case Port::N: dr = -1; dc = 0; return;
        case Port::S: dr = 1; dc = 0; return;
        case Port::E: dr = 0; dc = 1; return;
        case Port::W: dr = 0; dc = -1; return;
    }
    throw InternalError("bad port");
}

struct PatchPort {
    int r, c;
    Port p;
    friend bool operator<(const PatchPort& a, const PatchPort& b) {
        return std::tie(a.r, a.c, a.p) < std::tie(b.r, b.c, b.p);
    }
    friend bool operator==(const PatchPort&, const PatchPort&) = default;
};

struct Signature {
    std::set<PatchPort> boundary;
    std::set<std::pair<PatchPort, PatchPort>> pairing;
    int loops = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// nullopt when the patch is not internally consistent as a partial mosaic
std::optional<Signature> patch_signature(const Grid& g) {
    const int R = static_cast<int>(g.size());
    const int C = static_cast<int>(g[0].size());
    Signature sig;
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c)
            for (Port p : {Port::N, Port::E, Port::S, Port::W}) {
                const bool has = tile_has_port(g[r][c], p);
                int dr, dc;
                port_delta(p, dr, dc);
                const int r2 = r + dr, c2 = c + dc;
                if (r2 < 0 || r2 >= R || c2 < 0 || c2 >= C) {
                    if (has) sig.boundary.insert({r, c, p});
                } else if (has != tile_has_port(g[r2][c2], opposite(p))) {
                    return std::nullopt;
                }
            }
    // strand pairing between boundary ports
    auto traverse = [&](PatchPort start) -> PatchPort {
        int cr = start.r, cc = start.c;
        Port cp = start.p;  // entering tile (cr,cc) through port cp
        while (true) {
            Port out;
            if (!tile_traverse(g[cr][cc], cp, out)) throw InternalError("broken patch strand");
            int dr, dc;
            port_delta(out, dr, dc);
            const int nr = cr + dr, nc = cc + dc;
            if (nr < 0 || nr >= R || nc < 0 || nc >= C) return {cr, cc, out};
            cr = nr;
            cc = nc;
            cp = opposite(out);
        }
    };
    std::set<PatchPort> seen;
    for (const auto& b : sig.boundary) {
        if (seen.count(b)) continue;
        PatchPort other = traverse(b);
        seen.insert(b);
        seen.insert(other);
        sig.pairing.insert({std::min(b, other), std::max(b, other)});
    }
    // internal loops: strand passages never reached from the boundary
    std::set<std::pair<PatchPort, PatchPort>> visited;
    auto passage = [](int r, int c, Port a, Port b) {
        PatchPort pa{r, c, a}, pb{r, c, b};
        return std::make_pair(std::min(pa, pb), std::max(pa, pb));
    };
    for (const auto& b : sig.boundary) {
        int cr = b.r, cc = b.c;
        Port cp = b.p;
        while (true) {
            Port out;
            tile_traverse(g[cr][cc], cp, out);
            visited.insert(passage(cr, cc, cp, out));
            int dr, dc;
            port_delta(out, dr, dc);
            const int nr = cr + dr, nc = cc + dc;
            if (nr < 0 || nr >= R || nc < 0 || nc >= C) break;
            cr = nr;
            cc = nc;
            cp = opposite(out);
        }
    }
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) {
            const Tile t = g[r][c];
            if (t == 0) continue;
            std::vector<std::array<Port, 2>> pairs;
            if (tile_is_crossing(t)) {
                pairs = {{Port::N, Port::S}, {Port::W, Port::E}};
            } else {
                for (Port p : {Port::N, Port::E, Port::S, Port::W}) {
                    Port out;
                    if (tile_has_port(t, p) && tile_traverse(t, p, out))
                        if (static_cast<int>(p) < static_cast<int>(out) ||
                            !tile_has_port(t, out))
                            pairs.push_back({p, out});
                }
            }
            for (const auto& pr : pairs) {
                auto key = passage(r, c, pr[0], pr[1]);
                if (visited.count(key)) continue;
                // walk the closed loop
                sig.loops++;
                int cr = r, cc = c;
                Port cp = pr[0];
                while (true) {
                    Port out;
                    tile_traverse(g[cr][cc], cp, out);
                    auto k2 = passage(cr, cc, cp, out);
                    if (visited.count(k2)) break;
                    visited.insert(k2);
                    int dr, dc;
                    port_delta(out, dr, dc);
                    cr += dr;
                    cc += dc;
                    cp = opposite(out);
                }
            }
        }
    return sig;
}

Grid rotate_ccw(const Grid& g) {
    const int R = static_cast<int>(g.size());
    const int C = static_cast<int>(g[0].size());
    Grid out(C, std::vector<Tile>(R));
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) out[C - 1 - c][r] = tile_rotated_ccw(g[r][c]);
    return out;
}

Grid reflect(const Grid& g) {
    Grid out = g;
    for (auto& row : out) {
        std::reverse(row.begin(), row.end());
        for (auto& t : row) t = tile_reflected(t);
    }
    return out;
}

void validate_move(const MosaicMove& mv) {
    if (mv.rows < 1 || mv.cols < 1) throw ValidationError("move '" + mv.name + "': empty box");
    auto check_dims = [&](const Grid& g, const char* which) {
        if (static_cast<int>(g.size()) != mv.rows)
            throw ValidationError("move '" + mv.name + "': " + which + " row count mismatch");
        for (const auto& row : g) {
            if (static_cast<int>(row.size()) != mv.cols)
                throw ValidationError("move '" + mv.name + "': " + which + " column count mismatch");
            for (Tile t : row)
                if (t >= kTileCount)
                    throw ValidationError("move '" + mv.name + "': tile id out of range");
        }
    };
    check_dims(mv.pattern, "pattern");
    check_dims(mv.replacement, "replacement");
    if (mv.pattern == mv.replacement)
        throw ValidationError("move '" + mv.name + "': pattern equals replacement");
    auto sp = patch_signature(mv.pattern);
    auto sr = patch_signature(mv.replacement);
    if (!sp) throw ValidationError("move '" + mv.name + "': pattern is not internally consistent");
    if (!sr)
        throw ValidationError("move '" + mv.name + "': replacement is not internally consistent");
    if (!(*sp == *sr))
        throw ValidationError("move '" + mv.name +
                              "': pattern and replacement boundary signatures differ");
}

}  // namespace

MoveSet MoveSet::build(std::vector<MosaicMove> moves, bool symmetry_closure) {
    for (const auto& mv : moves) validate_move(mv);
    std::vector<MosaicMove> out;
    std::set<std::pair<std::string, std::string>> seen;  // (pattern,replacement) encodings
    auto encode = [](const Grid& g) {
        std::string s;
        s.push_back(static_cast<char>(g.size()));
        s.push_back(static_cast<char>(g[0].size()));
        for (const auto& row : g)
            for (Tile t : row) s.push_back(static_cast<char>(t));
        return s;
    };
    auto add = [&](const std::string& name, const Grid& p, const Grid& r) {
        if (seen.emplace(encode(p), encode(r)).second) {
            MosaicMove mv;
            mv.name = name;
            mv.rows = static_cast<int>(p.size());
            mv.cols = static_cast<int>(p[0].size());
            mv.pattern = p;
            mv.replacement = r;
            out.push_back(std::move(mv));
        }
    };
    for (const auto& mv : moves) {
        if (!symmetry_closure) {
            add(mv.name, mv.pattern, mv.replacement);
            add(mv.name + "~", mv.replacement, mv.pattern);  // inverse always present
            continue;
        }
        Grid p = mv.pattern, r = mv.replacement;
        for (int refl = 0; refl < 2; ++refl) {
            Grid pp = refl ? reflect(mv.pattern) : mv.pattern;
            Grid rr = refl ? reflect(mv.replacement) : mv.replacement;
            for (int rot = 0; rot < 4; ++rot) {
                add(mv.name, pp, rr);
                add(mv.name + "~", rr, pp);
                pp = rotate_ccw(pp);
                rr = rotate_ccw(rr);
            }
        }
    }
    MoveSet ms;
    ms.moves_ = std::move(out);
    return ms;
}

MoveSet MoveSet::load_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("move file JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("moves"))
        throw ValidationError("move file must be an object with 'moves'");
    const bool closure = j.value("symmetryClosure", false);
    std::vector<MosaicMove> moves;
    for (const auto& e : j["moves"]) {
        MosaicMove mv;
        mv.name = e.value("name", "move" + std::to_string(moves.size()));
        if (!e.contains("k") || !e["k"].is_array() || e["k"].size() != 2)
            throw ValidationError("move '" + mv.name + "': k must be [rows, cols]");
        mv.rows = e["k"][0].get<int>();
        mv.cols = e["k"][1].get<int>();
        auto grid_of = [&](const char* key) {
            Grid g;
            for (const auto& row : e.at(key)) {
                std::vector<Tile> r;
                for (const auto& v : row) r.push_back(static_cast<Tile>(v.get<int>()));
                g.push_back(std::move(r));
            }
            return g;
        };
        mv.pattern = grid_of("pattern");
        mv.replacement = grid_of("replacement");
        moves.push_back(std::move(mv));
    }
    return build(std::move(moves), closure);
}

MoveSet MoveSet::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read move file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_json(ss.str());
}

std::vector<MovePlacement> applicable_moves(const Mosaic& m, const MoveSet& s) {
    std::vector<MovePlacement> out;
    const int n = m.size();
    for (int mi = 0; mi < static_cast<int>(s.moves().size()); ++mi) {
        const auto& mv = s.moves()[mi];
        for (int r = 0; r + mv.rows <= n; ++r)
            for (int c = 0; c + mv.cols <= n; ++c) {
                bool match = true;
                for (int i = 0; match && i < mv.rows; ++i)
                    for (int j = 0; match && j < mv.cols; ++j)
                        if (m.at(r + i, c + j) != mv.pattern[i][j]) match = false;
                if (match) out.push_back({mi, r, c});
            }
    }
    return out;
}

Mosaic apply_move(const Mosaic& m, const MosaicMove& mv, int row, int col) {
    if (row < 0 || col < 0 || row + mv.rows > m.size() || col + mv.cols > m.size())
        throw ValidationError("move placement overlaps the grid boundary");
    for (int i = 0; i < mv.rows; ++i)
        for (int j = 0; j < mv.cols; ++j)
            if (m.at(row + i, col + j) != mv.pattern[i][j])
                throw ValidationError("move pattern does not match at the given offset");
    Mosaic out = m;
    for (int i = 0; i < mv.rows; ++i)
        for (int j = 0; j < mv.cols; ++j) out.set(row + i, col + j, mv.replacement[i][j]);
    return out;
}

namespace {

OrbitResult orbit_impl(const Mosaic& start, const MoveSet& s, const OrbitLimits& limits,
                       bool parallel, const std::string* stop_at) {
    OrbitResult res;
    std::vector<Mosaic> frontier{start};
    res.states.insert(start.canonical());
    bool truncated = false;
    bool found_stop = stop_at && *stop_at == start.canonical();
    for (int depth = 0; depth < limits.max_depth && !frontier.empty() && !found_stop; ++depth) {
        std::vector<std::vector<std::pair<Mosaic, OrbitStep>>> produced(frontier.size());
        auto expand = [&](size_t fi) {
            const Mosaic& m = frontier[fi];
            const std::string parent_enc = m.canonical();
            for (const auto& pl : applicable_moves(m, s)) {
                const auto& mv = s.moves()[pl.move];
                Mosaic img = apply_move(m, mv, pl.row, pl.col);
                produced[fi].push_back({std::move(img), {parent_enc, mv.name, pl.row, pl.col}});
            }
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t fi = 0; fi < static_cast<std::int64_t>(frontier.size()); ++fi)
                expand(static_cast<size_t>(fi));
        } else {
            for (size_t fi = 0; fi < frontier.size(); ++fi) expand(fi);
        }
        std::vector<Mosaic> next;
        for (auto& chunk : produced) {  // exclusive insertion, frontier order
            for (auto& [img, step] : chunk) {
                std::string enc = img.canonical();
                if (res.states.count(enc)) continue;
                if (res.states.size() >= limits.max_states) {
                    truncated = true;
                    break;
                }
                res.states.insert(enc);
                res.parents.emplace(enc, step);
                if (stop_at && enc == *stop_at) found_stop = true;
                next.push_back(std::move(img));
            }
            if (truncated) break;
        }
        if (truncated) break;
        if (found_stop) break;
        frontier = std::move(next);
        if (depth + 1 == limits.max_depth && !frontier.empty()) {
            // depth budget exhausted with work remaining: unknown closure
            truncated = true;
        }
    }
    res.complete = !truncated && !found_stop;
    return res;
}

}  // namespace

OrbitResult orbit_bfs(const Mosaic& m, const MoveSet& s, const OrbitLimits& limits) {
    return orbit_impl(m, s, limits, true, nullptr);
}

OrbitResult orbit_bfs_serial(const Mosaic& m, const MoveSet& s, const OrbitLimits& limits) {
    return orbit_impl(m, s, limits, false, nullptr);
}

SameOrbitResult same_orbit(const Mosaic& k1, const Mosaic& k2, const MoveSet& s,
                           const OrbitLimits& limits) {
    if (k1.size() != k2.size()) throw ValidationError("same_orbit: lattice sizes differ");
    SameOrbitResult out;
    const std::string target = k2.canonical();
    if (k1.canonical() == target) {
        out.answer = OrbitAnswer::Yes;
        return out;
    }
    OrbitResult orbit = orbit_impl(k1, s, limits, true, &target);
    if (orbit.states.count(target)) {
        out.answer = OrbitAnswer::Yes;
        std::vector<OrbitStep> path;
        std::string cur = target;
        while (cur != k1.canonical()) {
            const OrbitStep& st = orbit.parents.at(cur);
            path.push_back(st);
            cur = st.parent;
        }
        std::reverse(path.begin(), path.end());
        out.witness = std::move(path);
        return out;
    }
    out.answer = orbit.complete ? OrbitAnswer::No : OrbitAnswer::Unknown;
    return out;
}

double invariant_jones_at(const Mosaic& m, double t) {
    const Laurent v = jones(mosaic_to_pd(m));
    // tQuarter values evaluate at the positive real quartic root
    const double x = v.var() == Var::T ? t : std::pow(t, 0.25);
    if (t <= 0) throw ValidationError("jones-at-real-t expects t > 0");
    return v.eval(std::complex<double>(x, 0.0)).real();
}

mpz_class invariant_bracket_coefficient(const Mosaic& m, long q_exponent) {
    return bracket_q(mosaic_to_pd(m)).coeff(q_exponent);
}

int invariant_component_count(const Mosaic& m) { return mosaic_to_pd(m).component_count(); }

std::string invariant_observable(const Mosaic& m, const std::string& invariant, double param) {
    std::ostringstream os;
    if (invariant == "jones-at-real-t") {
        os << invariant_jones_at(m, param);
    } else if (invariant == "bracket-coefficient") {
        os << invariant_bracket_coefficient(m, static_cast<long>(param)).get_str();
    } else if (invariant == "component-count") {
        os << invariant_component_count(m);
    } else {
        throw ValidationError("unknown invariant name: " + invariant);
    }
    return os.str();
}

PermutationUnitary move_as_unitary(const MosaicMove& mv, int row, int col, int n) {
    if (row < 0 || col < 0 || row + mv.rows > n || col + mv.cols > n)
        throw ValidationError("move does not fit an n x n grid at this offset");
    auto matches = [mv, row, col](const Mosaic& m, const std::vector<std::vector<Tile>>& grid) {
        for (int i = 0; i < mv.rows; ++i)
            for (int j = 0; j < mv.cols; ++j)
                if (m.at(row + i, col + j) != grid[i][j]) return false;
        return true;
    };
    auto map = [mv, row, col, n, matches](const std::string& payload) -> std::optional<std::string> {
        Mosaic m = Mosaic::from_canonical(payload);
        if (m.size() != n) return std::nullopt;
        if (matches(m, mv.pattern)) return apply_move(m, mv, row, col).canonical();
        if (matches(m, mv.replacement)) {
            MosaicMove inv = mv;
            std::swap(inv.pattern, inv.replacement);
            return apply_move(m, inv, row, col).canonical();
        }
        return payload;  // identity elsewhere in the domain
    };
    return PermutationUnitary(Family::Mosaic, map, map);  // a transposition is self-inverse
}

BasisKet mosaic_ket(const Mosaic& m) { return BasisKet{Family::Mosaic, m.canonical()}; }

}  // namespace qknot
