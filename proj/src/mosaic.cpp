#include "qknot/mosaic.hpp"

#include <map>
#include <sstream>

#include "qknot/errors.hpp"

namespace qknot {

namespace {

constexpr std::uint8_t port_bit(Port p) { return static_cast<std::uint8_t>(1u << static_cast<int>(p)); }

// port masks per tile (N=1, E=2, S=4, W=8)
constexpr std::array<std::uint8_t, kTileCount> kPorts = {
    0b0000,  // T0
    0b1100,  // T1 {W,S}
    0b0110,  // T2 {S,E}
    0b0011,  // T3 {E,N}
    0b1001,  // T4 {N,W}
    0b1010,  // T5 {W,E}
    0b0101,  // T6 {N,S}
    0b1111, 0b1111, 0b1111, 0b1111,  // T7..T10
};

// strand pairs per tile
struct Pairs {
    std::array<std::array<Port, 2>, 2> p;
    int count;
};
const Pairs& tile_pairs(Tile t) {
    static const std::array<Pairs, kTileCount> table = {{
        {{{{Port::N, Port::N}, {Port::N, Port::N}}}, 0},
        {{{{Port::W, Port::S}, {Port::N, Port::N}}}, 1},
        {{{{Port::S, Port::E}, {Port::N, Port::N}}}, 1},
        {{{{Port::E, Port::N}, {Port::N, Port::N}}}, 1},
        {{{{Port::N, Port::W}, {Port::N, Port::N}}}, 1},
        {{{{Port::W, Port::E}, {Port::N, Port::N}}}, 1},
        {{{{Port::N, Port::S}, {Port::N, Port::N}}}, 1},
        {{{{Port::N, Port::E}, {Port::S, Port::W}}}, 2},
        {{{{Port::N, Port::W}, {Port::S, Port::E}}}, 2},
        {{{{Port::N, Port::S}, {Port::W, Port::E}}}, 2},
        {{{{Port::N, Port::S}, {Port::W, Port::E}}}, 2},
    }};
    return table[t];
}

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

}  // namespace

bool tile_has_port(Tile t, Port p) {
    if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    return kPorts[t] & port_bit(p);
}

bool tile_traverse(Tile t, Port in, Port& out) {
    if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    if (tile_is_crossing(t)) {
        if (!tile_has_port(t, in)) return false;
        out = opposite(in);
        return true;
    }
    const Pairs& ps = tile_pairs(t);
    for (int i = 0; i < ps.count; ++i) {
        if (ps.p[i][0] == in) {
            out = ps.p[i][1];
            return true;
        }
        if (ps.p[i][1] == in) {
            out = ps.p[i][0];
            return true;
        }
    }
    return false;
}

bool tile_is_crossing(Tile t) { return t == 9 || t == 10; }

Tile tile_rotated_ccw(Tile t) {
    static const std::array<Tile, kTileCount> rot = {0, 2, 3, 4, 1, 6, 5, 8, 7, 10, 9};
    if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    return rot[t];
}

Tile tile_reflected(Tile t) {
    static const std::array<Tile, kTileCount> ref = {0, 2, 1, 4, 3, 5, 6, 8, 7, 9, 10};
    if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    return ref[t];
}

Mosaic::Mosaic(int n, Tile fill) : n_(n), g_(n, std::vector<Tile>(n, fill)) {
    if (n < 1) throw ValidationError("mosaic size must be at least 1");
}

Mosaic::Mosaic(std::vector<std::vector<Tile>> grid) : g_(std::move(grid)) {
    n_ = static_cast<int>(g_.size());
    if (n_ < 1) throw ValidationError("mosaic grid is empty");
    for (const auto& row : g_) {
        if (static_cast<int>(row.size()) != n_) throw ValidationError("mosaic grid is not square");
        for (Tile t : row)
            if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    }
}

void Mosaic::set(int row, int col, Tile t) {
    if (t >= kTileCount) throw ValidationError("tile id out of range 0..10");
    g_[row][col] = t;
}

Mosaic Mosaic::from_text(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::vector<Tile>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<Tile> row;
        int v;
        while (ls >> v) {
            if (v < 0 || v >= kTileCount)
                throw ValidationError("tile id " + std::to_string(v) + " out of range 0..10");
            row.push_back(static_cast<Tile>(v));
        }
        rows.push_back(std::move(row));
    }
    return Mosaic(std::move(rows));
}

std::string Mosaic::to_text() const {
    std::ostringstream os;
    for (int r = 0; r < n_; ++r) {
        for (int c = 0; c < n_; ++c) {
            if (c) os << ' ';
            os << static_cast<int>(g_[r][c]);
        }
        os << '\n';
    }
    return os.str();
}

std::string Mosaic::canonical() const {
    std::string out;
    out.reserve(1 + n_ * n_);
    out.push_back(static_cast<char>(n_));
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out.push_back(static_cast<char>(g_[r][c]));
    return out;
}

Mosaic Mosaic::from_canonical(const std::string& bytes) {
    if (bytes.empty()) throw ValidationError("empty mosaic encoding");
    const int n = static_cast<unsigned char>(bytes[0]);
    if (static_cast<int>(bytes.size()) != 1 + n * n)
        throw ValidationError("mosaic encoding length mismatch");
    Mosaic m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.set(r, c, static_cast<Tile>(bytes[1 + r * n + c]));
    return m;
}

MosaicReport validate_mosaic(const Mosaic& m) {
    MosaicReport rep;
    const int n = m.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            for (Port p : {Port::N, Port::E, Port::S, Port::W}) {
                if (!tile_has_port(m.at(r, c), p)) continue;
                int dr, dc;
                port_delta(p, dr, dc);
                const int r2 = r + dr, c2 = c + dc;
                if (r2 < 0 || r2 >= n || c2 < 0 || c2 >= n) {
                    rep.violations.push_back({r, c, p, true});
                } else if (!tile_has_port(m.at(r2, c2), opposite(p))) {
                    rep.violations.push_back({r, c, p, false});
                }
            }
    rep.suitably_connected = rep.violations.empty();
    return rep;
}

namespace {

struct PortRef {
    int r, c;
    Port p;
    friend bool operator<(const PortRef& a, const PortRef& b) {
        return std::tie(a.r, a.c, a.p) < std::tie(b.r, b.c, b.p);
    }
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

}  // namespace

PlanarDiagram mosaic_to_pd(const Mosaic& m) {
    if (!validate_mosaic(m).suitably_connected)
        throw ValidationError("mosaic is not suitably connected");
    const int n = m.size();
    std::vector<PortRef> crossings;  // crossing tiles in row-major order
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (tile_is_crossing(m.at(r, c))) crossings.push_back({r, c, Port::N});

    // walk from a crossing departure port to the arrival port of the next
    // crossing, marking intermediate strand passages
    auto walk = [&](int r, int c, Port p, std::map<PortRef, bool>* mark) -> PortRef {
        int cr = r, cc = c;
        Port cp = p;
        while (true) {
            int dr, dc;
            port_delta(cp, dr, dc);
            const int nr = cr + dr, nc = cc + dc;
            const Port in = opposite(cp);
            const Tile t = m.at(nr, nc);
            if (tile_is_crossing(t)) return {nr, nc, in};
            Port out;
            tile_traverse(t, in, out);
            if (mark) {
                (*mark)[{nr, nc, in}] = true;
                (*mark)[{nr, nc, out}] = true;
            }
            cr = nr;
            cc = nc;
            cp = out;
        }
    };

    if (crossings.empty()) {
        // only closed circles (or nothing)
        std::map<PortRef, bool> seen;
        int loops = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const Tile t = m.at(r, c);
                if (t == 0) continue;
                const Pairs& ps = tile_pairs(t);
                for (int idx = 0; idx < ps.count; ++idx) {
                    PortRef start{r, c, ps.p[idx][0]};
                    if (seen.count(start)) continue;
                    loops++;
                    int cr = r, cc = c;
                    Port cp = start.p;
                    while (!seen.count({cr, cc, cp})) {
                        seen[{cr, cc, cp}] = true;
                        Port out;
                        tile_traverse(m.at(cr, cc), cp, out);
                        seen[{cr, cc, out}] = true;
                        int dr, dc;
                        port_delta(out, dr, dc);
                        cr += dr;
                        cc += dc;
                        cp = opposite(out);
                    }
                }
            }
        return PlanarDiagram({}, loops);
    }

    std::map<PortRef, PortRef> arrival;
    std::map<PortRef, bool> on_strand;
    for (const auto& x : crossings)
        for (Port p : {Port::N, Port::E, Port::S, Port::W})
            arrival[{x.r, x.c, p}] = walk(x.r, x.c, p, &on_strand);

    // free circles: strand passages not touched by any crossing-to-crossing walk
    int free_loops = 0;
    {
        std::map<PortRef, bool> seen;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const Tile t = m.at(r, c);
                if (t == 0 || tile_is_crossing(t)) continue;
                const Pairs& ps = tile_pairs(t);
                for (int idx = 0; idx < ps.count; ++idx) {
                    PortRef start{r, c, ps.p[idx][0]};
                    if (on_strand.count(start) || seen.count(start)) continue;
                    free_loops++;
                    int cr = r, cc = c;
                    Port cp = start.p;
                    while (!seen.count({cr, cc, cp})) {
                        seen[{cr, cc, cp}] = true;
                        Port out;
                        tile_traverse(m.at(cr, cc), cp, out);
                        seen[{cr, cc, out}] = true;
                        int dr, dc;
                        port_delta(out, dr, dc);
                        cr += dr;
                        cc += dc;
                        cp = opposite(out);
                    }
                }
            }
    }

    // traverse components, labeling arcs consecutively; consuming arrivals
    // prevents walking a strand twice
    std::map<PortRef, int> departure_label;
    std::map<PortRef, PortRef> arrived_from;  // arrival port -> its departure
    std::map<PortRef, bool> done;
    int next_label = 1;
    for (const auto& x : crossings)
        for (Port p0 : {Port::N, Port::E, Port::S, Port::W}) {
            PortRef start{x.r, x.c, p0};
            if (done.count(start)) continue;
            PortRef cur = start;
            while (!done.count(cur)) {
                done[cur] = true;
                departure_label[cur] = next_label++;
                PortRef arr = arrival[cur];
                done[arr] = true;
                arrived_from[arr] = cur;
                cur = {arr.r, arr.c, opposite(arr.p)};
            }
        }

    // assemble PD tuples: counterclockwise listing S,E,N,W cyclic order from
    // the incoming under port
    auto ccw_next = [](Port p) {
        switch (p) {
            case Port::S: return Port::E;
            case Port::E: return Port::N;
            case Port::N: return Port::W;
            case Port::W: return Port::S;
        }
        throw InternalError("bad port");
    };
    std::vector<PlanarDiagram::Crossing> tuples;
    for (const auto& x : crossings) {
        const Tile t = m.at(x.r, x.c);
        const Port under[2] = {t == 9 ? Port::W : Port::N, t == 9 ? Port::E : Port::S};
        Port a_port;
        bool found = false;
        for (Port p : under)
            if (arrived_from.count({x.r, x.c, p})) {
                a_port = p;
                found = true;
            }
        if (!found) throw InternalError("crossing without incoming under strand");
        int vals[4];
        Port p = a_port;
        for (int idx = 0; idx < 4; ++idx) {
            PortRef ref{x.r, x.c, p};
            auto it = arrived_from.find(ref);
            vals[idx] = it != arrived_from.end() ? departure_label.at(it->second)
                                                 : departure_label.at(ref);
            p = ccw_next(p);
        }
        tuples.push_back({vals[0], vals[1], vals[2], vals[3]});
    }
    return PlanarDiagram(std::move(tuples), free_loops);
}

}  // namespace qknot
