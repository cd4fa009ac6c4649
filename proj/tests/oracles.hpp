#pragma once

// Independent test oracles. These deliberately avoid the library's state-sum,
// elimination, and traversal code paths: brute-force folds with their own
// little polynomial type, rational Gaussian elimination, and a from-scratch
// union-find. They exist to pin expected values, not to be fast.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qknot/pd.hpp"

namespace oracle {

using MiniPoly = std::map<long, long long>;  // exponent -> coefficient

inline void mini_add(MiniPoly& p, long e, long long c) {
    if ((p[e] += c) == 0) p.erase(e);
}

inline MiniPoly mini_mul(const MiniPoly& a, const MiniPoly& b) {
    MiniPoly out;
    for (const auto& [e1, c1] : a)
        for (const auto& [e2, c2] : b) mini_add(out, e1 + e2, c1 * c2);
    return out;
}

inline int loop_count(const qknot::PlanarDiagram& d, std::uint32_t smoothing) {
    const int arcs = d.arc_count();
    std::vector<int> parent(arcs + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    auto unite = [&](int i, int j) { parent[find(i)] = find(j); };
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& t = d.crossings()[k];
        if (smoothing >> k & 1u) {
            unite(t.a, t.d);
            unite(t.b, t.c);
        } else {
            unite(t.a, t.b);
            unite(t.c, t.d);
        }
    }
    int loops = 0;
    for (int a = 1; a <= arcs; ++a)
        if (find(a) == a) loops++;
    return loops + d.free_loops();
}

// sum_S A^(#A-#B) delta^||S|| by explicit per-state polynomial products
inline MiniPoly bracket_a(const qknot::PlanarDiagram& d) {
    const MiniPoly delta{{2, -1}, {-2, -1}};
    MiniPoly total;
    const std::uint64_t states = 1ull << d.crossing_count();
    for (std::uint64_t s = 0; s < states; ++s) {
        MiniPoly term{{d.crossing_count() - 2 * __builtin_popcountll(s), 1}};
        const int loops = loop_count(d, static_cast<std::uint32_t>(s));
        for (int l = 0; l < loops; ++l) term = mini_mul(term, delta);
        for (const auto& [e, c] : term) mini_add(total, e, c);
    }
    return total;
}

// sum over enhanced states of (-1)^i q^j, enumerating labels explicitly
inline MiniPoly bracket_q(const qknot::PlanarDiagram& d) {
    MiniPoly total;
    const std::uint64_t states = 1ull << d.crossing_count();
    for (std::uint64_t s = 0; s < states; ++s) {
        const int i = __builtin_popcountll(s);
        const int loops = loop_count(d, static_cast<std::uint32_t>(s));
        for (std::uint32_t labels = 0; labels < (1u << loops); ++labels) {
            const int lambda = loops - 2 * __builtin_popcount(labels);
            mini_add(total, i + lambda, (i % 2 == 0) ? 1 : -1);
        }
    }
    return total;
}

// dense rational Gaussian elimination rank (full pivoting by column scan)
inline int rank_rational(const std::vector<std::vector<long>>& m0) {
    if (m0.empty() || m0[0].empty()) return 0;
    const int rows = static_cast<int>(m0.size());
    const int cols = static_cast<int>(m0[0].size());
    std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m[r][c] = m0[r][c];
    int rank = 0, pr = 0;
    for (int pc = 0; pc < cols && pr < rows; ++pc) {
        int piv = -1;
        for (int r = pr; r < rows; ++r)
            if (m[r][pc] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[pr], m[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == pr || m[r][pc] == 0) continue;
            mpq_class f = m[r][pc] / m[pr][pc];
            for (int c = pc; c < cols; ++c) m[r][c] -= f * m[pr][c];
        }
        ++pr;
        ++rank;
    }
    return rank;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(0xC0FFEE);
    return gen;
}

}  // namespace oracle
