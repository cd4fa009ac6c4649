#include "qknot/bracket.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qknot/errors.hpp"

namespace qknot {

namespace {

int env_cap(const char* name, int fallback) {
    if (const char* s = std::getenv(name)) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return fallback;
}

constexpr int kMaxArcs = 64;

// allocation-free union-find sized for the crossing cap
struct SmallUF {
    int parent[kMaxArcs + 1];
    void reset(int n) {
        for (int i = 0; i <= n; ++i) parent[i] = i;
    }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int i, int j) { parent[find(i)] = find(j); }
};

int loop_count_of(const PlanarDiagram& d, std::uint32_t smoothing, SmallUF& uf) {
    const int arcs = d.arc_count();
    uf.reset(arcs);
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& t = d.crossings()[k];
        if (smoothing >> k & 1u) {
            uf.unite(t.a, t.d);
            uf.unite(t.b, t.c);
        } else {
            uf.unite(t.a, t.b);
            uf.unite(t.c, t.d);
        }
    }
    int loops = 0;
    for (int arc = 1; arc <= arcs; ++arc)
        if (uf.find(arc) == arc) ++loops;
    return loops + d.free_loops();
}

void check_cap(const PlanarDiagram& d) {
    if (d.crossing_count() > crossing_cap())
        throw CapExceeded("diagram has " + std::to_string(d.crossing_count()) +
                          " crossings, cap is " + std::to_string(crossing_cap()) +
                          " (QKNOT_CROSSING_CAP overrides)");
}

// Dense accumulator over a bounded exponent window; exact mpz sums in any
// order give identical results, so partitioning the smoothing range across
// threads and merging partials reproduces the serial fold bit for bit.
struct DenseAcc {
    std::vector<mpz_class> coeff;
    int offset;
    explicit DenseAcc(int max_abs_exp) : coeff(2 * max_abs_exp + 1), offset(max_abs_exp) {}
    void add(int exp, long v) { coeff[exp + offset] += v; }
    void merge(const DenseAcc& o) {
        for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
    }
    Laurent to_laurent(Var var) const {
        Laurent::Terms t;
        for (size_t i = 0; i < coeff.size(); ++i)
            if (coeff[i] != 0) t.emplace(static_cast<long>(i) - offset, coeff[i]);
        return Laurent(var, std::move(t));
    }
};

// Pascal-triangle rows for (q+q^-1)^l and delta_A^l expansions
std::vector<std::vector<mpz_class>> binomial_rows(int max_l) {
    std::vector<std::vector<mpz_class>> rows(max_l + 1);
    rows[0] = {1};
    for (int l = 1; l <= max_l; ++l) {
        rows[l].assign(l + 1, 0);
        for (int k = 0; k <= l; ++k) {
            rows[l][k] = (k > 0 ? rows[l - 1][k - 1] : 0) + (k < l ? rows[l - 1][k] : 0);
        }
    }
    return rows;
}

template <typename PerState>
Laurent state_sum(const PlanarDiagram& d, Var var, int max_abs_exp, PerState per_state,
                  bool parallel) {
    const std::uint64_t total = 1ull << d.crossing_count();
    if (!parallel) {
        DenseAcc acc(max_abs_exp);
        SmallUF uf;
        for (std::uint64_t s = 0; s < total; ++s)
            per_state(static_cast<std::uint32_t>(s), acc, uf);
        return acc.to_laurent(var);
    }
    DenseAcc acc(max_abs_exp);
#ifdef _OPENMP
#pragma omp parallel
    {
        DenseAcc local(max_abs_exp);
        SmallUF uf;
#pragma omp for schedule(static) nowait
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(total); ++s)
            per_state(static_cast<std::uint32_t>(s), local, uf);
#pragma omp critical(qknot_bracket_merge)
        acc.merge(local);
    }
#else
    SmallUF uf;
    for (std::uint64_t s = 0; s < total; ++s) per_state(static_cast<std::uint32_t>(s), acc, uf);
#endif
    return acc.to_laurent(var);
}

Laurent bracket_a_impl(const PlanarDiagram& d, bool parallel) {
    check_cap(d);
    const int c = d.crossing_count();
    const int max_loops = c + 1 + d.free_loops();
    const auto binom = binomial_rows(max_loops);
    const int max_abs = c + 2 * max_loops;
    // delta^l = (-1)^l sum_k C(l,k) A^(2l-4k)
    auto per_state = [&](std::uint32_t s, DenseAcc& acc, SmallUF& uf) {
        const int i = __builtin_popcount(s);
        const int l = loop_count_of(d, s, uf);
        const int base = c - 2 * i;
        const long sgn = (l % 2 == 0) ? 1 : -1;
        for (int k = 0; k <= l; ++k) {
            const auto& b = binom[l][k];
            int exp = base + 2 * l - 4 * k;
            if (sgn > 0) acc.coeff[exp + acc.offset] += b;
            else acc.coeff[exp + acc.offset] -= b;
        }
    };
    return state_sum(d, Var::A, max_abs, per_state, parallel);
}

Laurent bracket_q_impl(const PlanarDiagram& d, bool parallel) {
    check_cap(d);
    const int c = d.crossing_count();
    const int max_loops = c + 1 + d.free_loops();
    const auto binom = binomial_rows(max_loops);
    const int max_abs = c + max_loops;
    // (q+q^-1)^l = sum_k C(l,k) q^(l-2k); state contributes (-1)^i q^i times it
    auto per_state = [&](std::uint32_t s, DenseAcc& acc, SmallUF& uf) {
        const int i = __builtin_popcount(s);
        const int l = loop_count_of(d, s, uf);
        const long sgn = (i % 2 == 0) ? 1 : -1;
        for (int k = 0; k <= l; ++k) {
            const auto& b = binom[l][k];
            int exp = i + l - 2 * k;
            if (sgn > 0) acc.coeff[exp + acc.offset] += b;
            else acc.coeff[exp + acc.offset] -= b;
        }
    };
    return state_sum(d, Var::Q, max_abs, per_state, parallel);
}

}  // namespace

int crossing_cap() {
    static const int cap = env_cap("QKNOT_CROSSING_CAP", 20);
    return cap;
}

LoopStructure loops_of(const PlanarDiagram& d, std::uint32_t smoothing) {
    LoopStructure out;
    const int arcs = d.arc_count();
    out.loop_of_arc.assign(arcs + 1, -1);
    SmallUF uf;
    if (arcs > kMaxArcs) throw CapExceeded("diagram too large for loop tracing");
    uf.reset(arcs);
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& t = d.crossings()[k];
        if (smoothing >> k & 1u) {
            uf.unite(t.a, t.d);
            uf.unite(t.b, t.c);
        } else {
            uf.unite(t.a, t.b);
            uf.unite(t.c, t.d);
        }
    }
    int next = 0;
    std::vector<int> loop_of_root(arcs + 1, -1);
    for (int arc = 1; arc <= arcs; ++arc) {
        int r = uf.find(arc);
        if (loop_of_root[r] < 0) loop_of_root[r] = next++;  // ordered by smallest arc
        out.loop_of_arc[arc] = loop_of_root[r];
    }
    out.loop_count = next + d.free_loops();
    return out;
}

std::uint64_t enhanced_state_count(const PlanarDiagram& d) {
    check_cap(d);
    SmallUF uf;
    std::uint64_t total = 0;
    const std::uint64_t smoothings = 1ull << d.crossing_count();
    for (std::uint64_t s = 0; s < smoothings; ++s)
        total += 1ull << loop_count_of(d, static_cast<std::uint32_t>(s), uf);
    return total;
}

void for_each_enhanced_state(const PlanarDiagram& d,
                             const std::function<void(const EnhancedState&)>& fn) {
    check_cap(d);
    SmallUF uf;
    const std::uint64_t smoothings = 1ull << d.crossing_count();
    for (std::uint64_t s = 0; s < smoothings; ++s) {
        const int l = loop_count_of(d, static_cast<std::uint32_t>(s), uf);
        if (l > 31) throw CapExceeded("too many loops for enhanced-state enumeration");
        const int i = __builtin_popcount(static_cast<std::uint32_t>(s));
        for (std::uint32_t labels = 0; labels < (1u << l); ++labels) {
            EnhancedState st;
            st.smoothing = static_cast<std::uint32_t>(s);
            st.labels = labels;
            st.loop_count = l;
            st.i = i;
            st.j = i + l - 2 * __builtin_popcount(labels);
            fn(st);
        }
    }
}

std::vector<EnhancedState> enhanced_states(const PlanarDiagram& d) {
    std::vector<EnhancedState> out;
    out.reserve(enhanced_state_count(d));
    for_each_enhanced_state(d, [&](const EnhancedState& s) { out.push_back(s); });
    return out;
}

Laurent delta_a() {
    Laurent p(Var::A);
    p += Laurent::monomial(Var::A, 2, -1);
    p += Laurent::monomial(Var::A, -2, -1);
    return p;
}

Laurent delta_q() {
    Laurent p(Var::Q);
    p += Laurent::monomial(Var::Q, 1, 1);
    p += Laurent::monomial(Var::Q, -1, 1);
    return p;
}

Laurent bracket_a(const PlanarDiagram& d) { return bracket_a_impl(d, true); }
Laurent bracket_q(const PlanarDiagram& d) { return bracket_q_impl(d, true); }
Laurent bracket_a_serial(const PlanarDiagram& d) { return bracket_a_impl(d, false); }
Laurent bracket_q_serial(const PlanarDiagram& d) { return bracket_q_impl(d, false); }

Laurent f_polynomial(const PlanarDiagram& d) {
    const Laurent base = bracket_a(d).divide_exact(delta_a());
    const int w = d.writhe();
    // (-A^3)^(-w) = (-1)^w A^(-3w)
    return base.shifted(-3 * w, (w % 2 == 0) ? 1 : -1);
}

Laurent jones(const PlanarDiagram& d) {
    const Laurent quarter = laurent_convert(f_polynomial(d), Var::TQuarter);
    for (const auto& [e, c] : quarter.terms())
        if (e % 4 != 0) return quarter;
    return laurent_convert(quarter, Var::T);
}

}  // namespace qknot
