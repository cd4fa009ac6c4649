#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qknot/errors.hpp"
#include "qknot/khovanov.hpp"

using namespace qknot;

namespace {

PlanarDiagram corpus(const std::string& name) {
    std::ifstream in(std::string(QKNOT_DATA_DIR) + "/corpus/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return PlanarDiagram::from_json(ss.str());
}

const char* kHomologyCorpus[] = {"unknot0.pd.json", "unlink2.pd.json", "curl_pos.pd.json",
                                 "curl_neg.pd.json", "poke.pd.json", "hopf.pd.json",
                                 "rh_trefoil.pd.json", "lh_trefoil.pd.json", "fig8.pd.json",
                                 "t25.pd.json", "borromean.pd.json", "t27.pd.json",
                                 "t34.pd.json"};

// betti table computed with the rational-elimination oracle; keys (i,j)
std::map<Bigrading, int> oracle_betti(const ChainComplex& cx) {
    auto dense_long = [](const SparseIntMatrix& m) {
        std::vector<std::vector<long>> out(m.rows, std::vector<long>(m.cols, 0));
        for (const auto& e : m.entries) out[e.row][e.col] += e.value;
        return out;
    };
    std::map<Bigrading, int> betti;
    for (const auto& [ij, bucket] : cx.buckets) {
        int rank_out = 0, rank_in = 0;
        if (auto it = cx.boundary.find(ij); it != cx.boundary.end())
            rank_out = oracle::rank_rational(dense_long(it->second));
        if (auto it = cx.boundary.find({ij.first - 1, ij.second}); it != cx.boundary.end())
            rank_in = oracle::rank_rational(dense_long(it->second));
        const int b = static_cast<int>(bucket.size()) - rank_out - rank_in;
        if (b != 0) betti[ij] = b;
    }
    return betti;
}

std::map<Bigrading, int> table_betti(const HomologyTable& t) {
    std::map<Bigrading, int> out;
    for (const auto& r : t.rows)
        if (r.betti != 0) out[{r.i, r.j}] = r.betti;
    return out;
}

std::map<Bigrading, std::vector<long>> table_torsion(const HomologyTable& t) {
    std::map<Bigrading, std::vector<long>> out;
    for (const auto& r : t.rows)
        if (r.torsion && !r.torsion->empty()) out[{r.i, r.j}] = *r.torsion;
    return out;
}

}  // namespace

TEST_CASE("dd = 0 and j preservation across the corpus") {
    for (const char* name : kHomologyCorpus) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        const ChainComplex cx = build_complex(d);
        CHECK_NOTHROW(assert_dd_zero(cx));
        const CheckReport rep = check_eigenvalue_propagation(cx);
        CHECK(rep.pass);
        CHECK(rep.violations == 0);
        // structural: every entry raises i by one and preserves j
        for (const auto& [ij, m] : cx.boundary) {
            const auto& src = cx.buckets.at(ij);
            const auto tgt = cx.buckets.find({ij.first + 1, ij.second});
            for (const auto& e : m.entries) {
                REQUIRE(tgt != cx.buckets.end());
                CHECK(tgt->second[e.row].j == src[e.col].j);
                CHECK(tgt->second[e.row].i == src[e.col].i + 1);
                CHECK((e.value == 1 || e.value == -1));
            }
        }
    }
}

TEST_CASE("graded Euler characteristic equals bracket_q, both forms") {
    for (const char* name : kHomologyCorpus) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        const ChainComplex cx = build_complex(d);
        const Laurent bq = bracket_q(d);
        CHECK(graded_euler_dims(cx) == bq);
        CHECK(graded_euler_betti(homology(cx)) == bq);
    }
}

TEST_CASE("unknot homology") {
    const ChainComplex cx = build_complex(corpus("unknot0.pd.json"));
    CHECK(cx.boundary.empty());
    const auto betti = table_betti(homology(cx));
    REQUIRE(betti.size() == 2);
    CHECK(betti.at({0, 1}) == 1);
    CHECK(betti.at({0, -1}) == 1);
}

TEST_CASE("curl complex is the hand-checkable 6-state case") {
    const PlanarDiagram d = corpus("curl_pos.pd.json");
    const ChainComplex cx = build_complex(d);
    int states = 0;
    for (const auto& [ij, b] : cx.buckets) states += static_cast<int>(b.size());
    CHECK(states == 6);
    CHECK_NOTHROW(assert_dd_zero(cx));
    const auto betti = table_betti(homology(cx));
    REQUIRE(betti.size() == 2);
    CHECK(betti.at({0, 0}) == 1);
    CHECK(betti.at({0, -2}) == 1);
}

TEST_CASE("betti tables match the dense rational oracle (<= 7 crossings)") {
    for (const char* name : {"unknot0.pd.json", "curl_pos.pd.json", "poke.pd.json",
                             "hopf.pd.json", "rh_trefoil.pd.json", "lh_trefoil.pd.json",
                             "fig8.pd.json", "t25.pd.json", "borromean.pd.json",
                             "t27.pd.json"}) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        const ChainComplex cx = build_complex(d);
        CHECK(table_betti(homology(cx)) == oracle_betti(cx));
    }
}

TEST_CASE("golden trefoil and figure-eight tables, raw gradings") {
    {
        const HomologyTable t = homology(build_complex(corpus("rh_trefoil.pd.json")),
                                         Torsion::Capped);
        const std::map<Bigrading, int> expect = {{{0, -2}, 1}, {{0, 0}, 1}, {{2, 2}, 1}, {{3, 6}, 1}};
        CHECK(table_betti(t) == expect);
        const std::map<Bigrading, std::vector<long>> torsion = {{{3, 4}, {2}}};
        CHECK(table_torsion(t) == torsion);
    }
    {
        const HomologyTable t = homology(build_complex(corpus("lh_trefoil.pd.json")),
                                         Torsion::Capped);
        const std::map<Bigrading, int> expect = {{{0, -3}, 1}, {{1, 1}, 1}, {{3, 3}, 1}, {{3, 5}, 1}};
        CHECK(table_betti(t) == expect);
        const std::map<Bigrading, std::vector<long>> torsion = {{{1, -1}, {2}}};
        CHECK(table_torsion(t) == torsion);
    }
    {
        const HomologyTable t = homology(build_complex(corpus("fig8.pd.json")), Torsion::Capped);
        const std::map<Bigrading, int> expect = {{{0, -3}, 1}, {{1, 1}, 1}, {{2, 1}, 1},
                                                 {{2, 3}, 1},  {{3, 3}, 1}, {{4, 7}, 1}};
        CHECK(table_betti(t) == expect);
        const std::map<Bigrading, std::vector<long>> torsion = {{{1, -1}, {2}}, {{4, 5}, {2}}};
        CHECK(table_torsion(t) == torsion);
    }
    {
        // negative hopf: four free classes, no torsion
        const HomologyTable t = homology(build_complex(corpus("hopf.pd.json")), Torsion::Capped);
        const std::map<Bigrading, int> expect = {{{0, -2}, 1}, {{0, 0}, 1}, {{2, 2}, 1}, {{2, 4}, 1}};
        CHECK(table_betti(t) == expect);
        CHECK(table_torsion(t).empty());
    }
}

TEST_CASE("amplitude equals the symbolic evaluation") {
    for (const char* name : {"unknot0.pd.json", "rh_trefoil.pd.json", "fig8.pd.json"}) {
        const PlanarDiagram d = corpus(name);
        const Laurent bq = bracket_q(d);
        const double tol = 1e-9 * static_cast<double>(enhanced_state_count(d));
        for (int k = 0; k < 12; ++k) {
            const double th = 2.0 * M_PI * k / 12.0;
            const std::complex<double> q(std::cos(th), std::sin(th));
            CAPTURE(name);
            CAPTURE(k);
            CHECK(std::abs(amplitude(d, q) - bq.eval(q)) <= tol);
            CHECK(std::abs(density_trace(d, q) - amplitude(d, q)) <= 1e-9);
        }
    }
    const PlanarDiagram unknot = corpus("unknot0.pd.json");
    CHECK(std::abs(amplitude(unknot, {1.0, 0.0}) - std::complex<double>(2.0, 0.0)) < 1e-12);
    CHECK(std::abs(amplitude(unknot, {0.0, 1.0})) < 1e-12);
    CHECK_THROWS_AS(amplitude(unknot, {2.0, 0.0}), ValidationError);
}

TEST_CASE("anticommutation U d + d U = 0") {
    {
        const ChainComplex cx = build_complex(corpus("unknot0.pd.json"));
        const CheckReport rep = check_anticommutation(cx, {1.0, 0.0});
        CHECK(rep.pass);
        CHECK(rep.max_deviation == 0.0);  // vacuous: zero differential
    }
    {
        const ChainComplex cx = build_complex(corpus("rh_trefoil.pd.json"));
        const CheckReport rep = check_anticommutation(cx, {std::cos(1.0), std::sin(1.0)});
        CHECK(rep.pass);
        CHECK(rep.violations == 0);  // symbolically exact
    }
    {
        const ChainComplex cx = build_complex(corpus("curl_pos.pd.json"));
        const double th = M_PI / 4.0;
        const CheckReport rep = check_anticommutation(cx, {std::cos(th), std::sin(th)});
        CHECK(rep.pass);
        CHECK(rep.max_deviation <= 1e-12);
    }
}

TEST_CASE("negative control: corrupted gradings are reported") {
    ChainComplex cx = build_complex(corpus("rh_trefoil.pd.json"));
    // inject a j-degree bug into the first bucket that receives entries
    for (auto& [ij, m] : cx.boundary) {
        if (m.entries.empty()) continue;
        auto& tgt_bucket = cx.buckets.at({ij.first + 1, ij.second});
        tgt_bucket[m.entries.front().row].j += 2;
        break;
    }
    const CheckReport rep = check_eigenvalue_propagation(cx);
    CHECK_FALSE(rep.pass);
    CHECK(rep.violations > 0);
}

TEST_CASE("eigenspace amplitude via homology ranks") {
    for (const char* name : {"unknot0.pd.json", "rh_trefoil.pd.json", "fig8.pd.json"}) {
        const PlanarDiagram d = corpus(name);
        const std::complex<double> q(std::cos(1.0), std::sin(1.0));
        const EigenspaceAmplitude ea = eigenspace_amplitude(d, q);
        CAPTURE(name);
        CHECK_FALSE(ea.collapsed_j_warning);
        CHECK(std::abs(ea.value - amplitude(d, q)) <= 1e-9);
    }
    // q = 1 identifies all powers q^j: decomposition still by j, but flagged
    const EigenspaceAmplitude collapsed =
        eigenspace_amplitude(corpus("rh_trefoil.pd.json"), {1.0, 0.0});
    CHECK(collapsed.collapsed_j_warning);

    // per-j Euler characteristic equals the bracket coefficient
    for (const char* name : {"rh_trefoil.pd.json", "hopf.pd.json", "fig8.pd.json"}) {
        const PlanarDiagram d = corpus(name);
        const Laurent bq = bracket_q(d);
        const HomologyTable t = homology(build_complex(d));
        std::map<int, long> chi;
        for (const auto& r : t.rows) chi[r.j] += (r.i % 2 == 0) ? r.betti : -r.betti;
        for (const auto& [j, x] : chi) {
            CAPTURE(name);
            CHECK(mpz_class(x) == bq.coeff(j));
        }
    }
}

TEST_CASE("diagonal unitary over enhanced-state kets") {
    const PlanarDiagram d = corpus("rh_trefoil.pd.json");
    const std::complex<double> q(std::cos(M_PI / 7.0), std::sin(M_PI / 7.0));
    const DiagonalUnitary u = unitary_u(d, q);
    for (const EnhancedState& s : enhanced_states(d)) {
        const std::complex<double> lambda = u.eigenvalue(enhanced_ket(s));
        CHECK(std::abs(std::abs(lambda) - 1.0) <= 1e-12);
        // applying U to a basis ket only scales it
        auto v = StateVector<Complex>::ket(enhanced_ket(s), {1.0, 0.0});
        const auto uv = u.apply(v);
        REQUIRE(uv.support_size() == 1);
        CHECK(uv.amplitudes().begin()->first == enhanced_ket(s));
        CHECK(std::abs(uv.amplitudes().begin()->second - lambda) <= 1e-15);
    }
    CHECK_THROWS_AS(unitary_u(d, {0.5, 0.0}), ValidationError);
}

TEST_CASE("homology cap") {
    const int old_cap = homology_cap();
    const PlanarDiagram big = braid_closure(2, std::vector<int>(old_cap + 1, 1));
    CHECK_THROWS_AS(build_complex(big), CapExceeded);
}
