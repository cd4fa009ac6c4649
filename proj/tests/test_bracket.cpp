#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qknot/bracket.hpp"
#include "qknot/errors.hpp"

using namespace qknot;

namespace {

PlanarDiagram corpus(const std::string& name) {
    std::ifstream in(std::string(QKNOT_DATA_DIR) + "/corpus/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return PlanarDiagram::from_json(ss.str());
}

const char* kAllCorpus[] = {"unknot0.pd.json",  "unlink2.pd.json",  "curl_pos.pd.json",
                            "curl_neg.pd.json", "poke.pd.json",     "hopf.pd.json",
                            "rh_trefoil.pd.json", "lh_trefoil.pd.json", "fig8.pd.json",
                            "t25.pd.json",      "borromean.pd.json", "t27.pd.json",
                            "t34.pd.json"};

Laurent from_terms(Var v, std::initializer_list<std::pair<long, long>> terms) {
    Laurent p(v);
    for (auto [e, c] : terms) p += Laurent::monomial(v, e, c);
    return p;
}

Laurent mini_to_laurent(const oracle::MiniPoly& m, Var v) {
    Laurent p(v);
    for (const auto& [e, c] : m) p += Laurent::monomial(v, e, c);
    return p;
}

}  // namespace

TEST_CASE("state sums match the brute-force oracle on the whole corpus") {
    for (const char* name : kAllCorpus) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        CHECK(bracket_a(d) == mini_to_laurent(oracle::bracket_a(d), Var::A));
        CHECK(bracket_q(d) == mini_to_laurent(oracle::bracket_q(d), Var::Q));
    }
}

TEST_CASE("circle values") {
    const PlanarDiagram unknot = corpus("unknot0.pd.json");
    CHECK(bracket_a(unknot) == from_terms(Var::A, {{-2, -1}, {2, -1}}));
    CHECK(bracket_q(unknot) == from_terms(Var::Q, {{-1, 1}, {1, 1}}));
    CHECK(bracket_q(corpus("unlink2.pd.json")) == delta_q() * delta_q());
}

TEST_CASE("curl identities") {
    // <positive curl> = (-A^3) * delta, <negative curl> = (-A^-3) * delta
    CHECK(bracket_a(corpus("curl_pos.pd.json")) == delta_a().shifted(3, -1));
    CHECK(bracket_a(corpus("curl_neg.pd.json")) == delta_a().shifted(-3, -1));
}

TEST_CASE("hopf link bracket") {
    // delta * (-A^4 - A^-4), hand-enumerable over 4 states
    const Laurent expect = delta_a() * from_terms(Var::A, {{4, -1}, {-4, -1}});
    CHECK(bracket_a(corpus("hopf.pd.json")) == expect);
}

TEST_CASE("loop structures") {
    const PlanarDiagram hopf = corpus("hopf.pd.json");
    CHECK(loops_of(hopf, 0b00).loop_count == 2);
    const PlanarDiagram rh = corpus("rh_trefoil.pd.json");
    for (std::uint32_t s = 0; s < 8; ++s)
        CHECK(loops_of(rh, s).loop_count == oracle::loop_count(rh, s));
    CHECK(loops_of(rh, 0).loop_count == 2);   // all-A is the Seifert state
    CHECK(loops_of(rh, 7).loop_count == 3);
    CHECK(loops_of(corpus("unknot0.pd.json"), 0).loop_count == 1);
}

TEST_CASE("change-of-variables identity on the corpus") {
    for (const char* name : kAllCorpus) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        const Laurent rescaled = bracket_a(d).shifted(-d.crossing_count());
        CHECK(laurent_convert(rescaled, Var::Q) == bracket_q(d));
    }
}

TEST_CASE("writhe normalization") {
    CHECK(f_polynomial(corpus("unknot0.pd.json")) == Laurent::constant(Var::A, 1));
    CHECK(f_polynomial(corpus("curl_pos.pd.json")) == Laurent::constant(Var::A, 1));
    CHECK(f_polynomial(corpus("curl_neg.pd.json")) == Laurent::constant(Var::A, 1));
    CHECK(f_polynomial(corpus("poke.pd.json")) == Laurent::constant(Var::A, 1));
    CHECK(f_polynomial(corpus("rh_trefoil.pd.json")) ==
          from_terms(Var::A, {{-16, -1}, {-12, 1}, {-4, 1}}));
}

TEST_CASE("jones polynomials of the corpus") {
    CHECK(jones(corpus("unknot0.pd.json")) == Laurent::constant(Var::T, 1));
    CHECK(jones(corpus("curl_pos.pd.json")) == Laurent::constant(Var::T, 1));
    CHECK(jones(corpus("poke.pd.json")) == Laurent::constant(Var::T, 1));
    CHECK(jones(corpus("rh_trefoil.pd.json")) ==
          from_terms(Var::T, {{1, 1}, {3, 1}, {4, -1}}));
    CHECK(jones(corpus("lh_trefoil.pd.json")) ==
          from_terms(Var::T, {{-4, -1}, {-3, 1}, {-1, 1}}));
    CHECK(jones(corpus("fig8.pd.json")) ==
          from_terms(Var::T, {{-2, 1}, {-1, -1}, {0, 1}, {1, -1}, {2, 1}}));
    // links with odd component parity stay in quarter-exponent units
    CHECK(jones(corpus("hopf.pd.json")) == from_terms(Var::TQuarter, {{-10, -1}, {-2, -1}}));
    CHECK(jones(corpus("unlink2.pd.json")) == from_terms(Var::TQuarter, {{-2, -1}, {2, -1}}));
    CHECK(jones(corpus("t25.pd.json")) ==
          from_terms(Var::T, {{2, 1}, {4, 1}, {5, -1}, {6, 1}, {7, -1}}));
    CHECK(jones(corpus("t27.pd.json")) ==
          from_terms(Var::T, {{3, 1}, {5, 1}, {6, -1}, {7, 1}, {8, -1}, {9, 1}, {10, -1}}));
    CHECK(jones(corpus("t34.pd.json")) == from_terms(Var::T, {{3, 1}, {5, 1}, {8, -1}}));
    CHECK(jones(corpus("borromean.pd.json")) ==
          from_terms(Var::T, {{-3, -1}, {-2, 3}, {-1, -2}, {0, 4}, {1, -2}, {2, 3}, {3, -1}}));
}

TEST_CASE("mirror properties") {
    for (const char* name : kAllCorpus) {
        const PlanarDiagram d = corpus(name);
        CAPTURE(name);
        CHECK(bracket_a(d.mirror()) == bracket_a(d).inverted_variable());
        CHECK(laurent_convert(jones(d.mirror()), Var::TQuarter) ==
              laurent_convert(jones(d), Var::TQuarter).inverted_variable());
    }
    // the figure eight is amphichiral
    const PlanarDiagram f8 = corpus("fig8.pd.json");
    CHECK(jones(f8.mirror()) == jones(f8));
}

TEST_CASE("disjoint union multiplies by the circle value") {
    for (const char* name : kAllCorpus) {
        const PlanarDiagram d = corpus(name);
        const PlanarDiagram with_circle(d.crossings(), d.free_loops() + 1);
        CAPTURE(name);
        CHECK(bracket_q(with_circle) == delta_q() * bracket_q(d));
    }
}

TEST_CASE("enhanced state enumeration") {
    const PlanarDiagram unknot = corpus("unknot0.pd.json");
    const auto unknot_states = enhanced_states(unknot);
    REQUIRE(unknot_states.size() == 2);
    CHECK(unknot_states[0].i == 0);
    CHECK(unknot_states[0].j == 1);   // label bit clear = +1
    CHECK(unknot_states[1].j == -1);

    CHECK(enhanced_state_count(corpus("curl_pos.pd.json")) == 6);  // 2*2 + 1*2
    CHECK(enhanced_state_count(corpus("rh_trefoil.pd.json")) == 30);
    CHECK(enhanced_state_count(corpus("borromean.pd.json")) == 312);

    // the stream sums to bracket_q by definition
    for (const char* name : {"rh_trefoil.pd.json", "fig8.pd.json", "hopf.pd.json"}) {
        const PlanarDiagram d = corpus(name);
        Laurent sum(Var::Q);
        for_each_enhanced_state(d, [&](const EnhancedState& s) {
            sum += Laurent::monomial(Var::Q, s.j, s.i % 2 == 0 ? 1 : -1);
        });
        CAPTURE(name);
        CHECK(sum == bracket_q(d));
    }
    // gradings satisfy j = i + lambda and the parity constraint
    for_each_enhanced_state(corpus("t25.pd.json"), [&](const EnhancedState& s) {
        CHECK((s.j - s.i - s.loop_count) % 2 == 0);
        CHECK(s.i >= 0);
        CHECK(s.i <= 5);
    });
}

TEST_CASE("crossing cap refuses oversized diagrams") {
    const PlanarDiagram big = braid_closure(2, std::vector<int>(crossing_cap() + 1, 1));
    CHECK_THROWS_AS(bracket_a(big), CapExceeded);
    CHECK_THROWS_AS(enhanced_state_count(big), CapExceeded);
}
