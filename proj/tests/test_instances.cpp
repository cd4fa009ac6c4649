#include <doctest.h>

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "qknot/errors.hpp"
#include "qknot/graphs.hpp"
#include "qknot/words.hpp"

using namespace qknot;

namespace {

std::string slurp(const std::string& rel) {
    std::ifstream in(std::string(QKNOT_DATA_DIR) + "/" + rel);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// independent isomorphism oracle: scan every permutation, compare edge sets
bool oracle_isomorphic(const DirectedGraph& g, const DirectedGraph& h) {
    if (g.n != h.n || g.edge_count() != h.edge_count()) return false;
    std::vector<int> sigma(g.n);
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
        std::set<std::pair<int, int>> mapped;
        for (const auto& [a, b] : g.edges) mapped.insert({sigma[a - 1], sigma[b - 1]});
        if (mapped == h.edges) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

DirectedGraph graph_from_mask(int n, unsigned mask) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            if (a != b) pairs.push_back({a, b});
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) edges.push_back(pairs[i]);
    return DirectedGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("graph kets") {
    const DirectedGraph g(2, {{1, 2}});
    const BasisKet k = graph_ket(g);
    CHECK(k.family == Family::Graph);

    // set semantics: insertion order does not matter
    const DirectedGraph fwd(3, {{1, 2}, {2, 3}});
    const DirectedGraph rev(3, {{2, 3}, {1, 2}});
    CHECK(graph_ket(fwd) == graph_ket(rev));

    const DirectedGraph other(3, {{1, 2}, {3, 2}});
    CHECK_FALSE(graph_ket(fwd) == graph_ket(other));

    CHECK_THROWS_AS(graph_ket(DirectedGraph(3, {})), ValidationError);  // empty tensor
    CHECK_THROWS_AS(DirectedGraph(3, {{1, 1}}), ValidationError);       // self-loop
    CHECK_THROWS_AS(DirectedGraph(2, {{1, 3}}), ValidationError);
}

TEST_CASE("graph permutations") {
    const DirectedGraph path = DirectedGraph::from_json(slurp("corpus/path3.graph.json"));
    CHECK(permute_graph(path, {1, 2, 3}) == path);
    const DirectedGraph mapped = permute_graph(path, {3, 2, 1});
    CHECK(mapped.edges == std::set<std::pair<int, int>>{{3, 2}, {2, 1}});
    CHECK_THROWS_AS(permute_graph(path, {1, 1, 3}), ValidationError);
}

TEST_CASE("graph-ket equivariance, exhaustive for n <= 4") {
    for (int n = 2; n <= 4; ++n) {
        const int slots = n * (n - 1);
        std::vector<int> identity(n);
        std::iota(identity.begin(), identity.end(), 1);
        std::vector<std::vector<int>> perms;
        std::vector<int> sigma = identity;
        do perms.push_back(sigma);
        while (std::next_permutation(sigma.begin(), sigma.end()));
        for (unsigned mask = 1; mask < (1u << slots); ++mask) {
            const DirectedGraph g = graph_from_mask(n, mask);
            for (const auto& p : perms) {
                const PermutationUnitary u = graph_permutation_unitary(p);
                CHECK(u.map_ket(graph_ket(g)) == graph_ket(permute_graph(g, p)));
            }
            if (n == 4 && mask > 300) break;  // n=4 equivariance spot-checked below
        }
    }
    // n = 4: exhaustive over all graphs with a fixed non-identity permutation,
    // plus full S4 on a sample
    const std::vector<int> swap12{2, 1, 3, 4};
    const PermutationUnitary u = graph_permutation_unitary(swap12);
    for (unsigned mask = 1; mask < (1u << 12); ++mask) {
        const DirectedGraph g = graph_from_mask(4, mask);
        CHECK(u.map_ket(graph_ket(g)) == graph_ket(permute_graph(g, swap12)));
    }
}

TEST_CASE("isomorphism search agrees with the oracle") {
    const DirectedGraph cycle = DirectedGraph::from_json(slurp("corpus/cycle3.graph.json"));
    const DirectedGraph reversed =
        DirectedGraph::from_json(slurp("corpus/cycle3_reversed.graph.json"));
    const DirectedGraph path = DirectedGraph::from_json(slurp("corpus/path3.graph.json"));

    const auto self = isomorphic_graphs(cycle, cycle);
    REQUIRE(self.has_value());
    CHECK(*self == std::vector<int>{1, 2, 3});

    CHECK(isomorphic_graphs(cycle, reversed).has_value());
    CHECK_FALSE(isomorphic_graphs(cycle, path).has_value());

    // witnesses actually map the graph
    const auto wit = isomorphic_graphs(cycle, reversed);
    CHECK(permute_graph(cycle, *wit) == reversed);

    // all pairs for n = 3: production result iff the oracle scan succeeds
    for (unsigned m1 = 0; m1 < (1u << 6); ++m1)
        for (unsigned m2 = 0; m2 < (1u << 6); ++m2) {
            const DirectedGraph g = graph_from_mask(3, m1);
            const DirectedGraph h = graph_from_mask(3, m2);
            const bool got = isomorphic_graphs(g, h).has_value();
            CHECK(got == oracle_isomorphic(g, h));
        }

    // n = 4: every graph is isomorphic to each of its permuted images
    std::mt19937 gen(9);
    std::vector<int> sigma{1, 2, 3, 4};
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
        const DirectedGraph g = graph_from_mask(4, mask);
        std::shuffle(sigma.begin(), sigma.end(), gen);
        const auto wit = isomorphic_graphs(g, permute_graph(g, sigma));
        REQUIRE(wit.has_value());
        CHECK(permute_graph(g, *wit) == permute_graph(g, sigma));
    }

    CHECK_THROWS_AS(isomorphic_graphs(DirectedGraph(11, {{1, 2}}), DirectedGraph(11, {{1, 2}})),
                    CapExceeded);
}

TEST_CASE("word kets") {
    const GroupWord w = GroupWord::parse("x1 x2^-1 * * x3", 3);
    REQUIRE(w.letters.size() == 5);
    CHECK(w.letters == std::vector<int>{1, -2, 0, 0, 3});
    CHECK(word_ket(w).family == Family::Word);

    const GroupWord blanks = GroupWord::parse("* * *", 2);
    CHECK_NOTHROW(word_ket(blanks));

    CHECK_FALSE(word_ket(w) == word_ket(GroupWord::parse("x1 x2^-1 * x3 *", 3)));
    CHECK_THROWS_AS(GroupWord::parse("x9", 3), ValidationError);
    CHECK_THROWS_AS(GroupWord::parse("y1", 3), ValidationError);
}

TEST_CASE("word moves") {
    const Presentation free2 = Presentation::from_json(slurp("presentations/free2.json"));
    const Presentation z3 = Presentation::from_json(slurp("presentations/z3.json"));

    {
        const GroupWord w = GroupWord::parse("x1 x1^-1", 2);
        const auto moves = word_moves(w, free2);
        bool cancels = false;
        for (const auto& [mv, img] : moves)
            if (img == GroupWord::parse("* *", 2)) cancels = true;
        CHECK(cancels);
    }
    {
        const GroupWord w = GroupWord::parse("x1 x1 x1", 1);
        const auto moves = word_moves(w, z3);
        bool deletable = false;
        for (const auto& [mv, img] : moves)
            if (img == GroupWord::parse("* * *", 1)) deletable = true;
        CHECK(deletable);
    }
    // every listed move applied then reversed gives the original word
    std::mt19937 gen(10);
    std::uniform_int_distribution<int> letter(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        GroupWord w;
        w.generators = 2;
        for (int i = 0; i < 6; ++i) w.letters.push_back(letter(gen));
        for (const auto& [mv, img] : word_moves(w, free2))
            CHECK(apply_word_move(img, mv.inverted(), free2) == w);
    }
}

TEST_CASE("bounded word equivalence") {
    const Presentation free2 = Presentation::from_json(slurp("presentations/free2.json"));
    {
        const GroupWord w = GroupWord::parse("x1 * x2", 2);
        const auto res = bounded_word_equivalence(w, w, free2, {});
        CHECK(res.status == WordSearchStatus::Found);
        CHECK(res.path.empty());
    }
    {
        const auto res = bounded_word_equivalence(GroupWord::parse("x1 x1^-1 *", 2),
                                                  GroupWord::parse("* * *", 2), free2, {});
        REQUIRE(res.status == WordSearchStatus::Found);
        CHECK(res.path.size() == 1);
    }
    {
        WordSearchLimits limits;
        limits.max_depth = 6;
        const auto res = bounded_word_equivalence(GroupWord::parse("x1 *", 2),
                                                  GroupWord::parse("x2 *", 2), free2, limits);
        CHECK(res.status == WordSearchStatus::DistinctWithinBound);
    }
    CHECK_THROWS_AS(bounded_word_equivalence(GroupWord::parse("x1", 2),
                                             GroupWord::parse("x1 *", 2), free2, {}),
                    ValidationError);
}
