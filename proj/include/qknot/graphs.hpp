#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qknot/quantize.hpp"

namespace qknot {

// Finite simple directed graph on vertices 1..n: ordered edge pairs with
// distinct endpoints, duplicate-free.
struct DirectedGraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;

    DirectedGraph() = default;
    DirectedGraph(int vertex_count, std::vector<std::pair<int, int>> edge_list);

    static DirectedGraph from_json(const std::string& text);
    std::string to_json() const;

    int edge_count() const { return static_cast<int>(edges.size()); }

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;
};

// |G> as the lexicographically ordered tensor of single-edge kets over the
// n(n-1)-dimensional edge alphabet; the empty edge set has no ket.
BasisKet graph_ket(const DirectedGraph& g);

// sigma[v-1] is the image of vertex v
DirectedGraph permute_graph(const DirectedGraph& g, const std::vector<int>& sigma);

// induced basis permutation |G> -> |sigma G| on all graph kets with n vertices
PermutationUnitary graph_permutation_unitary(const std::vector<int>& sigma);

int graph_isomorphism_vertex_cap();

// exhaustive search over vertex permutations; definitive none when no witness
std::optional<std::vector<int>> isomorphic_graphs(const DirectedGraph& g, const DirectedGraph& h);

}  // namespace qknot
