#include "qknot/graphs.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

DirectedGraph::DirectedGraph(int vertex_count, std::vector<std::pair<int, int>> edge_list)
    : n(vertex_count) {
    if (n < 1) throw ValidationError("graph needs at least one vertex");
    for (auto [a, b] : edge_list) {
        if (a < 1 || a > n || b < 1 || b > n)
            throw ValidationError("edge endpoint outside 1..n");
        if (a == b) throw ValidationError("self-loops are not allowed");
        edges.insert({a, b});
    }
}

DirectedGraph DirectedGraph::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("graph JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ValidationError("graph JSON must have 'n' and 'edges'");
    std::vector<std::pair<int, int>> edge_list;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be a pair");
        edge_list.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return DirectedGraph(j["n"].get<int>(), std::move(edge_list));
}

std::string DirectedGraph::to_json() const {
    json es = json::array();
    for (const auto& [a, b] : edges) es.push_back(json::array({a, b}));
    json out;
    out["n"] = n;
    out["edges"] = es;
    return out.dump();
}

BasisKet graph_ket(const DirectedGraph& g) {
    if (g.edges.empty())
        throw ValidationError("a graph with no edges has no ket (empty tensor product)");
    std::string payload;
    payload.push_back(static_cast<char>(g.n));
    payload.push_back(static_cast<char>(g.edge_count()));
    for (const auto& [a, b] : g.edges) {  // std::set iterates in lexicographic order
        payload.push_back(static_cast<char>(a));
        payload.push_back(static_cast<char>(b));
    }
    return BasisKet{Family::Graph, payload};
}

namespace {

void check_bijection(const std::vector<int>& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n)
        throw ValidationError("permutation must have one image per vertex");
    std::vector<bool> hit(n + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > n || hit[v]) throw ValidationError("not a bijection of 1..n");
        hit[v] = true;
    }
}

DirectedGraph decode_graph(const std::string& payload) {
    if (payload.size() < 2) throw ValidationError("bad graph ket payload");
    const int n = static_cast<unsigned char>(payload[0]);
    const int d = static_cast<unsigned char>(payload[1]);
    if (static_cast<int>(payload.size()) != 2 + 2 * d)
        throw ValidationError("graph ket payload length mismatch");
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < d; ++e)
        edges.push_back({static_cast<unsigned char>(payload[2 + 2 * e]),
                         static_cast<unsigned char>(payload[3 + 2 * e])});
    return DirectedGraph(n, std::move(edges));
}

}  // namespace

DirectedGraph permute_graph(const DirectedGraph& g, const std::vector<int>& sigma) {
    check_bijection(sigma, g.n);
    std::vector<std::pair<int, int>> mapped;
    for (const auto& [a, b] : g.edges) mapped.push_back({sigma[a - 1], sigma[b - 1]});
    return DirectedGraph(g.n, std::move(mapped));
}

PermutationUnitary graph_permutation_unitary(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    check_bijection(sigma, n);
    std::vector<int> inverse(n);
    for (int v = 1; v <= n; ++v) inverse[sigma[v - 1] - 1] = v;
    auto mapper = [n](std::vector<int> s) {
        return [n, s](const std::string& payload) -> std::optional<std::string> {
            DirectedGraph g = decode_graph(payload);
            if (g.n != n) return std::nullopt;
            return graph_ket(permute_graph(g, s)).payload;
        };
    };
    return PermutationUnitary(Family::Graph, mapper(sigma), mapper(inverse));
}

int graph_isomorphism_vertex_cap() { return 10; }

std::optional<std::vector<int>> isomorphic_graphs(const DirectedGraph& g, const DirectedGraph& h) {
    if (g.n != h.n) throw ValidationError("isomorphism search needs equal vertex counts");
    if (g.n > graph_isomorphism_vertex_cap())
        throw CapExceeded("exhaustive isomorphism search capped at n = " +
                          std::to_string(graph_isomorphism_vertex_cap()));
    if (g.edge_count() != h.edge_count()) return std::nullopt;
    std::vector<int> sigma(g.n);
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
        if (permute_graph(g, sigma) == h) return sigma;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

}  // namespace qknot
