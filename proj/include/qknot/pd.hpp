#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qknot {

// Planar diagram in Knot-Atlas style: each crossing lists its four incident
// arcs counterclockwise starting from the incoming under-strand, so the under
// strand runs a -> c. Arcs are labeled 1..2c, consecutively along each
// component's traversal direction; crossing-free circle components are only
// counted (free_loops).
class PlanarDiagram {
public:
    struct Crossing {
        int a, b, c, d;
    };

    PlanarDiagram() = default;
    PlanarDiagram(std::vector<Crossing> crossings, int free_loops);

    static PlanarDiagram from_json(const std::string& text);
    std::string to_json() const;

    const std::vector<Crossing>& crossings() const { return x_; }
    int free_loops() const { return free_; }
    int crossing_count() const { return static_cast<int>(x_.size()); }
    int arc_count() const { return 2 * crossing_count(); }

    // components as sorted arc-label lists, ordered by smallest arc
    const std::vector<std::vector<int>>& components() const { return components_; }
    int component_count() const { return static_cast<int>(components_.size()) + free_; }

    int next_arc(int arc) const { return next_[arc]; }

    // true when the incoming over-arc of crossing k sits at tuple position d
    // (over strand runs d -> b, the positive configuration)
    bool over_in_is_d(int k) const { return over_in_d_[k]; }
    int sign(int k) const { return over_in_d_[k] ? +1 : -1; }
    int writhe() const;

    // over/under exchanged at every crossing (tuple rotated to the new
    // incoming under-strand); same arc labels
    PlanarDiagram mirror() const;

    // splice one component out of the diagram: crossings it participates in
    // disappear, the other strand passing through is reconnected; arcs are
    // relabeled. component index counts crossing-bearing components first
    // (order of components()), then free loops.
    PlanarDiagram delete_component(int component) const;

private:
    void validate_and_orient();

    std::vector<Crossing> x_;
    int free_ = 0;
    std::vector<std::vector<int>> components_;
    std::vector<int> next_;        // successor arc, 1-based (index 0 unused)
    std::vector<bool> over_in_d_;  // per crossing
};

// Closure of a braid on `strands` strands. Letter +g is a positive crossing at
// positions (g, g+1) (the strand entering from position g+1 passes over),
// letter -g the negative one. Arcs are relabeled per component.
PlanarDiagram braid_closure(int strands, const std::vector<int>& word);

}  // namespace qknot
