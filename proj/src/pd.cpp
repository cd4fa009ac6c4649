#include "qknot/pd.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qknot/errors.hpp"

namespace qknot {

using json = nlohmann::json;

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int i, int j) { parent[find(i)] = find(j); }
};

}  // namespace

PlanarDiagram::PlanarDiagram(std::vector<Crossing> crossings, int free_loops)
    : x_(std::move(crossings)), free_(free_loops) {
    if (free_ < 0) throw ValidationError("freeLoops must be nonnegative");
    validate_and_orient();
}

void PlanarDiagram::validate_and_orient() {
    const int n_arcs = arc_count();
    std::vector<int> occurrences(n_arcs + 1, 0);
    for (const auto& t : x_) {
        for (int arc : {t.a, t.b, t.c, t.d}) {
            if (arc < 1 || arc > n_arcs)
                throw ValidationError("arc label " + std::to_string(arc) + " out of range 1.." +
                                      std::to_string(n_arcs));
            occurrences[arc]++;
        }
    }
    for (int arc = 1; arc <= n_arcs; ++arc)
        if (occurrences[arc] != 2)
            throw ValidationError("arc " + std::to_string(arc) + " appears " +
                                  std::to_string(occurrences[arc]) + " times, expected 2");

    // components: arcs joined by strand passage (under a-c, over b-d)
    UnionFind uf(n_arcs + 1);
    for (const auto& t : x_) {
        uf.unite(t.a, t.c);
        uf.unite(t.b, t.d);
    }
    std::map<int, std::vector<int>> groups;
    for (int arc = 1; arc <= n_arcs; ++arc) groups[uf.find(arc)].push_back(arc);
    components_.clear();
    for (auto& [root, arcs] : groups) components_.push_back(std::move(arcs));
    std::sort(components_.begin(), components_.end(),
              [](const auto& p, const auto& q) { return p.front() < q.front(); });

    next_.assign(n_arcs + 1, 0);
    for (const auto& comp : components_) {
        for (size_t i = 0; i + 1 < comp.size(); ++i)
            if (comp[i + 1] != comp[i] + 1)
                throw ValidationError("component arc labels not consecutive near arc " +
                                      std::to_string(comp[i]));
        for (size_t i = 0; i < comp.size(); ++i)
            next_[comp[i]] = comp[(i + 1) % comp.size()];
    }
    for (const auto& t : x_)
        if (next_[t.a] != t.c)
            throw ValidationError("under strand " + std::to_string(t.a) + "->" +
                                  std::to_string(t.c) + " is not consecutive");

    // Orient over strands. Each arc starts at exactly one port (c or over-out)
    // and ends at exactly one (a or over-in); candidates must match the
    // successor relation and respect remaining start/end slots. Anchor-free
    // over-only components (both orientations consistent) get a canonical seed.
    const int n = crossing_count();
    over_in_d_.assign(n, false);
    std::vector<bool> resolved(n, false);
    std::vector<int> arc_ends(n_arcs + 1, 0), arc_starts(n_arcs + 1, 0);
    for (const auto& t : x_) {
        arc_ends[t.a]++;
        arc_starts[t.c]++;
    }
    auto commit = [&](int k, bool d_in) {
        resolved[k] = true;
        over_in_d_[k] = d_in;
        arc_ends[d_in ? x_[k].d : x_[k].b]++;
        arc_starts[d_in ? x_[k].b : x_[k].d]++;
    };
    auto propagate = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int k = 0; k < n; ++k) {
                if (resolved[k]) continue;
                const auto& t = x_[k];
                bool can_d = next_[t.d] == t.b && arc_ends[t.d] == 0 && arc_starts[t.b] == 0;
                bool can_b = next_[t.b] == t.d && arc_ends[t.b] == 0 && arc_starts[t.d] == 0;
                if (!can_d && !can_b)
                    throw ValidationError("over strand of crossing " + std::to_string(k) +
                                          " cannot be oriented consistently");
                if (can_d != can_b) {
                    commit(k, can_d);
                    changed = true;
                }
            }
        }
    };
    propagate();
    for (int k = 0; k < n; ++k) {
        if (!resolved[k]) {
            commit(k, true);
            propagate();
        }
    }
    for (int arc = 1; arc <= n_arcs; ++arc)
        if (arc_ends[arc] != 1 || arc_starts[arc] != 1)
            throw InternalError("arc flow inconsistent at arc " + std::to_string(arc));
}

int PlanarDiagram::writhe() const {
    int w = 0;
    for (int k = 0; k < crossing_count(); ++k) w += sign(k);
    return w;
}

PlanarDiagram PlanarDiagram::mirror() const {
    std::vector<Crossing> out;
    out.reserve(x_.size());
    for (int k = 0; k < crossing_count(); ++k) {
        const auto& t = x_[k];
        // switching the crossing makes the old incoming over-arc the new
        // incoming under-arc; the counterclockwise listing rotates with it
        if (over_in_d_[k]) out.push_back({t.d, t.a, t.b, t.c});
        else out.push_back({t.b, t.c, t.d, t.a});
    }
    return PlanarDiagram(std::move(out), free_);
}

PlanarDiagram PlanarDiagram::delete_component(int component) const {
    if (component < 0 || component >= component_count())
        throw ValidationError("component index out of range");
    if (component >= static_cast<int>(components_.size()))
        return PlanarDiagram(x_, free_ - 1);  // dropped a free loop
    std::vector<bool> in_comp(arc_count() + 1, false);
    for (int arc : components_[component]) in_comp[arc] = true;

    // splice surviving strands through deleted crossings
    std::vector<int> merge(arc_count() + 1);
    std::iota(merge.begin(), merge.end(), 0);
    auto find = [&](int a) {
        while (merge[a] != a) a = merge[a];
        return a;
    };
    int extra_loops = 0;
    std::vector<int> kept;
    for (int k = 0; k < crossing_count(); ++k) {
        const auto& t = x_[k];
        bool under_del = in_comp[t.a];
        bool over_del = in_comp[t.b];
        if (under_del && over_del) continue;
        if (!under_del && !over_del) {
            kept.push_back(k);
            continue;
        }
        int p = under_del ? t.b : t.a;
        int q = under_del ? t.d : t.c;
        int rp = find(p), rq = find(q);
        if (rp == rq) extra_loops++;  // splice closed a circle
        else merge[std::max(rp, rq)] = std::min(rp, rq);
    }
    if (kept.empty()) return PlanarDiagram({}, free_ + extra_loops);
    // orientation-preserving flow through kept crossings, then relabel arcs
    std::map<int, int> flow;
    for (int k : kept) {
        const auto& t = x_[k];
        flow[find(t.a)] = find(t.c);
        if (over_in_d_[k]) flow[find(t.d)] = find(t.b);
        else flow[find(t.b)] = find(t.d);
    }
    std::map<int, int> label;
    int next_label = 1;
    for (const auto& [start, unused] : flow) {
        if (label.count(start)) continue;
        int e = start;
        while (!label.count(e)) {
            label[e] = next_label++;
            e = flow.at(e);
        }
    }
    std::vector<Crossing> out;
    for (int k : kept) {
        const auto& t = x_[k];
        out.push_back({label.at(find(t.a)), label.at(find(t.b)), label.at(find(t.c)),
                       label.at(find(t.d))});
    }
    return PlanarDiagram(std::move(out), free_ + extra_loops);
}

PlanarDiagram PlanarDiagram::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("PD JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("crossings"))
        throw ValidationError("PD JSON must be an object with 'crossings'");
    std::vector<Crossing> xs;
    for (const auto& t : j["crossings"]) {
        if (!t.is_array() || t.size() != 4)
            throw ValidationError("crossing must be a 4-tuple of arc labels");
        xs.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()});
    }
    int free_loops = j.value("freeLoops", 0);
    return PlanarDiagram(std::move(xs), free_loops);
}

std::string PlanarDiagram::to_json() const {
    json xs = json::array();
    for (const auto& t : x_) xs.push_back(json::array({t.a, t.b, t.c, t.d}));
    json out;
    out["crossings"] = xs;
    out["freeLoops"] = free_;
    return out.dump();
}

PlanarDiagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 2) throw ValidationError("braid needs at least 2 strands");
    int next_edge = strands;
    std::vector<int> cur(strands);
    std::iota(cur.begin(), cur.end(), 0);
    struct Raw {
        int a, b, c, d;
    };
    std::vector<Raw> raw;
    std::map<int, int> flow;
    for (int letter : word) {
        const int g = std::abs(letter) - 1;
        if (letter == 0 || g + 1 >= strands)
            throw ValidationError("braid letter out of range");
        const int left = cur[g], right = cur[g + 1];
        const int e_left = next_edge++;   // continuation of the left strand
        const int e_right = next_edge++;  // continuation of the right strand
        if (letter > 0) raw.push_back({left, e_right, e_left, right});
        else raw.push_back({right, left, e_right, e_left});
        flow[left] = e_left;
        flow[right] = e_right;
        cur[g] = e_right;
        cur[g + 1] = e_left;
    }
    if (raw.empty()) return PlanarDiagram({}, strands);
    // closure: identify bottom edges with the top ones
    std::map<int, int> subst;
    for (int p = 0; p < strands; ++p)
        if (cur[p] != p) subst[cur[p]] = p;
    auto canon = [&](int e) {
        while (subst.count(e)) e = subst.at(e);
        return e;
    };
    std::map<int, int> cflow;
    for (const auto& [k, v] : flow) cflow[canon(k)] = canon(v);
    // free loops: strands never entering a crossing
    int free_loops = 0;
    for (int p = 0; p < strands; ++p)
        if (!cflow.count(p) && canon(p) == p) free_loops++;
    std::map<int, int> label;
    int next_label = 1;
    for (const auto& [start, unused] : cflow) {
        if (label.count(start)) continue;
        int e = start;
        while (!label.count(e)) {
            label[e] = next_label++;
            e = cflow.at(e);
        }
    }
    std::vector<PlanarDiagram::Crossing> xs;
    for (const auto& r : raw)
        xs.push_back({label.at(canon(r.a)), label.at(canon(r.b)), label.at(canon(r.c)),
                      label.at(canon(r.d))});
    return PlanarDiagram(std::move(xs), free_loops);
}

}  // namespace qknot
