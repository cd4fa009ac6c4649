#include "qknot/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qknot/bracket.hpp"
#include "qknot/errors.hpp"
#include "qknot/gauss.hpp"
#include "qknot/gauss_moves.hpp"
#include "qknot/graphs.hpp"
#include "qknot/khovanov.hpp"
#include "qknot/mosaic.hpp"
#include "qknot/mosaic_moves.hpp"
#include "qknot/pd.hpp"
#include "qknot/words.hpp"

namespace qknot {

using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("unreadable file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(std::ostream& out, const json& j, bool pretty) {
    if (pretty) out << j.dump(2) << '\n';
    else out << j.dump() << '\n';
}

int count_positive(const PlanarDiagram& d) {
    int n = 0;
    for (int k = 0; k < d.crossing_count(); ++k)
        if (d.sign(k) > 0) ++n;
    return n;
}

json verify_diagram(const PlanarDiagram& d) {
    json checks = json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    const Laurent ba = bracket_a(d);
    const Laurent bq = bracket_q(d);
    {
        const Laurent rescaled = ba.shifted(-d.crossing_count());
        const bool ok = laurent_convert(rescaled, Var::Q) == bq;
        record("change-of-variables", ok, "bracket_q == convert(A^-c * bracket_A)");
    }
    {
        const bool ok = bracket_a_serial(d) == ba && bracket_q_serial(d) == bq;
        record("serial-parallel-agreement", ok, "partitioned state sum equals serial fold");
    }
    {
        PlanarDiagram with_circle(d.crossings(), d.free_loops() + 1);
        const bool ok = bracket_q(with_circle) == delta_q() * bq;
        record("disjoint-union-rule", ok, "<K u O> = (q+q^-1) <K>");
    }
    {
        const bool ok = bracket_a(d.mirror()) == ba.inverted_variable();
        record("mirror-substitution", ok, "bracket_A(mirror) = bracket_A with A -> A^-1");
    }
    {
        bool ok = true;
        std::string detail = "f divisibility and jones substitution";
        try {
            (void)jones(d);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        record("writhe-normalization", ok, detail);
    }
    ChainComplex cx = build_complex(d);
    {
        bool ok = true;
        std::string detail = "dd = 0 as exact integer matrices";
        try {
            assert_dd_zero(cx);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        record("boundary-squares-to-zero", ok, detail);
    }
    {
        const CheckReport rep = check_eigenvalue_propagation(cx);
        record("eigenvalue-propagation", rep.pass, rep.detail);
    }
    {
        const bool ok = graded_euler_dims(cx) == bq;
        record("graded-euler-dimensions", ok, "sum_j q^j chi(C^{.,j}) = bracket_q");
    }
    HomologyTable table = homology(cx);
    {
        const bool ok = graded_euler_betti(table) == bq;
        record("graded-euler-betti", ok, "homology Euler characteristics match bracket_q");
    }
    {
        const double tol = 1e-9 * static_cast<double>(enhanced_state_count(d));
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < 12; ++k) {
            const double theta = 2.0 * M_PI * k / 12.0;
            const std::complex<double> q(std::cos(theta), std::sin(theta));
            const std::complex<double> amp = amplitude(d, q);
            const std::complex<double> sym = bq.eval(q);
            const std::complex<double> tr = density_trace(d, q);
            worst = std::max(worst, std::abs(amp - sym));
            worst = std::max(worst, std::abs(tr - amp));
            const CheckReport rep = check_anticommutation(cx, q);
            ok = ok && rep.pass;
        }
        record("amplitude-identities", ok && worst <= tol,
               "max deviation " + std::to_string(worst) + " at 12 unit-circle points");
    }
    json out;
    out["checks"] = checks;
    out["pass"] = all_pass;
    return out;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact bracket/Jones/Khovanov toolkit over quantized knot encodings"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string in_path, form = "q", q_spec = "pi/5", moves_path, in_path2, presentation_path;
    bool shifted = false, torsion = false;
    std::size_t max_states = 200000;
    int max_depth = 64;

    auto* c_bracket = app.add_subcommand("bracket", "Kauffman bracket state sum of a PD file");
    c_bracket->add_option("--form", form, "a or q")->check(CLI::IsMember({"a", "q"}));
    c_bracket->add_option("pd", in_path, "PD JSON file")->required();

    auto* c_jones = app.add_subcommand("jones", "Jones polynomial V_K(t) of a PD file");
    c_jones->add_option("pd", in_path, "PD JSON file")->required();

    auto* c_kh = app.add_subcommand("khovanov", "bigraded homology table of a PD file");
    c_kh->add_flag("--shifted", shifted, "report conventional shifted gradings");
    c_kh->add_flag("--torsion", torsion, "compute integer invariant factors");
    c_kh->add_option("pd", in_path, "PD JSON file")->required();

    auto* c_amp = app.add_subcommand("amplitude", "<psi|U|psi> at q on the unit circle");
    c_amp->add_option("--q", q_spec, "angle spec, e.g. pi/5 (q = e^{i pi/5})");
    c_amp->add_option("pd", in_path, "PD JSON file")->required();

    auto* c_verify = app.add_subcommand("verify", "run all identity checks for one diagram");
    c_verify->add_option("pd", in_path, "PD JSON file")->required();

    auto* c_orbit = app.add_subcommand("mosaic-orbit", "BFS closure under a mosaic move set");
    c_orbit->add_option("--moves", moves_path, "move file JSON")->required();
    c_orbit->add_option("--max-states", max_states, "state cap");
    c_orbit->add_option("--max-depth", max_depth, "depth cap");
    c_orbit->add_option("mosaic", in_path, "mosaic text file")->required();

    auto* c_extract = app.add_subcommand("mosaic-extract", "extract the PD of a mosaic file");
    c_extract->add_option("mosaic", in_path, "mosaic text file")->required();

    auto* c_gauss = app.add_subcommand("gauss", "quantum Gauss code rewriting");
    auto* g_apply = c_gauss->add_subcommand("apply", "apply one move instance");
    auto* g_search = c_gauss->add_subcommand("search", "bounded equivalence search");
    std::string rule = "r1", dir = "forward";
    std::vector<int> positions, fresh;
    int variant = 0, index_bound = -1, length = -1;
    g_apply->add_option("--rule", rule, "r1|r2|r3|blankSwap|cyclic")->required();
    g_apply->add_option("--pos", positions, "rule positions");
    g_apply->add_option("--direction", dir, "forward|reverse");
    g_apply->add_option("--fresh", fresh, "fresh indices for reverse moves");
    g_apply->add_option("--variant", variant, "sign/order variant 0..3");
    g_apply->add_option("--index-bound", index_bound, "N (default: max index + 1)");
    g_apply->add_option("word", in_path, "gauss word file")->required();
    g_search->add_option("--index-bound", index_bound, "N")->required();
    g_search->add_option("--length", length, "pad words to M tokens");
    g_search->add_option("--max-states", max_states, "state cap");
    g_search->add_option("--max-depth", max_depth, "total depth bound");
    g_search->add_option("word1", in_path, "first word file")->required();
    g_search->add_option("word2", in_path2, "second word file")->required();
    c_gauss->require_subcommand(1);

    auto* c_graph = app.add_subcommand("graph", "quantum directed graphs");
    auto* gr_iso = c_graph->add_subcommand("iso", "exhaustive isomorphism search");
    gr_iso->add_option("graph1", in_path, "graph JSON file")->required();
    gr_iso->add_option("graph2", in_path2, "graph JSON file")->required();
    c_graph->require_subcommand(1);

    auto* c_word = app.add_subcommand("word", "quantized group words");
    auto* w_search = c_word->add_subcommand("search", "bounded equivalence search");
    w_search->add_option("--presentation", presentation_path, "presentation JSON")->required();
    w_search->add_option("--max-states", max_states, "state cap");
    w_search->add_option("--max-depth", max_depth, "total depth bound");
    w_search->add_option("word1", in_path, "word file")->required();
    w_search->add_option("word2", in_path2, "word file")->required();
    c_word->require_subcommand(1);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (*c_bracket) {
        const PlanarDiagram d = PlanarDiagram::from_json(slurp(in_path));
        const Laurent p = form == "a" ? bracket_a(d) : bracket_q(d);
        emit(out, json::parse(p.to_json()), pretty);
        return 0;
    }
    if (*c_jones) {
        const PlanarDiagram d = PlanarDiagram::from_json(slurp(in_path));
        emit(out, json::parse(jones(d).to_json()), pretty);
        return 0;
    }
    if (*c_kh) {
        const PlanarDiagram d = PlanarDiagram::from_json(slurp(in_path));
        ChainComplex cx = build_complex(d);
        assert_dd_zero(cx);
        HomologyTable table = homology(cx, torsion ? Torsion::Capped : Torsion::None);
        const int np = count_positive(d);
        const int nm = d.crossing_count() - np;
        emit(out, json::parse(table.to_json(shifted, np, nm)), pretty);
        return 0;
    }
    if (*c_amp) {
        const PlanarDiagram d = PlanarDiagram::from_json(slurp(in_path));
        const std::complex<double> q = parse_unit_circle_point(q_spec);
        const std::complex<double> amp = amplitude(d, q);
        const std::complex<double> sym = bracket_q(d).eval(q);
        json j;
        j["q"] = {{"re", q.real()}, {"im", q.imag()}};
        j["amplitude"] = {{"re", amp.real()}, {"im", amp.imag()}};
        j["bracketEval"] = {{"re", sym.real()}, {"im", sym.imag()}};
        j["deviation"] = std::abs(amp - sym);
        emit(out, j, pretty);
        return 0;
    }
    if (*c_verify) {
        const PlanarDiagram d = PlanarDiagram::from_json(slurp(in_path));
        json rep = verify_diagram(d);
        emit(out, rep, pretty);
        return rep["pass"].get<bool>() ? 0 : 1;
    }
    if (*c_orbit) {
        const Mosaic m = Mosaic::from_text(slurp(in_path));
        const MoveSet moves = MoveSet::load_file(moves_path);
        OrbitLimits limits{max_states, max_depth};
        OrbitResult res = orbit_bfs(m, moves, limits);
        json j;
        j["complete"] = res.complete;
        j["states"] = res.states.size();
        j["note"] = "orbit is relative to the loaded move set";
        emit(out, j, pretty);
        return res.complete ? 0 : 2;
    }
    if (*c_extract) {
        const Mosaic m = Mosaic::from_text(slurp(in_path));
        emit(out, json::parse(mosaic_to_pd(m).to_json()), pretty);
        return 0;
    }
    if (*g_apply) {
        std::vector<GaussToken> toks = parse_gauss(slurp(in_path));
        int maxidx = 0;
        for (const auto& t : toks) maxidx = std::max(maxidx, t.index);
        QuantumGaussWord w;
        w.tokens = toks;
        w.index_bound = index_bound > 0 ? index_bound : maxidx + 1;
        validate_word(w);
        GaussMoveInstance mv;
        if (rule == "r1") mv.rule = GaussRule::R1;
        else if (rule == "r2") mv.rule = GaussRule::R2;
        else if (rule == "r3") mv.rule = GaussRule::R3;
        else if (rule == "blankSwap") mv.rule = GaussRule::BlankSwap;
        else if (rule == "cyclic") mv.rule = GaussRule::Cyclic;
        else throw ValidationError("unknown rule: " + rule);
        mv.forward = dir != "reverse";
        mv.positions = positions;
        mv.indices = fresh;
        mv.variant = variant;
        const QuantumGaussWord img = apply_move(w, mv);
        out << gauss_to_string(img.tokens) << '\n';
        return 0;
    }
    if (*g_search) {
        int maxidx = 0;
        std::vector<GaussToken> t1 = parse_gauss(slurp(in_path));
        std::vector<GaussToken> t2 = parse_gauss(slurp(in_path2));
        for (const auto& t : t1) maxidx = std::max(maxidx, t.index);
        for (const auto& t : t2) maxidx = std::max(maxidx, t.index);
        if (index_bound < maxidx) throw ValidationError("--index-bound below appearing indices");
        const int m = length > 0 ? length : static_cast<int>(std::max(t1.size(), t2.size()));
        QuantumGaussWord w1 = make_word(gauss_to_string(t1), m, index_bound);
        QuantumGaussWord w2 = make_word(gauss_to_string(t2), m, index_bound);
        GaussSearchLimits limits{max_states, max_depth};
        GaussSearchResult res = bounded_equivalence(w1, w2, limits);
        json j;
        switch (res.status) {
            case GaussSearchStatus::Found:
                j["status"] = "found";
                j["path"] = json::parse(res.path_json());
                break;
            case GaussSearchStatus::DistinctWithinBound:
                j["status"] = "distinct-within-bound";
                break;
            case GaussSearchStatus::Unknown: j["status"] = "unknown"; break;
        }
        j["depthExplored"] = res.depth_explored;
        emit(out, j, pretty);
        return res.status == GaussSearchStatus::Unknown ? 2 : 0;
    }
    if (*gr_iso) {
        const DirectedGraph g = DirectedGraph::from_json(slurp(in_path));
        const DirectedGraph h = DirectedGraph::from_json(slurp(in_path2));
        auto witness = isomorphic_graphs(g, h);
        json j;
        j["isomorphic"] = witness.has_value();
        if (witness) j["witness"] = *witness;
        emit(out, j, pretty);
        return 0;
    }
    if (*w_search) {
        const Presentation pres = Presentation::from_json(slurp(presentation_path));
        const GroupWord w1 = GroupWord::parse(slurp(in_path), pres.generators);
        const GroupWord w2 = GroupWord::parse(slurp(in_path2), pres.generators);
        WordSearchLimits limits{max_states, max_depth};
        WordSearchResult res = bounded_word_equivalence(w1, w2, pres, limits);
        json j;
        switch (res.status) {
            case WordSearchStatus::Found: {
                j["status"] = "found";
                json path = json::array();
                for (const auto& mv : res.path) path.push_back(json::parse(mv.to_json()));
                j["path"] = path;
                break;
            }
            case WordSearchStatus::DistinctWithinBound:
                j["status"] = "distinct-within-bound";
                break;
            case WordSearchStatus::Unknown: j["status"] = "unknown"; break;
        }
        j["depthExplored"] = res.depth_explored;
        emit(out, j, pretty);
        return res.status == WordSearchStatus::Unknown ? 2 : 0;
    }
    err << "error: no subcommand executed\n";
    return 1;
}

}  // namespace

std::complex<double> parse_unit_circle_point(const std::string& spec) {
    double angle = 0.0;
    const auto pi_pos = spec.find("pi");
    if (pi_pos == std::string::npos) {
        try {
            size_t used = 0;
            angle = std::stod(spec, &used);
            if (used != spec.size()) throw std::invalid_argument(spec);
        } catch (const std::exception&) {
            throw ValidationError("bad angle spec: " + spec);
        }
    } else {
        const std::string before = spec.substr(0, pi_pos);
        const std::string after = spec.substr(pi_pos + 2);
        double mult = 1.0;
        if (!before.empty()) {
            if (before == "-") mult = -1.0;
            else {
                try {
                    mult = std::stod(before);
                } catch (const std::exception&) {
                    throw ValidationError("bad angle spec: " + spec);
                }
            }
        }
        double denom = 1.0;
        if (!after.empty()) {
            if (after[0] != '/') throw ValidationError("bad angle spec: " + spec);
            try {
                denom = std::stod(after.substr(1));
            } catch (const std::exception&) {
                throw ValidationError("bad angle spec: " + spec);
            }
            if (denom == 0.0) throw ValidationError("bad angle spec: " + spec);
        }
        angle = mult * M_PI / denom;
    }
    return {std::cos(angle), std::sin(angle)};
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qknot
