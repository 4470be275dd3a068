#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nkc/complex.hpp"
#include "nkc/corpus.hpp"
#include "nkc/geometry.hpp"
#include "nkc/json_io.hpp"
#include "nkc/surface.hpp"

using namespace nkc;

namespace {

enum Exit { Ok = 0, ParseFailure = 1, InvalidQuiver = 2, BoundExceeded = 3, CheckFailed = 4 };

struct Config {
    std::string input;
    std::string out;
    std::string format = "json";
    int max_facets = 500;
    int body_bound = 12;
    int unroll = 0;
    bool with_map = false;
};

struct Failure {
    Exit code;
    std::string message;
};

BoundQuiver load(const std::string& input) {
    if (input.empty()) throw Failure{ParseFailure, "no input quiver given"};
    BoundQuiver q;
    try {
        if (std::filesystem::exists(input)) q = read_quiver_file(input);
        else q = corpus_quiver(input);
    } catch (const QuiverError& e) {
        throw Failure{e.kind() == ErrorKind::Parse ? ParseFailure : InvalidQuiver, e.what()};
    } catch (const std::exception& e) {
        throw Failure{ParseFailure, e.what()};
    }
    try {
        return validate_locally_gentle(q);
    } catch (const QuiverError& e) {
        throw Failure{InvalidQuiver, std::string(error_name(e.kind())) + ": " + e.what()};
    }
}

const char* walk_kind(const WalkSpace& ws, const Walk& w) {
    if (is_bending(ws, w)) return "bending";
    return w.infinite() ? "infinite straight" : "straight";
}

json list(const std::vector<std::string>& xs) { return json(xs); }

json cmd_walks(const Config& c, Exit& code) {
    WalkSpace ws(load(c.input));
    WalkEnumeration e = enumerate_walks(ws, c.body_bound);
    json walks = json::array();
    for (const Walk& w : e.walks) {
        json j = {{"walk", w.key}, {"kind", walk_kind(ws, w)}, {"self_kissing", self_kissing(ws, w)}};
        if (c.unroll > 0) {
            KissCount k = kiss_count(ws, w, w, c.unroll);
            j["self_kisses"] = k.infinite ? json("inf") : json(k.value);
        }
        walks.push_back(j);
    }
    if (!e.complete) code = BoundExceeded;
    return {{"complete", e.complete}, {"count", e.walks.size()}, {"walks", walks}};
}

FlipGraph graph(const WalkSpace& ws, const Config& c, Exit& code) {
    FlipGraph g = enumerate_facets(ws, c.max_facets);
    if (!g.closed) code = BoundExceeded;
    return g;
}

json cmd_facets(const Config& c, Exit& code) {
    WalkSpace ws(load(c.input));
    FlipGraph g = graph(ws, c, code);
    json facets = json::array();
    for (const Facet& f : g.facets) {
        std::vector<std::string> keys;
        for (const Walk& w : f.walks) keys.push_back(w.key);
        facets.push_back(keys);
    }
    return {{"closed", g.closed}, {"facets", g.facets.size()}, {"facet_list", facets}};
}

json cmd_fan(const Config& c, Exit& code) {
    WalkSpace ws(load(c.input));
    FlipGraph g = graph(ws, c, code);
    if (!g.closed) return {{"closed", false}, {"error", "NotClosed"}};
    return fan_json(build_fan(ws, g));
}

json cmd_polytope(const Config& c, Exit& code) {
    WalkSpace ws(load(c.input));
    FlipGraph g = graph(ws, c, code);
    if (!g.closed) return {{"closed", false}, {"error", "NotClosed"}};
    try {
        return polytope_json(build_associahedron(ws, g, enumerate_walks(ws, c.body_bound)));
    } catch (const GeometryError& e) {
        code = BoundExceeded;
        return {{"error", e.kind() == GeometryErrorKind::IncompleteUniverse ? "IncompleteUniverse" : "InfiniteKissingNumber"},
                {"message", e.what()}};
    }
}

json cmd_surface(const Config& c) {
    SurfaceModel s = surface_from_quiver(load(c.input));
    json j = invariants_json(invariants(s));
    if (c.with_map) j["map"] = surface_json(s);
    return j;
}

json cmd_roundtrip(const Config& c, Exit& code) {
    BoundQuiver q = load(c.input);
    SurfaceModel s = surface_from_quiver(q);
    auto verdict = [&](bool ok) {
        if (!ok) code = CheckFailed;
        return ok ? "ok" : "fail";
    };
    return {{"quiver_roundtrip", verdict(isomorphic(quiver_from_surface(s, Dissection::D), q))},
            {"koszul_swap", verdict(isomorphic(quiver_from_surface(swap_dissections(s), Dissection::D), koszul_dual(q)) &&
                                    isomorphic(quiver_from_surface(s, Dissection::Ddual), koszul_dual(q)))},
            {"dual_dissection", verdict(same_map(dual_dissection(strip_dual(s)), s))}};
}

json check_quiver(const BoundQuiver& q, const Config& c, bool& ok) {
    json r;
    auto record = [&](const std::string& name, const std::vector<std::string>& bad) {
        r[name] = bad.size();
        if (!bad.empty()) ok = false;
    };
    WalkSpace ws(q);
    FlipGraph g = enumerate_facets(ws, c.max_facets);
    r["facets"] = g.facets.size();
    r["closed"] = g.closed;
    record("purity", verify_purity(ws, g));
    record("census", verify_census(ws, g));
    record("countercurrent", verify_countercurrent(ws, g));
    record("cycles_in_tails", walks_through_cycles_check(ws, g));
    record("facet_bound", verify_facet_bound(ws, g));
    std::vector<std::string> dual, signs;
    for (const Facet& f : g.facets) {
        for (auto& s : dual_basis_check(ws, f)) dual.push_back(s);
        for (auto& s : sign_coherence_check(ws, f)) signs.push_back(s);
    }
    record("dual_bases", dual);
    record("sign_coherence", signs);
    if (g.closed) {
        record("thinness", verify_thinness(ws, g));
        record("fan", build_fan(ws, g).issues);
        WalkEnumeration u = enumerate_walks(ws, c.body_bound);
        if (u.complete) record("polytope", build_associahedron(ws, g, u).issues);
        else r["polytope"] = "walk set infinite";
    }
    SurfaceModel s = surface_from_quiver(q);
    SurfaceInvariants inv = invariants(s), qi = quiver_invariants(q);
    std::vector<std::string> surf = inv.issues;
    if (inv.b != qi.b || inv.genus != qi.genus || inv.p != qi.p || inv.p_dual != qi.p_dual)
        surf.push_back("map and quiver invariants differ");
    if (!isomorphic(quiver_from_surface(s, Dissection::D), q)) surf.push_back("quiver round trip");
    if (!isomorphic(quiver_from_surface(s, Dissection::Ddual), koszul_dual(q))) surf.push_back("Koszul swap");
    if (!same_map(dual_dissection(strip_dual(s)), s)) surf.push_back("dual dissection");
    record("surface", surf);
    r["surface_invariants"] = {{"b", inv.b}, {"punctures", inv.punctures}, {"genus", inv.genus}};
    return r;
}

json cmd_selfcheck(const Config& c, Exit& code) {
    json out;
    bool all = true;
    for (const CorpusEntry& e : builtin_corpus()) {
        bool ok = true;
        out[e.name] = check_quiver(e.quiver, c, ok);
        out[e.name]["ok"] = ok;
        all = all && ok;
    }
    if (!all) code = CheckFailed;
    return {{"ok", all}, {"corpus", out}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-kissing complexes of locally gentle quivers"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    CLI::Option* max_facets =
        app.add_option("--max-facets", c.max_facets, "Stop the flip search after this many facets (selfcheck: 150)")
            ->check(CLI::PositiveNumber);
    app.add_option("--body-bound", c.body_bound, "Longest walk body enumerated")->check(CLI::PositiveNumber);
    app.add_option("--unroll", c.unroll, "Tail periods used for kiss counts (default: automatic)")->check(CLI::PositiveNumber);
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    app.add_option("--out", c.out, "Write the report here instead of stdout");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "Check that the quiver is locally gentle"},
        {"blossom", "Print the blossoming quiver"},
        {"dual", "Print the Koszul dual"},
        {"walks", "Enumerate walks"},
        {"facets", "Enumerate facets of the non-kissing complex"},
        {"flipgraph", "Print the flip graph"},
        {"vectors", "g-, c- and d-vectors per facet"},
        {"fan", "Build and certify the g-vector fan"},
        {"polytope", "Build the associahedron in exact arithmetic"},
        {"surface", "Surface invariants"},
        {"roundtrip", "Quiver to surface and back"},
        {"selfcheck", "Run every invariant on the built-in corpus"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (name != "selfcheck") sub->add_option("input", c.input, "Quiver JSON file or corpus name")->required();
        if (name == "surface") sub->add_flag("--with-map", c.with_map, "Include the half-edge tables");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();
    // countercurrent verification is quadratic in the walk lengths, which grow fast on the Kronecker families
    if (cmd == "selfcheck" && max_facets->count() == 0) c.max_facets = 150;

    Exit code = Ok;
    std::string text;
    try {
        json j;
        if (cmd == "validate") {
            BoundQuiver q = load(c.input);
            j = {{"valid", true}, {"vertices", q.num_vertices()}, {"arrows", q.num_arrows()}, {"relations", q.relations().size()}};
        } else if (cmd == "blossom") {
            BlossomQuiver b = blossom(load(c.input));
            j = quiver_to_json(b.full);
            j["blossom_vertices"] = list({b.blossom_vertices.begin(), b.blossom_vertices.end()});
            j["blossom_arrows"] = list({b.blossom_arrows.begin(), b.blossom_arrows.end()});
        } else if (cmd == "dual") {
            j = quiver_to_json(koszul_dual(load(c.input)));
        } else if (cmd == "walks") {
            j = cmd_walks(c, code);
        } else if (cmd == "facets") {
            j = cmd_facets(c, code);
        } else if (cmd == "flipgraph") {
            WalkSpace ws(load(c.input));
            FlipGraph g = graph(ws, c, code);
            if (c.format == "dot") text = flip_graph_dot(g);
            else j = flip_graph_json(g);
        } else if (cmd == "vectors") {
            WalkSpace ws(load(c.input));
            j = vectors_json(ws, graph(ws, c, code));
        } else if (cmd == "fan") {
            j = cmd_fan(c, code);
        } else if (cmd == "polytope") {
            j = cmd_polytope(c, code);
        } else if (cmd == "surface") {
            j = cmd_surface(c);
        } else if (cmd == "roundtrip") {
            j = cmd_roundtrip(c, code);
        } else if (cmd == "selfcheck") {
            j = cmd_selfcheck(c, code);
        }
        if (text.empty()) text = j.dump(2) + "\n";
    } catch (const Failure& f) {
        std::cerr << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return CheckFailed;
    }

    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "cannot write " << c.out << "\n";
            return ParseFailure;
        }
        f << text;
    }
    if (code == BoundExceeded) std::cerr << "bound exceeded; output is partial\n";
    return code;
}
