#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "nkc/corpus.hpp"
#include "nkc/geometry.hpp"
#include "oracle.hpp"

using namespace nkc;

namespace {

// Columns as printed for the two-vertex example facet.
const std::vector<IntVector> kG = {{1, -1}, {0, -1}};
const std::vector<IntVector> kC = {{1, 0}, {-1, -1}};
const std::vector<IntVector> kD = {{1, 0}, {0, -1}};

bool coherent(const IntVector& v) {
    bool pos = false, neg = false;
    for (long long x : v) {
        pos = pos || x > 0;
        neg = neg || x < 0;
    }
    return !(pos && neg);
}

std::set<std::pair<int, int>> undirected(const FlipGraph& g) {
    std::set<std::pair<int, int>> out;
    for (const FlipEdge& e : g.edges) out.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    return out;
}

const std::vector<std::string> kClosed = {"cambrian:R",  "cambrian:RR", "cambrian:RL", "reversed:2",
                                          "reversed:3",  "cambrian:RRL", "cycle:1",    "cycle:2",
                                          "doublepath:1"};

}  // namespace

TEST_CASE("printed example matrices are dual and sign coherent") {
    CHECK(dual_basis_check(kG, kC).empty());
    for (int row = 0; row < 2; ++row) CHECK(coherent({kG[0][row], kG[1][row]}));
    for (const auto& c : kC) CHECK(coherent(c));
    for (const auto& d : kD) CHECK(coherent(d));
    CHECK_FALSE(dual_basis_check(kG, kD).empty());
}

TEST_CASE("the example facet is reproduced on A2") {
    WalkSpace ws(corpus_quiver("cambrian:R"));
    FlipGraph g = enumerate_facets(ws, 10);
    int found = 0;
    for (const Facet& f : g.facets) {
        auto b = bending_walks(ws, f);
        REQUIRE(b.size() == 2);
        if (g_vector(ws, b[1]) == kG[0]) std::swap(b[0], b[1]);
        if (g_vector(ws, b[0]) != kG[0] || g_vector(ws, b[1]) != kG[1]) continue;
        ++found;
        for (int i = 0; i < 2; ++i) {
            CHECK(c_vector(ws, f, b[i]) == kC[i]);
            DVector d = d_vector(ws, b[i]);
            CHECK(d.finite());
            CHECK(d.values == kD[i]);
        }
    }
    CHECK(found == 1);
}

TEST_CASE("peak, deep and straight walks") {
    for (std::string name : {"cambrian:RL", "reversed:3", "cycle:2", "doublepath:3"}) {
        CAPTURE(name);
        BoundQuiver q = corpus_quiver(name);
        WalkSpace ws(q);
        const int n = q.num_vertices();
        for (int a = 0; a < n; ++a) {
            IntVector e(n, 0);
            e[a] = 1;
            CHECK(g_vector(ws, peak_walk(ws, a)) == e);
            DVector dp = d_vector(ws, peak_walk(ws, a));
            // a peak walk kisses its own deep walk once, at the vertex itself
            if (!dp.infinite[a]) CHECK(dp.values[a] == 1);
            IntVector minus(n, 0);
            minus[a] = -1;
            CHECK(g_vector(ws, deep_walk(ws, a)) == minus);
            CHECK(d_vector(ws, deep_walk(ws, a)).values == minus);
        }
        for (const Walk& w : straight_walks(ws)) CHECK(g_vector(ws, w) == IntVector(n, 0));
    }
}

TEST_CASE("d-vectors count kisses with deep walks") {
    for (const auto& name : {"cambrian:RR", "reversed:3"}) {
        CAPTURE(name);
        BoundQuiver q = corpus_quiver(name);
        WalkSpace ws(q);
        auto u = enumerate_walks(ws, 30);
        REQUIRE(u.complete);
        for (const Walk& w : u.walks) {
            CAPTURE(w.key);
            DVector d = d_vector(ws, w);
            for (int a = 0; a < q.num_vertices(); ++a) {
                Walk deep = deep_walk(ws, a);
                if (w == deep) continue;
                CHECK(d.values[a] == oracle::kisses(ws.full(), oracle::unrolled(w, 0), oracle::unrolled(deep, 0)));
            }
        }
    }
}

TEST_CASE("vector identities on every facet") {
    for (const auto& name : kClosed) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        FlipGraph g = enumerate_facets(ws, 500);
        for (const Facet& f : g.facets) {
            CHECK(dual_basis_check(ws, f).empty());
            CHECK(sign_coherence_check(ws, f).empty());
        }
    }
}

TEST_CASE("exact linear algebra") {
    std::vector<RatVector> m = {to_rational({2, 1}), to_rational({1, 1})};
    CHECK(determinant(m) == 1);
    CHECK(rank({to_rational({1, 2, 3}), to_rational({2, 4, 6})}) == 1);
    CHECK(rank({to_rational({1, 0}), to_rational({0, 1})}) == 2);
    CHECK(rational_string(Rational(3, 6)) == "1/2");
    CHECK(rational_string(Rational(-4)) == "-4/1");
}

TEST_CASE("g-vector fans are complete and simplicial") {
    for (const auto& name : kClosed) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        FlipGraph g = enumerate_facets(ws, 500);
        REQUIRE(g.closed);
        Fan fan = build_fan(ws, g);
        CHECK(fan.issues.empty());
        CHECK(fan.cones.size() == g.facets.size());
        CHECK(fan.walls == static_cast<int>(undirected(g).size()));
    }
}

TEST_CASE("loop fan is the two half-lines") {
    WalkSpace ws(corpus_quiver("cycle:1"));
    FlipGraph g = enumerate_facets(ws, 10);
    Fan fan = build_fan(ws, g);
    CHECK(fan.issues.empty());
    std::set<IntVector> rays;
    for (const auto& cone : fan.cones) {
        REQUIRE(cone.size() == 1);
        rays.insert(cone[0]);
    }
    CHECK(rays == std::set<IntVector>{{1}, {-1}});
}

TEST_CASE("A2 associahedron is a pentagon") {
    WalkSpace ws(corpus_quiver("cambrian:R"));
    FlipGraph g = enumerate_facets(ws, 10);
    Polytope p = build_associahedron(ws, g, enumerate_walks(ws, 12));
    CHECK(p.issues.empty());
    CHECK(p.vertices.size() == 5);
    CHECK(p.defining == 5);
    std::set<std::pair<int, int>> edges(p.edges.begin(), p.edges.end());
    CHECK(edges == undirected(g));
    json j = polytope_json(p);
    CHECK(j["vertices"].size() == 5);
}

TEST_CASE("associahedra agree with their flip graphs") {
    const std::vector<std::pair<std::string, int>> cases = {
        {"cambrian:RR", 9}, {"reversed:2", 6}, {"reversed:3", 14}, {"cambrian:RRL", 14}};
    for (const auto& [name, defining] : cases) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        FlipGraph g = enumerate_facets(ws, 500);
        Polytope p = build_associahedron(ws, g, enumerate_walks(ws, 30));
        CHECK(p.issues.empty());
        CHECK(p.defining == defining);
        std::set<std::pair<int, int>> edges(p.edges.begin(), p.edges.end());
        CHECK(edges == undirected(g));
    }
}

TEST_CASE("loop associahedron is refused") {
    WalkSpace ws(corpus_quiver("cycle:1"));
    FlipGraph g = enumerate_facets(ws, 10);
    CHECK(kissing_number(ws, peak_walk(ws, 0), deep_walk(ws, 0)).infinite);
    try {
        build_associahedron(ws, g, enumerate_walks(ws, 12));
        FAIL("expected a geometry error");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == GeometryErrorKind::IncompleteUniverse);
    }
}

TEST_CASE("open flip graphs are rejected") {
    WalkSpace ws(corpus_quiver("cambrian:RR"));
    FlipGraph g = enumerate_facets(ws, 3);
    REQUIRE_FALSE(g.closed);
    CHECK_THROWS_AS(build_fan(ws, g), GeometryError);
}
