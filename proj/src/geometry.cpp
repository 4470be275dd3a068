#include "nkc/geometry.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace nkc {

namespace {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Rational dot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

long long dot(const IntVector& a, const IntVector& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Reduced row echelon form in place, pivoting only in the first cols columns; returns the pivot columns.
std::vector<int> eliminate(std::vector<RatVector>& m, int cols) {
    const int width = m.empty() ? 0 : static_cast<int>(m[0].size());
    std::vector<int> pivots;
    size_t row = 0;
    for (int c = 0; c < cols && row < m.size(); ++c) {
        size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[row][c];
            for (int k = c; k < width; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

// A nonzero vector orthogonal to the given rows, assumed of rank d-1.
RatVector normal_vector(std::vector<RatVector> rows, int d) {
    auto pivots = eliminate(rows, d);
    int free = 0;
    while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
    RatVector n(d, 0);
    n[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) n[pivots[r]] = -rows[r][free] / rows[r][pivots[r]];
    return n;
}

// Solves sum_j lambda_j cols[j] = x for a square invertible system.
std::optional<RatVector> solve_columns(const std::vector<RatVector>& cols, const RatVector& x) {
    const int d = static_cast<int>(x.size());
    std::vector<RatVector> m(d, RatVector(d + 1));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = cols[j][i];
        m[i][d] = x[i];
    }
    auto pivots = eliminate(m, d);
    if (static_cast<int>(pivots.size()) < d) return std::nullopt;
    RatVector out(d);
    for (int i = 0; i < d; ++i) out[i] = m[i][d] / m[i][i];
    return out;
}

std::vector<IntVector> bending_g(const WalkSpace& ws, const std::vector<Walk>& bending) {
    std::vector<IntVector> out;
    for (const Walk& w : bending) out.push_back(g_vector(ws, w));
    return out;
}

std::string wall_key(const std::vector<Walk>& bending, size_t skip) {
    std::string k;
    for (size_t i = 0; i < bending.size(); ++i)
        if (i != skip) k += bending[i].key + "\n";
    return k;
}

}  // namespace

RatVector to_rational(const IntVector& v) {
    RatVector out;
    for (long long x : v) out.push_back(Rational(x));
    return out;
}

Rational determinant(std::vector<RatVector> m) {
    const int d = static_cast<int>(m.size());
    Rational det = 1;
    for (int c = 0; c < d; ++c) {
        int p = c;
        while (p < d && m[p][c] == 0) ++p;
        if (p == d) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < d; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (int k = c; k < d; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

int rank(std::vector<RatVector> m) {
    if (m.empty()) return 0;
    return static_cast<int>(eliminate(m, static_cast<int>(m[0].size())).size());
}

std::string rational_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return numerator(r).str() + "/" + denominator(r).str();
}

IntVector g_vector(const WalkSpace& ws, const Walk& w) {
    IntVector g(ws.base().num_vertices(), 0);
    for (const Corner& c : corners(ws, w)) g[c.vertex] += c.peak ? 1 : -1;
    return g;
}

IntVector c_vector(const WalkSpace& ws, const Facet& f, const Walk& w) {
    DistinguishedSubstring s = distinguished_substring(ws, f, w);
    IntVector c(ws.base().num_vertices(), 0);
    for (int v : s.vertices) c[v] += s.top ? 1 : -1;
    return c;
}

bool DVector::finite() const {
    return std::none_of(infinite.begin(), infinite.end(), [](char c) { return c != 0; });
}

DVector d_vector(const WalkSpace& ws, const Walk& w) {
    const int n = ws.base().num_vertices();
    DVector d{IntVector(n, 0), std::vector<char>(n, 0)};
    for (int a = 0; a < n; ++a)
        if (deep_walk(ws, a) == w) {
            d.values[a] = -1;
            return d;
        }
    for (int a = 0; a < n; ++a) {
        KissCount k = kiss_count(ws, w, deep_walk(ws, a));
        d.values[a] = k.value;
        d.infinite[a] = k.infinite;
    }
    return d;
}

std::vector<std::string> dual_basis_check(const std::vector<IntVector>& g, const std::vector<IntVector>& c) {
    std::vector<std::string> bad;
    if (g.size() != c.size()) bad.push_back("matrix sizes differ");
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) {
            long long p = dot(g[i], c[j]);
            if (p != (i == j ? 1 : 0))
                bad.push_back("<g" + std::to_string(i) + ",c" + std::to_string(j) + "> = " + std::to_string(p));
        }
    return bad;
}

std::vector<std::string> dual_basis_check(const WalkSpace& ws, const Facet& f) {
    std::vector<IntVector> g, c;
    auto bending = bending_walks(ws, f);
    for (const Walk& w : bending) {
        g.push_back(g_vector(ws, w));
        c.push_back(c_vector(ws, f, w));
    }
    auto bad = dual_basis_check(g, c);
    if (static_cast<int>(bending.size()) != ws.base().num_vertices())
        bad.push_back("facet has " + std::to_string(bending.size()) + " bending walks");
    for (std::string& s : bad) s = f.key.substr(0, 60) + ": " + s;
    return bad;
}

std::vector<std::string> sign_coherence_check(const WalkSpace& ws, const Facet& f) {
    std::vector<std::string> bad;
    const int n = ws.base().num_vertices();
    auto bending = bending_walks(ws, f);
    std::vector<int> seen(n, 0);
    for (const Walk& w : bending) {
        IntVector g = g_vector(ws, w);
        for (int a = 0; a < n; ++a) {
            int s = g[a] > 0 ? 1 : (g[a] < 0 ? -1 : 0);
            if (s == 0) continue;
            if (seen[a] == -s) bad.push_back("g coordinate " + ws.base().vertices()[a] + " changes sign");
            seen[a] = s;
        }
        auto mixed = [](const IntVector& v, const std::vector<char>* skip) {
            bool pos = false, neg = false;
            for (size_t i = 0; i < v.size(); ++i) {
                if (skip && (*skip)[i]) continue;
                pos |= v[i] > 0;
                neg |= v[i] < 0;
            }
            return pos && neg;
        };
        if (mixed(c_vector(ws, f, w), nullptr)) bad.push_back("c-vector of " + w.key + " has mixed signs");
        DVector d = d_vector(ws, w);
        if (mixed(d.values, &d.infinite)) bad.push_back("d-vector of " + w.key + " has mixed signs");
    }
    return bad;
}

Fan build_fan(const WalkSpace& ws, const FlipGraph& g) {
    if (!g.closed) throw GeometryError(GeometryErrorKind::NotClosed, "flip graph is truncated");
    const int d = ws.base().num_vertices();
    Fan fan;
    std::vector<std::vector<Walk>> bending;
    std::map<std::string, int> wall_count;
    for (size_t i = 0; i < g.facets.size(); ++i) {
        bending.push_back(bending_walks(ws, g.facets[i]));
        std::vector<IntVector> rays = bending_g(ws, bending.back());
        fan.cones.push_back(rays);
        std::vector<RatVector> m;
        for (const IntVector& r : rays) m.push_back(to_rational(r));
        if (static_cast<int>(rays.size()) != d || determinant(m) == 0)
            fan.issues.push_back("cone " + std::to_string(i) + " is not simplicial");
        for (size_t k = 0; k < bending.back().size(); ++k) ++wall_count[wall_key(bending.back(), k)];
    }
    fan.walls = static_cast<int>(wall_count.size());
    for (const auto& [key, count] : wall_count)
        if (count != 2) fan.issues.push_back("wall in " + std::to_string(count) + " cones");

    std::vector<RatVector> normals;
    for (const FlipEdge& e : g.edges) {
        if (e.from > e.to) continue;
        std::vector<RatVector> common;
        IntVector out, in;
        for (const Walk& w : bending[e.from]) {
            if (w.key == e.removed) out = g_vector(ws, w);
            else common.push_back(to_rational(g_vector(ws, w)));
        }
        for (const Walk& w : bending[e.to])
            if (w.key == e.added) in = g_vector(ws, w);
        std::string where = "flip " + std::to_string(e.from) + "-" + std::to_string(e.to);
        if (rank(common) != d - 1) {
            fan.issues.push_back(where + ": wall is degenerate");
            continue;
        }
        RatVector n = normal_vector(common, d);
        normals.push_back(n);
        int s1 = sign(dot(n, to_rational(out))), s2 = sign(dot(n, to_rational(in)));
        if (s1 == 0 || s2 == 0 || s1 == s2) fan.issues.push_back(where + ": exchanged rays not separated");
    }

    // One generic point per orthant must lie in the interior of exactly one cone.
    for (int mask = 0; mask < (1 << d); ++mask) {
        RatVector x(d);
        for (int t = 0;; ++t) {
            for (int i = 0; i < d; ++i)
                x[i] = Rational((mask >> i & 1) ? -1 : 1) * (1 + Rational((t + 1) * (i + 1) * (i + 1), 97));
            bool on_wall = std::any_of(normals.begin(), normals.end(), [&](const RatVector& n) { return dot(n, x) == 0; });
            if (!on_wall || t > 50) break;
        }
        int inside = 0;
        for (const auto& rays : fan.cones) {
            std::vector<RatVector> cols;
            for (const IntVector& r : rays) cols.push_back(to_rational(r));
            if (static_cast<int>(cols.size()) != d) continue;
            auto lambda = solve_columns(cols, x);
            if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return l > 0; })) ++inside;
        }
        if (inside != 1)
            fan.issues.push_back("generic point in orthant " + std::to_string(mask) + " lies in " +
                                 std::to_string(inside) + " cones");
    }
    return fan;
}

Polytope build_associahedron(const WalkSpace& ws, const FlipGraph& g, const WalkEnumeration& universe) {
    if (!g.closed) throw GeometryError(GeometryErrorKind::NotClosed, "flip graph is truncated");
    if (!universe.complete)
        throw GeometryError(GeometryErrorKind::IncompleteUniverse, "walk universe is truncated");
    const int d = ws.base().num_vertices();
    Polytope P;

    std::map<std::string, long long> kn;
    for (const Walk& w : universe.walks) {
        KissCount k = total_kissing_number(ws, w, universe);
        if (k.infinite)
            throw GeometryError(GeometryErrorKind::InfiniteKissingNumber, "KN is infinite for " + w.key);
        kn[w.key] = k.value;
        P.halfspaces.push_back({w.key, g_vector(ws, w), k.value, false});
    }

    for (const Facet& f : g.facets) {
        RatVector p(d, 0);
        for (const Walk& w : bending_walks(ws, f)) {
            auto it = kn.find(w.key);
            if (it == kn.end()) {
                P.issues.push_back("facet walk outside the universe: " + w.key);
                continue;
            }
            IntVector c = c_vector(ws, f, w);
            for (int a = 0; a < d; ++a) p[a] += Rational(it->second * c[a]);
        }
        P.vertices.push_back(p);
    }
    const int nv = static_cast<int>(P.vertices.size());
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (P.vertices[i] == P.vertices[j])
                P.issues.push_back("vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

    // tight[h][i]: halfspace h is an equality at vertex i.
    std::vector<std::vector<char>> tight(P.halfspaces.size(), std::vector<char>(nv, 0));
    for (size_t h = 0; h < P.halfspaces.size(); ++h) {
        const Halfspace& H = P.halfspaces[h];
        RatVector n = to_rational(H.normal);
        bool straight = std::all_of(H.normal.begin(), H.normal.end(), [](long long x) { return x == 0; });
        for (int i = 0; i < nv; ++i) {
            Rational v = dot(n, P.vertices[i]);
            bool member = g.facets[i].contains(universe.walks[h]);
            if (v > H.offset) P.issues.push_back("vertex " + std::to_string(i) + " violates " + H.walk);
            if (v == H.offset) tight[h][i] = 1;
            if (straight) continue;
            if (member && v != H.offset)
                P.issues.push_back("vertex " + std::to_string(i) + " not tight on its walk " + H.walk);
            if (!member && v == H.offset)
                P.issues.push_back("vertex " + std::to_string(i) + " tight on foreign walk " + H.walk);
        }
        if (straight) continue;
        std::vector<RatVector> diffs;
        int first = -1;
        for (int i = 0; i < nv; ++i) {
            if (!tight[h][i]) continue;
            if (first < 0) first = i;
            else {
                RatVector v = P.vertices[i];
                for (int a = 0; a < d; ++a) v[a] -= P.vertices[first][a];
                diffs.push_back(v);
            }
        }
        P.halfspaces[h].defining = first >= 0 && rank(diffs) == d - 1;
    }

    std::vector<int> defining;
    std::set<std::pair<IntVector, long long>> distinct;
    for (size_t h = 0; h < P.halfspaces.size(); ++h)
        if (P.halfspaces[h].defining && distinct.insert({P.halfspaces[h].normal, P.halfspaces[h].offset}).second)
            defining.push_back(static_cast<int>(h));
    P.defining = static_cast<int>(defining.size());

    // Edges of the H-polytope among the vertices: common defining facets cut out exactly the two endpoints.
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) {
            std::vector<int> common;
            for (int h : defining)
                if (tight[h][i] && tight[h][j]) common.push_back(h);
            std::vector<RatVector> rows;
            for (int h : common) rows.push_back(to_rational(P.halfspaces[h].normal));
            if (rank(rows) != d - 1) continue;
            bool only = true;
            for (int k = 0; k < nv && only; ++k) {
                if (k == i || k == j) continue;
                only = !std::all_of(common.begin(), common.end(), [&](int h) { return tight[h][k] != 0; });
            }
            if (only) P.edges.push_back({i, j});
        }
    std::set<std::pair<int, int>> flips;
    for (const FlipEdge& e : g.edges) flips.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    if (std::set<std::pair<int, int>>(P.edges.begin(), P.edges.end()) != flips)
        P.issues.push_back("polytope edges (" + std::to_string(P.edges.size()) + ") differ from flips (" +
                           std::to_string(flips.size()) + ")");

    // Every vertex of the H-description must be one of the points p(F).
    std::set<RatVector> vset(P.vertices.begin(), P.vertices.end());
    std::vector<int> pick(d);
    auto visit = [&](auto&& self, int start, int depth) -> void {
        if (depth == d) {
            std::vector<RatVector> rows;
            RatVector rhs;
            for (int h : pick) {
                rows.push_back(to_rational(P.halfspaces[h].normal));
                rhs.push_back(Rational(P.halfspaces[h].offset));
            }
            std::vector<RatVector> cols(d, RatVector(d));
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) cols[c][r] = rows[r][c];
            auto x = solve_columns(cols, rhs);
            if (!x) return;
            for (int h : defining)
                if (dot(to_rational(P.halfspaces[h].normal), *x) > P.halfspaces[h].offset) return;
            if (!vset.count(*x)) {
                std::string s;
                for (const Rational& r : *x) s += rational_string(r) + " ";
                P.issues.push_back("H-vertex outside the V-description: " + s);
            }
            return;
        }
        for (int k = start; k < static_cast<int>(defining.size()); ++k) {
            pick[depth] = defining[k];
            self(self, k + 1, depth + 1);
        }
    };
    visit(visit, 0, 0);
    return P;
}

json vectors_json(const WalkSpace& ws, const FlipGraph& g) {
    json out = json::array();
    for (const Facet& f : g.facets) {
        json walks = json::array();
        for (const Walk& w : bending_walks(ws, f)) {
            DVector d = d_vector(ws, w);
            json dj = json::array();
            for (size_t a = 0; a < d.values.size(); ++a)
                dj.push_back(d.infinite[a] ? json("inf") : json(d.values[a]));
            walks.push_back({{"walk", w.key}, {"g", g_vector(ws, w)}, {"c", c_vector(ws, f, w)}, {"d", dj}});
        }
        out.push_back({{"facet", f.key}, {"walks", walks}});
    }
    return {{"closed", g.closed}, {"facets", out}};
}

json fan_json(const Fan& fan) {
    return {{"cones", fan.cones}, {"walls", fan.walls}, {"ok", fan.issues.empty()}, {"issues", fan.issues}};
}

json polytope_json(const Polytope& p) {
    json vs = json::array();
    for (const RatVector& v : p.vertices) {
        json row = json::array();
        for (const Rational& r : v) row.push_back(rational_string(r));
        vs.push_back(row);
    }
    json hs = json::array();
    for (const Halfspace& h : p.halfspaces)
        hs.push_back({{"walk", h.walk}, {"normal", h.normal}, {"offset", rational_string(Rational(h.offset))},
                      {"defining", h.defining}});
    json es = json::array();
    for (auto [a, b] : p.edges) es.push_back({a, b});
    return {{"vertices", vs}, {"halfspaces", hs}, {"defining", p.defining}, {"edges", es},
            {"ok", p.issues.empty()}, {"issues", p.issues}};
}

}  // namespace nkc
