#include "nkc/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace nkc {

namespace {

struct Oriented {
    WalkView view;
    long pos;
};

// Read the walk so that the marked letter is traversed forwards.
Oriented orient(const MarkedWalk& m) {
    WalkView f(*m.walk);
    if (sign_of(f.at(m.pos)) > 0) return {f, m.pos};
    return {WalkView(*m.walk, true), f.body_size() - 1 - m.pos};
}

long agreement_limit(const Walk& a, const Walk& b) {
    long lcm = 1, maxp = 0;
    for (const Walk* w : {&a, &b})
        for (const auto* t : {&w->ltail, &w->rtail})
            if (!t->empty()) {
                lcm = std::lcm(lcm, static_cast<long>(t->size()));
                maxp = std::max(maxp, static_cast<long>(t->size()));
            }
    return static_cast<long>(a.body.size() + b.body.size()) + 2 * lcm + 2 * maxp + 2;
}

// +1 if m leaves the common part with a forward letter on that side, -1 if backwards, 0 if no split.
int split_side(const Oriented& m, const Oriented& n, int step, long limit) {
    for (long k = 1; k <= limit; ++k) {
        long pm = m.pos + step * k, pn = n.pos + step * k;
        bool hm = m.view.has(pm), hn = n.view.has(pn);
        if (!hm || !hn) return 0;
        Letter x = m.view.at(pm), y = n.view.at(pn);
        if (x != y) return sign_of(x) > 0 ? 1 : -1;
    }
    return 0;
}

}  // namespace

bool countercurrent_less(const WalkSpace& ws, const MarkedWalk& m, const MarkedWalk& n) {
    Oriented a = orient(m), b = orient(n);
    if (arrow_of(a.view.at(a.pos)) != arrow_of(b.view.at(b.pos)))
        throw std::invalid_argument("marked walks are marked at different arrows");
    long limit = agreement_limit(*m.walk, *n.walk);
    int right = split_side(a, b, 1, limit);
    int left = split_side(a, b, -1, limit);
    if (right == 0 && left == 0)
        throw ComplexError(ComplexErrorKind::SameMarkedWalk, "marked walks coincide at " + ws.arrow_name(a.view.at(a.pos)));
    if (right != 0 && left != 0 && right != left)
        throw ComplexError(ComplexErrorKind::KissingPair, m.walk->key + " and " + n.walk->key + " kiss");
    return (right != 0 ? right : left) > 0;
}

std::vector<long> occurrences(const WalkSpace& ws, const Walk& w, int arrow) {
    std::vector<long> out;
    WalkView v(w);
    long lo = 0, hi = v.body_size();
    if (!is_infinite_straight(ws, w)) {
        if (w.left_infinite()) lo -= static_cast<long>(w.ltail.size());
        if (w.right_infinite()) hi += static_cast<long>(w.rtail.size());
    }
    for (long k = lo; k < hi; ++k)
        if (arrow_of(v.at(k)) == arrow) out.push_back(k);
    return out;
}

Facet Facet::of(std::vector<Walk> walks) {
    std::sort(walks.begin(), walks.end());
    walks.erase(std::unique(walks.begin(), walks.end()), walks.end());
    Facet f;
    f.walks = std::move(walks);
    for (const Walk& w : f.walks) f.key += w.key + "\n";
    return f;
}

int Facet::index_of(const Walk& w) const {
    auto it = std::lower_bound(walks.begin(), walks.end(), w);
    return it != walks.end() && *it == w ? static_cast<int>(it - walks.begin()) : -1;
}

std::optional<MarkedWalk> distinguished_walk(const WalkSpace& ws, const Facet& f, int arrow) {
    std::optional<MarkedWalk> best;
    for (const Walk& w : f.walks)
        for (long k : occurrences(ws, w, arrow)) {
            MarkedWalk m{&w, k};
            if (!best || countercurrent_less(ws, *best, m)) best = m;
        }
    return best;
}

std::vector<std::optional<MarkedWalk>> distinguished_walks(const WalkSpace& ws, const Facet& f) {
    std::vector<std::optional<MarkedWalk>> out;
    for (int a = 0; a < ws.full().num_arrows(); ++a) out.push_back(distinguished_walk(ws, f, a));
    return out;
}

std::vector<int> distinguished_arrows(const WalkSpace& ws, const Facet& f, const Walk& w) {
    int idx = f.index_of(w);
    if (idx < 0) throw ComplexError(ComplexErrorKind::NotMember, "walk is not in the facet: " + w.key);
    std::vector<int> out;
    auto dw = distinguished_walks(ws, f);
    for (int a = 0; a < static_cast<int>(dw.size()); ++a)
        if (dw[a] && dw[a]->walk == &f.walks[idx]) out.push_back(a);
    return out;
}

DistinguishedSubstring distinguished_substring(const WalkSpace& ws, const Facet& f, const Walk& w) {
    int idx = f.index_of(w);
    if (idx < 0) throw ComplexError(ComplexErrorKind::NotMember, "walk is not in the facet: " + w.key);
    if (!is_bending(ws, w)) throw ComplexError(ComplexErrorKind::NotBending, "walk is straight: " + w.key);
    auto dw = distinguished_walks(ws, f);
    std::vector<std::pair<long, int>> marks;
    for (int a = 0; a < static_cast<int>(dw.size()); ++a)
        if (dw[a] && dw[a]->walk == &f.walks[idx]) marks.push_back({dw[a]->pos, a});
    if (marks.size() != 2)
        throw ComplexError(ComplexErrorKind::NotMaximalFacet,
                           "walk has " + std::to_string(marks.size()) + " distinguished arrows: " + w.key);
    std::sort(marks.begin(), marks.end());
    DistinguishedSubstring s;
    s.left = marks[0].first;
    s.right = marks[1].first;
    s.left_arrow = marks[0].second;
    s.right_arrow = marks[1].second;
    WalkView v(f.walks[idx]);
    s.top = sign_of(v.at(s.left)) < 0 && sign_of(v.at(s.right)) > 0;
    for (long k = s.left + 1; k < s.right; ++k) s.letters.push_back(v.at(k));
    for (long k = s.left + 1; k <= s.right; ++k) s.vertices.push_back(ws.base_vertex(ws.tail(v.at(k))));
    return s;
}

namespace {

// The arrow paired with l in the ideal at the vertex where l ends (at_head) or starts.
int companion(const WalkSpace& ws, Letter l, bool at_head) {
    const BoundQuiver& q = ws.full();
    int a = arrow_of(l);
    bool forward = sign_of(l) > 0;
    if (at_head == forward) {
        for (int b : q.out_arrows(q.tgt(a)))
            if (q.is_relation(a, b)) return b;
    } else {
        for (int b : q.in_arrows(q.src(a)))
            if (q.is_relation(b, a)) return b;
    }
    throw ComplexError(ComplexErrorKind::NotMaximalFacet, "no relation partner for " + ws.letter_name(l));
}

// Orientation of a companion walk in which it runs through sigma and then (or before) the flank of w.
Oriented orient_through(const WalkSpace& ws, const MarkedWalk& m, const std::vector<Letter>& sigma, int vertex,
                        bool sigma_after, Letter flank) {
    for (bool rev : {false, true}) {
        WalkView v(*m.walk, rev);
        long q = rev ? v.body_size() - 1 - m.pos : m.pos;
        Letter here = v.at(q);
        if ((sigma_after ? ws.head(here) : ws.tail(here)) != vertex) continue;
        bool ok = true;
        const long len = static_cast<long>(sigma.size());
        for (long i = 0; i < len && ok; ++i) {
            long k = sigma_after ? q + 1 + i : q - len + i;
            ok = v.has(k) && v.at(k) == sigma[i];
        }
        long fk = sigma_after ? q + 1 + len : q - len - 1;
        if (ok && v.has(fk) && v.at(fk) == flank) return {v, q};
    }
    throw ComplexError(ComplexErrorKind::NotMaximalFacet, "companion walk does not follow the distinguished substring");
}

}  // namespace

FlipResult flip(const WalkSpace& ws, const Facet& f, const Walk& w) {
    DistinguishedSubstring s = distinguished_substring(ws, f, w);
    WalkView wv(w);
    Letter la = wv.at(s.left), lb = wv.at(s.right);
    int x = ws.head(la), y = ws.tail(lb);
    int alpha2 = companion(ws, la, true), beta2 = companion(ws, lb, false);

    std::vector<Walk> rest;
    for (const Walk& u : f.walks)
        if (!(u == w)) rest.push_back(u);
    Facet without = Facet::of(rest);
    auto mu = distinguished_walk(ws, without, alpha2);
    auto nu = distinguished_walk(ws, without, beta2);
    if (!mu || !nu) throw ComplexError(ComplexErrorKind::NotMaximalFacet, "companion arrow unused in the facet");
    Oriented m = orient_through(ws, *mu, s.letters, x, true, lb);
    Oriented n = orient_through(ws, *nu, s.letters, y, false, la);

    Walk raw;
    if (m.view.left_infinite()) {
        long p = m.view.left_period();
        for (long k = -p; k < 0; ++k) raw.ltail.push_back(m.view.at(k));
        long start = std::min(0L, m.pos);
        start = -((-start + p - 1) / p) * p;
        for (long k = start; k <= m.pos; ++k) raw.body.push_back(m.view.at(k));
    } else {
        for (long k = 0; k <= m.pos; ++k) raw.body.push_back(m.view.at(k));
    }
    raw.body.insert(raw.body.end(), s.letters.begin(), s.letters.end());
    const long nb = n.view.body_size();
    if (n.view.right_infinite()) {
        long p = n.view.right_period();
        for (long k = nb; k < nb + p; ++k) raw.rtail.push_back(n.view.at(k));
        long end = std::max(nb - 1, n.pos);
        end = nb - 1 + ((end - (nb - 1) + p - 1) / p) * p;
        for (long k = n.pos; k <= end; ++k) raw.body.push_back(n.view.at(k));
    } else {
        for (long k = n.pos; k < nb; ++k) raw.body.push_back(n.view.at(k));
    }
    FlipResult r;
    r.removed = w;
    r.added = canonicalize(ws, raw);
    rest.push_back(r.added);
    r.facet = Facet::of(rest);
    r.increasing = s.top;
    return r;
}

int FlipGraph::find(const Facet& f) const {
    for (size_t i = 0; i < facets.size(); ++i)
        if (facets[i].key == f.key) return static_cast<int>(i);
    return -1;
}

Facet peak_facet(const WalkSpace& ws) {
    std::vector<Walk> walks = straight_walks(ws);
    for (int a = 0; a < ws.base().num_vertices(); ++a) walks.push_back(peak_walk(ws, a));
    return Facet::of(walks);
}

Facet deep_facet(const WalkSpace& ws) {
    std::vector<Walk> walks = straight_walks(ws);
    for (int a = 0; a < ws.base().num_vertices(); ++a) walks.push_back(deep_walk(ws, a));
    return Facet::of(walks);
}

std::vector<Walk> bending_walks(const WalkSpace& ws, const Facet& f) {
    std::vector<Walk> out;
    for (const Walk& w : f.walks)
        if (is_bending(ws, w)) out.push_back(w);
    return out;
}

FlipGraph enumerate_facets(const WalkSpace& ws, int max_facets) {
    FlipGraph g;
    std::map<std::string, int> index;
    std::deque<int> queue;
    Facet start = peak_facet(ws);
    g.facets.push_back(start);
    index[start.key] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        const Facet f = g.facets[i];
        for (const Walk& w : bending_walks(ws, f)) {
            FlipResult r = flip(ws, f, w);
            auto it = index.find(r.facet.key);
            int j;
            if (it != index.end()) {
                j = it->second;
            } else if (static_cast<int>(g.facets.size()) >= max_facets) {
                g.closed = false;
                continue;
            } else {
                j = static_cast<int>(g.facets.size());
                g.facets.push_back(r.facet);
                index[r.facet.key] = j;
                queue.push_back(j);
            }
            g.edges.push_back({i, j, w.key, r.added.key, r.increasing});
        }
    }
    return g;
}

std::vector<Facet> brute_force_facets(const WalkSpace& ws, int body_bound) {
    WalkEnumeration u = enumerate_nonkissing_walks(ws, body_bound);
    if (!u.complete) throw IncompleteUniverse("non-self-kissing walks not exhausted at this bound");
    const int n = static_cast<int>(u.walks.size());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = compatible(ws, u.walks[i], u.walks[j]);
    std::vector<Facet> out;
    std::vector<int> r;
    // Bron-Kerbosch with pivoting
    auto bk = [&](auto&& self, std::vector<int> p, std::vector<int> x) -> void {
        if (p.empty() && x.empty()) {
            std::vector<Walk> ws_;
            for (int i : r) ws_.push_back(u.walks[i]);
            out.push_back(Facet::of(ws_));
            return;
        }
        int pivot = -1, best = -1;
        for (const auto* s : {&p, &x})
            for (int v : *s) {
                int c = 0;
                for (int w : p) c += adj[v][w];
                if (c > best) best = c, pivot = v;
            }
        std::vector<int> cand;
        for (int v : p)
            if (!adj[pivot][v]) cand.push_back(v);
        for (int v : cand) {
            std::vector<int> np, nx;
            for (int w : p)
                if (adj[v][w]) np.push_back(w);
            for (int w : x)
                if (adj[v][w]) nx.push_back(w);
            r.push_back(v);
            self(self, np, nx);
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    };
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    bk(bk, all, {});
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.key < b.key; });
    return out;
}

std::vector<std::string> verify_purity(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    const BoundQuiver& q = ws.base();
    const int n0 = q.num_vertices(), n1 = q.num_arrows(), p = count_primitive_cycles(q);
    for (size_t i = 0; i < g.facets.size(); ++i) {
        int bending = 0, finite_straight = 0;
        for (const Walk& w : g.facets[i].walks) {
            if (is_bending(ws, w)) ++bending;
            else if (!w.infinite()) ++finite_straight;
        }
        int total = static_cast<int>(g.facets[i].walks.size());
        if (bending != n0 || finite_straight != 2 * n0 - n1 || total != 3 * n0 - n1 + p)
            bad.push_back("facet " + std::to_string(i) + ": " + std::to_string(bending) + " bending, " +
                          std::to_string(finite_straight) + " finite straight, " + std::to_string(total) + " walks");
    }
    return bad;
}

std::vector<std::string> verify_thinness(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    if (!g.closed) bad.push_back("flip graph is not closed");
    for (size_t i = 0; i < g.facets.size(); ++i) {
        const Facet& f = g.facets[i];
        for (const Walk& w : bending_walks(ws, f)) {
            FlipResult r = flip(ws, f, w);
            int j = g.find(r.facet);
            if (j < 0) {
                bad.push_back("facet " + std::to_string(i) + ": flip of " + w.key + " leaves the graph");
                continue;
            }
            if (j == static_cast<int>(i)) bad.push_back("facet " + std::to_string(i) + ": flip is trivial");
            FlipResult back = flip(ws, r.facet, r.added);
            if (back.facet.key != f.key || !(back.added == w) || back.increasing == r.increasing)
                bad.push_back("facet " + std::to_string(i) + ": flipping " + w.key + " twice is not the identity");
            int containing = 0;
            for (const Facet& h : g.facets) {
                bool all = true;
                for (const Walk& u : f.walks)
                    if (!(u == w) && !h.contains(u)) all = false;
                containing += all;
            }
            if (containing != 2)
                bad.push_back("facet " + std::to_string(i) + ": ridge without " + w.key + " lies in " +
                              std::to_string(containing) + " facets");
        }
    }
    return bad;
}

std::vector<std::string> verify_census(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    for (size_t i = 0; i < g.facets.size(); ++i) {
        const Facet& f = g.facets[i];
        auto dw = distinguished_walks(ws, f);
        std::vector<std::set<int>> arrows(f.walks.size());
        for (int a = 0; a < static_cast<int>(dw.size()); ++a)
            if (dw[a]) arrows[dw[a]->walk - f.walks.data()].insert(a);
        for (size_t k = 0; k < f.walks.size(); ++k) {
            const Walk& w = f.walks[k];
            size_t want = is_bending(ws, w) ? 2 : (is_infinite_straight(ws, w) ? 0 : 1);
            if (arrows[k].size() != want)
                bad.push_back("facet " + std::to_string(i) + ": " + w.key + " has " +
                              std::to_string(arrows[k].size()) + " distinguished arrows");
        }
    }
    return bad;
}

std::vector<std::string> verify_countercurrent(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    for (size_t i = 0; i < g.facets.size(); ++i) {
        const Facet& f = g.facets[i];
        for (int a = 0; a < ws.full().num_arrows(); ++a) {
            std::vector<MarkedWalk> ms;
            for (const Walk& w : f.walks)
                for (long k : occurrences(ws, w, a)) ms.push_back({&w, k});
            const size_t n = ms.size();
            std::vector<std::vector<char>> less(n, std::vector<char>(n, 0));
            try {
                for (size_t x = 0; x < n; ++x)
                    for (size_t y = 0; y < n; ++y)
                        if (x != y) less[x][y] = countercurrent_less(ws, ms[x], ms[y]);
            } catch (const ComplexError& e) {
                bad.push_back("facet " + std::to_string(i) + " at " + ws.full().arrows()[a].id + ": " + e.what());
                continue;
            }
            // A complete antisymmetric relation is transitive iff its win counts are 0, 1, ..., n-1.
            std::vector<size_t> wins(n, 0);
            bool antisymmetric = true;
            for (size_t x = 0; x < n; ++x)
                for (size_t y = 0; y < n; ++y) {
                    if (x != y && less[x][y] == less[y][x]) antisymmetric = false;
                    wins[x] += less[x][y];
                }
            std::sort(wins.begin(), wins.end());
            bool transitive = true;
            for (size_t x = 0; x < n; ++x) transitive = transitive && wins[x] == x;
            if (!antisymmetric)
                bad.push_back("facet " + std::to_string(i) + ": order not antisymmetric at " + ws.full().arrows()[a].id);
            else if (!transitive)
                bad.push_back("facet " + std::to_string(i) + ": order not transitive at " + ws.full().arrows()[a].id);
        }
    }
    return bad;
}

std::vector<std::string> walks_through_cycles_check(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    std::vector<std::set<Letter>> cycles;
    for (const Walk& s : straight_walks(ws))
        if (is_infinite_straight(ws, s)) cycles.push_back(std::set<Letter>(s.rtail.begin(), s.rtail.end()));
    auto inverse_set = [](const std::set<Letter>& c) {
        std::set<Letter> r;
        for (Letter l : c) r.insert(inverse(l));
        return r;
    };
    for (size_t i = 0; i < g.facets.size(); ++i)
        for (const auto& c : cycles) {
            bool found = false;
            for (const Walk& w : bending_walks(ws, g.facets[i]))
                for (const auto* t : {&w.ltail, &w.rtail}) {
                    std::set<Letter> ts(t->begin(), t->end());
                    if (!t->empty() && (ts == c || ts == inverse_set(c))) found = true;
                }
            if (!found) bad.push_back("facet " + std::to_string(i) + " has no walk spiralling into a straight cycle");
        }
    return bad;
}

std::vector<std::string> verify_facet_bound(const WalkSpace& ws, const FlipGraph& g) {
    std::vector<std::string> bad;
    const size_t bound = ws.full().num_arrows() + count_primitive_cycles(ws.base());
    for (size_t i = 0; i < g.facets.size(); ++i)
        if (g.facets[i].walks.size() > bound)
            bad.push_back("facet " + std::to_string(i) + " exceeds " + std::to_string(bound) + " walks");
    return bad;
}

std::string flip_graph_dot(const FlipGraph& g) {
    std::ostringstream os;
    os << "digraph flips {\n";
    for (size_t i = 0; i < g.facets.size(); ++i) os << "  " << i << " [label=\"" << i << "\"];\n";
    for (const FlipEdge& e : g.edges)
        if (e.increasing)
            os << "  " << e.from << " -> " << e.to << " [label=\"" << e.removed << " => " << e.added << "\"];\n";
    os << "}\n";
    return os.str();
}

json flip_graph_json(const FlipGraph& g) {
    json facets = json::array();
    for (size_t i = 0; i < g.facets.size(); ++i) {
        json walks = json::array();
        for (const Walk& w : g.facets[i].walks) walks.push_back(w.key);
        facets.push_back({{"index", i}, {"walks", walks}});
    }
    json edges = json::array();
    for (const FlipEdge& e : g.edges)
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"removed", e.removed},
                         {"added", e.added},
                         {"direction", e.increasing ? "increasing" : "decreasing"}});
    return {{"closed", g.closed}, {"facets", g.facets.size()}, {"facet_list", facets}, {"edges", edges}};
}

}  // namespace nkc
