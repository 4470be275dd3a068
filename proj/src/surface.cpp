#include "nkc/surface.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

namespace nkc {

namespace {

std::atomic<std::uint64_t> next_surface_id{1};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

PointKind kind_of(const SurfaceModel& s, int point) { return s.points[point].kind; }

bool is_crossing_point(PointKind k) { return k == PointKind::Mid || k == PointKind::Blossom; }

void mark_interior(SurfaceModel& s) {
    for (SurfacePoint& p : s.points) p.interior = true;
    std::vector<char> seen(s.points.size(), 0);
    for (const HalfEdge& h : s.half_edges) {
        seen[h.from] = seen[h.to] = 1;
        if (h.twin < 0) s.points[h.from].interior = s.points[h.to].interior = false;
    }
    // Points swallowed by a face (only in maps without the dual dissection) are punctures.
    for (size_t p = 0; p < s.points.size(); ++p)
        if (!seen[p]) s.points[p].interior = true;
}

// Half-edge leaving the corner of the given kind in a lozenge.
int corner_out(const SurfaceModel& s, int face, PointKind k) {
    for (int h : s.faces[face])
        if (kind_of(s, s.half_edges[h].from) == k) return h;
    return -1;
}

void check_lozenges(const SurfaceModel& s) {
    if (!s.has_dual) throw SurfaceError(SurfaceErrorKind::NotDual, "surface carries no dual dissection");
    for (size_t f = 0; f < s.faces.size(); ++f) {
        const auto& hs = s.faces[f];
        bool ok = hs.size() == 4;
        if (ok) {
            int h = corner_out(s, static_cast<int>(f), PointKind::V);
            ok = h >= 0;
            for (int k = 0; ok && k < 4; ++k) {
                static const PointKind kinds[4] = {PointKind::V, PointKind::Mid, PointKind::Vdual, PointKind::Mid};
                static const SideColor colors[4] = {SideColor::Green, SideColor::Red, SideColor::Red, SideColor::Green};
                PointKind pk = kind_of(s, s.half_edges[h].from);
                bool match = kinds[k] == PointKind::Mid ? is_crossing_point(pk) : pk == kinds[k];
                ok = match && s.half_edges[h].color == colors[k];
                h = s.next(h);
            }
        }
        if (!ok) throw SurfaceError(SurfaceErrorKind::NotDual, "face " + s.face_labels[f] + " is not a lozenge");
    }
}

// Lozenges joined across sides of the given color; cells of the dissection made of the other color.
UnionFind cells(const SurfaceModel& s, SideColor across) {
    UnionFind uf(static_cast<int>(s.faces.size()));
    for (const HalfEdge& h : s.half_edges)
        if (h.twin >= 0 && h.color == across) uf.unite(h.face, s.half_edges[h.twin].face);
    return uf;
}

std::vector<std::vector<int>> boundary_cycles(const SurfaceModel& s) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(s.half_edges.size(), 0);
    for (size_t d = 0; d < s.half_edges.size(); ++d) {
        if (s.half_edges[d].twin >= 0 || seen[d]) continue;
        std::vector<int> cyc;
        int e = static_cast<int>(d);
        while (!seen[e]) {
            seen[e] = 1;
            cyc.push_back(e);
            int n = s.next(e);
            while (s.half_edges[n].twin >= 0) n = s.next(s.half_edges[n].twin);
            e = n;
        }
        out.push_back(cyc);
    }
    return out;
}

// Cells cut out by one dissection must be disks around exactly one point of the other kind.
std::vector<std::string> cell_issues(const SurfaceModel& s, SideColor across, PointKind center) {
    std::vector<std::string> bad;
    UnionFind uf = cells(s, across);
    std::map<int, std::set<int>> centers;
    std::map<int, int> faces, joins;
    for (size_t f = 0; f < s.faces.size(); ++f) {
        int r = uf.find(static_cast<int>(f));
        ++faces[r];
        for (int h : s.faces[f]) {
            const HalfEdge& e = s.half_edges[h];
            if (kind_of(s, e.from) == center) centers[r].insert(e.from);
            if (e.color == across && e.twin > h) ++joins[r];
        }
    }
    for (auto [r, n] : faces) {
        if (centers[r].size() != 1) {
            bad.push_back("cell with " + std::to_string(centers[r].size()) + " dual points");
            continue;
        }
        bool interior = s.points[*centers[r].begin()].interior;
        if (joins[r] != (interior ? n : n - 1)) bad.push_back("cell around " + s.points[*centers[r].begin()].label + " is not a disk");
    }
    return bad;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

}  // namespace

const char* surface_error_name(SurfaceErrorKind k) {
    switch (k) {
        case SurfaceErrorKind::InconsistentEuler: return "InconsistentEuler";
        case SurfaceErrorKind::NotCellular: return "NotCellular";
        case SurfaceErrorKind::NotDual: return "NotDual";
        case SurfaceErrorKind::MissingDualPoint: return "MissingDualPoint";
        case SurfaceErrorKind::MultipleDualPoints: return "MultipleDualPoints";
        case SurfaceErrorKind::NotReducedCrossing: return "NotReducedCrossing";
        case SurfaceErrorKind::DifferentSurface: return "DifferentSurface";
    }
    return "?";
}

int SurfaceModel::next(int h) const {
    const auto& f = faces[half_edges[h].face];
    auto it = std::find(f.begin(), f.end(), h);
    return ++it == f.end() ? f.front() : *it;
}

int SurfaceModel::prev(int h) const {
    const auto& f = faces[half_edges[h].face];
    auto it = std::find(f.begin(), f.end(), h);
    return it == f.begin() ? f.back() : *--it;
}

int SurfaceModel::rotate(int h) const { return half_edges[prev(h)].twin; }

int SurfaceModel::point(const std::string& label) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i].label == label) return static_cast<int>(i);
    return -1;
}

int SurfaceModel::face(const std::string& label) const {
    for (size_t i = 0; i < face_labels.size(); ++i)
        if (face_labels[i] == label) return static_cast<int>(i);
    return -1;
}

SurfaceModel surface_from_quiver(const BoundQuiver& q) {
    BlossomQuiver bq = blossom(validate_locally_gentle(q));
    const BoundQuiver& full = bq.full;
    const int n = full.num_vertices(), A = full.num_arrows();

    // Raw lozenge corners: v(alpha) = alpha, f(alpha) = A + alpha.
    UnionFind uf(2 * A);
    std::vector<HalfEdge> hs(4 * A);
    auto glue = [&](int a, int b) {
        if (hs[a].twin >= 0 || hs[b].twin >= 0) throw SurfaceError(SurfaceErrorKind::NotCellular, "side glued twice");
        hs[a].twin = b;
        hs[b].twin = a;
    };
    for (int x = 0; x < n; ++x) {
        if (full.degree(x) == 1) continue;
        for (int a : full.in_arrows(x))
            for (int b : full.out_arrows(x)) {
                if (full.is_relation(a, b)) {
                    glue(4 * a + 2, 4 * b + 1);
                    uf.unite(A + a, A + b);
                } else {
                    glue(4 * a + 3, 4 * b + 0);
                    uf.unite(a, b);
                }
            }
    }

    SurfaceModel s;
    s.id = next_surface_id++;
    for (int x = 0; x < n; ++x)
        s.points.push_back({full.degree(x) == 1 ? PointKind::Blossom : PointKind::Mid, full.vertices()[x], false});
    // Name each class of corners after its smallest arrow.
    std::map<int, int> class_point;
    for (int k = 0; k < 2; ++k)
        for (int a = 0; a < A; ++a) {
            int r = uf.find(k * A + a);
            if (class_point.count(r)) continue;
            class_point[r] = static_cast<int>(s.points.size());
            s.points.push_back({k == 0 ? PointKind::V : PointKind::Vdual, (k == 0 ? "v:" : "f:") + full.arrows()[a].id, false});
        }
    for (int a = 0; a < A; ++a) {
        int v = class_point[uf.find(a)], f = class_point[uf.find(A + a)];
        int src = full.src(a), tgt = full.tgt(a);
        const std::string& id = full.arrows()[a].id;
        hs[4 * a + 0] = {v, src, a, hs[4 * a + 0].twin, SideColor::Green, id};
        hs[4 * a + 1] = {src, f, a, hs[4 * a + 1].twin, SideColor::Red, id};
        hs[4 * a + 2] = {f, tgt, a, hs[4 * a + 2].twin, SideColor::Red, id};
        hs[4 * a + 3] = {tgt, v, a, hs[4 * a + 3].twin, SideColor::Green, id};
        s.faces.push_back({4 * a, 4 * a + 1, 4 * a + 2, 4 * a + 3});
        s.face_labels.push_back(id);
    }
    s.half_edges = std::move(hs);
    s.marks.assign(A, {});
    mark_interior(s);
    return s;
}

SurfaceInvariants quiver_invariants(const BoundQuiver& q) {
    BlossomQuiver bq = blossom(validate_locally_gentle(q));
    const BoundQuiver& full = bq.full;
    SurfaceInvariants inv;
    inv.q0 = q.num_vertices();
    inv.q1 = q.num_arrows();
    inv.p = count_primitive_cycles(q);
    inv.p_dual = count_relation_cycles(q);
    inv.punctures = inv.p + inv.p_dual;

    // Superpose the two matchings of leaves: ends of maximal paths without relations, and ends of relation paths.
    UnionFind uf(full.num_vertices());
    std::vector<int> leaves;
    for (int x = 0; x < full.num_vertices(); ++x)
        if (full.degree(x) == 1) leaves.push_back(x);
    for (int x : leaves) {
        if (full.out_arrows(x).empty()) continue;
        for (bool relation : {false, true}) {
            int a = full.out_arrows(x)[0];
            while (full.degree(full.tgt(a)) != 1) {
                int y = full.tgt(a), b = -1;
                for (int c : full.out_arrows(y))
                    if (full.is_relation(a, c) == relation) b = c;
                a = b;
            }
            uf.unite(x, full.tgt(a));
        }
    }
    std::set<int> comps;
    for (int x : leaves) comps.insert(uf.find(x));
    inv.b = inv.b_matching = static_cast<int>(comps.size());
    UnionFind parts(q.num_vertices());
    for (int a = 0; a < q.num_arrows(); ++a) parts.unite(q.src(a), q.tgt(a));
    std::set<int> roots;
    for (int v = 0; v < q.num_vertices(); ++v) roots.insert(parts.find(v));
    inv.components = static_cast<int>(roots.size());
    int twice = inv.q1 - inv.q0 - inv.b - inv.punctures + 2 * inv.components;
    inv.genus = twice / 2;
    if (twice % 2 != 0 || twice < 0) inv.issues.push_back("genus formula gives " + std::to_string(twice) + "/2");
    inv.euler = 2 * inv.components - 2 * inv.genus;
    inv.v_points = 2 * inv.q0 - inv.q1 + inv.p;
    inv.d_faces = inv.b + inv.p_dual;
    return inv;
}

SurfaceInvariants invariants(const SurfaceModel& s) {
    check_lozenges(s);
    SurfaceInvariants inv;
    for (const SurfacePoint& p : s.points) {
        if (p.kind == PointKind::Mid) ++inv.q0;
        if (p.kind == PointKind::V) ++inv.v_points;
        if (p.kind == PointKind::V && p.interior) ++inv.p;
        if (p.kind == PointKind::Vdual && p.interior) ++inv.p_dual;
        if (p.kind == PointKind::Mid && !p.interior) inv.issues.push_back("crossing point " + p.label + " on the boundary");
        if (p.kind == PointKind::Blossom && p.interior) inv.issues.push_back("blossom point " + p.label + " is interior");
    }
    inv.punctures = inv.p + inv.p_dual;
    for (size_t f = 0; f < s.faces.size(); ++f) {
        int h = corner_out(s, static_cast<int>(f), PointKind::V);
        if (kind_of(s, s.half_edges[h].to) == PointKind::Mid && kind_of(s, s.half_edges[s.prev(h)].from) == PointKind::Mid)
            ++inv.q1;
    }

    auto cycles = boundary_cycles(s);
    inv.b = static_cast<int>(cycles.size());
    for (const auto& cyc : cycles) {
        std::vector<PointKind> seq;
        for (int h : cyc) seq.push_back(kind_of(s, s.half_edges[h].from));
        for (size_t i = 0; i < seq.size(); ++i)
            if ((seq[i] == PointKind::Blossom) == (seq[(i + 1) % seq.size()] == PointKind::Blossom) ||
                (seq[i] != PointKind::Blossom && seq[i] == seq[(i + 2) % seq.size()]))
                inv.issues.push_back("boundary points do not alternate");
    }

    // Matchings read off the map: each boundary V or V* point pairs its two blossom neighbours.
    UnionFind uf(static_cast<int>(s.points.size()));
    std::set<int> blossoms;
    for (const HalfEdge& h : s.half_edges)
        if (h.twin < 0) {
            uf.unite(h.from, h.to);
            blossoms.insert(kind_of(s, h.from) == PointKind::Blossom ? h.from : h.to);
        }
    std::set<int> comps;
    for (int x : blossoms) comps.insert(uf.find(x));
    inv.b_matching = static_cast<int>(comps.size());
    if (inv.b != inv.b_matching) inv.issues.push_back("boundary count differs from the matching count");

    UnionFind parts(static_cast<int>(s.points.size()));
    for (const HalfEdge& h : s.half_edges) parts.unite(h.from, h.to);
    std::set<int> roots;
    for (size_t p = 0; p < s.points.size(); ++p) roots.insert(parts.find(static_cast<int>(p)));
    inv.components = static_cast<int>(roots.size());
    int twice = inv.q1 - inv.q0 - inv.b - inv.punctures + 2 * inv.components;
    if (twice % 2 != 0 || twice < 0)
        throw SurfaceError(SurfaceErrorKind::InconsistentEuler, "genus formula gives " + std::to_string(twice) + "/2");
    inv.genus = twice / 2;

    int glued = 0, open = 0;
    for (const HalfEdge& h : s.half_edges) (h.twin >= 0 ? glued : open)++;
    inv.euler = static_cast<int>(s.points.size()) - (glued / 2 + open) + static_cast<int>(s.faces.size()) + inv.b;
    if (inv.euler != 2 * inv.components - 2 * inv.genus)
        throw SurfaceError(SurfaceErrorKind::InconsistentEuler,
                           "map has Euler characteristic " + std::to_string(inv.euler) + ", genus formula " +
                               std::to_string(2 * inv.components - 2 * inv.genus));

    UnionFind cell = cells(s, SideColor::Red);
    std::set<int> raw;
    for (size_t f = 0; f < s.faces.size(); ++f) raw.insert(cell.find(static_cast<int>(f)));
    inv.d_cells = static_cast<int>(raw.size());
    for (const auto& cyc : cycles)
        for (int h : cyc) cell.unite(s.half_edges[h].face, s.half_edges[cyc.front()].face);
    std::set<int> filled;
    for (size_t f = 0; f < s.faces.size(); ++f) filled.insert(cell.find(static_cast<int>(f)));
    inv.d_faces = static_cast<int>(filled.size());
    if (inv.d_faces != inv.b + inv.p_dual) inv.issues.push_back("D has " + std::to_string(inv.d_faces) + " faces");
    if (inv.v_points != 2 * inv.q0 - inv.q1 + inv.p) inv.issues.push_back("V has " + std::to_string(inv.v_points) + " points");
    for (const std::string& e : cell_issues(s, SideColor::Red, PointKind::Vdual)) inv.issues.push_back("D: " + e);
    for (const std::string& e : cell_issues(s, SideColor::Green, PointKind::V)) inv.issues.push_back("D*: " + e);
    return inv;
}

BoundQuiver quiver_from_surface(const SurfaceModel& s, Dissection which) {
    check_lozenges(s);
    const bool dual = which == Dissection::Ddual;
    auto bad = cell_issues(s, dual ? SideColor::Green : SideColor::Red, dual ? PointKind::V : PointKind::Vdual);
    if (!bad.empty()) throw SurfaceError(SurfaceErrorKind::NotCellular, bad.front());

    std::vector<std::string> vertices;
    for (const SurfacePoint& p : s.points)
        if (p.kind == PointKind::Mid) vertices.push_back(p.label);
    // Each angle of a cell at a marked point is an arrow, from the side met first counterclockwise.
    std::vector<Arrow> arrows;
    std::vector<int> arrow_of_face(s.faces.size(), -1);
    for (size_t f = 0; f < s.faces.size(); ++f) {
        int out = corner_out(s, static_cast<int>(f), dual ? PointKind::Vdual : PointKind::V);
        int in = s.prev(out);
        int src = s.half_edges[out].to, tgt = s.half_edges[in].from;
        if (kind_of(s, src) == PointKind::Blossom || kind_of(s, tgt) == PointKind::Blossom) continue;
        arrow_of_face[f] = static_cast<int>(arrows.size());
        arrows.push_back({s.face_labels[f], s.points[src].label, s.points[tgt].label});
    }
    // Consecutive angles inside one cell compose to a relation.
    std::set<std::pair<std::string, std::string>> relations;
    for (size_t f = 0; f < s.faces.size(); ++f) {
        if (arrow_of_face[f] < 0) continue;
        int out = corner_out(s, static_cast<int>(f), dual ? PointKind::Vdual : PointKind::V);
        int across = s.half_edges[s.prev(s.prev(out))].twin;
        if (across < 0) continue;
        int g = s.half_edges[across].face;
        if (arrow_of_face[g] >= 0) relations.insert({s.face_labels[f], s.face_labels[g]});
    }
    return BoundQuiver(vertices, arrows, relations);
}

SurfaceModel swap_dissections(const SurfaceModel& s) {
    SurfaceModel t = s;
    for (SurfacePoint& p : t.points) {
        if (p.kind == PointKind::V) p.kind = PointKind::Vdual;
        else if (p.kind == PointKind::Vdual) p.kind = PointKind::V;
    }
    for (HalfEdge& h : t.half_edges) h.color = h.color == SideColor::Green ? SideColor::Red : SideColor::Green;
    return t;
}

SurfaceModel strip_dual(const SurfaceModel& s) {
    check_lozenges(s);
    auto removed = [&](int h) { return s.half_edges[h].color == SideColor::Red && s.half_edges[h].twin >= 0; };
    std::vector<int> renum(s.half_edges.size(), -1);
    SurfaceModel t;
    t.id = s.id;
    t.points = s.points;
    t.has_dual = false;
    for (size_t h = 0; h < s.half_edges.size(); ++h)
        if (!removed(static_cast<int>(h))) {
            renum[h] = static_cast<int>(t.half_edges.size());
            t.half_edges.push_back(s.half_edges[h]);
        }
    for (HalfEdge& h : t.half_edges)
        if (h.twin >= 0) h.twin = renum[h.twin];
    std::vector<int> new_face_of_old(s.faces.size(), -1);
    for (HalfEdge& h : t.half_edges) h.face = -1;
    for (size_t h0 = 0; h0 < s.half_edges.size(); ++h0) {
        if (renum[h0] < 0 || t.half_edges[renum[h0]].face >= 0) continue;
        int f = static_cast<int>(t.faces.size());
        std::vector<int> cyc;
        std::set<std::string> labels;
        int h = static_cast<int>(h0);
        do {
            cyc.push_back(renum[h]);
            t.half_edges[renum[h]].face = f;
            labels.insert(s.face_labels[s.half_edges[h].face]);
            new_face_of_old[s.half_edges[h].face] = f;
            int n = s.next(h);
            while (removed(n)) {
                labels.insert(s.face_labels[s.half_edges[n].face]);
                n = s.next(s.half_edges[n].twin);
            }
            h = n;
        } while (h != static_cast<int>(h0));
        t.faces.push_back(cyc);
        t.face_labels.push_back("cell:" + join(std::vector<std::string>(labels.begin(), labels.end()), ","));
    }
    t.marks.assign(t.faces.size(), {});
    std::vector<char> on_boundary(t.points.size(), 0);
    for (const HalfEdge& h : t.half_edges) on_boundary[h.from] = on_boundary[h.to] = 1;
    for (size_t p = 0; p < t.points.size(); ++p) {
        if (on_boundary[p]) continue;
        for (const HalfEdge& h : s.half_edges)
            if (h.from == static_cast<int>(p)) {
                t.marks[new_face_of_old[h.face]].push_back(static_cast<int>(p));
                break;
            }
    }
    return t;
}

SurfaceModel dual_dissection(const SurfaceModel& in) {
    if (in.has_dual) return dual_dissection(strip_dual(in));
    const SurfaceModel& s = in;
    SurfaceModel t;
    t.id = s.id;
    t.points = s.points;
    t.has_dual = true;
    // Green sides keep their indices; red sides are appended.
    t.half_edges = s.half_edges;
    for (HalfEdge& h : t.half_edges) h.face = -1;

    for (size_t f = 0; f < s.faces.size(); ++f) {
        const auto& hs = s.faces[f];
        const int m = static_cast<int>(hs.size());
        std::set<int> duals(s.marks[f].begin(), s.marks[f].end());
        std::vector<int> open_red;
        for (int h : hs) {
            if (kind_of(s, s.half_edges[h].from) == PointKind::Vdual) duals.insert(s.half_edges[h].from);
            if (s.half_edges[h].color == SideColor::Red) open_red.push_back(h);
        }
        if (duals.empty()) throw SurfaceError(SurfaceErrorKind::MissingDualPoint, "no dual point in " + s.face_labels[f]);
        if (duals.size() > 1)
            throw SurfaceError(SurfaceErrorKind::MultipleDualPoints,
                               std::to_string(duals.size()) + " dual points in " + s.face_labels[f]);
        const int dp = *duals.begin();
        bool dp_on_face = s.marks[f].empty();
        if (open_red.size() != (dp_on_face ? 2u : 0u))
            throw SurfaceError(SurfaceErrorKind::NotCellular, "unexpected boundary in " + s.face_labels[f]);
        for (int h : open_red)
            if (s.half_edges[h].from != dp && s.half_edges[h].to != dp)
                throw SurfaceError(SurfaceErrorKind::NotCellular, "boundary away from the dual point in " + s.face_labels[f]);

        // One lozenge per corner at a V point: v -> s, s -> f, f -> t, t -> v.
        std::vector<int> to_dual(m, -1), from_dual(m, -1);  // indexed by the position of the out-going green side
        std::vector<int> corner_at(m, -1);
        for (int i = 0; i < m; ++i) {
            int out = hs[i], in = hs[(i + m - 1) % m];
            if (kind_of(s, s.half_edges[out].from) != PointKind::V) continue;
            if (s.half_edges[out].color != SideColor::Green || s.half_edges[in].color != SideColor::Green)
                throw SurfaceError(SurfaceErrorKind::NotCellular, "corner without D sides in " + s.face_labels[f]);
            int face = static_cast<int>(t.faces.size());
            const std::string& label = s.half_edges[out].label;
            int sp = s.half_edges[out].to, tp = s.half_edges[in].from;
            int next_side = hs[(i + 1) % m], prev_side = hs[(i + m - 2) % m];
            int rs, rt;
            if (s.half_edges[next_side].color == SideColor::Red) {
                rs = next_side;
            } else {
                rs = static_cast<int>(t.half_edges.size());
                t.half_edges.push_back({sp, dp, face, -1, SideColor::Red, label});
            }
            if (s.half_edges[prev_side].color == SideColor::Red) {
                rt = prev_side;
            } else {
                rt = static_cast<int>(t.half_edges.size());
                t.half_edges.push_back({dp, tp, face, -1, SideColor::Red, label});
            }
            t.half_edges[rs].face = t.half_edges[rt].face = face;
            t.half_edges[rs].label = t.half_edges[rt].label = label;
            t.half_edges[out].face = t.half_edges[in].face = face;
            t.faces.push_back({out, rs, rt, in});
            t.face_labels.push_back(label);
            to_dual[i] = rs;
            from_dual[i] = rt;
            corner_at[i] = face;
        }
        // Spokes to the same crossing point from the two neighbouring lozenges are glued.
        for (int i = 0; i < m; ++i) {
            if (corner_at[i] < 0) continue;
            int next_side = hs[(i + 1) % m];
            if (s.half_edges[next_side].color == SideColor::Red) continue;
            int j = (i + 2) % m;
            if (corner_at[j] < 0) throw SurfaceError(SurfaceErrorKind::NotCellular, "face " + s.face_labels[f]);
            t.half_edges[to_dual[i]].twin = from_dual[j];
            t.half_edges[from_dual[j]].twin = to_dual[i];
        }
    }
    for (const HalfEdge& h : t.half_edges)
        if (h.face < 0) throw SurfaceError(SurfaceErrorKind::NotCellular, "side outside every lozenge");
    t.marks.assign(t.faces.size(), {});
    mark_interior(t);
    return t;
}

bool same_map(const SurfaceModel& a, const SurfaceModel& b) {
    auto describe = [](const SurfaceModel& s) {
        auto key = [&](int h) {
            const HalfEdge& e = s.half_edges[h];
            return s.face_labels[e.face] + "|" + s.points[e.from].label + ">" + s.points[e.to].label +
                   (e.color == SideColor::Green ? "g" : "r");
        };
        std::multiset<std::string> out;
        for (size_t f = 0; f < s.faces.size(); ++f) {
            std::vector<std::string> seq;
            for (int h : s.faces[f]) seq.push_back(s.points[s.half_edges[h].from].label);
            std::rotate(seq.begin(), std::min_element(seq.begin(), seq.end()), seq.end());
            out.insert("face " + s.face_labels[f] + ":" + join(seq, ","));
        }
        for (size_t h = 0; h < s.half_edges.size(); ++h) {
            int tw = s.half_edges[h].twin;
            if (tw < 0) out.insert("open " + key(static_cast<int>(h)));
            else if (static_cast<int>(h) < tw) out.insert("glue " + std::min(key(h), key(tw)) + "~" + std::max(key(h), key(tw)));
        }
        for (const SurfacePoint& p : s.points)
            out.insert("point " + p.label + std::to_string(static_cast<int>(p.kind)) + (p.interior ? "i" : "b"));
        return out;
    };
    return describe(a) == describe(b);
}

namespace {

int face_of_letter(const SurfaceModel& s, const WalkSpace& ws, Letter l) {
    int f = s.face(ws.arrow_name(l));
    if (f < 0) throw SurfaceError(SurfaceErrorKind::DifferentSurface, "no lozenge for arrow " + ws.arrow_name(l));
    return f;
}

SpiralEnd spiral(const SurfaceModel& s, const WalkSpace& ws, const std::vector<Letter>& tail) {
    SpiralEnd e;
    for (Letter l : tail) {
        e.cycle.push_back(face_of_letter(s, ws, l));
        e.signs.push_back(sign_of(l));
    }
    e.rotation = sign_of(tail.front());
    e.puncture = s.half_edges[corner_out(s, e.cycle.front(), PointKind::V)].from;
    return e;
}

// Endpoints of the arrow carried by a lozenge: (source, target) crossing points.
std::pair<int, int> lozenge_ends(const SurfaceModel& s, int face) {
    int out = corner_out(s, face, PointKind::V);
    return {s.half_edges[out].to, s.half_edges[s.prev(out)].from};
}

}  // namespace

CrossingSequence curve_of_walk(const SurfaceModel& s, const WalkSpace& ws, const Walk& w) {
    check_lozenges(s);
    CrossingSequence c;
    c.surface = s.id;
    auto point_of = [&](int vertex) {
        int p = s.point(ws.full().vertices()[vertex]);
        if (p < 0) throw SurfaceError(SurfaceErrorKind::DifferentSurface, "vertex missing from surface");
        return p;
    };
    c.crossings.push_back(point_of(ws.tail(w.body.front())));
    for (Letter l : w.body) {
        c.angles.push_back({face_of_letter(s, ws, l), sign_of(l)});
        c.crossings.push_back(point_of(ws.head(l)));
    }
    if (!w.ltail.empty()) c.left = spiral(s, ws, w.ltail);
    if (!w.rtail.empty()) c.right = spiral(s, ws, w.rtail);
    return c;
}

Walk walk_of_curve(const SurfaceModel& s, const WalkSpace& ws, const CrossingSequence& c) {
    if (c.surface != s.id) throw SurfaceError(SurfaceErrorKind::DifferentSurface, "curve drawn on another surface");
    if (c.angles.size() + 1 != c.crossings.size() || c.angles.empty())
        throw SurfaceError(SurfaceErrorKind::NotReducedCrossing, "malformed crossing sequence");
    auto letter = [&](int face, int sign) {
        int a = ws.full().arrow_index(s.face_labels[face]);
        if (a < 0) throw SurfaceError(SurfaceErrorKind::DifferentSurface, "unknown lozenge " + s.face_labels[face]);
        return make_letter(a, sign);
    };
    Walk raw;
    for (size_t i = 0; i < c.angles.size(); ++i) {
        const Angle& g = c.angles[i];
        auto [from, to] = lozenge_ends(s, g.face);
        if (g.sign < 0) std::swap(from, to);
        if (from != c.crossings[i] || to != c.crossings[i + 1])
            throw SurfaceError(SurfaceErrorKind::NotReducedCrossing, "angle does not join consecutive crossings");
        if (i + 1 < c.angles.size() && c.angles[i + 1].face == g.face && c.angles[i + 1].sign == -g.sign)
            throw SurfaceError(SurfaceErrorKind::NotReducedCrossing, "curve crosses back immediately");
        raw.body.push_back(letter(g.face, g.sign));
    }
    auto tail = [&](const std::optional<SpiralEnd>& e, bool left) {
        std::vector<Letter> out;
        if (!e) {
            int end = left ? c.crossings.front() : c.crossings.back();
            if (kind_of(s, end) != PointKind::Blossom)
                throw SurfaceError(SurfaceErrorKind::NotReducedCrossing, "finite end away from the boundary");
            return out;
        }
        if (!s.points[e->puncture].interior)
            throw SurfaceError(SurfaceErrorKind::NotReducedCrossing, "spiral around a boundary point");
        for (size_t i = 0; i < e->cycle.size(); ++i) out.push_back(letter(e->cycle[i], e->signs[i]));
        return out;
    };
    raw.ltail = tail(c.left, true);
    raw.rtail = tail(c.right, false);
    return canonicalize(ws, raw);
}

namespace {

// A curve unrolled to a finite window: angles[i] joins points[i] to points[i+1].
struct CurveWindow {
    std::vector<int> points;
    std::vector<Angle> angles;
};

CurveWindow unroll(const SurfaceModel& s, const CrossingSequence& c, int turns) {
    CurveWindow w;
    auto push = [&](const SpiralEnd& e) {
        for (size_t i = 0; i < e.cycle.size(); ++i) w.angles.push_back({e.cycle[i], e.signs[i]});
    };
    for (int k = 0; c.left && k < turns; ++k) push(*c.left);
    w.angles.insert(w.angles.end(), c.angles.begin(), c.angles.end());
    for (int k = 0; c.right && k < turns; ++k) push(*c.right);
    for (const Angle& a : w.angles) {
        auto [from, to] = lozenge_ends(s, a.face);
        if (a.sign < 0) std::swap(from, to);
        if (w.points.empty()) w.points.push_back(from);
        w.points.push_back(to);
    }
    return w;
}

CurveWindow reversed_window(CurveWindow w) {
    std::reverse(w.points.begin(), w.points.end());
    std::reverse(w.angles.begin(), w.angles.end());
    for (Angle& a : w.angles) a.sign = -a.sign;
    return w;
}

// Corner of the lozenge at the point where the angle starts (leaving) or ends (arriving).
int corner(const SurfaceModel& s, const Angle& a, bool arriving) {
    int v = corner_out(s, a.face, PointKind::V);
    bool at_source = (a.sign > 0) != arriving;
    return at_source ? s.next(v) : s.prev(v);
}

// Position of each corner in the rotation around its point.
int rotation_index(const SurfaceModel& s, int start, int target) {
    int h = start;
    for (int k = 0; k < 16; ++k) {
        if (h == target) return k;
        h = s.rotate(h);
        if (h < 0) break;
    }
    throw SurfaceError(SurfaceErrorKind::NotCellular, "corner not found around its point");
}

// Crossings of x with y where y is read in the direction given; common runs of length zero only when count_points.
std::int64_t crossings(const SurfaceModel& s, const CurveWindow& x, const CurveWindow& y, bool count_points) {
    const long n = static_cast<long>(x.angles.size()), m = static_cast<long>(y.angles.size());
    std::int64_t count = 0;
    for (long i = 1; i < n; ++i)
        for (long k = 1; k < m; ++k) {
            if (x.points[i] != y.points[k] || x.angles[i - 1] == y.angles[k - 1]) continue;
            long len = 0;
            while (i + len < n && k + len < m && x.angles[i + len] == y.angles[k + len]) ++len;
            if (i + len >= n || k + len >= m) continue;  // the run reaches the end of a window
            const int xin = corner(s, x.angles[i - 1], true), yin = corner(s, y.angles[k - 1], true);
            const int xout = corner(s, x.angles[i + len], false), yout = corner(s, y.angles[k + len], false);
            if (len == 0) {
                // a shared corner means the curves run through the same lozenge in opposite directions
                if (!count_points || xin == yout || xout == yin) continue;
                int a = rotation_index(s, xin, xout), b = rotation_index(s, xin, yin), c = rotation_index(s, xin, yout);
                if ((b < a) != (c < a)) ++count;
                continue;
            }
            // which curve arrives on the left, and which one leaves on the left
            const int first = corner(s, x.angles[i], false), last = corner(s, x.angles[i + len - 1], true);
            bool x_left_in = rotation_index(s, first, xin) < rotation_index(s, first, yin);
            bool x_left_out = rotation_index(s, last, xout) > rotation_index(s, last, yout);
            if (x_left_in != x_left_out) ++count;
        }
    return count;
}

std::int64_t window_crossings(const SurfaceModel& s, const CrossingSequence& a, const CrossingSequence& b, int turns) {
    CurveWindow x = unroll(s, a, turns), y = unroll(s, b, turns);
    return crossings(s, x, y, true) + crossings(s, x, reversed_window(y), false);
}

}  // namespace

KissCount crossing_count(const SurfaceModel& s, const WalkSpace& ws, const CrossingSequence& a,
                         const CrossingSequence& b) {
    if (a.surface != s.id || b.surface != s.id)
        throw SurfaceError(SurfaceErrorKind::DifferentSurface, "curves live on different surfaces");
    walk_of_curve(s, ws, a);
    walk_of_curve(s, ws, b);
    // enough turns for every finite run against the other curve's body, then two more to detect growth
    long longest = static_cast<long>(a.angles.size() + b.angles.size());
    int turns = 2;
    for (const auto* e : {&a.left, &a.right, &b.left, &b.right})
        if (*e) turns = std::max<int>(turns, static_cast<int>(longest / (*e)->cycle.size()) + 3);
    std::int64_t base = window_crossings(s, a, b, turns);
    if (window_crossings(s, a, b, turns + 2) != base) return {true, 0};
    return {false, base};
}

json surface_json(const SurfaceModel& s) {
    static const char* kinds[] = {"V", "Vdual", "mid", "blossom"};
    json points = json::array();
    for (const SurfacePoint& p : s.points)
        points.push_back({{"label", p.label}, {"kind", kinds[static_cast<int>(p.kind)]}, {"puncture", p.interior && (p.kind == PointKind::V || p.kind == PointKind::Vdual)}});
    json hes = json::array();
    for (size_t h = 0; h < s.half_edges.size(); ++h) {
        const HalfEdge& e = s.half_edges[h];
        hes.push_back({{"from", e.from}, {"to", e.to}, {"face", e.face},
                       {"twin", e.twin < 0 ? json(nullptr) : json(e.twin)},
                       {"rotation", s.rotate(static_cast<int>(h)) < 0 ? json(nullptr) : json(s.rotate(static_cast<int>(h)))},
                       {"class", e.twin < 0 ? "boundary" : (e.color == SideColor::Green ? "D" : "Ddual")},
                       {"color", e.color == SideColor::Green ? "green" : "red"}});
    }
    json faces = json::array();
    for (size_t f = 0; f < s.faces.size(); ++f)
        faces.push_back({{"label", s.face_labels[f]}, {"half_edges", s.faces[f]}, {"marks", s.marks[f]}});
    return {{"points", points}, {"half_edges", hes}, {"faces", faces}, {"has_dual", s.has_dual}};
}

json invariants_json(const SurfaceInvariants& inv) {
    return {{"b", inv.b},
            {"b_matching", inv.b_matching},
            {"p", inv.p},
            {"p_dual", inv.p_dual},
            {"punctures", inv.punctures},
            {"components", inv.components},
            {"genus", inv.genus},
            {"euler", inv.euler},
            {"d_faces", inv.d_faces},
            {"d_cells", inv.d_cells},
            {"v_points", inv.v_points},
            {"issues", inv.issues}};
}

}  // namespace nkc
