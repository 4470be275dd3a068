#include "nkc/quiver.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace nkc {

const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::UnknownId: return "UnknownId";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::DegreeViolation: return "DegreeViolation";
        case ErrorKind::NonComposableRelation: return "NonComposableRelation";
        case ErrorKind::GentleBranchViolation: return "GentleBranchViolation";
        case ErrorKind::NotComplete: return "NotComplete";
    }
    return "Error";
}

BoundQuiver::BoundQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                         std::set<std::pair<std::string, std::string>> relations)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), relations_(std::move(relations)) {
    std::sort(vertices_.begin(), vertices_.end());
    for (size_t i = 1; i < vertices_.size(); ++i)
        if (vertices_[i] == vertices_[i - 1])
            throw QuiverError(ErrorKind::DuplicateId, "duplicate vertex '" + vertices_[i] + "'");
    std::sort(arrows_.begin(), arrows_.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    for (size_t i = 1; i < arrows_.size(); ++i)
        if (arrows_[i].id == arrows_[i - 1].id)
            throw QuiverError(ErrorKind::DuplicateId, "duplicate arrow '" + arrows_[i].id + "'");
    for (int i = 0; i < num_vertices(); ++i) vidx_[vertices_[i]] = i;
    in_.assign(vertices_.size(), {});
    out_.assign(vertices_.size(), {});
    for (int i = 0; i < num_arrows(); ++i) {
        const Arrow& a = arrows_[i];
        aidx_[a.id] = i;
        auto s = vidx_.find(a.src), t = vidx_.find(a.tgt);
        if (s == vidx_.end())
            throw QuiverError(ErrorKind::UnknownId, "arrow '" + a.id + "' has unknown source '" + a.src + "'");
        if (t == vidx_.end())
            throw QuiverError(ErrorKind::UnknownId, "arrow '" + a.id + "' has unknown target '" + a.tgt + "'");
        src_.push_back(s->second);
        tgt_.push_back(t->second);
        out_[s->second].push_back(i);
        in_[t->second].push_back(i);
    }
    for (const auto& [x, y] : relations_) {
        int a = arrow_index(x), b = arrow_index(y);
        if (a < 0 || b < 0)
            throw QuiverError(ErrorKind::UnknownId, "relation (" + x + "," + y + ") names an unknown arrow");
        rel_idx_.insert({a, b});
    }
}

int BoundQuiver::vertex_index(const std::string& v) const {
    auto it = vidx_.find(v);
    return it == vidx_.end() ? -1 : it->second;
}

int BoundQuiver::arrow_index(const std::string& a) const {
    auto it = aidx_.find(a);
    return it == aidx_.end() ? -1 : it->second;
}

bool BoundQuiver::is_relation(int a, int b) const { return rel_idx_.count({a, b}) > 0; }

BoundQuiver validate_locally_gentle(const BoundQuiver& q) {
    for (int v = 0; v < q.num_vertices(); ++v) {
        if (q.in_arrows(v).size() > 2)
            throw QuiverError(ErrorKind::DegreeViolation,
                              "vertex '" + q.vertices()[v] + "' has more than two incoming arrows");
        if (q.out_arrows(v).size() > 2)
            throw QuiverError(ErrorKind::DegreeViolation,
                              "vertex '" + q.vertices()[v] + "' has more than two outgoing arrows");
    }
    for (const auto& [x, y] : q.relations()) {
        int a = q.arrow_index(x), b = q.arrow_index(y);
        if (q.tgt(a) != q.src(b))
            throw QuiverError(ErrorKind::NonComposableRelation,
                              "relation (" + x + "," + y + ") is not a path: target of '" + x +
                                  "' differs from source of '" + y + "'");
    }
    for (int b = 0; b < q.num_arrows(); ++b) {
        int rel = 0, nonrel = 0;
        for (int a : q.in_arrows(q.src(b))) (q.is_relation(a, b) ? rel : nonrel)++;
        if (rel > 1 || nonrel > 1)
            throw QuiverError(ErrorKind::GentleBranchViolation,
                              "arrow '" + q.arrows()[b].id + "' has two " +
                                  (rel > 1 ? "relation" : "relation-free") + " predecessors");
        rel = nonrel = 0;
        for (int c : q.out_arrows(q.tgt(b))) (q.is_relation(b, c) ? rel : nonrel)++;
        if (rel > 1 || nonrel > 1)
            throw QuiverError(ErrorKind::GentleBranchViolation,
                              "arrow '" + q.arrows()[b].id + "' has two " +
                                  (rel > 1 ? "relation" : "relation-free") + " successors");
    }
    return q;
}

bool is_complete(const BoundQuiver& q) {
    for (int v = 0; v < q.num_vertices(); ++v)
        if (q.degree(v) != 1 && q.degree(v) != 4) return false;
    return true;
}

BlossomQuiver blossom(const BoundQuiver& q0) {
    const BoundQuiver q = validate_locally_gentle(q0);
    std::vector<std::string> verts = q.vertices();
    std::vector<Arrow> arrows = q.arrows();
    std::set<std::pair<std::string, std::string>> rels = q.relations();
    BlossomQuiver out;
    out.base = q;

    auto fresh = [&](const std::string& id) {
        if (q.vertex_index(id) >= 0 || q.arrow_index(id) >= 0)
            throw QuiverError(ErrorKind::DuplicateId, "blossom id '" + id + "' collides with an existing id");
        return id;
    };

    for (int v = 0; v < q.num_vertices(); ++v) {
        const std::string& name = q.vertices()[v];
        std::vector<std::string> ins, outs;
        for (int a : q.in_arrows(v)) ins.push_back(q.arrows()[a].id);
        for (int a : q.out_arrows(v)) outs.push_back(q.arrows()[a].id);
        std::sort(ins.begin(), ins.end());
        std::sort(outs.begin(), outs.end());
        for (int k = 1; ins.size() < 2; ++k) {
            std::string id = fresh(name + "+in" + std::to_string(k));
            verts.push_back(id);
            arrows.push_back({id, id, name});
            out.blossom_vertices.insert(id);
            out.blossom_arrows.insert(id);
            ins.push_back(id);
        }
        for (int k = 1; outs.size() < 2; ++k) {
            std::string id = fresh(name + "+out" + std::to_string(k));
            verts.push_back(id);
            arrows.push_back({id, name, id});
            out.blossom_vertices.insert(id);
            out.blossom_arrows.insert(id);
            outs.push_back(id);
        }
        // Relations at a complete vertex form a perfect matching between incoming and outgoing arrows.
        auto consistent = [&](bool crossed) {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    int a = q.arrow_index(ins[i]), b = q.arrow_index(outs[j]);
                    if (a < 0 || b < 0) continue;
                    bool want = crossed ? (i != j) : (i == j);
                    if (q.is_relation(a, b) != want) return false;
                }
            return true;
        };
        bool crossed;
        if (consistent(false)) crossed = false;
        else if (consistent(true)) crossed = true;
        else
            throw QuiverError(ErrorKind::GentleBranchViolation,
                              "cannot complete relations at vertex '" + name + "'");
        for (int i = 0; i < 2; ++i) rels.insert({ins[i], outs[crossed ? 1 - i : i]});
    }
    out.full = BoundQuiver(std::move(verts), std::move(arrows), std::move(rels));
    return out;
}

BoundQuiver prune(const BoundQuiver& c) {
    for (int v = 0; v < c.num_vertices(); ++v)
        if (c.degree(v) != 1 && c.degree(v) != 4)
            throw QuiverError(ErrorKind::NotComplete,
                              "vertex '" + c.vertices()[v] + "' has degree " + std::to_string(c.degree(v)));
    std::vector<std::string> verts;
    std::set<std::string> keep;
    for (int v = 0; v < c.num_vertices(); ++v)
        if (c.degree(v) != 1) {
            verts.push_back(c.vertices()[v]);
            keep.insert(c.vertices()[v]);
        }
    std::vector<Arrow> arrows;
    std::set<std::string> kept_arrows;
    for (const Arrow& a : c.arrows())
        if (keep.count(a.src) && keep.count(a.tgt)) {
            arrows.push_back(a);
            kept_arrows.insert(a.id);
        }
    std::set<std::pair<std::string, std::string>> rels;
    for (const auto& r : c.relations())
        if (kept_arrows.count(r.first) && kept_arrows.count(r.second)) rels.insert(r);
    return BoundQuiver(std::move(verts), std::move(arrows), std::move(rels));
}

BoundQuiver koszul_dual(const BoundQuiver& q) {
    std::vector<Arrow> arrows;
    for (const Arrow& a : q.arrows()) arrows.push_back({a.id, a.tgt, a.src});
    std::set<std::pair<std::string, std::string>> rels;
    for (int a = 0; a < q.num_arrows(); ++a)
        for (int b : q.out_arrows(q.tgt(a)))
            if (!q.is_relation(a, b)) rels.insert({q.arrows()[b].id, q.arrows()[a].id});
    return BoundQuiver(q.vertices(), std::move(arrows), std::move(rels));
}

namespace {

// Typed neighbours of an arrow; each slot is unique in a locally gentle quiver.
std::array<int, 6> arrow_neighbours(const BoundQuiver& q, int a) {
    std::array<int, 6> nb;
    nb.fill(-1);
    for (int b : q.out_arrows(q.tgt(a))) nb[q.is_relation(a, b) ? 1 : 0] = b;
    for (int b : q.in_arrows(q.src(a))) nb[q.is_relation(b, a) ? 3 : 2] = b;
    for (int b : q.out_arrows(q.src(a)))
        if (b != a) nb[4] = b;
    for (int b : q.in_arrows(q.tgt(a)))
        if (b != a) nb[5] = b;
    return nb;
}

std::string component_code(const BoundQuiver& q, int root) {
    std::vector<int> alabel(q.num_arrows(), -1), vlabel(q.num_vertices(), -1), order;
    std::deque<int> queue{root};
    alabel[root] = 0;
    int na = 1, nv = 0;
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        order.push_back(a);
        if (vlabel[q.src(a)] < 0) vlabel[q.src(a)] = nv++;
        if (vlabel[q.tgt(a)] < 0) vlabel[q.tgt(a)] = nv++;
        for (int b : arrow_neighbours(q, a))
            if (b >= 0 && alabel[b] < 0) {
                alabel[b] = na++;
                queue.push_back(b);
            }
    }
    std::ostringstream os;
    for (int a : order) {
        os << vlabel[q.src(a)] << ',' << vlabel[q.tgt(a)];
        for (int b : arrow_neighbours(q, a)) os << ',' << (b < 0 ? -1 : alabel[b]);
        os << ';';
    }
    return os.str();
}

}  // namespace

std::string canonical_form(const BoundQuiver& q) {
    std::vector<int> comp(q.num_arrows());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int a = 0; a < q.num_arrows(); ++a)
        for (int b : arrow_neighbours(q, a))
            if (b >= 0) comp[find(a)] = find(b);
    std::map<int, std::string> best;
    for (int a = 0; a < q.num_arrows(); ++a) {
        std::string code = component_code(q, a);
        auto it = best.find(find(a));
        if (it == best.end() || code < it->second) best[find(a)] = code;
    }
    std::vector<std::string> codes;
    for (auto& [_, c] : best) codes.push_back(c);
    std::sort(codes.begin(), codes.end());
    int isolated = 0;
    for (int v = 0; v < q.num_vertices(); ++v)
        if (q.degree(v) == 0) ++isolated;
    std::string out = "isolated:" + std::to_string(isolated);
    for (auto& c : codes) out += "|" + c;
    return out;
}

bool isomorphic(const BoundQuiver& a, const BoundQuiver& b) {
    return a.num_vertices() == b.num_vertices() && a.num_arrows() == b.num_arrows() &&
           a.relations().size() == b.relations().size() && canonical_form(a) == canonical_form(b);
}

namespace {
int count_cycles(const BoundQuiver& q, bool follow_relations) {
    std::vector<int> next(q.num_arrows(), -1);
    for (int a = 0; a < q.num_arrows(); ++a)
        for (int b : q.out_arrows(q.tgt(a)))
            if (q.is_relation(a, b) == follow_relations) next[a] = b;
    std::vector<int> state(q.num_arrows(), 0);
    int cycles = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (state[a]) continue;
        std::vector<int> path;
        int x = a;
        while (x >= 0 && state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = next[x];
        }
        if (x >= 0 && state[x] == 1) ++cycles;
        for (int y : path) state[y] = 2;
    }
    return cycles;
}
}  // namespace

int count_primitive_cycles(const BoundQuiver& q) { return count_cycles(q, false); }
int count_relation_cycles(const BoundQuiver& q) { return count_cycles(q, true); }

}  // namespace nkc
