#include "nkc/corpus.hpp"

#include <algorithm>
#include <random>

namespace nkc {

namespace {
std::string vx(int i) { return std::to_string(i); }

std::vector<std::string> vertices(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(vx(i));
    return v;
}

BoundQuiver make(int n, std::vector<Arrow> arrows, std::set<std::pair<std::string, std::string>> rels) {
    return validate_locally_gentle(BoundQuiver(vertices(n), std::move(arrows), std::move(rels)));
}
}  // namespace

BoundQuiver cambrian_path(const std::string& orientation) {
    int n = static_cast<int>(orientation.size()) + 1;
    std::vector<Arrow> arrows;
    for (int i = 1; i < n; ++i) {
        char c = orientation[i - 1];
        if (c != 'R' && c != 'L') throw QuiverError(ErrorKind::Parse, "orientation must use R and L");
        std::string id = "a" + vx(i);
        arrows.push_back(c == 'R' ? Arrow{id, vx(i), vx(i + 1)} : Arrow{id, vx(i + 1), vx(i)});
    }
    return make(n, arrows, {});
}

BoundQuiver reversed_path(int n) {
    std::vector<Arrow> arrows;
    std::set<std::pair<std::string, std::string>> rels;
    for (int i = 1; i < n; ++i) {
        arrows.push_back({"a" + vx(i), vx(i), vx(i + 1)});
        arrows.push_back({"b" + vx(i), vx(i + 1), vx(i)});
        rels.insert({"a" + vx(i), "b" + vx(i)});
        rels.insert({"b" + vx(i), "a" + vx(i)});
    }
    return make(n, arrows, rels);
}

BoundQuiver double_path(int n) {
    std::vector<Arrow> arrows;
    std::set<std::pair<std::string, std::string>> rels;
    for (int i = 1; i < n; ++i) {
        arrows.push_back({"a" + vx(i), vx(i), vx(i + 1)});
        arrows.push_back({"b" + vx(i), vx(i), vx(i + 1)});
        if (i + 1 < n) {
            rels.insert({"a" + vx(i), "a" + vx(i + 1)});
            rels.insert({"b" + vx(i), "b" + vx(i + 1)});
        }
    }
    return make(n, arrows, rels);
}

BoundQuiver cycle_quiver(int n) {
    std::vector<Arrow> arrows;
    for (int i = 1; i <= n; ++i) arrows.push_back({"a" + vx(i), vx(i), vx(i % n + 1)});
    return make(n, arrows, {});
}

BoundQuiver double_cycle(int n) {
    std::vector<Arrow> arrows;
    std::set<std::pair<std::string, std::string>> rels;
    for (int i = 1; i <= n; ++i) {
        int j = i % n + 1;
        arrows.push_back({"a" + vx(i), vx(i), vx(j)});
        arrows.push_back({"b" + vx(i), vx(i), vx(j)});
        rels.insert({"a" + vx(i), "a" + vx(j)});
        rels.insert({"b" + vx(i), "b" + vx(j)});
    }
    return make(n, arrows, rels);
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    for (std::string o : {"R", "RR", "RL", "LR", "RRL", "RLR", "RRRR", "RLRL"})
        out.push_back({"cambrian:" + o, cambrian_path(o)});
    for (int n = 1; n <= 4; ++n) out.push_back({"reversed:" + vx(n), reversed_path(n)});
    for (int n = 1; n <= 5; ++n) out.push_back({"doublepath:" + vx(n), double_path(n)});
    for (int n = 1; n <= 5; ++n) out.push_back({"cycle:" + vx(n), cycle_quiver(n)});
    for (int n = 1; n <= 5; ++n) out.push_back({"doublecycle:" + vx(n), double_cycle(n)});
    return out;
}

BoundQuiver corpus_quiver(const std::string& name) {
    auto colon = name.find(':');
    if (colon == std::string::npos) throw QuiverError(ErrorKind::Parse, "corpus name needs family:parameter");
    std::string fam = name.substr(0, colon), arg = name.substr(colon + 1);
    if (fam == "cambrian") return cambrian_path(arg);
    int n = 0;
    try {
        n = std::stoi(arg);
    } catch (const std::exception&) {
        throw QuiverError(ErrorKind::Parse, "bad corpus parameter '" + arg + "'");
    }
    if (n < 1) throw QuiverError(ErrorKind::Parse, "corpus parameter must be positive");
    if (fam == "reversed") return reversed_path(n);
    if (fam == "doublepath") return double_path(n);
    if (fam == "cycle") return cycle_quiver(n);
    if (fam == "doublecycle") return double_cycle(n);
    throw QuiverError(ErrorKind::Parse, "unknown corpus family '" + fam + "'");
}

BoundQuiver random_locally_gentle(int max_vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    std::vector<Arrow> arrows;
    std::vector<int> indeg(n + 1, 0), outdeg(n + 1, 0);
    int attempts = std::uniform_int_distribution<int>(0, 3 * n)(rng);
    std::uniform_int_distribution<int> pick(1, n);
    for (int k = 0; k < attempts; ++k) {
        int s = pick(rng), t = pick(rng);
        if (outdeg[s] >= 2 || indeg[t] >= 2) continue;
        ++outdeg[s];
        ++indeg[t];
        arrows.push_back({"x" + vx(static_cast<int>(arrows.size()) + 1), vx(s), vx(t)});
    }
    BoundQuiver q(vertices(n), arrows, {});
    // Each arrow with two successors needs exactly one of them in the ideal; add relations greedily.
    std::set<std::pair<std::string, std::string>> rels;
    std::vector<int> order(q.num_arrows());
    for (int a = 0; a < q.num_arrows(); ++a) order[a] = a;
    std::shuffle(order.begin(), order.end(), rng);
    for (int a : order)
        for (int b : q.out_arrows(q.tgt(a))) {
            auto trial = rels;
            trial.insert({q.arrows()[a].id, q.arrows()[b].id});
            try {
                validate_locally_gentle(BoundQuiver(q.vertices(), q.arrows(), trial));
            } catch (const QuiverError&) {
                continue;
            }
            if (std::bernoulli_distribution(0.5)(rng)) rels = trial;
        }
    // Resolve remaining branch violations by adding the missing relation where possible.
    for (int round = 0; round < 4 * q.num_arrows() + 1; ++round) {
        try {
            return validate_locally_gentle(BoundQuiver(q.vertices(), q.arrows(), rels));
        } catch (const QuiverError&) {
        }
        bool changed = false;
        for (int a = 0; a < q.num_arrows() && !changed; ++a)
            for (int b : q.out_arrows(q.tgt(a))) {
                auto trial = rels;
                trial.insert({q.arrows()[a].id, q.arrows()[b].id});
                if (trial.size() == rels.size()) continue;
                // accept if it does not create a relation conflict at this arrow pair
                int rs = 0, rp = 0;
                for (int c : q.out_arrows(q.tgt(a))) rs += trial.count({q.arrows()[a].id, q.arrows()[c].id});
                for (int c : q.in_arrows(q.src(b))) rp += trial.count({q.arrows()[c].id, q.arrows()[b].id});
                if (rs <= 1 && rp <= 1) {
                    rels = trial;
                    changed = true;
                    break;
                }
            }
        if (!changed) break;
    }
    // Fall back to dropping arrows until valid.
    while (true) {
        try {
            return validate_locally_gentle(BoundQuiver(q.vertices(), q.arrows(), rels));
        } catch (const QuiverError&) {
        }
        auto arrs = q.arrows();
        std::string gone = arrs.back().id;
        arrs.pop_back();
        std::set<std::pair<std::string, std::string>> kept;
        for (auto& r : rels)
            if (r.first != gone && r.second != gone) kept.insert(r);
        rels = kept;
        q = BoundQuiver(q.vertices(), arrs, {});
    }
}

}  // namespace nkc
