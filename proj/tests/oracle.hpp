#pragma once
// Brute-force references used to cross-check the library. They only read the raw
// blossoming quiver and walk letter lists, never the letter graph of WalkSpace.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nkc/quiver.hpp"
#include "nkc/walks.hpp"

namespace oracle {

struct SignedArrow {
    int arrow;
    int sign;
    bool operator==(const SignedArrow&) const = default;
};

inline int start_of(const nkc::BoundQuiver& f, SignedArrow x) { return x.sign > 0 ? f.src(x.arrow) : f.tgt(x.arrow); }
inline int end_of(const nkc::BoundQuiver& f, SignedArrow x) { return x.sign > 0 ? f.tgt(x.arrow) : f.src(x.arrow); }

inline bool allowed(const nkc::BoundQuiver& f, SignedArrow x, SignedArrow y) {
    if (end_of(f, x) != start_of(f, y)) return false;
    if (x.arrow == y.arrow && x.sign != y.sign) return false;
    if (x.sign > 0 && y.sign > 0 && f.is_relation(x.arrow, y.arrow)) return false;
    if (x.sign < 0 && y.sign < 0 && f.is_relation(y.arrow, x.arrow)) return false;
    return true;
}

inline std::string text(const nkc::BoundQuiver& f, const std::vector<SignedArrow>& w) {
    std::string s;
    for (auto x : w) s += (s.empty() ? "" : " ") + f.arrows()[x.arrow].id + (x.sign > 0 ? "+" : "-");
    return s;
}

inline std::vector<SignedArrow> inverse_word(std::vector<SignedArrow> w) {
    std::reverse(w.begin(), w.end());
    for (auto& x : w) x.sign = -x.sign;
    return w;
}

// All finite walks with at most max_len letters, as the smaller of the two reading directions.
inline std::set<std::string> finite_walks(const nkc::BoundQuiver& f, int max_len) {
    std::set<std::string> out;
    std::vector<SignedArrow> word;
    auto leaf = [&](int v) { return f.degree(v) == 1; };
    auto rec = [&](auto&& self) -> void {
        if (!word.empty() && leaf(end_of(f, word.back()))) {
            std::string a = text(f, word), b = text(f, inverse_word(word));
            out.insert(std::min(a, b));
            return;
        }
        if (static_cast<int>(word.size()) >= max_len) return;
        for (int a = 0; a < f.num_arrows(); ++a)
            for (int s : {1, -1}) {
                SignedArrow y{a, s};
                if (word.empty() ? !leaf(start_of(f, y)) : !allowed(f, word.back(), y)) continue;
                word.push_back(y);
                self(self);
                word.pop_back();
            }
    };
    rec(rec);
    return out;
}

inline std::vector<SignedArrow> letters(const std::vector<nkc::Letter>& v) {
    std::vector<SignedArrow> out;
    for (auto l : v) out.push_back({nkc::arrow_of(l), nkc::sign_of(l)});
    return out;
}

// Tails repeated `copies` times around the body.
inline std::vector<SignedArrow> unrolled(const nkc::Walk& w, int copies) {
    std::vector<SignedArrow> out;
    for (int k = 0; k < copies && w.left_infinite(); ++k) {
        auto t = letters(w.ltail);
        out.insert(out.end(), t.begin(), t.end());
    }
    auto b = letters(w.body);
    out.insert(out.end(), b.begin(), b.end());
    for (int k = 0; k < copies && w.right_infinite(); ++k) {
        auto t = letters(w.rtail);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

// Count pairs (top substring of x, bottom substring of y) that coincide as undirected strings,
// straight from the definitions: every pair of positions is examined.
inline std::int64_t kisses(const nkc::BoundQuiver& f, const std::vector<SignedArrow>& x,
                           const std::vector<SignedArrow>& y) {
    const int n = static_cast<int>(x.size()), m = static_cast<int>(y.size());
    std::int64_t count = 0;
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (x[i - 1].sign != -1 || x[j].sign != 1) continue;
            std::vector<SignedArrow> sx(x.begin() + i, x.begin() + j);
            for (int k = 1; k < m; ++k) {
                int l = k + (j - i);
                if (l >= m) break;
                if (y[k - 1].sign != 1 || y[l].sign != -1) continue;
                std::vector<SignedArrow> sy(y.begin() + k, y.begin() + l);
                bool same;
                if (sx.empty()) same = end_of(f, x[i - 1]) == end_of(f, y[k - 1]);
                else same = sx == sy || sx == inverse_word(sy);
                if (same) ++count;
            }
        }
    return count;
}

// Compatibility straight from the kiss definition on windows with three tail periods.
inline bool compatible(const nkc::BoundQuiver& f, const nkc::Walk& a, const nkc::Walk& b) {
    auto x = unrolled(a, 3), y = unrolled(b, 3);
    return kisses(f, x, y) == 0 && kisses(f, y, x) == 0;
}

// Bron-Kerbosch over the compatibility graph of non-self-kissing walks.
inline std::set<std::set<std::string>> facets(const nkc::WalkSpace& ws, const std::vector<nkc::Walk>& universe) {
    std::vector<nkc::Walk> walks;
    for (const nkc::Walk& w : universe)
        if (compatible(ws.full(), w, w)) walks.push_back(w);
    const int n = static_cast<int>(walks.size());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = compatible(ws.full(), walks[i], walks[j]);

    std::set<std::set<std::string>> out;
    auto rec = [&](auto&& self, std::vector<int> r, std::vector<int> p, std::vector<int> x) -> void {
        if (p.empty() && x.empty()) {
            std::set<std::string> keys;
            for (int i : r) keys.insert(walks[i].key);
            out.insert(keys);
            return;
        }
        while (!p.empty()) {
            int v = p.back();
            p.pop_back();
            std::vector<int> r2 = r, p2, x2;
            r2.push_back(v);
            for (int u : p)
                if (adj[v][u]) p2.push_back(u);
            for (int u : x)
                if (adj[v][u]) x2.push_back(u);
            self(self, r2, p2, x2);
            x.push_back(v);
        }
    };
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    rec(rec, {}, all, {});
    return out;
}

}  // namespace oracle
