#include "nkc/walks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace nkc {

WalkSpace::WalkSpace(const BoundQuiver& q) : bq_(blossom(q)) {
    const BoundQuiver& f = bq_.full;
    const int nv = f.num_vertices(), na = f.num_arrows();
    leaf_.assign(nv, 0);
    base_of_.assign(nv, -1);
    full_of_base_.assign(bq_.base.num_vertices(), -1);
    for (int v = 0; v < nv; ++v) {
        leaf_[v] = f.degree(v) == 1;
        int b = bq_.base.vertex_index(f.vertices()[v]);
        if (b >= 0 && !bq_.blossom_vertices.count(f.vertices()[v])) {
            base_of_[v] = b;
            full_of_base_[b] = v;
        }
    }
    straight_.assign(2 * na, -1);
    turn_.assign(2 * na, -1);
    for (int a = 0; a < na; ++a) {
        int t = f.tgt(a), s = f.src(a);
        if (!leaf_[t]) {
            for (int b : f.out_arrows(t))
                if (!f.is_relation(a, b)) straight_[make_letter(a, 1)] = make_letter(b, 1);
            for (int g : f.in_arrows(t))
                if (g != a) turn_[make_letter(a, 1)] = make_letter(g, -1);
        }
        if (!leaf_[s]) {
            for (int b : f.in_arrows(s))
                if (!f.is_relation(b, a)) straight_[make_letter(a, -1)] = make_letter(b, -1);
            for (int d : f.out_arrows(s))
                if (d != a) turn_[make_letter(a, -1)] = make_letter(d, 1);
        }
    }
    cycle_len_.assign(2 * na, 0);
    for (Letter l = 0; l < 2 * na; ++l) {
        Letter x = straight_[l];
        for (int k = 1; x >= 0 && k <= 2 * na; ++k, x = straight_[x])
            if (x == l) {
                cycle_len_[l] = k;
                break;
            }
    }
}

int WalkSpace::tail(Letter l) const {
    return sign_of(l) > 0 ? full().src(arrow_of(l)) : full().tgt(arrow_of(l));
}

int WalkSpace::head(Letter l) const {
    return sign_of(l) > 0 ? full().tgt(arrow_of(l)) : full().src(arrow_of(l));
}

Letter WalkSpace::straight_pred(Letter l) const {
    Letter p = straight_[inverse(l)];
    return p < 0 ? -1 : inverse(p);
}

std::vector<Letter> WalkSpace::straight_cycle(Letter l) const {
    std::vector<Letter> c;
    if (cycle_len_[l] == 0) return c;
    Letter x = l;
    do {
        c.push_back(x);
        x = straight_[x];
    } while (x != l);
    return c;
}

bool WalkSpace::valid_step(Letter x, Letter y) const { return y >= 0 && (straight_[x] == y || turn_[x] == y); }

void WalkSpace::check_step(Letter x, Letter y) const {
    if (valid_step(x, y)) return;
    const std::string pair = letter_name(x) + " " + letter_name(y);
    if (!composable(x, y)) throw WalkError(WalkErrorKind::NotComposable, "letters do not compose: " + pair);
    if (y == inverse(x)) throw WalkError(WalkErrorKind::NotReduced, "factor is not reduced: " + pair);
    throw WalkError(WalkErrorKind::RelationHit, "factor lies in the ideal: " + pair);
}

// Arrows are sorted by id, so letter order is (arrow id, sign) with + first.
bool WalkSpace::letter_less(Letter a, Letter b) const { return a < b; }

Letter WalkSpace::parse_letter(const std::string& tok) const {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
        throw WalkError(WalkErrorKind::Parse, "bad letter '" + tok + "'");
    int a = full().arrow_index(tok.substr(0, tok.size() - 1));
    if (a < 0) throw WalkError(WalkErrorKind::Parse, "unknown arrow in '" + tok + "'");
    return make_letter(a, tok.back() == '+' ? 1 : -1);
}

std::vector<Letter> WalkSpace::start_letters() const {
    std::vector<Letter> out;
    for (Letter l = 0; l < num_letters(); ++l)
        if (leaf_[tail(l)]) out.push_back(l);
    return out;
}

// ---------------------------------------------------------------------------

Letter WalkView::raw(long k) const {
    const Walk& w = *w_;
    const long n = static_cast<long>(w.body.size());
    if (k < 0) {
        long p = static_cast<long>(w.ltail.size());
        return w.ltail[((k % p) + p) % p];
    }
    if (k >= n) return w.rtail[(k - n) % static_cast<long>(w.rtail.size())];
    return w.body[k];
}

Letter WalkView::at(long k) const { return rev_ ? inverse(raw(body_size() - 1 - k)) : raw(k); }

long WalkView::left_period() const { return static_cast<long>(rev_ ? w_->rtail.size() : w_->ltail.size()); }
long WalkView::right_period() const { return static_cast<long>(rev_ ? w_->ltail.size() : w_->rtail.size()); }

namespace {

std::vector<Letter> rev_inv(const std::vector<Letter>& v) {
    std::vector<Letter> r(v.rbegin(), v.rend());
    for (Letter& l : r) l = inverse(l);
    return r;
}

std::vector<Letter> rotate_left(const std::vector<Letter>& v, size_t s) {
    std::vector<Letter> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[(i + s) % v.size()];
    return r;
}

size_t min_rotation(const std::vector<Letter>& v) {
    size_t best = 0;
    for (size_t s = 1; s < v.size(); ++s)
        if (rotate_left(v, s) < rotate_left(v, best)) best = s;
    return best;
}

bool all_same_sign(const std::vector<Letter>& v, int sign) {
    return std::all_of(v.begin(), v.end(), [&](Letter l) { return sign_of(l) == sign; });
}

void validate(const WalkSpace& ws, const Walk& w) {
    for (const auto* t : {&w.ltail, &w.rtail}) {
        if (t->empty()) continue;
        if (!all_same_sign(*t, sign_of((*t)[0])))
            throw WalkError(WalkErrorKind::BadTail, "tail mixes orientations");
        for (size_t i = 0; i < t->size(); ++i)
            if (ws.straight((*t)[i]) != (*t)[(i + 1) % t->size()])
                throw WalkError(WalkErrorKind::BadTail, "tail is not an oriented relation-free cycle");
        if (ws.cycle_length((*t)[0]) != static_cast<int>(t->size()))
            throw WalkError(WalkErrorKind::BadTail, "tail is not primitive");
    }
    std::vector<Letter> seq = w.ltail;
    seq.insert(seq.end(), w.body.begin(), w.body.end());
    seq.insert(seq.end(), w.rtail.begin(), w.rtail.end());
    if (seq.empty()) throw WalkError(WalkErrorKind::Parse, "empty walk");
    for (size_t i = 0; i + 1 < seq.size(); ++i) ws.check_step(seq[i], seq[i + 1]);
    if (w.ltail.empty() && !ws.is_leaf(ws.tail(seq.front())))
        throw WalkError(WalkErrorKind::NotMaximal, "walk can be extended before " + ws.letter_name(seq.front()));
    if (w.rtail.empty() && !ws.is_leaf(ws.head(seq.back())))
        throw WalkError(WalkErrorKind::NotMaximal, "walk can be extended after " + ws.letter_name(seq.back()));
}

bool straight_word(const Walk& w) {
    std::vector<Letter> seq = w.ltail;
    seq.insert(seq.end(), w.body.begin(), w.body.end());
    seq.insert(seq.end(), w.rtail.begin(), w.rtail.end());
    return all_same_sign(seq, sign_of(seq[0]));
}

// Tails absorbed as far as possible, then rotated to their least phase.
Walk natural_form(Walk w) {
    if (w.left_infinite() && w.right_infinite() && straight_word(w)) {
        std::vector<Letter> c = rotate_left(w.ltail, min_rotation(w.ltail));
        return Walk{c, c, c, {}};
    }
    if (w.left_infinite())
        while (!w.body.empty() && w.body.front() == w.ltail.front()) {
            w.ltail = rotate_left(w.ltail, 1);
            w.body.erase(w.body.begin());
        }
    if (w.right_infinite())
        while (!w.body.empty() && w.body.back() == w.rtail.back()) {
            w.rtail = rotate_left(w.rtail, w.rtail.size() - 1);
            w.body.pop_back();
        }
    if (w.left_infinite()) {
        size_t s = min_rotation(w.ltail);
        if (s > 0) w.body.insert(w.body.begin(), w.ltail.begin() + static_cast<long>(s), w.ltail.end());
        w.ltail = rotate_left(w.ltail, s);
    }
    if (w.right_infinite()) {
        size_t s = min_rotation(w.rtail);
        w.body.insert(w.body.end(), w.rtail.begin(), w.rtail.begin() + static_cast<long>(s));
        w.rtail = rotate_left(w.rtail, s);
    }
    if (w.body.empty()) w.body = w.rtail;
    return w;
}

}  // namespace

Walk reversed(const Walk& w) { return Walk{rev_inv(w.rtail), rev_inv(w.body), rev_inv(w.ltail), {}}; }

Walk canonicalize(const WalkSpace& ws, Walk raw) {
    validate(ws, raw);
    Walk a = natural_form(raw);
    Walk b = natural_form(reversed(raw));
    a.key = serialize(ws, a);
    b.key = serialize(ws, b);
    return b.key < a.key ? b : a;
}

std::string serialize(const WalkSpace& ws, const Walk& w) {
    std::string out;
    auto tail = [&](const std::vector<Letter>& t) {
        std::string s = "(";
        for (size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + ws.letter_name(t[i]);
        return s + ")";
    };
    if (w.left_infinite()) out += tail(w.ltail) + " |";
    for (Letter l : w.body) out += (out.empty() ? "" : " ") + ws.letter_name(l);
    if (w.right_infinite()) out += " | " + tail(w.rtail);
    return out;
}

Walk parse_walk(const WalkSpace& ws, const std::string& text) {
    std::string spaced;
    for (char ch : text) {
        if (ch == '(' || ch == ')' || ch == '|') {
            spaced += ' ';
            spaced += ch;
            spaced += ' ';
        } else {
            spaced += ch;
        }
    }
    std::istringstream is(spaced);
    std::vector<std::string> tok;
    for (std::string t; is >> t;) tok.push_back(t);
    size_t i = 0;
    auto read_tail = [&]() {
        std::vector<std::string> ids;
        if (i >= tok.size() || tok[i] != "(") throw WalkError(WalkErrorKind::Parse, "expected '('");
        for (++i; i < tok.size() && tok[i] != ")"; ++i) ids.push_back(tok[i]);
        if (i >= tok.size() || ids.empty()) throw WalkError(WalkErrorKind::Parse, "unterminated or empty tail");
        ++i;
        return ids;
    };
    std::vector<std::string> lids, rids;
    std::vector<Letter> body;
    if (i < tok.size() && tok[i] == "(") {
        lids = read_tail();
        if (i >= tok.size() || tok[i] != "|") throw WalkError(WalkErrorKind::Parse, "expected '|' after tail");
        ++i;
    }
    for (; i < tok.size() && tok[i] != "|"; ++i) body.push_back(ws.parse_letter(tok[i]));
    if (body.empty()) throw WalkError(WalkErrorKind::Parse, "walk needs at least one letter");
    if (i < tok.size()) {
        ++i;
        rids = read_tail();
    }
    if (i != tok.size()) throw WalkError(WalkErrorKind::Parse, "trailing tokens");

    // A tail token is either a signed letter or a bare arrow id whose sign is inferred.
    auto tail_options = [&](const std::vector<std::string>& ids) {
        std::vector<std::vector<Letter>> opts;
        if (ids.empty()) return std::vector<std::vector<Letter>>{{}};
        bool signed_tokens = std::all_of(ids.begin(), ids.end(), [&](const std::string& id) {
            return ws.full().arrow_index(id) < 0 && !id.empty() && (id.back() == '+' || id.back() == '-');
        });
        if (signed_tokens) {
            std::vector<Letter> t;
            for (const auto& id : ids) t.push_back(ws.parse_letter(id));
            opts.push_back(t);
            return opts;
        }
        for (int sign : {1, -1}) {
            std::vector<Letter> t;
            for (const auto& id : ids) t.push_back(ws.parse_letter(id + (sign > 0 ? "+" : "-")));
            opts.push_back(t);
        }
        return opts;
    };
    std::string last_error = "no orientation of the tails fits";
    WalkErrorKind last_kind = WalkErrorKind::BadTail;
    std::vector<Walk> fits;
    for (const auto& lt : tail_options(lids))
        for (const auto& rt : tail_options(rids)) {
            try {
                fits.push_back(canonicalize(ws, Walk{lt, body, rt, {}}));
            } catch (const WalkError& e) {
                last_error = e.what();
                last_kind = e.kind();
            }
        }
    if (fits.size() == 1) return fits[0];
    if (fits.size() > 1) throw WalkError(WalkErrorKind::Parse, "tail orientation is ambiguous; write signed tail letters");
    throw WalkError(last_kind, last_error);
}

bool is_straight(const WalkSpace&, const Walk& w) { return straight_word(w); }

bool is_infinite_straight(const WalkSpace& ws, const Walk& w) {
    return w.left_infinite() && w.right_infinite() && is_straight(ws, w);
}

bool is_bending(const WalkSpace& ws, const Walk& w) { return !is_straight(ws, w); }

std::vector<Corner> corners(const WalkSpace& ws, const Walk& w) {
    std::vector<Corner> out;
    WalkView v(w);
    for (long k = 0; k <= v.body_size(); ++k) {
        if (!v.has(k - 1) || !v.has(k)) continue;
        Letter x = v.at(k - 1), y = v.at(k);
        if (sign_of(x) == sign_of(y)) continue;
        out.push_back({k, ws.base_vertex(ws.head(x)), sign_of(x) < 0});
    }
    return out;
}

namespace {

struct Half {
    std::vector<Letter> path;  // ends at a leaf
    std::vector<Letter> cycle;  // or is a straight cycle starting at the first letter
};

Half straight_from(const WalkSpace& ws, Letter l) {
    if (ws.cycle_length(l) > 0) return {{}, ws.straight_cycle(l)};
    Half h;
    for (Letter x = l; x >= 0; x = ws.straight(x)) h.path.push_back(x);
    return h;
}

Walk corner_walk(const WalkSpace& ws, Letter first, Letter second) {
    Half a = straight_from(ws, first), b = straight_from(ws, second);
    Walk w;
    if (!a.cycle.empty()) w.ltail = rev_inv(a.cycle);
    else w.body = rev_inv(a.path);
    if (!b.cycle.empty()) w.rtail = b.cycle;
    else w.body.insert(w.body.end(), b.path.begin(), b.path.end());
    return canonicalize(ws, w);
}

}  // namespace

Walk peak_walk(const WalkSpace& ws, int a) {
    const auto& outs = ws.full().out_arrows(ws.full_vertex_of_base(a));
    return corner_walk(ws, make_letter(outs[0], 1), make_letter(outs[1], 1));
}

Walk deep_walk(const WalkSpace& ws, int a) {
    const auto& ins = ws.full().in_arrows(ws.full_vertex_of_base(a));
    return corner_walk(ws, make_letter(ins[0], -1), make_letter(ins[1], -1));
}

std::vector<Walk> straight_walks(const WalkSpace& ws) {
    std::map<std::string, Walk> found;
    for (Letter s : ws.start_letters()) {
        Half h = straight_from(ws, s);
        Walk w = canonicalize(ws, Walk{{}, h.path, {}, {}});
        found.emplace(w.key, w);
    }
    for (Letter l = 0; l < ws.num_letters(); l += 2)
        if (ws.cycle_length(l) > 0) {
            std::vector<Letter> c = ws.straight_cycle(l);
            Walk w = canonicalize(ws, Walk{c, c, c, {}});
            found.emplace(w.key, w);
        }
    std::vector<Walk> out;
    for (auto& [_, w] : found) out.push_back(w);
    return out;
}

// ---------------------------------------------------------------------------
// Kissing

namespace {

// Kisses of a top substring of A with a bottom substring of B, flanks inside both words.
std::int64_t count_aligned(const WalkSpace& ws, const std::vector<Letter>& A, const std::vector<Letter>& B,
                           bool with_vertices) {
    const long na = static_cast<long>(A.size()), nb = static_cast<long>(B.size());
    std::int64_t count = 0;
    for (long d = -na; d <= nb; ++d)
        for (long i = std::max(1L, 1 - d); i < na && i + d < nb; ++i) {
            if (sign_of(A[i - 1]) > 0 || sign_of(B[i - 1 + d]) < 0) continue;
            long j = i;
            while (j < na && j + d < nb && A[j] == B[j + d]) ++j;
            if (j >= na || j + d >= nb) continue;
            if (sign_of(A[j]) < 0 || sign_of(B[j + d]) > 0) continue;
            if (j == i && (!with_vertices || ws.head(A[i - 1]) != ws.head(B[i - 1 + d]))) continue;
            ++count;
        }
    return count;
}

std::vector<Letter> window(const Walk& w, int unroll) {
    std::vector<Letter> out;
    for (int k = 0; k < unroll && w.left_infinite(); ++k) out.insert(out.end(), w.ltail.begin(), w.ltail.end());
    out.insert(out.end(), w.body.begin(), w.body.end());
    for (int k = 0; k < unroll && w.right_infinite(); ++k) out.insert(out.end(), w.rtail.begin(), w.rtail.end());
    return out;
}

std::int64_t count_words(const WalkSpace& ws, const std::vector<Letter>& A, const std::vector<Letter>& B) {
    // A vertex kiss is seen in both orientations of B; count it once.
    return count_aligned(ws, A, B, true) + count_aligned(ws, A, rev_inv(B), false);
}

}  // namespace

int default_unroll(const Walk& a, const Walk& b) {
    long lcm = 1;
    std::vector<long> periods;
    for (const Walk* w : {&a, &b})
        for (const auto* t : {&w->ltail, &w->rtail})
            if (!t->empty()) periods.push_back(static_cast<long>(t->size()));
    for (long p : periods) lcm = std::lcm(lcm, p);
    const long bodies = static_cast<long>(a.body.size() + b.body.size());
    long u = 2;
    for (long p : periods) u = std::max(u, (bodies + p - 1) / p + 2 * lcm / p);
    return static_cast<int>(u);
}

std::int64_t kiss_count_window(const WalkSpace& ws, const Walk& a, const Walk& b, int unroll) {
    return count_words(ws, window(a, unroll), window(b, unroll));
}

KissCount kiss_count(const WalkSpace& ws, const Walk& a, const Walk& b, int unroll) {
    int u = std::max(unroll, default_unroll(a, b));
    std::int64_t x = kiss_count_window(ws, a, b, u);
    if (!a.infinite() && !b.infinite()) return {false, x};
    std::int64_t y = kiss_count_window(ws, a, b, u + 2);
    return {x != y, x};
}

KissCount kissing_number(const WalkSpace& ws, const Walk& a, const Walk& b) {
    KissCount x = kiss_count(ws, a, b), y = kiss_count(ws, b, a);
    return {x.infinite || y.infinite, x.value + y.value};
}

bool kisses(const WalkSpace& ws, const Walk& a, const Walk& b) {
    KissCount k = kiss_count(ws, a, b);
    return k.infinite || k.value > 0;
}

bool compatible(const WalkSpace& ws, const Walk& a, const Walk& b) { return !kisses(ws, a, b) && !kisses(ws, b, a); }

bool self_kissing(const WalkSpace& ws, const Walk& a) { return kisses(ws, a, a); }

KissCount total_kissing_number(const WalkSpace& ws, const Walk& w, const WalkEnumeration& universe) {
    if (!universe.complete) throw IncompleteUniverse("walk enumeration was truncated");
    KissCount total;
    for (const Walk& x : universe.walks) {
        KissCount k = kissing_number(ws, w, x);
        total.infinite = total.infinite || k.infinite;
        total.value += k.value;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Enumerator {
    const WalkSpace& ws;
    int bound;
    bool nonkissing;
    std::map<std::string, Walk> found;
    bool complete = true;
    std::vector<Letter> ltail, body;

    void emit(std::vector<Letter> rtail) {
        Walk w = canonicalize(ws, Walk{ltail, body, std::move(rtail), {}});
        if (nonkissing && self_kissing(ws, w)) return;
        found.emplace(w.key, w);
    }

    bool ends_with_full_cycle() const {
        Letter y = body.back();
        size_t k = static_cast<size_t>(ws.cycle_length(y));
        if (k == 0 || body.size() < k) return false;
        for (size_t i = body.size() - k; i + 1 < body.size(); ++i)
            if (ws.straight(body[i]) != body[i + 1]) return false;
        return true;
    }

    bool prefix_self_kisses() const {
        std::vector<Letter> word;
        if (!ltail.empty())
            while (word.size() < body.size() + 2 * ltail.size()) word.insert(word.end(), ltail.begin(), ltail.end());
        word.insert(word.end(), body.begin(), body.end());
        return count_words(ws, word, word) > 0;
    }

    void dfs() {
        Letter y = body.empty() ? ltail.back() : body.back();
        if (ws.is_leaf(ws.head(y))) {
            emit({});
            return;
        }
        Letter t = ws.turn(y);
        if (ws.cycle_length(t) > 0) emit(ws.straight_cycle(t));
        if (nonkissing && !body.empty() && (ends_with_full_cycle() || prefix_self_kisses())) return;
        if (static_cast<int>(body.size()) >= bound) {
            complete = false;
            return;
        }
        // after a left tail the first body letter must leave the cycle
        std::vector<Letter> next{t};
        if (!body.empty()) next.insert(next.begin(), ws.straight(y));
        for (Letter z : next) {
            body.push_back(z);
            dfs();
            body.pop_back();
        }
    }

    WalkEnumeration run() {
        for (Letter s : ws.start_letters()) {
            ltail.clear();
            body = {s};
            dfs();
        }
        for (Letter x = 0; x < ws.num_letters(); ++x)
            if (ws.cycle_length(x) > 0) {
                ltail = ws.straight_cycle(ws.straight(x));
                body.clear();
                dfs();
            }
        for (const Walk& w : straight_walks(ws))
            if (is_infinite_straight(ws, w)) found.emplace(w.key, w);
        WalkEnumeration out;
        out.complete = complete;
        for (auto& [_, w] : found) out.walks.push_back(w);
        return out;
    }
};

}  // namespace

WalkEnumeration enumerate_walks(const WalkSpace& ws, int body_bound) {
    return Enumerator{ws, body_bound, false, {}, true, {}, {}}.run();
}

WalkEnumeration enumerate_nonkissing_walks(const WalkSpace& ws, int body_bound) {
    return Enumerator{ws, body_bound, true, {}, true, {}, {}}.run();
}

}  // namespace nkc
