#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkc/quiver.hpp"

namespace nkc {

// A letter is an arrow of the blossoming quiver with a sign: 2*arrow for a, 2*arrow+1 for a^-1.
using Letter = int;
inline int arrow_of(Letter l) { return l >> 1; }
inline int sign_of(Letter l) { return (l & 1) ? -1 : 1; }
inline Letter inverse(Letter l) { return l ^ 1; }
inline Letter make_letter(int arrow, int sign) { return 2 * arrow + (sign < 0 ? 1 : 0); }

enum class WalkErrorKind { Parse, NotComposable, NotReduced, RelationHit, NotMaximal, BadTail };

class WalkError : public std::runtime_error {
public:
    WalkError(WalkErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    WalkErrorKind kind() const { return kind_; }

private:
    WalkErrorKind kind_;
};

// Letter graph of the blossoming quiver of a locally gentle quiver.
class WalkSpace {
public:
    explicit WalkSpace(const BoundQuiver& q);

    const BlossomQuiver& blossoming() const { return bq_; }
    const BoundQuiver& base() const { return bq_.base; }
    const BoundQuiver& full() const { return bq_.full; }

    int num_letters() const { return 2 * full().num_arrows(); }
    int tail(Letter l) const;  // vertex of the blossoming quiver where the letter starts
    int head(Letter l) const;
    bool is_leaf(int v) const { return leaf_[v]; }
    // index in the base quiver, -1 for blossom vertices
    int base_vertex(int v) const { return base_of_[v]; }
    int full_vertex_of_base(int a) const { return full_of_base_[a]; }

    // The two continuations at an internal vertex: keep the orientation, or turn around.
    Letter straight(Letter l) const { return straight_[l]; }
    Letter turn(Letter l) const { return turn_[l]; }
    Letter straight_pred(Letter l) const;

    // Length of the straight cycle through l, 0 if the straight continuation reaches a leaf.
    int cycle_length(Letter l) const { return cycle_len_[l]; }
    std::vector<Letter> straight_cycle(Letter l) const;

    bool composable(Letter x, Letter y) const { return head(x) == tail(y); }
    bool valid_step(Letter x, Letter y) const;
    void check_step(Letter x, Letter y) const;  // throws WalkError

    std::string arrow_name(Letter l) const { return full().arrows()[arrow_of(l)].id; }
    std::string letter_name(Letter l) const { return arrow_name(l) + (sign_of(l) > 0 ? "+" : "-"); }
    // Letter order used for canonical phases: arrow id, then sign (+ first).
    bool letter_less(Letter a, Letter b) const;
    Letter parse_letter(const std::string& tok) const;

    std::vector<Letter> start_letters() const;  // letters leaving a blossom vertex

private:
    BlossomQuiver bq_;
    std::vector<char> leaf_;
    std::vector<int> base_of_, full_of_base_;
    std::vector<Letter> straight_, turn_, cycle_len_;
};

// word = ...ltail ltail body rtail rtail...; an empty tail means the end reaches a blossom vertex.
struct Walk {
    std::vector<Letter> ltail, body, rtail;
    std::string key;  // canonical serialization, set by canonicalize

    bool left_infinite() const { return !ltail.empty(); }
    bool right_infinite() const { return !rtail.empty(); }
    bool infinite() const { return left_infinite() || right_infinite(); }
    bool operator==(const Walk& o) const { return key == o.key; }
    bool operator<(const Walk& o) const { return key < o.key; }
};

// Positional access to a walk, possibly reversed; positions in tails extend past the body.
class WalkView {
public:
    WalkView(const Walk& w, bool reversed = false) : w_(&w), rev_(reversed) {}
    long body_size() const { return static_cast<long>(w_->body.size()); }
    bool left_infinite() const { return rev_ ? w_->right_infinite() : w_->left_infinite(); }
    bool right_infinite() const { return rev_ ? w_->left_infinite() : w_->right_infinite(); }
    bool has(long k) const { return (k >= 0 || left_infinite()) && (k < body_size() || right_infinite()); }
    Letter at(long k) const;
    long left_period() const;
    long right_period() const;
    bool reversed() const { return rev_; }
    const Walk& walk() const { return *w_; }

private:
    Letter raw(long k) const;
    const Walk* w_;
    bool rev_;
};

Walk reversed(const Walk& w);
// Validates and returns the canonical representative of the undirected walk.
Walk canonicalize(const WalkSpace& ws, Walk raw);
std::string serialize(const WalkSpace& ws, const Walk& w);
Walk parse_walk(const WalkSpace& ws, const std::string& text);

bool is_straight(const WalkSpace& ws, const Walk& w);
bool is_infinite_straight(const WalkSpace& ws, const Walk& w);
bool is_bending(const WalkSpace& ws, const Walk& w);

// Corners in the body and at tail junctions (tails are straight).
struct Corner {
    long pos;    // vertex position between letters pos-1 and pos
    int vertex;  // base vertex index
    bool peak;
};
std::vector<Corner> corners(const WalkSpace& ws, const Walk& w);

Walk peak_walk(const WalkSpace& ws, int base_vertex);
Walk deep_walk(const WalkSpace& ws, int base_vertex);
std::vector<Walk> straight_walks(const WalkSpace& ws);  // finite and infinite

struct WalkEnumeration {
    std::vector<Walk> walks;  // sorted by key
    bool complete = true;
};

// All walks whose tail-minimal body has at most body_bound letters.
WalkEnumeration enumerate_walks(const WalkSpace& ws, int body_bound);
// Only walks that do not kiss themselves; prefixes that already self-kiss are pruned.
WalkEnumeration enumerate_nonkissing_walks(const WalkSpace& ws, int body_bound);

struct KissCount {
    bool infinite = false;
    std::int64_t value = 0;
    bool operator==(const KissCount&) const = default;
};

int default_unroll(const Walk& a, const Walk& b);
// Number of kisses of a top substring of a with a bottom substring of b inside the unrolled window.
std::int64_t kiss_count_window(const WalkSpace& ws, const Walk& a, const Walk& b, int unroll);
// kn(a,b): window count at the default unroll; reported infinite if it grows at unroll+2.
KissCount kiss_count(const WalkSpace& ws, const Walk& a, const Walk& b, int unroll = 0);
KissCount kissing_number(const WalkSpace& ws, const Walk& a, const Walk& b);  // kn(a,b)+kn(b,a)
bool kisses(const WalkSpace& ws, const Walk& a, const Walk& b);
bool compatible(const WalkSpace& ws, const Walk& a, const Walk& b);  // neither kisses the other
bool self_kissing(const WalkSpace& ws, const Walk& a);

class IncompleteUniverse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

KissCount total_kissing_number(const WalkSpace& ws, const Walk& w, const WalkEnumeration& universe);

}  // namespace nkc
