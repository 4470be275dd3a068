#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nkc/json_io.hpp"
#include "nkc/walks.hpp"

namespace nkc {

enum class ComplexErrorKind { SameMarkedWalk, KissingPair, NotMember, NotBending, NotMaximalFacet };

class ComplexError : public std::runtime_error {
public:
    ComplexError(ComplexErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    ComplexErrorKind kind() const { return kind_; }

private:
    ComplexErrorKind kind_;
};

// An occurrence of an arrow in a walk; pos uses the walk's own reading direction, so positions
// below 0 or past the body address the tails.
struct MarkedWalk {
    const Walk* walk = nullptr;
    long pos = 0;
};

// m strictly below n in the countercurrent order at the arrow they are both marked at.
bool countercurrent_less(const WalkSpace& ws, const MarkedWalk& m, const MarkedWalk& n);

// Occurrences compared for F_alpha: body positions plus one tail period on each side.
std::vector<long> occurrences(const WalkSpace& ws, const Walk& w, int arrow);

struct Facet {
    std::vector<Walk> walks;  // sorted by key
    std::string key;

    static Facet of(std::vector<Walk> walks);
    int index_of(const Walk& w) const;  // -1 if absent
    bool contains(const Walk& w) const { return index_of(w) >= 0; }
};

std::optional<MarkedWalk> distinguished_walk(const WalkSpace& ws, const Facet& f, int arrow);
// Distinguished walk at every arrow of the blossoming quiver.
std::vector<std::optional<MarkedWalk>> distinguished_walks(const WalkSpace& ws, const Facet& f);
std::vector<int> distinguished_arrows(const WalkSpace& ws, const Facet& f, const Walk& w);

struct DistinguishedSubstring {
    long left = 0, right = 0;  // marked positions; the substring is strictly between them
    int left_arrow = -1, right_arrow = -1;
    bool top = false;
    std::vector<Letter> letters;
    std::vector<int> vertices;  // base vertices of the substring, left to right
};

DistinguishedSubstring distinguished_substring(const WalkSpace& ws, const Facet& f, const Walk& w);

struct FlipResult {
    Facet facet;
    Walk removed, added;
    bool increasing = false;
};

FlipResult flip(const WalkSpace& ws, const Facet& f, const Walk& w);

struct FlipEdge {
    int from = 0, to = 0;
    std::string removed, added;
    bool increasing = false;
};

struct FlipGraph {
    std::vector<Facet> facets;
    std::vector<FlipEdge> edges;
    bool closed = true;
    int find(const Facet& f) const;
};

Facet peak_facet(const WalkSpace& ws);
Facet deep_facet(const WalkSpace& ws);
FlipGraph enumerate_facets(const WalkSpace& ws, int max_facets);

// Maximal cliques of pairwise compatible non-self-kissing walks; throws IncompleteUniverse.
std::vector<Facet> brute_force_facets(const WalkSpace& ws, int body_bound);

// Each check returns a list of human readable violations (empty when all holds).
std::vector<std::string> verify_purity(const WalkSpace& ws, const FlipGraph& g);
std::vector<std::string> verify_thinness(const WalkSpace& ws, const FlipGraph& g);
std::vector<std::string> verify_census(const WalkSpace& ws, const FlipGraph& g);
std::vector<std::string> verify_countercurrent(const WalkSpace& ws, const FlipGraph& g);
std::vector<std::string> walks_through_cycles_check(const WalkSpace& ws, const FlipGraph& g);
std::vector<std::string> verify_facet_bound(const WalkSpace& ws, const FlipGraph& g);

std::vector<Walk> bending_walks(const WalkSpace& ws, const Facet& f);

std::string flip_graph_dot(const FlipGraph& g);
json flip_graph_json(const FlipGraph& g);

}  // namespace nkc
