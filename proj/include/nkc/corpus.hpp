#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkc/quiver.hpp"

namespace nkc {

// Line on n vertices; orientation[i] is 'R' for i -> i+1 and 'L' for i+1 -> i. No relations.
BoundQuiver cambrian_path(const std::string& orientation);
// Two opposite arrows between consecutive vertices, both 2-cycles in the ideal.
BoundQuiver reversed_path(int n);
// Two parallel arrows between consecutive vertices, same-letter compositions in the ideal.
BoundQuiver double_path(int n);
// Oriented n-cycle without relations.
BoundQuiver cycle_quiver(int n);
// Two parallel arrows around an n-cycle, same-letter compositions in the ideal.
BoundQuiver double_cycle(int n);

struct CorpusEntry {
    std::string name;
    BoundQuiver quiver;
};

// The five families at small parameters.
std::vector<CorpusEntry> builtin_corpus();
// Named lookup, e.g. "cambrian:RLR", "reversed:3", "doublepath:4", "cycle:1", "doublecycle:2".
BoundQuiver corpus_quiver(const std::string& name);

BoundQuiver random_locally_gentle(int max_vertices, std::uint64_t seed);

}  // namespace nkc
