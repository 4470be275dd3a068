#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nkc {

enum class ErrorKind {
    Parse,
    UnknownId,
    DuplicateId,
    DegreeViolation,
    NonComposableRelation,
    GentleBranchViolation,
    NotComplete,
};

class QuiverError : public std::runtime_error {
public:
    QuiverError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

const char* error_name(ErrorKind k);

struct Arrow {
    std::string id;
    std::string src;
    std::string tgt;
    bool operator==(const Arrow&) const = default;
};

// Vertices and arrows are kept sorted by id; indices below refer to that order.
class BoundQuiver {
public:
    BoundQuiver() = default;
    BoundQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                std::set<std::pair<std::string, std::string>> relations);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::set<std::pair<std::string, std::string>>& relations() const { return relations_; }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }

    int vertex_index(const std::string& v) const;  // -1 if absent
    int arrow_index(const std::string& a) const;
    int src(int a) const { return src_[a]; }
    int tgt(int a) const { return tgt_[a]; }
    bool is_relation(int a, int b) const;

    const std::vector<int>& in_arrows(int v) const { return in_[v]; }
    const std::vector<int>& out_arrows(int v) const { return out_[v]; }
    int degree(int v) const { return static_cast<int>(in_[v].size() + out_[v].size()); }

    bool operator==(const BoundQuiver& o) const {
        return vertices_ == o.vertices_ && arrows_ == o.arrows_ && relations_ == o.relations_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::set<std::pair<std::string, std::string>> relations_;
    std::map<std::string, int> vidx_, aidx_;
    std::vector<int> src_, tgt_;
    std::vector<std::vector<int>> in_, out_;
    std::set<std::pair<int, int>> rel_idx_;
};

// Throws QuiverError naming the offending vertex or arrow.
BoundQuiver validate_locally_gentle(const BoundQuiver& q);

struct BlossomQuiver {
    BoundQuiver base;
    BoundQuiver full;
    std::set<std::string> blossom_vertices;
    std::set<std::string> blossom_arrows;
};

BlossomQuiver blossom(const BoundQuiver& q);
BoundQuiver prune(const BoundQuiver& complete);
BoundQuiver koszul_dual(const BoundQuiver& q);

bool is_complete(const BoundQuiver& q);

// Complete invariant up to renaming of vertices and arrows (relations preserved).
std::string canonical_form(const BoundQuiver& q);
bool isomorphic(const BoundQuiver& a, const BoundQuiver& b);

// Straight cycles: maximal relation-free oriented cycles of q (infinite straight walks).
int count_primitive_cycles(const BoundQuiver& q);
// Cycles all of whose consecutive compositions are relations (infinite straight walks of the dual).
int count_relation_cycles(const BoundQuiver& q);

}  // namespace nkc
