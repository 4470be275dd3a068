#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nkc/complex.hpp"

namespace nkc {

using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<long long>;
using RatVector = std::vector<Rational>;

enum class GeometryErrorKind { NotClosed, IncompleteUniverse, InfiniteKissingNumber };

class GeometryError : public std::runtime_error {
public:
    GeometryError(GeometryErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    GeometryErrorKind kind() const { return kind_; }

private:
    GeometryErrorKind kind_;
};

IntVector g_vector(const WalkSpace& ws, const Walk& w);
IntVector c_vector(const WalkSpace& ws, const Facet& f, const Walk& w);

// Entries flagged infinite carry no meaningful value.
struct DVector {
    IntVector values;
    std::vector<char> infinite;
    bool finite() const;
};
DVector d_vector(const WalkSpace& ws, const Walk& w);

// Pairings <g_i, c_j> over the columns must form the identity matrix.
std::vector<std::string> dual_basis_check(const std::vector<IntVector>& g, const std::vector<IntVector>& c);
std::vector<std::string> dual_basis_check(const WalkSpace& ws, const Facet& f);
// g per coordinate across the facet, c and d per vector.
std::vector<std::string> sign_coherence_check(const WalkSpace& ws, const Facet& f);

// Exact linear algebra helpers.
Rational determinant(std::vector<RatVector> m);
int rank(std::vector<RatVector> m);
RatVector to_rational(const IntVector& v);

struct Fan {
    std::vector<std::vector<IntVector>> cones;  // ray generators per facet
    int walls = 0;
    std::vector<std::string> issues;
};

// Simplicial cones, wall separation for every flip, every wall in two cones, and a generic point in one cone.
Fan build_fan(const WalkSpace& ws, const FlipGraph& g);

struct Halfspace {
    std::string walk;
    IntVector normal;
    long long offset = 0;
    bool defining = false;
};

struct Polytope {
    std::vector<RatVector> vertices;  // indexed like the facets of the flip graph
    std::vector<Halfspace> halfspaces;
    std::vector<std::pair<int, int>> edges;  // vertex adjacency computed from the halfspaces
    int defining = 0;
    std::vector<std::string> issues;
};

Polytope build_associahedron(const WalkSpace& ws, const FlipGraph& g, const WalkEnumeration& universe);

json vectors_json(const WalkSpace& ws, const FlipGraph& g);
json fan_json(const Fan& fan);
json polytope_json(const Polytope& p);
std::string rational_string(const Rational& r);

}  // namespace nkc
