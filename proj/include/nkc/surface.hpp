#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nkc/json_io.hpp"
#include "nkc/walks.hpp"

namespace nkc {

enum class SurfaceErrorKind {
    InconsistentEuler,
    NotCellular,
    NotDual,
    MissingDualPoint,
    MultipleDualPoints,
    NotReducedCrossing,
    DifferentSurface,
};

class SurfaceError : public std::runtime_error {
public:
    SurfaceError(SurfaceErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    SurfaceErrorKind kind() const { return kind_; }

private:
    SurfaceErrorKind kind_;
};

const char* surface_error_name(SurfaceErrorKind k);

// Mid is where edge(a) meets its dual edge, for a vertex a of the quiver; Blossom points sit on the boundary.
enum class PointKind { V, Vdual, Mid, Blossom };
enum class SideColor { Green, Red };  // green sides make up D, red sides make up the dual dissection

struct SurfacePoint {
    PointKind kind;
    std::string label;
    bool interior = false;
};

struct HalfEdge {
    int from = -1, to = -1;
    int face = -1;
    int twin = -1;  // -1 on the boundary
    SideColor color = SideColor::Green;
    std::string label;  // arrow of the lozenge the side was cut from
};

struct SurfaceModel {
    std::uint64_t id = 0;
    std::vector<SurfacePoint> points;
    std::vector<HalfEdge> half_edges;
    std::vector<std::vector<int>> faces;    // half-edges in counterclockwise order
    std::vector<std::vector<int>> marks;    // per face, marked points not on its boundary
    std::vector<std::string> face_labels;
    bool has_dual = true;                   // faces are lozenges carrying both dissections

    int next(int h) const;
    int prev(int h) const;
    // Next half-edge leaving the same point, counterclockwise; -1 when the boundary is hit.
    int rotate(int h) const;
    int point(const std::string& label) const;  // -1 if absent
    int face(const std::string& label) const;
};

SurfaceModel surface_from_quiver(const BoundQuiver& q);

struct SurfaceInvariants {
    int b = 0;           // boundary cycles of the half-edge map
    int b_matching = 0;  // components of the superposed straight-walk matchings
    int p = 0, p_dual = 0, punctures = 0;
    int components = 0;
    int genus = 0;  // summed over components
    int euler = 0;       // V - E + F of the map with boundary disks filled
    int d_faces = 0;     // faces of D once boundary disks are filled
    int d_cells = 0;     // cells of the surface cut along D
    int v_points = 0;
    int q0 = 0, q1 = 0;
    std::vector<std::string> issues;
};

// Throws SurfaceError(InconsistentEuler) when the map disagrees with the genus formula.
SurfaceInvariants invariants(const SurfaceModel& s);
SurfaceInvariants quiver_invariants(const BoundQuiver& q);  // straight walks and matchings only

enum class Dissection { D, Ddual };
BoundQuiver quiver_from_surface(const SurfaceModel& s, Dissection which);

// Exchange the roles of the two dissections.
SurfaceModel swap_dissections(const SurfaceModel& s);
// Forget the dual dissection: lozenges glued along red sides merge into the cells of D.
SurfaceModel strip_dual(const SurfaceModel& s);
SurfaceModel dual_dissection(const SurfaceModel& s);
// Same points, faces and gluings up to renumbering.
bool same_map(const SurfaceModel& a, const SurfaceModel& b);

struct SpiralEnd {
    int puncture = -1;
    int rotation = 1;
    std::vector<int> cycle;  // faces crossed in one turn
    std::vector<int> signs;
};

struct Angle {
    int face = -1;
    int sign = 1;  // +1 when the arrow of the face is followed forwards
    bool operator==(const Angle&) const = default;
};

struct CrossingSequence {
    std::uint64_t surface = 0;
    std::vector<int> crossings;  // points where D edges are crossed (Blossom points at finite ends)
    std::vector<Angle> angles;   // angles[i] is taken between crossings[i] and crossings[i+1]
    std::optional<SpiralEnd> left, right;
};

CrossingSequence curve_of_walk(const SurfaceModel& s, const WalkSpace& ws, const Walk& w);
Walk walk_of_curve(const SurfaceModel& s, const WalkSpace& ws, const CrossingSequence& c);
// Crossings counted on the surface from common runs of the two curves and the rotation at their ends.
KissCount crossing_count(const SurfaceModel& s, const WalkSpace& ws, const CrossingSequence& a,
                         const CrossingSequence& b);

json surface_json(const SurfaceModel& s);
json invariants_json(const SurfaceInvariants& inv);

}  // namespace nkc
