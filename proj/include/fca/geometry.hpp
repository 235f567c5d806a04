#pragma once

#include <array>
#include <span>
#include <vector>

#include "fca/rational.hpp"
#include "fca/vec.hpp"

namespace fca {

// Convex lattice polygon, vertices counterclockwise with strict turns.
// One vertex is a point, two a segment; both carry degenerate() == true.
struct LatticePolygon {
    std::vector<IntVec2> vertices;

    bool degenerate() const { return vertices.size() < 3; }
    bool is_point() const { return vertices.size() == 1; }
    bool is_segment() const { return vertices.size() == 2; }
};

LatticePolygon convex_hull(std::span<const IntVec2> points);
LatticePolygon convex_hull(const std::vector<IntVec2>& points);

// Closed containment (interior, edge or vertex).
bool polygon_contains(const LatticePolygon& hull, IntVec2 p);
bool hull_contains_origin(const LatticePolygon& hull);

// Primitive directions of the faces; a segment yields its direction, a point none.
std::vector<Direction> face_directions(const LatticePolygon& hull);

int64_t diameter_squared(const LatticePolygon& hull);

struct HalfPlane {
    IntVec2 normal;  // primitive
    Rat threshold;   // a lies in {z . normal <= threshold}, b strictly outside
};

HalfPlane separating_halfplane(const LatticePolygon& a, const LatticePolygon& b);

// Primitive vector v such that the hull lies strictly on one side of the line Rv.
Direction nice_vector(const LatticePolygon& hull);

// Composition of a determinant-+-1 basis change with a shear; inverse maps a
// growth neighborhood into the closed-right upper half lattice.
struct UnimodularMap {
    // row-major (x1 x2 / y1 y2); columns are the basis vectors
    std::array<int64_t, 4> m{1, 0, 0, 1};
    int64_t shear_power = 0;

    int64_t det() const { return m[0] * m[3] - m[1] * m[2]; }
    IntVec2 apply_inverse(IntVec2 z) const;  // shear(T^-1 z)
    IntVec2 apply(IntVec2 z) const;          // T(shear^-1 z)
};

struct NormalizedGrowthSet {
    UnimodularMap map;
    std::vector<IntVec2> image;  // subset of Z>=0 x Z>0
};

NormalizedGrowthSet normalize_growth_set(std::span<const IntVec2> n_set);

// Centrally symmetric lattice polygon whose faces cover every requested
// direction (and its antipode) with Euclidean length strictly above the bound.
LatticePolygon build_zonotope(std::span<const Direction> directions, Rat min_face_length);

std::vector<IntVec2> lattice_points_inside(const LatticePolygon& hull);

}  // namespace fca
