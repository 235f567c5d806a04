#include "fca/classifier.hpp"

#include <algorithm>

#include "fca/engine.hpp"

namespace fca {

std::string to_string(CritTag t) {
    switch (t) {
        case CritTag::StronglySubcritical: return "StronglySubcritical";
        case CritTag::WeaklySubcritical: return "WeaklySubcritical";
        case CritTag::Critical: return "Critical";
        case CritTag::Supercritical: return "Supercritical";
    }
    return "?";
}

ArcSet unstable_arc(const NeighborSet& n) {
    // {v : z.v < 0} for one cell z is the open semicircle between the two
    // perpendiculars of z; intersect over the set's cells.
    ArcSet acc = ArcSet::full_circle();
    for (const IntVec2& z : n.cells) {
        Direction s(rot90(z));          // (-zy, zx)
        Direction e(IntVec2{z.y, -z.x});  // the opposite perpendicular
        acc = set_intersect(acc, ArcSet::single(Arc{s, e, false, false}));
        if (acc.is_empty()) break;
    }
    return acc;
}

bool is_stable_direction(const NeighborFamily& e, Direction v) {
    // v is unstable iff some member set lies strictly inside {n . v < 0}
    for (const NeighborSet& s : e.sets) {
        bool all_negative = true;
        for (const IntVec2& n : s.cells) {
            if (dot(n, v.v) >= 0) {
                all_negative = false;
                break;
            }
        }
        if (all_negative) return false;
    }
    return true;
}

Criticality classify(const NeighborFamily& e) {
    ArcSet unstable = ArcSet::empty();
    for (const NeighborSet& s : e.sets) unstable = set_union(unstable, unstable_arc(s));

    // two independent routes to strong subcriticality must agree
    bool f_empty = split_fg(e).f_sets.sets.empty();
    require(unstable.is_empty() == f_empty, Err::Internal,
            "arc arithmetic disagrees with the hull test on " + e.str());

    Criticality out;
    out.stable_set = complement(unstable);
    out.strongly_stable_set = interior(out.stable_set);

    if (unstable.is_empty()) {
        out.tag = CritTag::StronglySubcritical;
        out.obstacle = build_obstacle(e);
        return out;
    }

    for (const Arc& a : unstable.arcs()) {
        if (arc_length_cmp_pi(a) != CmpPi::Less) {
            out.tag = CritTag::Supercritical;
            out.uncovered_arc = a;
            return out;
        }
    }

    // subcritical: every open semicircle meets the strongly stable set,
    // i.e. no maximal arc of its complement reaches length pi
    if (!has_arc_of_length_ge_pi(complement(out.strongly_stable_set)))
        out.tag = CritTag::WeaklySubcritical;
    else
        out.tag = CritTag::Critical;
    return out;
}

std::vector<IntVec2> build_obstacle(const NeighborFamily& e) {
    require(!e.sets.empty(), Err::NotStronglySubcritical, "empty family has no obstacle");
    std::vector<Direction> dirs;
    int64_t max_diam2 = 0;
    for (const NeighborSet& s : e.sets) {
        LatticePolygon hull = convex_hull(s.cells);
        require(hull_contains_origin(hull), Err::NotStronglySubcritical,
                "family is not strongly subcritical: " + s.str());
        for (const Direction& d : face_directions(hull)) dirs.push_back(d);
        max_diam2 = std::max(max_diam2, diameter_squared(hull));
    }

    // least integer bound >= the true (irrational) max diameter
    int64_t bound = 0;
    while (bound * bound < max_diam2) ++bound;

    LatticePolygon zono = build_zonotope(dirs, Rat(bound));
    std::vector<IntVec2> cells = lattice_points_inside(zono);
    require(check_fixed_point_family(cells, e), Err::ObstacleVerificationFailed,
            "constructed obstacle is not a fixed point for " + e.str());
    return cells;
}

bool dual_noneven_condition(const NeighborFamily& e) {
    FGSplit split = split_fg(e);
    if (!split.g_sets.sets.empty() || split.f_sets.sets.empty()) return false;

    std::vector<IntVec2> candidates;
    for (const NeighborSet& s : split.f_sets.sets)
        for (const IntVec2& c : s.cells) {
            candidates.push_back(c);
            candidates.push_back(-c);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (size_t i = 0; i < candidates.size(); ++i) {
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            IntVec2 n = candidates[i], m = candidates[j];
            if (cross(n, m) == 0) continue;
            bool ok = true;
            for (const NeighborSet& s : split.f_sets.sets) {
                bool plus = s.contains(n) && s.contains(m);
                bool minus = s.contains(-n) && s.contains(-m);
                if (!plus && !minus) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace fca
