#pragma once

#include <optional>
#include <string>

#include "fca/arcs.hpp"
#include "fca/rules.hpp"

namespace fca {

enum class CritTag { StronglySubcritical, WeaklySubcritical, Critical, Supercritical };

std::string to_string(CritTag t);

struct Criticality {
    CritTag tag;
    ArcSet stable_set;           // closed
    ArcSet strongly_stable_set;  // its interior
    // witnesses: a verified finite obstacle, or a stable-free open arc of length >= pi
    std::optional<std::vector<IntVec2>> obstacle;
    std::optional<Arc> uncovered_arc;
};

// Directions destabilized by a single neighbor set: the open cone-dual arc,
// empty exactly when the origin lies in the set's hull.
ArcSet unstable_arc(const NeighborSet& n);

bool is_stable_direction(const NeighborFamily& e, Direction v);

Criticality classify(const NeighborFamily& e);

// Lattice points of a zonotope tuned so the all-1 configuration punctured on
// them is an exact fixed point; verified internally before returning.
std::vector<IntVec2> build_obstacle(const NeighborFamily& e);

// G empty plus a linearly independent pair {n, m} contained (or negated) in
// every member set.
bool dual_noneven_condition(const NeighborFamily& e);

}  // namespace fca
