#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fca/vec.hpp"

namespace fca {

// Counterclockwise arc from start to end with individually open/closed
// endpoints. start == end means: a single point when both ends are closed,
// the full circle minus that point when both are open. The full circle
// itself is a designated ArcSet value, never an Arc.
struct Arc {
    Direction start, end;
    bool start_closed = true;
    bool end_closed = true;

    std::string str() const;
};

enum class CmpPi { Less, Equal, Greater };

// Angular length of the arc compared against pi, decided by locating the
// antipode of the start endpoint. No floating point anywhere.
CmpPi arc_length_cmp_pi(const Arc& a);

bool arc_contains(const Arc& a, Direction d);

// Finite union of arcs in normalized form: pairwise disjoint, not mergeable,
// sorted counterclockwise. Exact set algebra over rational directions.
class ArcSet {
public:
    static ArcSet empty() { return ArcSet(); }
    static ArcSet full_circle() {
        ArcSet s;
        s.full_ = true;
        return s;
    }
    static ArcSet single(const Arc& a);
    static ArcSet from_arcs(const std::vector<Arc>& arcs);

    bool is_empty() const { return !full_ && arcs_.empty(); }
    bool is_full() const { return full_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool contains(Direction d) const;

    friend ArcSet complement(const ArcSet& a);
    friend ArcSet set_union(const ArcSet& a, const ArcSet& b);
    friend ArcSet set_intersect(const ArcSet& a, const ArcSet& b);
    friend ArcSet interior(const ArcSet& a);
    friend bool operator==(const ArcSet& a, const ArcSet& b);

    // v |-> -v applied pointwise.
    ArcSet negated() const;

    std::string str() const;

private:
    bool full_ = false;
    std::vector<Arc> arcs_;
};

// Some maximal arc has angular length >= pi (the full circle qualifies).
bool has_arc_of_length_ge_pi(const ArcSet& s);

// A closed semicircle [v, -v] fits inside the set.
bool contains_closed_semicircle(const ArcSet& s);

bool max_gap_at_least_pi(const ArcSet& s);
bool contains_closed_semicircle_in_complement(const ArcSet& s);

}  // namespace fca
