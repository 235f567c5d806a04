#include "fca/arcs.hpp"

#include <algorithm>
#include <cassert>

namespace fca {
namespace {

// A circle position refined by an infinitesimal: eps=-1 just before the
// direction, 0 exactly at it, +1 just after. Linearized by cutting at
// direction (1,0): the position just before the cut sorts above everything.
struct Pos {
    Direction d;
    int eps = 0;
};

const Direction kCut = Direction(1, 0);

int pos_cmp(const Pos& a, const Pos& b) {
    bool wa = (a.d == kCut && a.eps < 0);
    bool wb = (b.d == kCut && b.eps < 0);
    if (wa != wb) return wa ? 1 : -1;
    int c = angle_cmp(a.d, b.d);
    if (c != 0) return c;
    return a.eps < b.eps ? -1 : (a.eps > b.eps ? 1 : 0);
}

Pos arc_start_pos(const Arc& a) { return {a.start, a.start_closed ? 0 : 1}; }
Pos arc_end_pos(const Arc& a) { return {a.end, a.end_closed ? 0 : -1}; }

// Membership of a refined position in one arc, wrap-aware.
bool arc_contains_pos(const Arc& a, const Pos& p) {
    Pos s = arc_start_pos(a), e = arc_end_pos(a);
    int se = pos_cmp(s, e);
    if (se <= 0) return pos_cmp(s, p) <= 0 && pos_cmp(p, e) <= 0;
    return pos_cmp(p, s) >= 0 || pos_cmp(p, e) <= 0;
}

bool set_contains_pos(const ArcSet& s, const Pos& p) {
    if (s.is_full()) return true;
    for (const Arc& a : s.arcs())
        if (arc_contains_pos(a, p)) return true;
    return false;
}

// Sweep machinery: evaluate both operands at every critical direction and in
// every open gap between consecutive ones, combine, then rebuild maximal runs.
struct SweepOut {
    bool full = false;
    bool empty = false;
    std::vector<Arc> arcs;
};

SweepOut rebuild(const std::vector<Direction>& dirs, const std::vector<bool>& pt, const std::vector<bool>& gp) {
    size_t n = dirs.size();
    size_t slots = 2 * n;  // even index 2i: point i, odd 2i+1: gap (d_i, d_{i+1})
    auto slot_val = [&](size_t j) { return (j % 2 == 0) ? pt[j / 2] : gp[j / 2]; };

    bool all_true = true, all_false = true;
    for (size_t j = 0; j < slots; ++j) {
        if (slot_val(j)) all_false = false;
        else all_true = false;
    }
    if (all_true) return {true, false, {}};
    if (all_false) return {false, true, {}};

    std::vector<Arc> out;
    for (size_t j = 0; j < slots; ++j) {
        size_t prev = (j + slots - 1) % slots;
        if (!slot_val(j) || slot_val(prev)) continue;
        // run starts at slot j; walk to its end
        size_t k = j;
        while (slot_val((k + 1) % slots)) k = (k + 1) % slots;
        Arc a;
        if (j % 2 == 0) {
            a.start = dirs[j / 2];
            a.start_closed = true;
        } else {
            a.start = dirs[j / 2];
            a.start_closed = false;
        }
        if (k % 2 == 0) {
            a.end = dirs[k / 2];
            a.end_closed = true;
        } else {
            a.end = dirs[(k / 2 + 1) % n];
            a.end_closed = false;
        }
        out.push_back(a);
    }

    std::sort(out.begin(), out.end(), [](const Arc& a, const Arc& b) {
        int c = angle_cmp(a.start, b.start);
        if (c != 0) return c < 0;
        return a.start_closed && !b.start_closed;
    });
    return {false, false, std::move(out)};
}

SweepOut sweep(const ArcSet& a, const ArcSet& b, bool (*op)(bool, bool)) {
    std::vector<Direction> dirs;
    for (const Arc& x : a.arcs()) {
        dirs.push_back(x.start);
        dirs.push_back(x.end);
    }
    for (const Arc& x : b.arcs()) {
        dirs.push_back(x.start);
        dirs.push_back(x.end);
    }
    if (dirs.empty()) {
        bool v = op(a.is_full(), b.is_full());
        return {v, !v, {}};
    }
    std::sort(dirs.begin(), dirs.end(), angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    size_t n = dirs.size();
    std::vector<bool> pt(n), gp(n);
    for (size_t i = 0; i < n; ++i) {
        Pos at{dirs[i], 0};
        Pos after{dirs[i], 1};  // constant on the whole open gap to the next critical direction
        pt[i] = op(set_contains_pos(a, at), set_contains_pos(b, at));
        gp[i] = op(set_contains_pos(a, after), set_contains_pos(b, after));
    }
    return rebuild(dirs, pt, gp);
}

bool op_union(bool x, bool y) { return x || y; }
bool op_intersect(bool x, bool y) { return x && y; }
bool op_not_left(bool x, bool) { return !x; }

}  // namespace

std::string Arc::str() const {
    std::string s = start_closed ? "[" : "(";
    s += start.str() + "," + end.str();
    s += end_closed ? "]" : ")";
    return s;
}

CmpPi arc_length_cmp_pi(const Arc& a) {
    if (a.start == a.end) {
        if (a.start_closed && a.end_closed) return CmpPi::Less;  // single point
        return CmpPi::Greater;                                   // circle minus a point
    }
    Direction anti = a.start.antipode();
    if (anti == a.end) return CmpPi::Equal;
    Arc open_version{a.start, a.end, false, false};
    return arc_contains_pos(open_version, Pos{anti, 0}) ? CmpPi::Greater : CmpPi::Less;
}

bool arc_contains(const Arc& a, Direction d) { return arc_contains_pos(a, Pos{d, 0}); }

ArcSet ArcSet::single(const Arc& a) { return from_arcs({a}); }

ArcSet ArcSet::from_arcs(const std::vector<Arc>& arcs) {
    ArcSet acc = ArcSet::empty();
    for (const Arc& a : arcs) {
        ArcSet one;
        one.arcs_.push_back(a);
        acc = set_union(acc, one);
    }
    return acc;
}

bool ArcSet::contains(Direction d) const { return set_contains_pos(*this, Pos{d, 0}); }

ArcSet complement(const ArcSet& a) {
    if (a.is_full()) return ArcSet::empty();
    if (a.is_empty()) return ArcSet::full_circle();
    SweepOut r = sweep(a, ArcSet::empty(), op_not_left);
    if (r.full) return ArcSet::full_circle();
    ArcSet s;
    s.arcs_ = std::move(r.arcs);
    return s;
}

ArcSet set_union(const ArcSet& a, const ArcSet& b) {
    if (a.is_full() || b.is_full()) return ArcSet::full_circle();
    SweepOut r = sweep(a, b, op_union);
    if (r.full) return ArcSet::full_circle();
    ArcSet s;
    s.arcs_ = std::move(r.arcs);
    return s;
}

ArcSet set_intersect(const ArcSet& a, const ArcSet& b) {
    if (a.is_empty() || b.is_empty()) return ArcSet::empty();
    SweepOut r = sweep(a, b, op_intersect);
    if (r.full) return ArcSet::full_circle();
    ArcSet s;
    s.arcs_ = std::move(r.arcs);
    return s;
}

ArcSet interior(const ArcSet& a) {
    if (a.is_full() || a.is_empty()) return a;
    std::vector<Arc> open;
    for (const Arc& x : a.arcs_) {
        if (x.start == x.end && x.start_closed && x.end_closed) continue;  // isolated point
        open.push_back(Arc{x.start, x.end, false, false});
    }
    // arcs stay separated by genuine gaps, so this is already normalized
    ArcSet s = ArcSet::empty();
    s.arcs_ = std::move(open);
    return s;
}

bool operator==(const ArcSet& a, const ArcSet& b) {
    if (a.full_ != b.full_) return false;
    if (a.arcs_.size() != b.arcs_.size()) return false;
    for (size_t i = 0; i < a.arcs_.size(); ++i) {
        const Arc &x = a.arcs_[i], &y = b.arcs_[i];
        if (x.start != y.start || x.end != y.end || x.start_closed != y.start_closed ||
            x.end_closed != y.end_closed)
            return false;
    }
    return true;
}

ArcSet ArcSet::negated() const {
    if (full_ || arcs_.empty()) return *this;
    std::vector<Arc> flipped;
    for (const Arc& a : arcs_)
        flipped.push_back(Arc{a.start.antipode(), a.end.antipode(), a.start_closed, a.end_closed});
    return from_arcs(flipped);
}

std::string ArcSet::str() const {
    if (full_) return "full";
    if (arcs_.empty()) return "empty";
    std::string s;
    for (const Arc& a : arcs_) {
        if (!s.empty()) s += " ";
        s += a.str();
    }
    return s;
}

bool has_arc_of_length_ge_pi(const ArcSet& s) {
    if (s.is_full()) return true;
    for (const Arc& a : s.arcs())
        if (arc_length_cmp_pi(a) != CmpPi::Less) return true;
    return false;
}

bool contains_closed_semicircle(const ArcSet& s) {
    if (s.is_full()) return true;
    for (const Arc& a : s.arcs()) {
        CmpPi c = arc_length_cmp_pi(a);
        if (c == CmpPi::Greater) return true;
        if (c == CmpPi::Equal && a.start_closed && a.end_closed) return true;
    }
    return false;
}

bool max_gap_at_least_pi(const ArcSet& s) { return has_arc_of_length_ge_pi(complement(s)); }

bool contains_closed_semicircle_in_complement(const ArcSet& s) {
    return contains_closed_semicircle(complement(s));
}

}  // namespace fca
