#include <doctest.h>

#include "fca/classifier.hpp"
#include "fca/engine.hpp"
#include "fca/rng.hpp"

using namespace fca;

namespace {

NeighborSet ns(std::vector<IntVec2> cells) { return NeighborSet::of(std::move(cells)); }
NeighborFamily fam(std::vector<NeighborSet> sets) { return canonicalize_family(std::move(sets)); }

// all primitive directions with infinity norm <= bound
std::vector<Direction> primitive_directions(int64_t bound) {
    std::vector<Direction> out;
    for (int64_t x = -bound; x <= bound; ++x)
        for (int64_t y = -bound; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            if (std::gcd(std::llabs(x), std::llabs(y)) != 1) continue;
            out.push_back(Direction(x, y));
        }
    return out;
}

// direct simulation: embed the half-plane configuration of v and step once
bool simulated_stable(const NeighborFamily& e, Direction v) {
    auto k = rule_from_family(e);
    int side = 41;
    int c = side / 2;
    Window w(side, side, Boundary::Zero, 2, 0);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) {
            IntVec2 z{x - c, y - c};
            w.set(x, y, dot(z, v.v) < 0 ? 1 : 0);
        }
    Window next = step(w, k);
    int m = k.radius;
    for (int y = m; y < side - m; ++y)
        for (int x = m; x < side - m; ++x)
            if (next.get(x, y) != w.get(x, y)) return false;
    return true;
}

NeighborFamily random_family(SplitMix64& rng) {
    std::vector<NeighborSet> sets;
    int n = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
        std::vector<IntVec2> cells;
        int m = 1 + static_cast<int>(rng.below(6));
        for (int j = 0; j < m; ++j) {
            int64_t x = static_cast<int64_t>(rng.below(7)) - 3;
            int64_t y = static_cast<int64_t>(rng.below(7)) - 3;
            if (x == 0 && y == 0) x = 1;
            cells.push_back({x, y});
        }
        sets.push_back(ns(cells));
    }
    return fam(sets);
}

const NeighborFamily kCanonSuper = fam({ns({{1, 1}})});
const NeighborFamily kCanonWeak = fam({ns({{0, 1}, {1, 1}})});
NeighborFamily canon_critical() {
    const IntVec2 c4[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::vector<NeighborSet> sets;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) sets.push_back(ns({c4[i], c4[j]}));
    return fam(sets);
}
const NeighborFamily kCanonStrong = fam({ns({{-1, 0}, {1, 0}})});

}  // namespace

TEST_CASE("unstable arc: pinned examples") {
    ArcSet a1 = unstable_arc(ns({{1, 1}}));
    REQUIRE(a1.arcs().size() == 1);
    CHECK(a1.arcs()[0].start == Direction(-1, 1));
    CHECK(a1.arcs()[0].end == Direction(1, -1));
    CHECK_FALSE(a1.arcs()[0].start_closed);
    CHECK(arc_length_cmp_pi(a1.arcs()[0]) == CmpPi::Equal);
    CHECK(a1.contains(Direction(-1, -1)));

    ArcSet a2 = unstable_arc(ns({{0, 1}, {1, 1}}));
    REQUIRE(a2.arcs().size() == 1);
    CHECK(a2.arcs()[0].start == Direction(-1, 0));
    CHECK(a2.arcs()[0].end == Direction(1, -1));
    CHECK(a2.contains(Direction(0, -1)));
    CHECK(arc_length_cmp_pi(a2.arcs()[0]) == CmpPi::Less);

    CHECK(unstable_arc(ns({{-1, 0}, {1, 0}})).is_empty());
}

TEST_CASE("stable directions: pinned examples") {
    auto e = fam({ns({{0, 1}, {1, 1}})});
    CHECK(is_stable_direction(e, Direction(1, 0)));
    CHECK_FALSE(is_stable_direction(e, Direction(0, -1)));

    auto g = fam({ns({{-1, 0}, {1, 0}})});
    for (Direction v : primitive_directions(3)) CHECK(is_stable_direction(g, v));
}

TEST_CASE("three-way agreement: arcs, dot products, simulation") {
    std::vector<NeighborFamily> fams = {kCanonSuper, kCanonWeak, canon_critical(), kCanonStrong};
    auto dirs = primitive_directions(13);
    for (const auto& e : fams) {
        ArcSet unstable = ArcSet::empty();
        for (const auto& s : e.sets) unstable = set_union(unstable, unstable_arc(s));
        for (Direction v : dirs) {
            bool by_dot = is_stable_direction(e, v);
            bool by_arc = !unstable.contains(v);
            REQUIRE(by_dot == by_arc);
        }
        // simulation cross-check on a smaller norm ball (window-limited)
        for (Direction v : primitive_directions(5))
            REQUIRE(is_stable_direction(e, v) == simulated_stable(e, v));
    }
}

TEST_CASE("classify: the four canonical families") {
    auto c1 = classify(kCanonSuper);
    CHECK(c1.tag == CritTag::Supercritical);
    REQUIRE(c1.uncovered_arc.has_value());
    CHECK(arc_length_cmp_pi(*c1.uncovered_arc) != CmpPi::Less);

    auto c2 = classify(kCanonWeak);
    CHECK(c2.tag == CritTag::WeaklySubcritical);
    REQUIRE(c2.stable_set.arcs().size() == 1);
    // closed arc from (1,-1) to (-1,0), length 5*pi/4
    CHECK(c2.stable_set.arcs()[0].start == Direction(1, -1));
    CHECK(c2.stable_set.arcs()[0].end == Direction(-1, 0));
    CHECK(c2.stable_set.arcs()[0].start_closed);
    CHECK(arc_length_cmp_pi(c2.stable_set.arcs()[0]) == CmpPi::Greater);

    auto c3 = classify(canon_critical());
    CHECK(c3.tag == CritTag::Critical);
    CHECK(c3.strongly_stable_set.is_empty());
    // stable set is exactly the four axis directions
    CHECK(c3.stable_set.arcs().size() == 4);
    for (const Arc& a : c3.stable_set.arcs()) CHECK(a.start == a.end);

    auto c4 = classify(kCanonStrong);
    CHECK(c4.tag == CritTag::StronglySubcritical);
    REQUIRE(c4.obstacle.has_value());
    CHECK(check_fixed_point_family(*c4.obstacle, kCanonStrong));
}

TEST_CASE("obstacle: pinned examples") {
    auto cells = build_obstacle(kCanonStrong);
    CHECK(cells.size() == 16);  // the 4x4 square
    CHECK(check_fixed_point_family(cells, kCanonStrong));

    auto both = fam({ns({{-1, 0}, {1, 0}}), ns({{0, -1}, {0, 1}})});
    auto cells2 = build_obstacle(both);
    CHECK(cells2.size() >= 9);
    CHECK(check_fixed_point_family(cells2, both));

    CHECK_THROWS_AS(build_obstacle(kCanonSuper), Error);
}

TEST_CASE("obstacle survives the engine in random contexts") {
    SplitMix64 rng(88);
    auto cells = build_obstacle(kCanonStrong);
    auto k = rule_from_family(kCanonStrong);
    int64_t maxc = 0;
    for (auto& c : cells) maxc = std::max({maxc, c.x, c.y});
    int margin = 8, side = static_cast<int>(maxc) + 1 + 2 * margin;
    for (int ctx = 0; ctx < 5; ++ctx) {
        Window w(side, side, Boundary::One, 2, 0);
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) w.set(x, y, rng.below(2));
        for (auto& c : cells) w.set(static_cast<int>(c.x) + margin, static_cast<int>(c.y) + margin, 0);
        auto [fin, rep] = run_until_fixed(w, k, 50);
        for (auto& c : cells)
            REQUIRE(fin.get(static_cast<int>(c.x) + margin, static_cast<int>(c.y) + margin) == 0);
    }
}

TEST_CASE("strong subcriticality equals an empty origin-free part on random families") {
    SplitMix64 rng(404);
    for (int iter = 0; iter < 1000; ++iter) {
        NeighborFamily e = random_family(rng);
        bool f_empty = split_fg(e).f_sets.sets.empty();
        auto c = classify(e);
        REQUIRE((c.tag == CritTag::StronglySubcritical) == f_empty);
    }
}

TEST_CASE("classification commutes with negating the family") {
    SplitMix64 rng(606);
    for (int iter = 0; iter < 300; ++iter) {
        NeighborFamily e = random_family(rng);
        std::vector<NeighborSet> neg;
        for (const auto& s : e.sets) {
            std::vector<IntVec2> cells;
            for (auto& c : s.cells) cells.push_back(-c);
            neg.push_back(ns(cells));
        }
        NeighborFamily en = fam(neg);

        ArcSet u = ArcSet::empty(), un = ArcSet::empty();
        for (const auto& s : e.sets) u = set_union(u, unstable_arc(s));
        for (const auto& s : en.sets) un = set_union(un, unstable_arc(s));
        REQUIRE(un == u.negated());
        REQUIRE(classify(e).tag == classify(en).tag);
    }
}

TEST_CASE("dual pair condition") {
    CHECK(dual_noneven_condition(fam({ns({{0, 1}, {1, 1}})})));
    CHECK(dual_noneven_condition(fam({ns({{0, 1}, {1, 1}}), ns({{0, -1}, {-1, -1}})})));
    CHECK_FALSE(dual_noneven_condition(fam({ns({{-1, 0}, {1, 0}})})));
    // origin-free sets with no shared pair
    CHECK_FALSE(dual_noneven_condition(fam({ns({{0, 1}}), ns({{1, 0}})})));
}
