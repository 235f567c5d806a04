#include "fca/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace fca {

LatticePolygon convex_hull(std::span<const IntVec2> points) {
    require(!points.empty(), Err::EmptyPointSet, "convex hull of empty point set");
    std::vector<IntVec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.size() == 1) return LatticePolygon{{pts[0]}};

    bool collinear = true;
    for (size_t i = 2; i < pts.size() && collinear; ++i)
        collinear = cross(pts[1] - pts[0], pts[i] - pts[0]) == 0;
    if (collinear) return LatticePolygon{{pts.front(), pts.back()}};

    // Andrew monotone chain with strict turns (no collinear hull vertices)
    auto build = [&](bool lower) {
        std::vector<IntVec2> chain;
        auto scan = [&](IntVec2 p) {
            while (chain.size() >= 2 &&
                   cross(chain[chain.size() - 1] - chain[chain.size() - 2], p - chain[chain.size() - 2]) <= 0)
                chain.pop_back();
            chain.push_back(p);
        };
        if (lower)
            for (const IntVec2& p : pts) scan(p);
        else
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) scan(*it);
        return chain;
    };
    std::vector<IntVec2> lower = build(true), upper = build(false);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return LatticePolygon{std::move(lower)};
}

LatticePolygon convex_hull(const std::vector<IntVec2>& points) {
    return convex_hull(std::span<const IntVec2>(points));
}

namespace {

bool on_segment(IntVec2 a, IntVec2 b, IntVec2 p) {
    if (cross(b - a, p - a) != 0) return false;
    return dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
}

}  // namespace

bool polygon_contains(const LatticePolygon& hull, IntVec2 p) {
    const auto& v = hull.vertices;
    if (v.size() == 1) return v[0] == p;
    if (v.size() == 2) return on_segment(v[0], v[1], p);
    for (size_t i = 0; i < v.size(); ++i) {
        IntVec2 a = v[i], b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) < 0) return false;
    }
    return true;
}

bool hull_contains_origin(const LatticePolygon& hull) { return polygon_contains(hull, {0, 0}); }

std::vector<Direction> face_directions(const LatticePolygon& hull) {
    const auto& v = hull.vertices;
    if (v.size() == 1) return {};
    if (v.size() == 2) return {Direction(v[1] - v[0])};
    std::vector<Direction> dirs;
    for (size_t i = 0; i < v.size(); ++i) dirs.push_back(Direction(v[(i + 1) % v.size()] - v[i]));
    return dirs;
}

int64_t diameter_squared(const LatticePolygon& hull) {
    int64_t best = 0;
    for (size_t i = 0; i < hull.vertices.size(); ++i)
        for (size_t j = i + 1; j < hull.vertices.size(); ++j)
            best = std::max(best, (hull.vertices[i] - hull.vertices[j]).norm2());
    return best;
}

namespace {

// Closest feature of a convex polygon to the origin, returned as an integer
// normal vector (the closest point scaled by a positive factor).
IntVec2 closest_feature_normal(const LatticePolygon& hull) {
    const auto& v = hull.vertices;
    IntVec2 best_n{0, 0};
    Rat best_d2(0);
    bool have = false;

    auto consider = [&](IntVec2 n, Rat d2) {
        if (!have || d2 < best_d2) {
            best_n = n;
            best_d2 = d2;
            have = true;
        }
    };

    for (const IntVec2& p : v) consider(p, Rat(p.norm2()));
    size_t m = v.size();
    if (m >= 2) {
        size_t edges = (m == 2) ? 1 : m;
        for (size_t i = 0; i < edges; ++i) {
            IntVec2 a = v[i], b = v[(i + 1) % m];
            IntVec2 e = b - a;
            int64_t ee = e.norm2();
            int64_t t_num = -dot(a, e);  // projection parameter t = t_num / ee
            if (t_num <= 0 || t_num >= ee) continue;
            // closest point = a + t e, scaled by ee to stay integral
            IntVec2 n = ee * a + t_num * e;
            consider(n, Rat(n.norm2(), ee * ee));
        }
    }
    return best_n;
}

}  // namespace

HalfPlane separating_halfplane(const LatticePolygon& a, const LatticePolygon& b) {
    // Minkowski difference of the vertex sets; the hulls intersect iff it holds 0.
    std::vector<IntVec2> diff;
    for (const IntVec2& pb : b.vertices)
        for (const IntVec2& pa : a.vertices) diff.push_back(pb - pa);
    LatticePolygon d = convex_hull(diff);
    require(!polygon_contains(d, {0, 0}), Err::NotSeparable, "hulls intersect");

    IntVec2 n = primitive(closest_feature_normal(d));
    int64_t max_a = dot(a.vertices[0], n), min_b = dot(b.vertices[0], n);
    for (const IntVec2& p : a.vertices) max_a = std::max(max_a, dot(p, n));
    for (const IntVec2& p : b.vertices) min_b = std::min(min_b, dot(p, n));
    assert(max_a < min_b);
    return HalfPlane{n, Rat(max_a + min_b, 2)};
}

Direction nice_vector(const LatticePolygon& hull) {
    require(!hull_contains_origin(hull), Err::OriginInHull, "origin inside hull");
    LatticePolygon origin{{IntVec2{0, 0}}};
    HalfPlane hp = separating_halfplane(origin, hull);
    // hull sits strictly on the positive side of normal; rotate onto the line
    for ([[maybe_unused]] const IntVec2& p : hull.vertices) assert(dot(p, hp.normal) > 0);
    return Direction(rot90(hp.normal));
}

IntVec2 UnimodularMap::apply_inverse(IntVec2 z) const {
    int64_t d = det();
    assert(d == 1 || d == -1);
    int64_t a = d * (m[3] * z.x - m[1] * z.y);
    int64_t b = d * (-m[2] * z.x + m[0] * z.y);
    return {a + shear_power * b, b};
}

IntVec2 UnimodularMap::apply(IntVec2 z) const {
    int64_t a = z.x - shear_power * z.y;
    int64_t b = z.y;
    return {m[0] * a + m[1] * b, m[2] * a + m[3] * b};
}

namespace {

// x2, y2 with x1*y2 - x2*y1 = 1, given gcd(x1, y1) = 1 (Bezout).
IntVec2 bezout_partner(int64_t x1, int64_t y1) {
    int64_t old_r = x1, r = y1;
    int64_t old_s = 1, s = 0;
    int64_t old_t = 0, t = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    // old_s*x1 + old_t*y1 = old_r = +-gcd = +-1
    if (old_r < 0) {
        old_s = -old_s;
        old_t = -old_t;
    }
    // want x1*y2 - x2*y1 = 1: y2 = old_s, x2 = -old_t
    return {-old_t, old_s};
}

int64_t ceil_div(int64_t a, int64_t b) {
    assert(b > 0);
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

NormalizedGrowthSet normalize_growth_set(std::span<const IntVec2> raw_set) {
    std::vector<IntVec2> n_set(raw_set.begin(), raw_set.end());
    std::sort(n_set.begin(), n_set.end());
    n_set.erase(std::unique(n_set.begin(), n_set.end()), n_set.end());
    LatticePolygon hull = convex_hull(n_set);
    Direction v = nice_vector(hull);  // raises OriginInHull when not applicable
    IntVec2 w = bezout_partner(v.v.x, v.v.y);

    UnimodularMap map;
    map.m = {v.v.x, w.x, v.v.y, w.y};
    map.shear_power = 0;
    assert(map.det() == 1 || map.det() == -1);

    // all second coordinates share a sign by choice of v; flip w if negative
    IntVec2 probe = map.apply_inverse(n_set[0]);
    if (probe.y < 0) {
        map.m[1] = -map.m[1];
        map.m[3] = -map.m[3];
    }

    int64_t t = 0;
    for (const IntVec2& z : n_set) {
        IntVec2 q = map.apply_inverse(z);
        require(q.y > 0, Err::Internal, "growth set normalization lost positivity");
        t = std::max(t, ceil_div(-q.x, q.y));
    }
    map.shear_power = t;

    NormalizedGrowthSet out;
    out.map = map;
    for (const IntVec2& z : n_set) {
        IntVec2 q = map.apply_inverse(z);
        assert(q.x >= 0 && q.y > 0);
        out.image.push_back(q);
    }
    std::sort(out.image.begin(), out.image.end());
    return out;
}

LatticePolygon build_zonotope(std::span<const Direction> directions, Rat min_face_length) {
    // one generator per antipodal class, canonical upper-half representative
    std::vector<IntVec2> gens;
    for (const Direction& d : directions) {
        IntVec2 g = d.v;
        if (g.y < 0 || (g.y == 0 && g.x < 0)) g = -g;
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    if (gens.empty()) gens.push_back({1, 0});
    if (gens.size() == 1) {
        IntVec2 p = rot90(gens[0]);
        if (p.y < 0 || (p.y == 0 && p.x < 0)) p = -p;
        gens.push_back(p);
    }

    int64_t min_norm2 = gens[0].norm2();
    for (const IntVec2& g : gens) min_norm2 = std::min(min_norm2, g.norm2());

    // k = ceil(L / min|g|) + 1, decided on squares: k0 minimal with k0^2 |g|^2 >= L^2
    require(min_face_length >= Rat(0), Err::InvalidArgument, "negative face length bound");
    int64_t k0 = 0;
    while (true) {
        __int128 lhs = static_cast<__int128>(k0) * k0 * min_norm2 * min_face_length.den * min_face_length.den;
        __int128 rhs = static_cast<__int128>(min_face_length.num) * min_face_length.num;
        if (lhs >= rhs) break;
        ++k0;
    }
    int64_t k = k0 + 1;

    // boundary walk: edge vectors +-k*g sorted by angle, accumulated from origin
    std::vector<IntVec2> edges;
    for (const IntVec2& g : gens) {
        edges.push_back(k * g);
        edges.push_back(-1 * (k * g));
    }
    std::sort(edges.begin(), edges.end(),
              [](IntVec2 a, IntVec2 b) { return angle_less(Direction(a), Direction(b)); });

    std::vector<IntVec2> verts;
    IntVec2 cur{0, 0};
    for (const IntVec2& e : edges) {
        verts.push_back(cur);
        cur = cur + e;
    }
    assert(cur.is_zero());

    IntVec2 mn = verts[0];
    for (const IntVec2& p : verts) {
        mn.x = std::min(mn.x, p.x);
        mn.y = std::min(mn.y, p.y);
    }
    for (IntVec2& p : verts) p = p - mn;

    // walk above starts at an arbitrary boundary point; rotate to canonical order
    LatticePolygon out = convex_hull(verts);
    assert(out.vertices.size() == verts.size());
    return out;
}

std::vector<IntVec2> lattice_points_inside(const LatticePolygon& hull) {
    int64_t lo_x = hull.vertices[0].x, hi_x = lo_x, lo_y = hull.vertices[0].y, hi_y = lo_y;
    for (const IntVec2& p : hull.vertices) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    std::vector<IntVec2> pts;
    for (int64_t y = lo_y; y <= hi_y; ++y)
        for (int64_t x = lo_x; x <= hi_x; ++x)
            if (polygon_contains(hull, {x, y})) pts.push_back({x, y});
    return pts;
}

}  // namespace fca
