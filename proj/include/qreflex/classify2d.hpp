#pragma once

/// Exhaustive enumeration of reflexive polygons with vertices in a bounded
/// box.  Works over machine integers (coordinates are tiny); candidates grow
/// from Caratheodory triangles through convex hulls that keep the origin
/// inside and at most the origin as interior lattice point, which visits
/// every reflexive polygon in the box.  Finals are re-verified with the
/// exact machinery before being returned.

#include "qreflex/polytope.hpp"
#include "qreflex/reflexivity.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace qreflex {

namespace detail2d {

using P2 = std::pair<int, int>;

inline long cross(const P2& o, const P2& a, const P2& b) {
    return static_cast<long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long>(a.second - o.second) * (b.first - o.first);
}

/// Strict convex hull (collinear points dropped), counterclockwise.
inline std::vector<P2> hull2d(std::vector<P2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<P2> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && h[0] == h[1]) h.resize(1);
    return h;  // vertices only, ccw
}

/// -1 outside, 0 on boundary, +1 strictly inside (hull given ccw).
inline int side2d(const std::vector<P2>& hull, const P2& q) {
    if (hull.size() == 1) return (hull[0] == q) ? 0 : -1;
    if (hull.size() == 2) {
        long c = cross(hull[0], hull[1], q);
        if (c != 0) return -1;
        long t1 = static_cast<long>(q.first - hull[0].first) * (hull[1].first - hull[0].first) +
                  static_cast<long>(q.second - hull[0].second) * (hull[1].second - hull[0].second);
        long t2 = static_cast<long>(hull[1].first - hull[0].first) * (hull[1].first - hull[0].first) +
                  static_cast<long>(hull[1].second - hull[0].second) * (hull[1].second - hull[0].second);
        return (t1 >= 0 && t1 <= t2) ? 0 : -1;
    }
    int res = 1;
    for (size_t i = 0; i < hull.size(); ++i) {
        long c = cross(hull[i], hull[(i + 1) % hull.size()], q);
        if (c < 0) return -1;
        if (c == 0) res = 0;
    }
    return res;
}

inline std::string key2d(const std::vector<P2>& hull) {
    std::string s;
    std::vector<P2> sorted(hull);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& p : sorted) {
        s += static_cast<char>(p.first + 64);
        s += static_cast<char>(p.second + 64);
    }
    return s;
}

}  // namespace detail2d

/// All reflexive polygons whose vertices lie in [-bound, bound]^2, in a
/// deterministic order, each verified reflexive by the exact predicates.
inline std::vector<Polytope> enumerate_reflexive_polygons(int bound) {
    using namespace detail2d;
    if (bound < 1 || bound > 12) throw std::out_of_range("enumerate_reflexive_polygons: bound must be in [1,12]");

    std::vector<P2> box;
    for (int x = -bound; x <= bound; ++x)
        for (int y = -bound; y <= bound; ++y) box.push_back({x, y});

    // Interior lattice points must be a subset of {origin}.
    auto state_ok = [&](const std::vector<P2>& hull) {
        for (const auto& q : box) {
            if (q.first == 0 && q.second == 0) continue;
            if (side2d(hull, q) > 0) return false;
        }
        return true;
    };

    std::unordered_set<std::string> visited;
    std::vector<std::vector<P2>> stack;
    auto push_state = [&](const std::vector<P2>& hull) {
        std::string k = key2d(hull);
        if (visited.insert(std::move(k)).second) stack.push_back(hull);
    };

    // Seeds: every segment and triangle from box points whose hull contains
    // the origin (Caratheodory: each target polygon restricts to one).
    const P2 origin{0, 0};
    for (size_t i = 0; i < box.size(); ++i)
        for (size_t j = i + 1; j < box.size(); ++j) {
            std::vector<P2> h = hull2d({box[i], box[j]});
            if (side2d(h, origin) >= 0) push_state(h);
        }
    for (size_t i = 0; i < box.size(); ++i)
        for (size_t j = i + 1; j < box.size(); ++j)
            for (size_t k = j + 1; k < box.size(); ++k) {
                std::vector<P2> h = hull2d({box[i], box[j], box[k]});
                if (h.size() != 3) continue;  // collinear triples arise from segment seeds
                if (side2d(h, origin) < 0) continue;
                if (!state_ok(h)) continue;
                push_state(h);
            }

    std::vector<std::vector<P2>> finals;
    while (!stack.empty()) {
        std::vector<P2> cur = stack.back();
        stack.pop_back();
        if (cur.size() >= 3 && side2d(cur, origin) > 0) finals.push_back(cur);
        for (const auto& p : box) {
            if (side2d(cur, p) >= 0) continue;  // already inside
            std::vector<P2> grown = cur;
            grown.push_back(p);
            std::vector<P2> h = hull2d(grown);
            if (!state_ok(h)) continue;
            push_state(h);
        }
    }

    // Exact verification and canonical output order.
    std::vector<Polytope> out;
    for (const auto& hull : finals) {
        std::vector<VecQ> pts;
        for (const auto& p : hull) pts.push_back({Rational(p.first), Rational(p.second)});
        Polytope P = Polytope::hull(pts, 2, LatticeTag::M);
        if (is_reflexive(P)) out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), [](const Polytope& a, const Polytope& b) {
        if (a.vertices().size() != b.vertices().size()) return a.vertices().size() < b.vertices().size();
        for (size_t i = 0; i < a.vertices().size(); ++i)
            if (auto c = lex_compare(a.vertices()[i], b.vertices()[i]); c != 0) return c < 0;
        return false;
    });
    return out;
}

}  // namespace qreflex
