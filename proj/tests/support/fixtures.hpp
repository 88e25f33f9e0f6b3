#pragma once

// Shared small polytopes used across the test suites.

#include "qreflex/polytope.hpp"

namespace fixtures {

using namespace qreflex;

inline VecQ qv(std::initializer_list<int> xs) {
    VecQ v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

inline VecZ zv(std::initializer_list<int> xs) {
    VecZ v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

/// [-1,1]^2
inline Polytope square() {
    return Polytope::hull({qv({1, 1}), qv({1, -1}), qv({-1, 1}), qv({-1, -1})}, 2, LatticeTag::M);
}

/// conv{±e1, ±e2}
inline Polytope diamond(LatticeTag tag = LatticeTag::M) {
    return Polytope::hull({qv({1, 0}), qv({-1, 0}), qv({0, 1}), qv({0, -1})}, 2, tag);
}

/// conv{(1,0),(0,1),(-1,-1)} — the simplex of the projective plane.
inline Polytope p2_triangle() {
    return Polytope::hull({qv({1, 0}), qv({0, 1}), qv({-1, -1})}, 2, LatticeTag::M);
}

/// conv{(2,-1),(-1,2),(-1,-1)} — its polar dual.
inline Polytope p2_dual_triangle(LatticeTag tag = LatticeTag::M) {
    return Polytope::hull({qv({2, -1}), qv({-1, 2}), qv({-1, -1})}, 2, tag);
}

/// [-1,1] x {0}
inline Polytope seg_x() { return Polytope::hull({qv({-1, 0}), qv({1, 0})}, 2, LatticeTag::M); }

/// {0} x [-1,1]
inline Polytope seg_y() { return Polytope::hull({qv({0, -1}), qv({0, 1})}, 2, LatticeTag::M); }

/// [-1,1]^3
inline Polytope cube3() {
    std::vector<VecQ> vs;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) vs.push_back(qv({a, b, c}));
    return Polytope::hull(vs, 3, LatticeTag::M);
}

inline Polytope point(std::initializer_list<int> xs, int rank, LatticeTag tag = LatticeTag::M) {
    return Polytope::hull({qv(xs)}, rank, tag);
}

}  // namespace fixtures
