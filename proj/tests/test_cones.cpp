#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qreflex/cones.hpp"
#include "qreflex/toric.hpp"
#include "support/fixtures.hpp"

using namespace qreflex;
using namespace fixtures;

namespace {

GradedCone first_orthant(int n) {
    std::vector<VecZ> gens;
    for (int i = 0; i < n; ++i) {
        VecZ e(n, BigInt(0));
        e[i] = BigInt(1);
        gens.push_back(e);
    }
    return graded(PolyhedralCone::from_generators(gens, n, LatticeTag::M));
}

MinkowskiPartition square_partition() { return MinkowskiPartition({seg_x(), seg_y()}); }

}  // namespace

TEST_CASE("dual cone: first orthant is self-dual; double dual is the identity") {
    GradedCone o2 = first_orthant(2);
    CHECK(dual_cone(o2.cone).generators() == o2.cone.generators());
    GradedCone c = cone_over_polytope(square());
    CHECK(dual_cone(dual_cone(c.cone)) == c.cone);
}

TEST_CASE("dual of the cone over the square is the cone over the diamond") {
    GradedCone csq = cone_over_polytope(square());
    GradedCone cdi = cone_over_polytope(diamond(LatticeTag::N));
    CHECK(dual_cone(csq.cone) == cdi.cone);
    // and in general for reflexive P: dual(cone(P)) == cone(P*)
    for (const auto& P : {p2_triangle(), cube3()}) {
        CHECK(dual_cone(cone_over_polytope(P).cone) == cone_over_polytope(polar_dual(P)).cone);
    }
}

TEST_CASE("dual cone pairing nonnegativity on random simplicial cones") {
    GradedCone c = cone_over_polytope(p2_dual_triangle());
    PolyhedralCone d = dual_cone(c.cone);
    for (const auto& g : c.cone.generators())
        for (const auto& h : d.generators()) CHECK(dot(g, h).sign() >= 0);
}

TEST_CASE("gorenstein height: spec values") {
    GradedCone csq = cone_over_polytope(square());
    REQUIRE(csq.height.has_value());
    CHECK(*csq.height == zv({0, 0, 1}));
    GradedCone o2 = first_orthant(2);
    REQUIRE(o2.height.has_value());
    CHECK(*o2.height == zv({1, 1}));
    GradedCone skew = graded(PolyhedralCone::from_generators({zv({1, 0}), zv({1, 2})}, 2, LatticeTag::M));
    REQUIRE(skew.height.has_value());
    CHECK(*skew.height == zv({1, 0}));
}

TEST_CASE("cone over a non-lattice polytope has primitivized rays and no height") {
    GradedCone c = cone_over_polytope(scale(square(), Rational(1, 2)));
    // rays (±1, ±1, 2)
    CHECK(c.cone.generators().size() == 4);
    for (const auto& g : c.cone.generators()) CHECK(g[2] == BigInt(2));
    CHECK_FALSE(c.height.has_value());
}

TEST_CASE("Cayley cone of the square partition") {
    GradedCone C = cayley_cone({seg_x(), seg_y()});
    CHECK(C.cone.rank() == 4);
    // Extreme rays: the four lifted segment endpoints (the spec's prose
    // counts the six height-one lattice points instead; the irredundant
    // generator set has four members, and the level-one slice six points).
    CHECK(C.cone.generators().size() == 4);
    REQUIRE(C.height.has_value());
    CHECK(*C.height == zv({0, 0, 1, 1}));
    Polytope slice1 = grade_slice(C, 1);
    CHECK(lattice_point_count(slice1) == 6);
    // r = 1 reduces to the cone over the polytope.
    CHECK(cayley_cone({square()}).cone == cone_over_polytope(square()).cone);
}

TEST_CASE("grade_slice of the cone over the square") {
    GradedCone c = cone_over_polytope(square());
    Polytope s1 = grade_slice(c, 1);
    CHECK(s1.dim() == 2);
    CHECK(lattice_point_count(s1) == 9);
    Polytope s2 = grade_slice(c, 2);
    CHECK(lattice_point_count(s2) == 25);  // 2*square at height 2
    // Cayley cone of the square partition: level-2 slice has the unique
    // interior lattice point (0,0,1,1).
    GradedCone C = cayley_cone({seg_x(), seg_y()});
    Polytope cs2 = grade_slice(C, 2);
    auto inner = relative_interior_lattice_points(cs2);
    REQUIRE(inner.size() == 1);
    CHECK(inner[0] == zv({0, 0, 1, 1}));
    // A functional vanishing on a generator makes slices unbounded.
    CHECK_THROWS_AS(grade_slice(c, 1, zv({1, 0, 0})), UnboundedError);
}

TEST_CASE("reflexive Gorenstein: cone over a reflexive polytope has index 1") {
    for (const auto& P : {square(), p2_triangle(), cube3()}) {
        GradedCone c = cone_over_polytope(P);
        auto r = is_reflexive_gorenstein(c);
        REQUIRE(r.has_value());
        CHECK(*r == 1);
    }
}

TEST_CASE("reflexive Gorenstein: Cayley cone of the square partition has index 2") {
    GradedCone C = cayley_cone({seg_x(), seg_y()});
    auto r = is_reflexive_gorenstein(C);
    REQUIRE(r.has_value());
    CHECK(*r == 2);
}

TEST_CASE("reflexive Gorenstein: cone over a canonical Fano non-reflexive polytope is not") {
    // conv{e1,e2,e3,(-1,-2,-3)} is canonical Fano but not reflexive.
    Polytope S = Polytope::hull({qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1}), qv({-1, -2, -3})}, 3, LatticeTag::M);
    REQUIRE(is_canonical_fano(S));
    REQUIRE_FALSE(is_reflexive(S));
    GradedCone c = cone_over_polytope(S);
    CHECK_FALSE(is_reflexive_gorenstein(c).has_value());
}

TEST_CASE("almost reflexive Gorenstein: reflexive cones keep their index") {
    GradedCone c = cone_over_polytope(square());
    auto r = is_almost_reflexive_gorenstein(c);
    REQUIRE(r.has_value());
    CHECK(*r == 1);
    CHECK(c.interior_height_point == zv({0, 0, 1}));

    GradedCone C = cayley_cone({seg_x(), seg_y()});
    auto rc = is_almost_reflexive_gorenstein(C);
    REQUIRE(rc.has_value());
    CHECK(*rc == 2);
    CHECK(C.interior_height_point == zv({0, 0, 1, 1}));
}

TEST_CASE("almost reflexive Gorenstein: the rank-2 orthant is the index-2 point pair") {
    // The level-1 slice has no interior lattice point; the level-2 slice has
    // the unique interior point (1,1) and recentres to the segment [-1,1],
    // which is reflexive.  (Consistent with reflexive Gorenstein cones being
    // almost reflexive: the orthant is reflexive Gorenstein of index 2.)
    GradedCone o2 = first_orthant(2);
    auto refl = is_reflexive_gorenstein(o2);
    REQUIRE(refl.has_value());
    CHECK(*refl == 2);
    Polytope s1 = grade_slice(o2, 1);
    CHECK(relative_interior_lattice_points(s1).empty());
    auto r = is_almost_reflexive_gorenstein(o2);
    REQUIRE(r.has_value());
    CHECK(*r == 2);
    CHECK(o2.interior_height_point == zv({1, 1}));
}

TEST_CASE("bullet cone: reflexive case gives the cone over the dual") {
    GradedCone c = cone_over_polytope(square());
    GradedCone b = bullet_cone(c);
    CHECK(b.cone == cone_over_polytope(diamond(LatticeTag::N)).cone);
    // Involution.
    GradedCone bb = bullet_cone(b);
    CHECK(bb.cone == c.cone);
}

TEST_CASE("bullet cone of the Cayley cone matches the dual partition's Cayley cone") {
    MinkowskiPartition part = square_partition();
    MinkowskiPartition nab = dual_partition(part);
    std::vector<Polytope> nh;
    for (const auto& p : nab.parts()) nh.push_back(lattice_hull(p));
    GradedCone C = cayley_cone({seg_x(), seg_y()});
    GradedCone B = bullet_cone(C);
    CHECK(B.cone == cayley_cone(nh).cone);
    CHECK(bullet_cone(B).cone == C.cone);
    // The bullet partner keeps the index.
    CHECK(is_almost_reflexive_gorenstein(B) == std::optional<int>(2));
}

TEST_CASE("Cayley duality identity for partitions") {
    MinkowskiPartition part = square_partition();
    MinkowskiPartition nab = dual_partition(part);
    CHECK(cayley_identity_holds(part, nab));
}

TEST_CASE("Lemma-style dual Cayley generator formula") {
    // dual of C_{P1,P2} = cone over {x - sum_i min<P_i, x> e_i* : x vertex of P*}
    //                     together with {e_1*, e_2*}.
    std::vector<Polytope> parts = {seg_x(), seg_y()};
    GradedCone C = cayley_cone(parts);
    Polytope total = square();
    Polytope dual_total = polar_dual(total);
    std::vector<VecZ> gens;
    for (const auto& x : dual_total.vertices()) {
        VecQ g(4);
        g[0] = x[0];
        g[1] = x[1];
        g[2] = -min_pairing(parts[0], x);
        g[3] = -min_pairing(parts[1], x);
        gens.push_back(primitive(g));
    }
    gens.push_back(zv({0, 0, 1, 0}));
    gens.push_back(zv({0, 0, 0, 1}));
    PolyhedralCone expected = PolyhedralCone::from_generators(gens, 4, LatticeTag::N);
    CHECK(expected == dual_cone(C.cone));
}

TEST_CASE("cayley_mirror") {
    // On a Q-nef-partition it reproduces the dual partition's Cayley cone.
    auto mirror = cayley_mirror({seg_x(), seg_y()});
    REQUIRE(mirror.has_value());
    MinkowskiPartition nab = dual_partition(square_partition());
    std::vector<Polytope> nh;
    for (const auto& p : nab.parts()) nh.push_back(lattice_hull(p));
    CHECK(mirror->cone == cayley_cone(nh).cone);

    // Shifted parts: same total, machinery still runs and reports.
    Polytope shifted1 = translate(seg_x(), qv({0, 1}));
    Polytope shifted2 = translate(seg_y(), qv({0, -1}));
    Polytope total = minkowski_sum(shifted1, shifted2);
    REQUIRE(total == square());
    auto shifted_mirror = cayley_mirror({shifted1, shifted2});
    if (shifted_mirror) {
        CHECK(shifted_mirror->cone.rank() == 4);
        CHECK(shifted_mirror->height.has_value());
    }
}

TEST_CASE("index-1 criterion: recentred dual slice of the cone over an almost reflexive polytope is Q-reflexive") {
    for (const auto& P : {square(), p2_triangle()}) {
        GradedCone c = cone_over_polytope(P);
        REQUIRE(is_almost_reflexive_gorenstein(c) == std::optional<int>(1));
        GradedCone dual{dual_cone(c.cone), std::nullopt, std::nullopt, std::nullopt};
        Polytope slice = grade_slice(dual, 1, *c.interior_height_point);
        Polytope chartpoly = recentre_to_chart(slice, *c.height, *c.interior_height_point);
        CHECK(is_q_reflexive(chartpoly));
    }
}

TEST_CASE("height pairings: generators pair to 1, level-i lattice points pair to i") {
    for (GradedCone c : {cone_over_polytope(square()), cayley_cone({seg_x(), seg_y()}), first_orthant(3)}) {
        REQUIRE(c.height.has_value());
        for (const auto& g : c.cone.generators()) CHECK(dot(g, *c.height) == BigInt(1));
        for (int i = 1; i <= 2; ++i)
            for (const auto& z : lattice_points(grade_slice(c, i))) CHECK(dot(z, *c.height) == BigInt(i));
    }
}

TEST_CASE("almost_reflexive_indices enumerates every admissible level") {
    GradedCone c = cone_over_polytope(square());
    CHECK(almost_reflexive_indices(c) == std::vector<int>{1});
    GradedCone o2 = first_orthant(2);
    CHECK(almost_reflexive_indices(o2) == std::vector<int>{2});
}

TEST_CASE("rank-8 Cayley cone: the 4-cube as four segments") {
    std::vector<Polytope> segs;
    for (int axis = 0; axis < 4; ++axis) {
        VecQ a(4, Rational(0)), b(4, Rational(0));
        a[axis] = Rational(-1);
        b[axis] = Rational(1);
        segs.push_back(Polytope::hull({a, b}, 4, LatticeTag::M));
    }
    GradedCone C = cayley_cone(segs);
    CHECK(C.cone.rank() == 8);
    REQUIRE(C.height.has_value());
    auto idx = is_almost_reflexive_gorenstein(C);
    REQUIRE(idx.has_value());
    CHECK(*idx == 4);
    GradedCone B = bullet_cone(C);
    CHECK(bullet_cone(B).cone == C.cone);
}

TEST_CASE("non-reflexive almost reflexive Gorenstein cone from the frozen 5D instance") {
    // Cone over conv{e1..e5, (-1,-1,-1,-2,-3)}: Gorenstein of rank 6, not
    // reflexive Gorenstein (the polytope is not reflexive), yet almost
    // reflexive of index 1 with a nontrivial bullet partner.
    std::vector<VecQ> pts;
    for (int i = 0; i < 5; ++i) {
        VecQ e(5, Rational(0));
        e[i] = Rational(1);
        pts.push_back(e);
    }
    pts.push_back({Rational(-1), Rational(-1), Rational(-1), Rational(-2), Rational(-3)});
    Polytope S5 = Polytope::hull(pts, 5, LatticeTag::M);
    GradedCone sigma = cone_over_polytope(S5);
    REQUIRE(sigma.height.has_value());
    CHECK_FALSE(is_reflexive_gorenstein(sigma).has_value());
    auto idx = is_almost_reflexive_gorenstein(sigma);
    REQUIRE(idx.has_value());
    CHECK(*idx == 1);
    GradedCone bullet = bullet_cone(sigma);
    CHECK(bullet.cone == cone_over_polytope(bullet_dual(S5)).cone);
    CHECK(bullet_cone(bullet).cone == sigma.cone);
    CHECK(is_almost_reflexive_gorenstein(bullet) == std::optional<int>(1));
    // The two sides carry different generalized CY equations.
    LaurentSystem y_sigma = emit_generalized_cy(sigma);
    LaurentSystem y_bullet = emit_generalized_cy(bullet);
    CHECK(y_sigma.equations[0].size() == lattice_point_count(bullet_dual(S5)));
    CHECK(y_bullet.equations[0].size() == lattice_point_count(S5));
    CHECK(y_sigma.equations[0].size() != y_bullet.equations[0].size());
}

TEST_CASE("dual of the cone over a rational Q-reflexive polytope") {
    // Lemma-style statement holds for rational polytopes too: the dual of
    // R>=0 (D,1) is R>=0 (D*,1) whenever 0 is interior to D.
    std::vector<VecQ> pts;
    for (int i = 0; i < 5; ++i) {
        VecQ e(5, Rational(0));
        e[i] = Rational(1);
        pts.push_back(e);
    }
    pts.push_back({Rational(-1), Rational(-1), Rational(-1), Rational(-2), Rational(-3)});
    Polytope S5 = Polytope::hull(pts, 5, LatticeTag::M);
    Polytope D = polar_dual(S5);  // rational, Q-reflexive
    GradedCone cd = cone_over_polytope(D);
    CHECK_FALSE(cd.height.has_value());  // primitivized rays leave height 1
    CHECK(dual_cone(cd.cone) == cone_over_polytope(S5).cone);
}

TEST_CASE("structure errors") {
    CHECK_THROWS_AS(PolyhedralCone::from_generators({zv({1, 0}), zv({-1, 0})}, 2, LatticeTag::M), StructureError);
    CHECK_THROWS_AS(cone_over_polytope(seg_x()), DegeneracyError);
    GradedCone c = cone_over_polytope(scale(square(), Rational(1, 2)));
    CHECK_THROWS_AS(grade_slice(c, 1), StructureError);  // no height vector
}
