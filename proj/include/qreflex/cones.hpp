#pragma once

/// Full-dimensional pointed rational cones, Gorenstein gradings, Cayley
/// cones, reflexive and almost-reflexive Gorenstein structure, and the
/// bullet involution on cones.

#include "qreflex/lattice_enum.hpp"
#include "qreflex/nef_partition.hpp"
#include "qreflex/polytope.hpp"
#include "qreflex/reflexivity.hpp"

#include <optional>
#include <vector>

namespace qreflex {

/// A pointed polyhedral cone with primitive extreme-ray generators and the
/// dual description cached.  Construction from generators runs one double
/// description pass; the dual cone is then a representation swap.
class PolyhedralCone {
public:
    static PolyhedralCone from_generators(const std::vector<VecZ>& gens, int ambient, LatticeTag tag) {
        if (gens.empty()) throw StructureError("cone: no generators");
        for (const auto& g : gens)
            if (static_cast<int>(g.size()) != ambient) throw DimensionMismatchError("cone: generator length mismatch");
        ConeRays dual = extreme_rays(gens, ambient);  // rays of {y : <g,y> >= 0} = dual cone
        if (!dual.lineality.empty())
            throw StructureError("cone: not full-dimensional (dual has lineality)");
        // Extreme rays of the primal: generators whose tight dual-ray set has rank ambient-1.
        std::vector<VecZ> prim;
        for (const auto& g : gens) prim.push_back(primitive(g));
        std::sort(prim.begin(), prim.end(), VecZLess{});
        prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
        std::vector<VecZ> extreme;
        for (const auto& g : prim) {
            MatQ tight;
            for (const auto& h : dual.rays)
                if (dot(g, h).is_zero()) tight.push_back(to_vecq(h));
            if (!tight.empty() && qreflex::rank(tight) == ambient - 1) extreme.push_back(g);
        }
        if (extreme.empty()) {
            if (prim.size() == 1 && ambient == 1)
                extreme = prim;  // a ray on the line
            else
                throw StructureError("cone: no extreme generators (degenerate input)");
        }
        // Pointedness: the dual must be full-dimensional.
        MatQ dr;
        for (const auto& h : dual.rays) dr.push_back(to_vecq(h));
        if (qreflex::rank(dr) != ambient) throw StructureError("cone: not pointed");

        PolyhedralCone c;
        c.rank_ = ambient;
        c.tag_ = tag;
        c.generators_ = std::move(extreme);
        c.halfspaces_ = dual.rays;
        return c;
    }

    int rank() const { return rank_; }
    LatticeTag tag() const { return tag_; }
    /// Primitive generators of the extreme rays, canonically ordered.
    const std::vector<VecZ>& generators() const { return generators_; }
    /// Primitive inner normals: the cone is { x : <x,h> >= 0 for all h }.
    const std::vector<VecZ>& halfspaces() const { return halfspaces_; }

    bool contains(const VecQ& x) const {
        for (const auto& h : halfspaces_)
            if (dot(x, h).sign() < 0) return false;
        return true;
    }

    friend bool operator==(const PolyhedralCone& a, const PolyhedralCone& b) {
        return a.rank_ == b.rank_ && a.tag_ == b.tag_ && a.generators_ == b.generators_;
    }

private:
    friend PolyhedralCone dual_cone(const PolyhedralCone&);
    PolyhedralCone() = default;
    int rank_ = 0;
    LatticeTag tag_ = LatticeTag::M;
    std::vector<VecZ> generators_;
    std::vector<VecZ> halfspaces_;
};

/// Exact dual cone; an involution on full-dimensional pointed cones.
inline PolyhedralCone dual_cone(const PolyhedralCone& C) {
    PolyhedralCone d;
    d.rank_ = C.rank();
    d.tag_ = dual_tag(C.tag());
    d.generators_ = C.halfspaces();
    d.halfspaces_ = C.generators();
    return d;
}

/// The unique integral covector pairing to 1 with every primitive generator,
/// when it exists.
inline std::optional<VecZ> gorenstein_height(const PolyhedralCone& C) {
    MatQ A;
    VecQ b;
    for (const auto& g : C.generators()) {
        A.push_back(to_vecq(g));
        b.emplace_back(1);
    }
    auto h = solve(A, b);
    if (!h) return std::nullopt;
    // Full-dimensional cones determine h uniquely; it must be integral.
    return to_vecz(*h);
}

/// A cone with the Gorenstein grading data attached when present.
struct GradedCone {
    PolyhedralCone cone;
    std::optional<VecZ> height;                 // h with <g, h> = 1 on generators
    std::optional<int> index;                   // r, once the almost-reflexive search succeeded
    std::optional<VecZ> interior_height_point;  // the unique relative-interior point of the level-r slice

    friend bool operator==(const GradedCone& a, const GradedCone& b) { return a.cone == b.cone; }
};

inline GradedCone graded(PolyhedralCone c) {
    GradedCone g{std::move(c), std::nullopt, std::nullopt, std::nullopt};
    g.height = gorenstein_height(g.cone);
    return g;
}

/// R>=0 (P, 1): the cone over a polytope placed at height one.
inline GradedCone cone_over_polytope(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional())
        throw DegeneracyError("cone_over_polytope: polytope is not full-dimensional");
    if (!P.zero_in_interior()) throw DegeneracyError("cone_over_polytope: 0 is not interior");
    std::vector<VecZ> gens;
    for (const auto& v : P.vertices()) {
        VecQ lifted = v;
        lifted.push_back(Rational(1));
        gens.push_back(primitive(lifted));
    }
    return graded(PolyhedralCone::from_generators(gens, P.rank() + 1, P.tag()));
}

/// Cayley cone of an r-tuple of polytopes in a common space: the cone over
/// the polytopes shifted into disjoint unit heights.
inline GradedCone cayley_cone(const std::vector<Polytope>& parts) {
    if (parts.empty()) throw DimensionMismatchError("cayley_cone: no parts");
    const int d = parts[0].rank();
    const int r = static_cast<int>(parts.size());
    for (const auto& p : parts) {
        if (p.rank() != d || p.tag() != parts[0].tag())
            throw DimensionMismatchError("cayley_cone: parts disagree on rank or lattice tag");
        if (p.is_empty()) throw DimensionMismatchError("cayley_cone: empty part");
    }
    std::vector<VecZ> gens;
    for (int i = 0; i < r; ++i) {
        for (const auto& v : parts[i].vertices()) {
            VecQ lifted = v;
            for (int t = 0; t < r; ++t) lifted.push_back(Rational(t == i ? 1 : 0));
            gens.push_back(primitive(lifted));
        }
    }
    return graded(PolyhedralCone::from_generators(gens, d + r, parts[0].tag()));
}

/// The slice { x in C : <x, functional> = level } as a polytope; requires the
/// functional to be positive on every generator.
inline Polytope grade_slice(const GradedCone& C, int level, const VecZ& functional) {
    if (static_cast<int>(functional.size()) != C.cone.rank())
        throw DimensionMismatchError("grade_slice: functional length mismatch");
    if (level < 0) throw std::out_of_range("grade_slice: negative level");
    std::vector<VecQ> pts;
    for (const auto& g : C.cone.generators()) {
        BigInt pair = dot(functional, g);
        if (pair.sign() <= 0)
            throw UnboundedError("grade_slice: functional is not positive on the cone",
                                 "(" + g[0].to_string() + ",...)");
        Rational t = Rational(BigInt(level)) / Rational(pair);
        VecQ p(C.cone.rank());
        for (int i = 0; i < C.cone.rank(); ++i) p[i] = t * Rational(g[i]);
        pts.push_back(std::move(p));
    }
    return Polytope::hull(pts, C.cone.rank(), C.cone.tag());
}

inline Polytope grade_slice(const GradedCone& C, int level) {
    if (!C.height) throw StructureError("grade_slice: cone has no height vector");
    return grade_slice(C, level, *C.height);
}

/// Transport of a polytope lying in { <x,h> = c } into chart coordinates of
/// the sublattice h^perp after recentring at a lattice point of the slice.
inline Polytope recentre_to_chart(const Polytope& slice, const VecZ& centre, const VecZ& h) {
    auto chart = hyperplane_chart(h);
    std::vector<VecQ> pts;
    VecQ c = to_vecq(centre);
    for (const auto& v : slice.vertices()) pts.push_back(chart.to_chart(v - c));
    return Polytope::hull(pts, static_cast<int>(h.size()) - 1, slice.tag());
}

/// Reflexive Gorenstein test: the dual cone must be Gorenstein too; the
/// index is the pairing of the two height vectors.  The result is
/// cross-checked against the slice criterion (the level-r slice recentred at
/// the dual height must be reflexive in the perpendicular sublattice).
inline std::optional<int> is_reflexive_gorenstein(const GradedCone& C) {
    if (!C.height) throw StructureError("is_reflexive_gorenstein: cone has no height vector");
    auto dual_height = gorenstein_height(dual_cone(C.cone));
    if (!dual_height) return std::nullopt;
    BigInt r = dot(*C.height, *dual_height);
    if (r.sign() <= 0) return std::nullopt;
    int ri = static_cast<int>(r.to_int64());
    Polytope slice = grade_slice(C, ri);
    Polytope chartpoly = recentre_to_chart(slice, *dual_height, *C.height);
    if (!is_reflexive(chartpoly))
        throw StructureError("is_reflexive_gorenstein: slice criterion disagrees with dual-height criterion");
    return ri;
}

/// Almost-reflexive Gorenstein search: the smallest r whose level-r slice
/// has a unique relative-interior lattice point h and whose recentred slice
/// is almost reflexive in the perpendicular sublattice.  Fills index and
/// interior_height_point on success.
inline std::optional<int> is_almost_reflexive_gorenstein(GradedCone& C) {
    if (!C.height) throw StructureError("is_almost_reflexive_gorenstein: cone has no height vector");
    if (C.index && C.interior_height_point) return C.index;
    for (int r = 1; r <= C.cone.rank(); ++r) {
        Polytope slice = grade_slice(C, r);
        auto inner = relative_interior_lattice_points(slice, 2);
        if (inner.size() != 1) continue;
        Polytope chartpoly = recentre_to_chart(slice, inner[0], *C.height);
        if (is_almost_reflexive(chartpoly)) {
            C.index = r;
            C.interior_height_point = inner[0];
            return r;
        }
    }
    return std::nullopt;
}

/// All levels r <= rank passing the almost-reflexive slice test.
inline std::vector<int> almost_reflexive_indices(const GradedCone& C) {
    if (!C.height) throw StructureError("almost_reflexive_indices: cone has no height vector");
    std::vector<int> out;
    for (int r = 1; r <= C.cone.rank(); ++r) {
        Polytope slice = grade_slice(C, r);
        auto inner = relative_interior_lattice_points(slice, 2);
        if (inner.size() != 1) continue;
        if (is_almost_reflexive(recentre_to_chart(slice, inner[0], *C.height))) out.push_back(r);
    }
    return out;
}

/// sigma-bullet: the cone over the lattice hull of the dual cone's level-one
/// slice, graded by the interior height point.  An involution on almost
/// reflexive Gorenstein cones.
inline GradedCone bullet_cone(GradedCone& C) {
    if (!is_almost_reflexive_gorenstein(C))
        throw StructureError("bullet_cone: cone is not almost reflexive Gorenstein");
    PolyhedralCone dual = dual_cone(C.cone);
    GradedCone dual_graded{dual, C.interior_height_point, std::nullopt, std::nullopt};
    Polytope slice1 = grade_slice(dual_graded, 1, *C.interior_height_point);
    Polytope hull = lattice_hull(slice1);
    if (hull.is_empty() || hull.dim() != C.cone.rank() - 1)
        throw StructureError("bullet_cone: level-one lattice hull is degenerate");
    std::vector<VecZ> gens;
    for (const auto& v : hull.vertices()) {
        auto z = to_vecz(v);
        if (!z) throw StructureError("bullet_cone: lattice hull vertex is not integral");
        gens.push_back(primitive(*z));
    }
    GradedCone out = graded(PolyhedralCone::from_generators(gens, C.cone.rank(), dual_tag(C.cone.tag())));
    return out;
}

/// Mirror construction for possibly-shifted partitions: builds the Cayley
/// cone of the parts and, when it is almost reflexive Gorenstein, returns
/// its bullet cone (the generalized Calabi-Yau cone of the mirror).
inline std::optional<GradedCone> cayley_mirror(const std::vector<Polytope>& parts) {
    Polytope total = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) total = minkowski_sum(total, parts[i]);
    if (!total.is_full_dimensional() || !total.zero_in_interior())
        throw DegeneracyError("cayley_mirror: 0 must be interior to the Minkowski total");
    GradedCone C = cayley_cone(parts);
    if (!C.height) return std::nullopt;
    if (!is_almost_reflexive_gorenstein(C)) return std::nullopt;
    return bullet_cone(C);
}

/// The Cayley-dual identity of the partition duality theory, packaged for
/// verify_duality: dual_cone(Cayley(parts)) == Cayley([dual parts]) and
/// symmetrically.
inline bool cayley_identity_holds(const MinkowskiPartition& part, const MinkowskiPartition& nabla) {
    std::vector<Polytope> nabla_hulls, part_hulls;
    for (const auto& p : nabla.parts()) nabla_hulls.push_back(lattice_hull(p));
    for (const auto& p : part.parts()) part_hulls.push_back(lattice_hull(p));
    GradedCone lhs1 = cayley_cone(part.parts());
    GradedCone rhs1 = cayley_cone(nabla_hulls);
    if (!(dual_cone(lhs1.cone) == rhs1.cone)) return false;
    GradedCone lhs2 = cayley_cone(nabla.parts());
    GradedCone rhs2 = cayley_cone(part_hulls);
    return dual_cone(lhs2.cone) == rhs2.cone;
}

}  // namespace qreflex
