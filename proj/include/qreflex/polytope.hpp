#pragma once

/// Bounded rational polytopes with exact V- and H-representations.
///
/// A Polytope stores its extreme points in canonical (lexicographic) order
/// together with an eagerly computed facet description, so equality of
/// polytopes is structural comparison.  Lower-dimensional polytopes carry
/// the affine-hull equations alongside facet inequalities that are valid on
/// the affine hull.

#include "qreflex/double_description.hpp"
#include "qreflex/errors.hpp"
#include "qreflex/linalg.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace qreflex {

/// Which of the two dual lattices a polytope lives in.
enum class LatticeTag { M, N };

inline LatticeTag dual_tag(LatticeTag t) { return t == LatticeTag::M ? LatticeTag::N : LatticeTag::M; }
inline char tag_letter(LatticeTag t) { return t == LatticeTag::M ? 'M' : 'N'; }

/// Facet inequality <x, normal> >= offset with primitive integer data.
struct Halfspace {
    VecZ normal;
    BigInt offset;
};

/// Affine-hull equation <x, normal> = offset with primitive integer data.
struct AffineEquation {
    VecZ normal;
    BigInt offset;
};

namespace detail {

/// Clears denominators of (normal | offset) jointly and divides by the gcd;
/// the inequality direction is preserved (positive scaling only).
inline std::pair<VecZ, BigInt> canonical_halfspace(const VecQ& normal, const Rational& offset) {
    VecQ joint = normal;
    joint.push_back(offset);
    VecZ prim = primitive(joint);
    BigInt off = prim.back();
    prim.pop_back();
    return {std::move(prim), std::move(off)};
}

/// Indices of a maximal linearly independent subset.
inline std::vector<int> independent_subset(const std::vector<VecQ>& vecs, int limit = -1) {
    std::vector<int> picked;
    MatQ probe;
    for (size_t i = 0; i < vecs.size(); ++i) {
        probe.push_back(vecs[i]);
        if (rank(probe) == static_cast<int>(picked.size()) + 1)
            picked.push_back(static_cast<int>(i));
        else
            probe.pop_back();
        if (limit >= 0 && static_cast<int>(picked.size()) == limit) break;
    }
    return picked;
}

}  // namespace detail

class Polytope {
public:
    /// The distinguished empty polytope (no points at all).
    static Polytope empty(int rank, LatticeTag tag) {
        Polytope p;
        p.rank_ = rank;
        p.tag_ = tag;
        p.dim_ = -1;
        return p;
    }

    /// Convex hull of a nonempty set of rational points.
    static Polytope hull(const std::vector<VecQ>& points, int ambient, LatticeTag tag);

    /// Trusted constructor for the case where both representations are known
    /// to be exact and irredundant (e.g. polar duality).  Vertices and facets
    /// are canonicalized; incidence is recomputed.
    static Polytope from_dual_description(std::vector<VecQ> vertices, std::vector<Halfspace> facets, int ambient,
                                          LatticeTag tag);

    int rank() const { return rank_; }
    LatticeTag tag() const { return tag_; }
    bool is_empty() const { return dim_ < 0; }
    int dim() const { return dim_; }
    bool is_full_dimensional() const { return dim_ == rank_; }

    const std::vector<VecQ>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& facets() const { return facets_; }
    const std::vector<AffineEquation>& equations() const { return equations_; }
    /// For each facet, the sorted indices of the vertices lying on it.
    const std::vector<std::vector<int>>& facet_vertex_sets() const { return facet_vertices_; }

    bool is_lattice() const {
        for (const auto& v : vertices_)
            for (const auto& c : v)
                if (!c.is_integer()) return false;
        return true;
    }

    bool contains(const VecQ& x) const {
        if (is_empty()) return false;
        if (static_cast<int>(x.size()) != rank_) throw DimensionMismatchError("contains: point length mismatch");
        for (const auto& e : equations_)
            if (!(dot(x, e.normal) == Rational(e.offset))) return false;
        for (const auto& f : facets_)
            if (dot(x, f.normal) < Rational(f.offset)) return false;
        if (dim_ == 0) return x == vertices_[0];
        return true;
    }

    bool contains_zero() const { return !is_empty() && contains(VecQ(rank_, Rational(0))); }

    /// True iff the polytope is full-dimensional with 0 strictly inside.
    bool zero_in_interior() const {
        if (!is_full_dimensional()) return false;
        for (const auto& f : facets_)
            if (f.offset.sign() >= 0) return false;
        return true;
    }

    /// A facet certificate that 0 is not interior (offset >= 0), if any.
    std::optional<Halfspace> zero_interior_obstruction() const {
        for (const auto& f : facets_)
            if (f.offset.sign() >= 0) return f;
        return std::nullopt;
    }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.rank_ == b.rank_ && a.tag_ == b.tag_ && a.vertices_ == b.vertices_;
    }

    std::string describe() const;

private:
    Polytope() = default;

    int rank_ = 0;
    LatticeTag tag_ = LatticeTag::M;
    int dim_ = -1;
    std::vector<VecQ> vertices_;
    std::vector<Halfspace> facets_;
    std::vector<AffineEquation> equations_;
    std::vector<std::vector<int>> facet_vertices_;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

inline Polytope Polytope::hull(const std::vector<VecQ>& points, int ambient, LatticeTag tag) {
    if (points.empty()) throw DimensionMismatchError("convex_hull: empty point set");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != ambient)
            throw DimensionMismatchError("convex_hull: point length differs from ambient rank");

    std::vector<VecQ> pts = points;
    std::sort(pts.begin(), pts.end(), VecQLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Polytope P;
    P.rank_ = ambient;
    P.tag_ = tag;

    const VecQ& p0 = pts[0];
    std::vector<VecQ> diffs;
    diffs.reserve(pts.size() - 1);
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - p0);
    auto basis_idx = detail::independent_subset(diffs);
    int k = static_cast<int>(basis_idx.size());
    P.dim_ = k;

    // Affine-hull equations: nullspace of the basis directions.
    if (k < ambient) {
        MatQ rows;
        for (int bi : basis_idx) rows.push_back(diffs[bi]);
        std::vector<VecQ> normals;
        if (rows.empty()) {
            for (int i = 0; i < ambient; ++i) {
                VecQ e(ambient, Rational(0));
                e[i] = Rational(1);
                normals.push_back(std::move(e));
            }
        } else {
            normals = nullspace(rows);
        }
        for (const auto& nq : normals) {
            auto [n, c] = detail::canonical_halfspace(nq, dot(nq, p0));
            if (!n.empty()) {
                bool neg = false;
                for (const auto& x : n) {
                    if (x.sign() != 0) {
                        neg = x.sign() < 0;
                        break;
                    }
                }
                if (neg) {
                    for (auto& x : n) x = -x;
                    c = -c;
                }
            }
            P.equations_.push_back({std::move(n), std::move(c)});
        }
        std::sort(P.equations_.begin(), P.equations_.end(), [](const AffineEquation& a, const AffineEquation& b) {
            if (auto c = lex_compare(a.normal, b.normal); c != 0) return c < 0;
            return a.offset < b.offset;
        });
    }

    if (k == 0) {
        P.vertices_ = {pts[0]};
        return P;
    }

    // Chart onto the affine hull: k coordinate indices R with invertible
    // restriction of the basis, intrinsic coords y = S (x[R] - p0[R]).
    MatQ basis_cols(ambient, VecQ(k));  // column j = basis vector j
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < ambient; ++i) basis_cols[i][j] = diffs[basis_idx[j]][i];
    std::vector<VecQ> basis_rows_as_vecs(ambient);
    for (int i = 0; i < ambient; ++i) basis_rows_as_vecs[i] = basis_cols[i];
    auto row_idx = detail::independent_subset(basis_rows_as_vecs, k);
    MatQ sub(k, VecQ(k));
    for (int i = 0; i < k; ++i) sub[i] = basis_cols[row_idx[i]];
    auto S = inverse(sub);
    if (!S) throw StructureError("convex_hull: singular chart submatrix");

    auto to_intrinsic = [&](const VecQ& x) {
        VecQ rel(k);
        for (int i = 0; i < k; ++i) rel[i] = x[row_idx[i]] - p0[row_idx[i]];
        VecQ y(k, Rational(0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) y[i] += (*S)[i][j] * rel[j];
        return y;
    };

    std::vector<VecQ> ys;
    ys.reserve(pts.size());
    for (const auto& p : pts) ys.push_back(to_intrinsic(p));

    // Facets of the intrinsic full-dimensional hull via the cone of valid
    // inequalities { (a,c) : <y_i, a> - c >= 0 }.
    std::vector<VecZ> rows;
    rows.reserve(ys.size());
    for (const auto& y : ys) {
        VecQ hom = y;
        hom.push_back(Rational(-1));
        rows.push_back(primitive(hom));
    }
    ConeRays C = extreme_rays(rows, k + 1);
    if (!C.lineality.empty()) throw StructureError("convex_hull: unexpected lineality in inequality cone");

    struct IntrFacet {
        VecQ a;
        Rational c;
    };
    std::vector<IntrFacet> ifacets;
    for (const auto& ray : C.rays) {
        VecQ a(k);
        bool zero = true;
        for (int i = 0; i < k; ++i) {
            a[i] = Rational(ray[i]);
            zero = zero && a[i].is_zero();
        }
        if (zero) continue;  // the trivial inequality 0 >= -1; never a facet here
        ifacets.push_back({std::move(a), Rational(ray[k])});
    }

    // Vertices: points whose tight facet normals span the intrinsic space.
    std::vector<int> vertex_ids;
    for (size_t i = 0; i < ys.size(); ++i) {
        MatQ tight;
        for (const auto& f : ifacets)
            if (dot(f.a, ys[i]) == f.c) tight.push_back(f.a);
        if (static_cast<int>(tight.size()) >= k && qreflex::rank(tight) == k) vertex_ids.push_back(static_cast<int>(i));
    }
    for (int id : vertex_ids) P.vertices_.push_back(pts[id]);
    std::sort(P.vertices_.begin(), P.vertices_.end(), VecQLess{});

    // Facets back in ambient coordinates: n[row_idx] = S^T a, offset shifts by p0.
    for (const auto& f : ifacets) {
        VecQ n(ambient, Rational(0));
        for (int j = 0; j < k; ++j) {
            Rational s;
            for (int i = 0; i < k; ++i) s += (*S)[i][j] * f.a[i];
            n[row_idx[j]] = s;
        }
        Rational off = f.c + dot(n, p0);
        auto [nz, cz] = detail::canonical_halfspace(n, off);
        P.facets_.push_back({std::move(nz), std::move(cz)});
    }
    std::sort(P.facets_.begin(), P.facets_.end(), [](const Halfspace& a, const Halfspace& b) {
        if (auto c = lex_compare(a.normal, b.normal); c != 0) return c < 0;
        return a.offset < b.offset;
    });

    P.facet_vertices_.resize(P.facets_.size());
    for (size_t fi = 0; fi < P.facets_.size(); ++fi)
        for (size_t vi = 0; vi < P.vertices_.size(); ++vi)
            if (dot(P.vertices_[vi], P.facets_[fi].normal) == Rational(P.facets_[fi].offset))
                P.facet_vertices_[fi].push_back(static_cast<int>(vi));
    return P;
}

inline Polytope Polytope::from_dual_description(std::vector<VecQ> vertices, std::vector<Halfspace> facets, int ambient,
                                                LatticeTag tag) {
    Polytope P;
    P.rank_ = ambient;
    P.tag_ = tag;
    P.dim_ = ambient;
    std::sort(vertices.begin(), vertices.end(), VecQLess{});
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    P.vertices_ = std::move(vertices);
    std::sort(facets.begin(), facets.end(), [](const Halfspace& a, const Halfspace& b) {
        if (auto c = lex_compare(a.normal, b.normal); c != 0) return c < 0;
        return a.offset < b.offset;
    });
    P.facets_ = std::move(facets);
    P.facet_vertices_.resize(P.facets_.size());
    for (size_t fi = 0; fi < P.facets_.size(); ++fi)
        for (size_t vi = 0; vi < P.vertices_.size(); ++vi)
            if (dot(P.vertices_[vi], P.facets_[fi].normal) == Rational(P.facets_[fi].offset))
                P.facet_vertices_[fi].push_back(static_cast<int>(vi));
    return P;
}

inline std::string Polytope::describe() const {
    if (is_empty()) return "{empty rank-" + std::to_string(rank_) + "}";
    std::string s = "{";
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (i) s += ", ";
        s += "(";
        for (size_t j = 0; j < vertices_[i].size(); ++j) {
            if (j) s += ",";
            s += vertices_[i][j].to_string();
        }
        s += ")";
    }
    return s + "}";
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

inline Polytope convex_hull(const std::vector<VecQ>& points, int ambient, LatticeTag tag = LatticeTag::M) {
    return Polytope::hull(points, ambient, tag);
}

inline Polytope convex_hull_z(const std::vector<VecZ>& points, int ambient, LatticeTag tag = LatticeTag::M) {
    std::vector<VecQ> qs;
    qs.reserve(points.size());
    for (const auto& p : points) qs.push_back(to_vecq(p));
    return Polytope::hull(qs, ambient, tag);
}

/// Polar dual  P* = { y : <v, y> >= -1 for all v in P }.  Requires P
/// full-dimensional with 0 interior; the result lives in the dual lattice.
inline Polytope polar_dual(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional())
        throw DegeneracyError("polar_dual: polytope is not full-dimensional");
    if (auto bad = P.zero_interior_obstruction()) {
        std::string hs = "<x,(";
        for (size_t i = 0; i < bad->normal.size(); ++i) {
            if (i) hs += ",";
            hs += bad->normal[i].to_string();
        }
        hs += ")> >= " + bad->offset.to_string();
        throw DegeneracyError("polar_dual: 0 is not an interior point; violated halfspace " + hs);
    }

    std::vector<HalfspaceQ> hs;
    hs.reserve(P.vertices().size());
    for (const auto& v : P.vertices()) hs.push_back({v, Rational(-1)});
    auto result = intersect_halfspaces(hs, P.rank());
    if (result.kind != HalfspaceIntersection::Kind::Polytope)
        throw DegeneracyError("polar_dual: dual is not a polytope (internal invariant violated)");

    std::vector<Halfspace> facets;
    for (const auto& v : P.vertices()) {
        auto [n, c] = detail::canonical_halfspace(v, Rational(-1));
        facets.push_back({std::move(n), std::move(c)});
    }
    return Polytope::from_dual_description(std::move(result.vertices), std::move(facets), P.rank(),
                                           dual_tag(P.tag()));
}

/// Exact Minkowski sum; vertices of the result are extreme points of the
/// pairwise vertex sums.
inline Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
    if (P.rank() != Q.rank()) throw DimensionMismatchError("minkowski_sum: ambient ranks differ");
    if (P.tag() != Q.tag()) throw DimensionMismatchError("minkowski_sum: lattice tags differ");
    if (P.is_empty() || Q.is_empty()) return Polytope::empty(P.rank(), P.tag());
    std::vector<VecQ> sums;
    sums.reserve(P.vertices().size() * Q.vertices().size());
    for (const auto& p : P.vertices())
        for (const auto& q : Q.vertices()) sums.push_back(p + q);
    return Polytope::hull(sums, P.rank(), P.tag());
}

/// min over P of the linear functional y (exact).
inline Rational min_pairing(const Polytope& P, const VecQ& y) {
    if (P.is_empty()) throw DegeneracyError("min_pairing: empty polytope");
    if (static_cast<int>(y.size()) != P.rank()) throw DimensionMismatchError("min_pairing: functional length mismatch");
    std::optional<Rational> best;
    for (const auto& v : P.vertices()) {
        Rational val = dot(v, y);
        if (!best || val < *best) best = val;
    }
    return *best;
}

inline Rational min_pairing(const Polytope& P, const VecZ& y) { return min_pairing(P, to_vecq(y)); }

/// All k-dimensional faces, each as a polytope in the ambient space.
inline std::vector<Polytope> faces(const Polytope& P, int k) {
    if (P.is_empty() || k < 0 || k > P.dim()) throw std::out_of_range("faces: k outside [0, dim]");
    if (k == P.dim()) return {P};

    std::vector<std::vector<int>> facet_sets = P.facet_vertex_sets();
    std::vector<std::vector<int>> all = {};
    {
        std::vector<int> top(P.vertices().size());
        for (size_t i = 0; i < top.size(); ++i) top[i] = static_cast<int>(i);
        std::vector<std::vector<int>> queue = {top};
        std::vector<std::vector<int>> seen = {top};
        while (!queue.empty()) {
            auto cur = queue.back();
            queue.pop_back();
            for (const auto& fs : facet_sets) {
                std::vector<int> inter;
                std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(), std::back_inserter(inter));
                if (inter.empty() || inter == cur) continue;
                if (std::find(seen.begin(), seen.end(), inter) == seen.end()) {
                    seen.push_back(inter);
                    queue.push_back(inter);
                }
            }
        }
        all = std::move(seen);
    }

    std::vector<Polytope> result;
    for (const auto& vs : all) {
        if (vs.size() == P.vertices().size()) continue;
        std::vector<VecQ> pts;
        pts.reserve(vs.size());
        for (int i : vs) pts.push_back(P.vertices()[i]);
        Polytope F = Polytope::hull(pts, P.rank(), P.tag());
        if (F.dim() == k) result.push_back(std::move(F));
    }
    std::sort(result.begin(), result.end(),
              [](const Polytope& a, const Polytope& b) { return lex_compare(a.vertices()[0], b.vertices()[0]) < 0 ||
                                                               (a.vertices()[0] == b.vertices()[0] &&
                                                                a.vertices().size() < b.vertices().size()); });
    return result;
}

inline Polytope scale(const Polytope& P, const Rational& t) {
    if (t.sign() <= 0) throw DimensionMismatchError("scale: factor must be positive");
    if (P.is_empty()) return P;
    std::vector<VecQ> vs;
    vs.reserve(P.vertices().size());
    for (const auto& v : P.vertices()) vs.push_back(t * v);
    return Polytope::hull(vs, P.rank(), P.tag());
}

inline Polytope translate(const Polytope& P, const VecQ& u) {
    if (P.is_empty()) return P;
    if (static_cast<int>(u.size()) != P.rank()) throw DimensionMismatchError("translate: vector length mismatch");
    std::vector<VecQ> vs;
    vs.reserve(P.vertices().size());
    for (const auto& v : P.vertices()) vs.push_back(v + u);
    return Polytope::hull(vs, P.rank(), P.tag());
}

}  // namespace qreflex
