#pragma once

/// Normal fans, torus-invariant Q-divisors, the support-function convexity
/// test for Q-nef, the monomial/lattice-point correspondence, and emission
/// of the defining equations (complete intersections in homogeneous
/// coordinates and the generalized Calabi-Yau hypersurface).

#include "qreflex/cones.hpp"
#include "qreflex/lattice_enum.hpp"
#include "qreflex/nef_partition.hpp"
#include "qreflex/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qreflex {

/// A complete fan described by its rays and maximal cones (as ray index
/// sets), with the wall pairs cached.
struct Fan {
    int rank = 0;
    LatticeTag tag = LatticeTag::N;
    std::vector<VecZ> rays;                        // primitive, canonically ordered
    std::vector<std::vector<int>> max_cones;       // sorted ray indices per maximal cone
    struct Wall {
        int cone_a = 0, cone_b = 0;
        std::vector<int> shared_rays;
    };
    std::vector<Wall> walls;
};

/// Normal fan of a full-dimensional polytope: maximal cones indexed by
/// vertices (normals of the facets through the vertex), rays by facets.
inline Fan normal_fan(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional()) throw DegeneracyError("normal_fan: polytope is not full-dimensional");
    Fan fan;
    fan.rank = P.rank();
    fan.tag = dual_tag(P.tag());
    for (const auto& f : P.facets()) fan.rays.push_back(primitive(f.normal));
    // Canonical ray order with an index map facet -> ray.
    std::vector<int> ray_of_facet(P.facets().size());
    {
        std::vector<std::pair<VecZ, int>> tagged;
        for (size_t i = 0; i < fan.rays.size(); ++i) tagged.push_back({fan.rays[i], static_cast<int>(i)});
        std::sort(tagged.begin(), tagged.end(),
                  [](const auto& a, const auto& b) { return lex_compare(a.first, b.first) < 0; });
        fan.rays.clear();
        for (size_t i = 0; i < tagged.size(); ++i) {
            fan.rays.push_back(tagged[i].first);
            ray_of_facet[tagged[i].second] = static_cast<int>(i);
        }
    }
    // Maximal cone per vertex: rays of facets through the vertex.
    const auto& inc = P.facet_vertex_sets();
    for (size_t vi = 0; vi < P.vertices().size(); ++vi) {
        std::vector<int> cone;
        for (size_t fi = 0; fi < inc.size(); ++fi)
            if (std::find(inc[fi].begin(), inc[fi].end(), static_cast<int>(vi)) != inc[fi].end())
                cone.push_back(ray_of_facet[fi]);
        std::sort(cone.begin(), cone.end());
        fan.max_cones.push_back(std::move(cone));
    }
    // Walls from edges: each 1-face of P joins two vertices; the shared rays
    // are the facets containing the edge.
    if (P.dim() >= 2) {
        for (const auto& E : faces(P, 1)) {
            std::vector<int> endpoint_ids;
            for (size_t vi = 0; vi < P.vertices().size(); ++vi)
                if (E.contains(P.vertices()[vi])) endpoint_ids.push_back(static_cast<int>(vi));
            if (endpoint_ids.size() != 2) continue;
            Fan::Wall w;
            w.cone_a = endpoint_ids[0];
            w.cone_b = endpoint_ids[1];
            std::set_intersection(fan.max_cones[w.cone_a].begin(), fan.max_cones[w.cone_a].end(),
                                  fan.max_cones[w.cone_b].begin(), fan.max_cones[w.cone_b].end(),
                                  std::back_inserter(w.shared_rays));
            fan.walls.push_back(std::move(w));
        }
    } else {
        // d = 1: two maximal cones meeting at the origin.
        Fan::Wall w;
        w.cone_a = 0;
        w.cone_b = 1;
        fan.walls.push_back(std::move(w));
    }
    return fan;
}

/// A torus-invariant Q-divisor: one rational coefficient per ray.
struct ToricDivisor {
    const Fan* fan = nullptr;
    VecQ coefficients;  // b_rho, indexed like fan->rays
};

/// D_P = sum over rays of (-min <P, v_rho>) D_rho.
inline ToricDivisor divisor_of_polytope(const Polytope& P, const Fan& fan) {
    if (P.rank() != fan.rank) throw DimensionMismatchError("divisor_of_polytope: rank mismatch");
    ToricDivisor D;
    D.fan = &fan;
    for (const auto& v : fan.rays) D.coefficients.push_back(-min_pairing(P, v));
    return D;
}

/// The polytope of sections { m : <m, v_rho> >= -b_rho }.
inline Polytope divisor_polytope(const ToricDivisor& D) {
    const Fan& fan = *D.fan;
    std::vector<HalfspaceQ> rows;
    for (size_t i = 0; i < fan.rays.size(); ++i) rows.push_back({to_vecq(fan.rays[i]), -D.coefficients[i]});
    auto res = intersect_halfspaces(rows, fan.rank);
    if (res.kind == HalfspaceIntersection::Kind::Unbounded) {
        std::string dir = "(";
        for (size_t t = 0; t < res.direction.size(); ++t) {
            if (t) dir += ",";
            dir += res.direction[t].to_string();
        }
        throw UnboundedError("divisor_polytope: section polytope is unbounded", dir + ")");
    }
    if (res.kind == HalfspaceIntersection::Kind::Empty) return Polytope::empty(fan.rank, dual_tag(fan.tag));
    return Polytope::hull(res.vertices, fan.rank, dual_tag(fan.tag));
}

/// Result of the support-function convexity test.
struct QnefReport {
    enum class Status { Ample, Nef, NotConvex, NotQCartier };
    Status status = Status::NotQCartier;
    bool is_qnef() const { return status == Status::Ample || status == Status::Nef; }
    bool strictly_convex() const { return status == Status::Ample; }
    std::optional<int> failing_cone;  // cone with no linear functional, or wall-violating cone
    std::optional<int> failing_ray;
};

/// Convexity of the support function: on each maximal cone the coefficients
/// must come from a single linear functional m_sigma, and across every wall
/// the neighbour's functional evaluated at the far rays must satisfy
/// <m_sigma, v_rho> >= -b_rho (equivalently m_sigma lies in the section
/// polytope).  Strict convexity means adjacent functionals always differ.
inline QnefReport is_qnef(const ToricDivisor& D) {
    const Fan& fan = *D.fan;
    QnefReport rep;
    std::vector<VecQ> functionals;
    for (size_t c = 0; c < fan.max_cones.size(); ++c) {
        MatQ A;
        VecQ b;
        for (int ri : fan.max_cones[c]) {
            A.push_back(to_vecq(fan.rays[ri]));
            b.push_back(-D.coefficients[ri]);
        }
        auto m = solve(A, b);
        if (!m) {
            rep.status = QnefReport::Status::NotQCartier;
            rep.failing_cone = static_cast<int>(c);
            return rep;
        }
        functionals.push_back(std::move(*m));
    }
    // Global convexity: every functional is admissible against every ray.
    for (size_t c = 0; c < fan.max_cones.size(); ++c) {
        for (size_t ri = 0; ri < fan.rays.size(); ++ri) {
            if (dot(functionals[c], fan.rays[ri]) < -D.coefficients[ri]) {
                rep.status = QnefReport::Status::NotConvex;
                rep.failing_cone = static_cast<int>(c);
                rep.failing_ray = static_cast<int>(ri);
                return rep;
            }
        }
    }
    // Strictness across walls.
    bool strict = true;
    for (const auto& w : fan.walls)
        if (functionals[w.cone_a] == functionals[w.cone_b]) strict = false;
    rep.status = strict ? QnefReport::Status::Ample : QnefReport::Status::Nef;
    return rep;
}

/// One monomial of H^0(X, O(D)): the lattice point m and the exponent vector
/// b_rho + <m, v_rho> over the rays.
struct DivisorMonomial {
    VecZ point;
    VecZ exponents;
};

struct DivisorMonomials {
    std::vector<DivisorMonomial> monomials;  // sorted by lattice point
    std::vector<VecZ> skipped_points;        // fractional exponent; reported, not fatal
};

inline DivisorMonomials monomials_of_divisor(const ToricDivisor& D) {
    const Fan& fan = *D.fan;
    DivisorMonomials out;
    Polytope PD = divisor_polytope(D);
    if (PD.is_empty()) return out;
    for (const auto& m : lattice_points(PD)) {
        DivisorMonomial mono;
        mono.point = m;
        bool ok = true;
        for (size_t i = 0; i < fan.rays.size(); ++i) {
            Rational e = D.coefficients[i] + dot(to_vecq(m), fan.rays[i]);
            if (!e.is_integer() || e.sign() < 0) {
                ok = false;
                break;
            }
            mono.exponents.push_back(e.num());
        }
        if (ok)
            out.monomials.push_back(std::move(mono));
        else
            out.skipped_points.push_back(m);
    }
    return out;
}

/// The Cox-monomial exponent vector of the graded semigroup element chi^(m,i)
/// for a divisor with coefficients b: exponents i*b_rho + <m, v_rho>.
inline std::optional<VecZ> cox_exponents(const Fan& fan, const VecQ& b, const VecZ& m, int level) {
    VecZ out;
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        Rational e = Rational(level) * b[i] + dot(to_vecq(m), fan.rays[i]);
        if (!e.is_integer()) return std::nullopt;
        out.push_back(e.num());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Laurent systems
// ---------------------------------------------------------------------------

/// A term of one equation: a symbolic coefficient tag (equation index plus
/// lattice point) and, in the Cox encoding, an exponent vector over the rays.
struct LaurentTerm {
    int equation = 0;
    VecZ point;      // m (Cox encoding) or n (semigroup encoding)
    VecZ exponents;  // per fan ray; empty in the semigroup encoding
    std::optional<Rational> coefficient;  // set when a seeded substitution was requested
};

struct LaurentSystem {
    enum class Encoding { CoxMonomials, SemigroupPoints };
    Encoding encoding = Encoding::CoxMonomials;
    int variable_count = 0;          // number of rays (Cox) or ambient rank (semigroup)
    std::vector<VecZ> rays;          // context for the Cox encoding
    std::vector<std::vector<LaurentTerm>> equations;
    std::string provenance;
};

struct CiEmission {
    LaurentSystem system;
    std::vector<std::string> warnings;            // e.g. r < d violated
    std::vector<int> multi_membership_rays;       // rays lying in several dual parts
};

/// Deterministic nonzero rational pseudo-random coefficient.
inline Rational seeded_coefficient(uint64_t& state) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    int64_t num = 1 + static_cast<int64_t>((state >> 33) % 9);
    if (state & 1) num = -num;
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    int64_t den = 1 + static_cast<int64_t>((state >> 33) % 4);
    return Rational(BigInt(num), BigInt(den));
}

/// Defining equations of the Calabi-Yau complete intersection attached to a
/// Q-nef-partition: equation i has one term per lattice point m of part i,
/// with exponent <m, v_rho> plus one when the ray lies in the dual part
/// nabla_i.  Coefficients stay symbolic unless a seed is supplied.
inline CiEmission emit_ci_equations(const MinkowskiPartition& part, std::optional<uint64_t> seed = std::nullopt) {
    if (auto why = q_nef_partition_failure(part))
        throw PartitionInvalidError("emit_ci_equations: not a Q-nef-partition: " + *why);
    CiEmission out;
    const int d = part.rank();
    const int r = static_cast<int>(part.size());
    if (!is_proper(part)) out.warnings.push_back("partition is not proper (a part is {0})");
    if (!(r < d))
        out.warnings.push_back("r < d is violated (r = " + std::to_string(r) + ", d = " + std::to_string(d) +
                               "); equations emitted anyway");

    Fan fan = normal_fan(part.total());
    MinkowskiPartition nabla = dual_partition(part);

    // Ray membership in the dual parts; the +1 prefactor per equation.
    std::vector<std::vector<bool>> in_nabla(r, std::vector<bool>(fan.rays.size(), false));
    for (size_t ri = 0; ri < fan.rays.size(); ++ri) {
        int count = 0;
        for (int i = 0; i < r; ++i) {
            if (nabla.parts()[i].contains(to_vecq(fan.rays[ri]))) {
                in_nabla[i][ri] = true;
                ++count;
            }
        }
        if (count > 1) out.multi_membership_rays.push_back(static_cast<int>(ri));
        if (count == 0)
            throw StructureError("emit_ci_equations: a fan ray lies in no dual part (library invariant violated)");
    }

    uint64_t state = seed.value_or(0);
    LaurentSystem sys;
    sys.encoding = LaurentSystem::Encoding::CoxMonomials;
    sys.variable_count = static_cast<int>(fan.rays.size());
    sys.rays = fan.rays;
    sys.provenance = "complete intersection of a " + std::to_string(r) + "-part partition in rank " + std::to_string(d);
    for (int i = 0; i < r; ++i) {
        std::vector<LaurentTerm> eq;
        for (const auto& m : lattice_points(part.parts()[i])) {
            LaurentTerm t;
            t.equation = i;
            t.point = m;
            for (size_t ri = 0; ri < fan.rays.size(); ++ri) {
                BigInt e = dot(m, fan.rays[ri]) + BigInt(in_nabla[i][ri] ? 1 : 0);
                if (e.sign() < 0)
                    throw StructureError("emit_ci_equations: negative exponent (library invariant violated)");
                t.exponents.push_back(std::move(e));
            }
            if (seed) t.coefficient = seeded_coefficient(state);
            eq.push_back(std::move(t));
        }
        sys.equations.push_back(std::move(eq));
    }
    out.system = std::move(sys);
    return out;
}

/// The generalized Calabi-Yau hypersurface equation of an almost reflexive
/// Gorenstein cone: one symbolic coefficient per lattice point of the
/// level-one slice of the bullet cone, recorded as semigroup exponents.
inline LaurentSystem emit_generalized_cy(GradedCone& C, std::optional<uint64_t> seed = std::nullopt) {
    if (!is_almost_reflexive_gorenstein(C))
        throw StructureError("emit_generalized_cy: cone is not almost reflexive Gorenstein");
    GradedCone bullet = bullet_cone(C);
    if (!bullet.height) throw StructureError("emit_generalized_cy: bullet cone lost its grading");
    Polytope slice = grade_slice(bullet, 1);
    LaurentSystem sys;
    sys.encoding = LaurentSystem::Encoding::SemigroupPoints;
    sys.variable_count = C.cone.rank();
    sys.provenance = "generalized Calabi-Yau hypersurface of a rank-" + std::to_string(C.cone.rank()) + " cone";
    uint64_t state = seed.value_or(0);
    std::vector<LaurentTerm> eq;
    for (const auto& n : lattice_points(slice)) {
        LaurentTerm t;
        t.equation = 0;
        t.point = n;
        if (seed) t.coefficient = seeded_coefficient(state);
        eq.push_back(std::move(t));
    }
    sys.equations.push_back(std::move(eq));
    return sys;
}

/// The toric variety of P is Fano with canonical singularities iff the polar
/// dual is a canonical Fano polytope.
inline bool is_fano_from_polytope(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional() || !P.zero_in_interior()) return false;
    return is_canonical_fano(polar_dual(P));
}

}  // namespace qreflex
