#pragma once

/// Polytope-level duality predicates and operators: canonical Fano,
/// reflexive, Q-reflexive, almost reflexive, and the circ/bullet duals.
/// All predicates are total: malformed inputs produce false plus a witness,
/// never an exception, so corpus scans cannot abort.

#include "qreflex/lattice_enum.hpp"
#include "qreflex/polytope.hpp"

#include <optional>
#include <string>
#include <utility>

namespace qreflex {

/// [P]* : polar dual of the lattice hull.  The dual Q-reflexive partner.
inline Polytope circ_dual(const Polytope& P) {
    Polytope H = lattice_hull(P);
    if (H.is_empty() || !H.is_full_dimensional())
        throw DegeneracyError("circ_dual: lattice hull is not full-dimensional");
    if (!H.zero_in_interior())
        throw DegeneracyError("circ_dual: 0 is not interior to the lattice hull");
    return polar_dual(H);
}

/// [P*] : lattice hull of the polar dual.  The almost-reflexive partner.
/// May be lower-dimensional; callers test the dimension.
inline Polytope bullet_dual(const Polytope& P) { return lattice_hull(polar_dual(P)); }

inline bool is_canonical_fano(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional() || !P.is_lattice()) return false;
    auto inside = interior_lattice_points(P, 2);
    return inside.size() == 1 && is_zero(inside[0]);
}

inline bool is_reflexive(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional() || !P.is_lattice() || !P.zero_in_interior()) return false;
    return polar_dual(P).is_lattice();
}

inline bool is_q_reflexive(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional() || !P.zero_in_interior()) return false;
    Polytope H = lattice_hull(P);
    if (H.is_empty() || !H.is_full_dimensional() || !H.zero_in_interior()) return false;
    return lattice_hull(polar_dual(H)) == polar_dual(P);
}

inline bool is_almost_reflexive(const Polytope& P) {
    if (P.is_empty() || !P.is_full_dimensional() || !P.is_lattice() || !P.zero_in_interior()) return false;
    Polytope B = bullet_dual(P);
    if (B.is_empty() || !B.is_full_dimensional() || !B.zero_in_interior()) return false;
    return bullet_dual(B) == P;
}

/// Classification of one polytope against every predicate of the duality
/// theory, with a concrete witness for each false flag.
struct ReflexivityReport {
    bool is_lattice = false;
    bool zero_interior = false;
    bool is_canonical_fano = false;
    bool is_reflexive = false;
    bool is_q_reflexive = false;
    bool is_almost_reflexive = false;

    std::optional<VecQ> non_integral_vertex;                     // witnesses !is_lattice
    std::optional<Halfspace> interior_obstruction;               // witnesses !zero_interior
    std::optional<VecZ> extra_interior_point;                    // witnesses !is_canonical_fano
    std::optional<VecQ> non_integral_dual_vertex;                // witnesses !is_reflexive
    std::optional<std::pair<Polytope, Polytope>> q_reflexive_mismatch;       // lhs/rhs of the hull identity
    std::optional<std::pair<Polytope, Polytope>> almost_reflexive_mismatch;  // double-bullet vs original
    std::optional<Polytope> facet_without_lattice_point;
    std::string degenerate_reason;  // set when the polytope is empty / low-dimensional
};

inline ReflexivityReport classify(const Polytope& P) {
    ReflexivityReport r;
    if (P.is_empty() || !P.is_full_dimensional()) {
        r.degenerate_reason = P.is_empty() ? "empty polytope" : "not full-dimensional";
        return r;
    }

    r.is_lattice = true;
    for (const auto& v : P.vertices()) {
        bool ok = true;
        for (const auto& c : v) ok = ok && c.is_integer();
        if (!ok) {
            r.is_lattice = false;
            r.non_integral_vertex = v;
            break;
        }
    }

    r.zero_interior = P.zero_in_interior();
    if (!r.zero_interior) r.interior_obstruction = P.zero_interior_obstruction();

    if (r.is_lattice) {
        auto inside = interior_lattice_points(P, 2);
        r.is_canonical_fano = inside.size() == 1 && is_zero(inside[0]);
        if (!r.is_canonical_fano) {
            for (const auto& z : inside)
                if (!is_zero(z)) {
                    r.extra_interior_point = z;
                    break;
                }
        }
    }

    if (r.is_lattice && r.zero_interior) {
        Polytope D = polar_dual(P);
        r.is_reflexive = D.is_lattice();
        if (!r.is_reflexive) {
            for (const auto& v : D.vertices()) {
                bool ok = true;
                for (const auto& c : v) ok = ok && c.is_integer();
                if (!ok) {
                    r.non_integral_dual_vertex = v;
                    break;
                }
            }
        }
    }

    if (r.zero_interior) {
        Polytope H = lattice_hull(P);
        if (!H.is_empty() && H.is_full_dimensional() && H.zero_in_interior()) {
            Polytope lhs = lattice_hull(polar_dual(H));
            Polytope rhs = polar_dual(P);
            r.is_q_reflexive = lhs == rhs;
            if (!r.is_q_reflexive) r.q_reflexive_mismatch = std::make_pair(lhs, rhs);
            if (r.is_q_reflexive) {
                for (const auto& fv : P.facet_vertex_sets()) {
                    std::vector<VecQ> pts;
                    for (int i : fv) pts.push_back(P.vertices()[i]);
                    Polytope F = Polytope::hull(pts, P.rank(), P.tag());
                    if (lattice_point_count(F) == 0) {
                        r.facet_without_lattice_point = F;
                        break;
                    }
                }
            }
        } else {
            r.q_reflexive_mismatch = std::make_pair(H, polar_dual(P));
        }
    }

    if (r.is_lattice && r.zero_interior) {
        Polytope B = bullet_dual(P);
        if (!B.is_empty() && B.is_full_dimensional() && B.zero_in_interior()) {
            Polytope BB = bullet_dual(B);
            r.is_almost_reflexive = BB == P;
            if (!r.is_almost_reflexive) r.almost_reflexive_mismatch = std::make_pair(BB, P);
        } else {
            r.almost_reflexive_mismatch = std::make_pair(B, P);
        }
    }

    return r;
}

}  // namespace qreflex
