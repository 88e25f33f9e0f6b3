#pragma once

/// Exact lattice-point enumeration.  The production path decomposes the
/// polytope into slabs along the last coordinate: Fourier-Motzkin
/// projections (computed once per polytope, pruned with Imbert's ancestry
/// bound) provide the exact bound pair for each coordinate given the fixed
/// tail, so every enumerated prefix extends to a point of the polytope.
/// A bounding-box membership scan remains available as a fallback when the
/// projections blow up; the naive scan is also the test oracle.

#include "qreflex/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace qreflex {

namespace detail {

struct IntRow {
    VecZ a;  // coefficients over all d variables (eliminated ones zeroed)
    BigInt c;
    std::vector<uint64_t> ancestors;
    int ancestor_count = 0;
};

inline std::vector<uint64_t> bitor_sets(const std::vector<uint64_t>& x, const std::vector<uint64_t>& y) {
    std::vector<uint64_t> r(std::max(x.size(), y.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) r[i] |= x[i];
    for (size_t i = 0; i < y.size(); ++i) r[i] |= y[i];
    return r;
}

inline int popcount_set(const std::vector<uint64_t>& x) {
    int n = 0;
    for (uint64_t w : x) n += __builtin_popcountll(w);
    return n;
}

/// Integer inequality rows of the polytope (facets plus equation pairs).
inline std::vector<IntRow> integer_rows(const Polytope& P) {
    std::vector<IntRow> rows;
    auto push = [&](VecZ a, BigInt c) {
        IntRow r;
        r.a = std::move(a);
        r.c = std::move(c);
        rows.push_back(std::move(r));
    };
    for (const auto& f : P.facets()) push(f.normal, f.offset);
    for (const auto& e : P.equations()) {
        push(e.normal, e.offset);
        VecZ neg = e.normal;
        for (auto& x : neg) x = -x;
        push(std::move(neg), -e.offset);
    }
    if (P.dim() == 0) {
        // A point has no facets; encode it as equations per coordinate.
        for (int i = 0; i < P.rank(); ++i) {
            const Rational& ci = P.vertices()[0][i];
            VecZ a(P.rank(), BigInt(0));
            a[i] = ci.den();
            push(a, ci.num());
            VecZ b(P.rank(), BigInt(0));
            b[i] = -ci.den();
            push(std::move(b), -ci.num());
        }
    }
    size_t words = (rows.size() + 63) / 64;
    for (size_t i = 0; i < rows.size(); ++i) {
        rows[i].ancestors.assign(words, 0);
        rows[i].ancestors[i / 64] |= uint64_t{1} << (i % 64);
        rows[i].ancestor_count = 1;
    }
    return rows;
}

/// Eliminates variable `var`; keeps combinations within Imbert's bound and
/// dedupes rows by canonical form, retaining the strongest offset.
inline std::vector<IntRow> fm_eliminate(const std::vector<IntRow>& rows, int var, int eliminated_so_far,
                                        size_t row_cap) {
    std::vector<const IntRow*> pos, neg;
    std::vector<IntRow> out;
    for (const auto& r : rows) {
        int s = r.a[var].sign();
        if (s > 0)
            pos.push_back(&r);
        else if (s < 0)
            neg.push_back(&r);
        else
            out.push_back(r);
    }
    int bound = eliminated_so_far + 2;  // Imbert: at most (#eliminated + 1) + 1 ancestors
    for (const auto* p : pos) {
        for (const auto* q : neg) {
            int anc = popcount_set(bitor_sets(p->ancestors, q->ancestors));
            if (anc > bound) continue;
            IntRow r;
            r.a.resize(p->a.size());
            const BigInt& pv = p->a[var];
            const BigInt& qv = q->a[var];
            for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = pv * q->a[i] - qv * p->a[i];
            r.c = pv * q->c - qv * p->c;
            // canonical primitive form
            BigInt g;
            for (const auto& x : r.a) g = gcd(g, x);
            g = gcd(g, r.c);
            if (!g.is_zero() && !g.is_one()) {
                for (auto& x : r.a) x = x / g;
                r.c = r.c / g;
            }
            if (is_zero(r.a)) continue;  // tautology or (for infeasible input) handled upstream
            r.ancestors = bitor_sets(p->ancestors, q->ancestors);
            r.ancestor_count = anc;
            out.push_back(std::move(r));
            if (out.size() > row_cap) return out;  // caller falls back
        }
    }
    // Dedupe by normal, keeping the largest offset (strongest constraint).
    std::sort(out.begin(), out.end(), [](const IntRow& x, const IntRow& y) {
        if (auto c = lex_compare(x.a, y.a); c != 0) return c < 0;
        return x.c > y.c;
    });
    std::vector<IntRow> dedup;
    for (auto& r : out)
        if (dedup.empty() || !(dedup.back().a == r.a)) dedup.push_back(std::move(r));
    return dedup;
}

/// Enumerates integer points; visitor returns false to stop early.
/// Returns false if stopped.
inline bool enumerate_slabs(const Polytope& P, const std::function<bool(const VecZ&)>& visit) {
    const int d = P.rank();
    if (P.is_empty()) return true;

    auto base = integer_rows(P);
    constexpr size_t kRowCap = 40000;

    // systems[j]: rows valid for the projection that forgot x_1..x_j.
    std::vector<std::vector<IntRow>> systems;
    systems.push_back(base);
    bool overflow = false;
    for (int j = 0; j + 1 < d; ++j) {
        auto next = fm_eliminate(systems.back(), j, j, kRowCap);
        if (next.size() > kRowCap) {
            overflow = true;
            break;
        }
        systems.push_back(std::move(next));
    }

    if (overflow) {
        // Fallback: bounding-box scan with exact membership.
        std::vector<BigInt> lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            Rational mn = P.vertices()[0][i], mx = mn;
            for (const auto& v : P.vertices()) {
                mn = std::min(mn, v[i]);
                mx = std::max(mx, v[i]);
            }
            lo[i] = mn.ceil();
            hi[i] = mx.floor();
        }
        VecZ pt(d, BigInt(0));
        std::function<bool(int)> rec = [&](int i) -> bool {
            if (i == d) {
                VecQ q = to_vecq(pt);
                if (P.contains(q)) return visit(pt);
                return true;
            }
            for (BigInt v = lo[i]; v <= hi[i]; v += BigInt(1)) {
                pt[i] = v;
                if (!rec(i + 1)) return false;
            }
            return true;
        };
        return rec(0);
    }

    // Fix x_d first (outermost slab), then x_{d-1}, ..., x_1; the bounds for
    // x_{j+1} come from systems[j] with the already-fixed tail substituted.
    VecZ pt(d, BigInt(0));
    std::function<bool(int)> fix = [&](int j) -> bool {  // j: index of variable being fixed (0-based)
        const auto& sys = systems[j];
        bool has_lo = false, has_hi = false;
        BigInt lo, hi;
        for (const auto& r : sys) {
            BigInt rhs = r.c;
            for (int t = j + 1; t < d; ++t) rhs -= r.a[t] * pt[t];
            int s = r.a[j].sign();
            if (s == 0) {
                if (rhs.sign() > 0) return true;  // slab infeasible
                continue;
            }
            if (s > 0) {
                BigInt b = ceil_div(rhs, r.a[j]);
                if (!has_lo || b > lo) lo = b, has_lo = true;
            } else {
                BigInt b = floor_div(rhs, r.a[j]);
                if (!has_hi || b < hi) hi = b, has_hi = true;
            }
        }
        if (!has_lo || !has_hi) throw StructureError("lattice enumeration: unbounded slab (polytope invariant violated)");
        for (BigInt v = lo; v <= hi; v += BigInt(1)) {
            pt[j] = v;
            if (j == 0) {
                if (!visit(pt)) return false;
            } else {
                if (!fix(j - 1)) return false;
            }
        }
        return true;
    };
    if (d == 0) return true;
    return fix(d - 1);
}

}  // namespace detail

/// All lattice points of P in canonical (lexicographic) order.
inline std::vector<VecZ> lattice_points(const Polytope& P) {
    std::vector<VecZ> out;
    detail::enumerate_slabs(P, [&](const VecZ& p) {
        out.push_back(p);
        return true;
    });
    std::sort(out.begin(), out.end(), VecZLess{});
    return out;
}

inline size_t lattice_point_count(const Polytope& P) {
    size_t n = 0;
    detail::enumerate_slabs(P, [&](const VecZ&) {
        ++n;
        return true;
    });
    return n;
}

/// True iff the lattice point lies in the relative interior (all facet
/// inequalities strict, all equations satisfied).
inline bool in_relative_interior(const Polytope& P, const VecZ& z) {
    VecQ q = to_vecq(z);
    if (P.is_empty() || static_cast<int>(z.size()) != P.rank()) return false;
    if (P.dim() == 0) return q == P.vertices()[0];
    for (const auto& e : P.equations())
        if (!(dot(q, e.normal) == Rational(e.offset))) return false;
    for (const auto& f : P.facets())
        if (!(dot(q, f.normal) > Rational(f.offset))) return false;
    return true;
}

/// Lattice points in the relative interior, stopping after `limit` hits.
inline std::vector<VecZ> relative_interior_lattice_points(const Polytope& P, size_t limit = SIZE_MAX) {
    std::vector<VecZ> out;
    if (P.is_empty()) return out;
    detail::enumerate_slabs(P, [&](const VecZ& p) {
        if (in_relative_interior(P, p)) {
            out.push_back(p);
            if (out.size() >= limit) return false;
        }
        return true;
    });
    std::sort(out.begin(), out.end(), VecZLess{});
    return out;
}

/// Interior lattice points in the topological sense: empty for polytopes of
/// less than full dimension.
inline std::vector<VecZ> interior_lattice_points(const Polytope& P, size_t limit = SIZE_MAX) {
    if (!P.is_full_dimensional()) return {};
    return relative_interior_lattice_points(P, limit);
}

/// [P] = convex hull of the lattice points of P; the empty polytope when P
/// has no lattice point.
inline Polytope lattice_hull(const Polytope& P) {
    if (P.is_empty()) return P;
    auto pts = lattice_points(P);
    if (pts.empty()) return Polytope::empty(P.rank(), P.tag());
    return convex_hull_z(pts, P.rank(), P.tag());
}

}  // namespace qreflex
