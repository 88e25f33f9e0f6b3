#pragma once

/// Double description method over exact integers: extreme rays of
/// { x : <row, x> >= 0 }, with lineality handled by passing to the quotient.
/// Also the halfspace-intersection driver used for polytopes.

#include "qreflex/errors.hpp"
#include "qreflex/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace qreflex {

struct ConeRays {
    std::vector<VecZ> rays;       // primitive, lexicographically sorted
    std::vector<VecZ> lineality;  // basis of the lineality space (empty iff pointed)
};

namespace detail {

class Bitset {
public:
    explicit Bitset(size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(size_t i) { words_[i / 64] |= (uint64_t{1} << (i % 64)); }
    bool test(size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
    static Bitset intersect(const Bitset& a, const Bitset& b) {
        Bitset r;
        r.words_.resize(std::min(a.words_.size(), b.words_.size()));
        for (size_t i = 0; i < r.words_.size(); ++i) r.words_[i] = a.words_[i] & b.words_[i];
        return r;
    }
    /// True if every bit of sub (restricted to the first `upto` bits) is set in *this.
    bool contains(const Bitset& sub, size_t upto) const {
        size_t full = upto / 64, rem = upto % 64;
        for (size_t i = 0; i < full; ++i)
            if ((sub.words_[i] & ~words_[i]) != 0) return false;
        if (rem) {
            uint64_t mask = (uint64_t{1} << rem) - 1;
            if ((sub.words_[full] & mask & ~words_[full]) != 0) return false;
        }
        return true;
    }
    size_t count(size_t upto) const {
        size_t full = upto / 64, rem = upto % 64, n = 0;
        for (size_t i = 0; i < full; ++i) n += static_cast<size_t>(__builtin_popcountll(words_[i]));
        if (rem) n += static_cast<size_t>(__builtin_popcountll(words_[full] & ((uint64_t{1} << rem) - 1)));
        return n;
    }

private:
    std::vector<uint64_t> words_;
};

struct DDRay {
    VecZ v;
    Bitset active;  // over processed rows
};

/// Extreme rays of a pointed cone (rows have full column rank n).
inline std::vector<VecZ> dd_pointed(const std::vector<VecZ>& rows, int n) {
    const size_t m = rows.size();
    // Seed with n independent rows; the simplicial cone they cut out has the
    // columns of the inverse matrix as rays.
    std::vector<int> seed;
    {
        MatQ chosen;
        for (size_t i = 0; i < m && static_cast<int>(seed.size()) < n; ++i) {
            chosen.push_back(to_vecq(rows[i]));
            if (rank(chosen) == static_cast<int>(seed.size()) + 1)
                seed.push_back(static_cast<int>(i));
            else
                chosen.pop_back();
        }
        if (static_cast<int>(seed.size()) != n)
            throw StructureError("dd_pointed: system does not have full rank");
    }
    std::vector<int> order(seed.begin(), seed.end());
    for (size_t i = 0; i < m; ++i)
        if (std::find(seed.begin(), seed.end(), static_cast<int>(i)) == seed.end())
            order.push_back(static_cast<int>(i));

    MatQ basis;
    for (int i : seed) basis.push_back(to_vecq(rows[i]));
    auto inv = inverse(basis);
    if (!inv) throw StructureError("dd_pointed: seed rows not invertible");

    std::vector<DDRay> rays;
    for (int j = 0; j < n; ++j) {
        VecQ col(n);
        for (int i = 0; i < n; ++i) col[i] = (*inv)[i][j];
        DDRay r{primitive(col), Bitset(m)};
        for (int i = 0; i < n; ++i)
            if (i != j) r.active.set(i);
        rays.push_back(std::move(r));
    }

    for (size_t step = n; step < m; ++step) {
        const VecZ& a = rows[order[step]];
        std::vector<BigInt> val(rays.size());
        bool any_neg = false;
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i].sign() < 0) any_neg = true;
        }
        if (!any_neg) {
            for (size_t i = 0; i < rays.size(); ++i)
                if (val[i].is_zero()) rays[i].active.set(step);
            continue;
        }
        std::vector<DDRay> next;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i].sign() > 0) next.push_back(rays[i]);
            if (val[i].is_zero()) {
                next.push_back(rays[i]);
                next.back().active.set(step);
            }
        }
        for (size_t p = 0; p < rays.size(); ++p) {
            if (val[p].sign() <= 0) continue;
            for (size_t q = 0; q < rays.size(); ++q) {
                if (val[q].sign() >= 0) continue;
                Bitset common = Bitset::intersect(rays[p].active, rays[q].active);
                if (static_cast<int>(common.count(step)) < n - 2) continue;
                bool adjacent = true;
                for (size_t s = 0; s < rays.size(); ++s) {
                    if (s == p || s == q) continue;
                    if (rays[s].active.contains(common, step)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                VecZ w(n);
                for (int t = 0; t < n; ++t) w[t] = val[p] * rays[q].v[t] - val[q] * rays[p].v[t];
                DDRay nr{primitive(w), Bitset(m)};
                for (size_t s = 0; s <= step; ++s)
                    if (dot(rows[order[s]], nr.v).is_zero()) nr.active.set(s);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        if (rays.empty()) break;
    }

    std::vector<VecZ> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end(), VecZLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Extreme rays (and lineality basis) of { x in R^n : <row, x> >= 0 }.
inline ConeRays extreme_rays(const std::vector<VecZ>& input_rows, int n) {
    std::vector<VecZ> rows;
    for (const auto& r : input_rows) {
        if (static_cast<int>(r.size()) != n) throw DimensionMismatchError("extreme_rays: row length mismatch");
        VecZ p = primitive(r);
        if (!is_zero(p)) rows.push_back(std::move(p));
    }
    std::sort(rows.begin(), rows.end(), VecZLess{});
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    if (rows.empty()) {
        // Whole space: lineality basis is the standard basis.
        ConeRays out;
        for (int i = 0; i < n; ++i) {
            VecZ e(n, BigInt(0));
            e[i] = BigInt(1);
            out.lineality.push_back(std::move(e));
        }
        return out;
    }

    MatQ A;
    for (const auto& r : rows) A.push_back(to_vecq(r));
    auto lin = nullspace(A);
    if (lin.empty()) {
        ConeRays out;
        out.rays = detail::dd_pointed(rows, n);
        return out;
    }

    // Quotient by the lineality space: coordinates via a basis W of the row
    // space, so that x maps to W x and the inequalities become rows in the
    // quotient coordinates.
    int r = n - static_cast<int>(lin.size());
    MatQ W;
    {
        MatQ probe;
        for (const auto& row : A) {
            probe.push_back(row);
            if (rank(probe) == static_cast<int>(W.size()) + 1)
                W.push_back(row);
            else
                probe.pop_back();
            if (static_cast<int>(W.size()) == r) break;
        }
    }
    // Express each row as coefficients against W:  row = coeff * W.
    MatQ Wt(n, VecQ(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) Wt[j][i] = W[i][j];
    std::vector<VecZ> qrows;
    for (const auto& row : A) {
        auto coeff = solve(Wt, row);
        if (!coeff) throw StructureError("extreme_rays: row outside its own row space");
        qrows.push_back(primitive(*coeff));
    }
    auto qrays = detail::dd_pointed(qrows, r);

    ConeRays out;
    for (const auto& l : lin) out.lineality.push_back(primitive(l));
    std::sort(out.lineality.begin(), out.lineality.end(), VecZLess{});
    // Lift quotient rays: any x with W x = z.
    MatQ Wmat = W;
    for (const auto& z : qrays) {
        auto x = solve(Wmat, to_vecq(z));
        if (!x) throw StructureError("extreme_rays: failed to lift quotient ray");
        out.rays.push_back(primitive(*x));
    }
    std::sort(out.rays.begin(), out.rays.end(), VecZLess{});
    return out;
}

// ---------------------------------------------------------------------------
// Halfspace intersection (possibly-unbounded diagnosis included)
// ---------------------------------------------------------------------------

/// One rational halfspace  <x, normal> >= offset.
struct HalfspaceQ {
    VecQ normal;
    Rational offset;
};

struct HalfspaceIntersection {
    enum class Kind { Polytope, Empty, Unbounded };
    Kind kind = Kind::Empty;
    std::vector<VecQ> vertices;  // for Kind::Polytope
    VecZ direction;              // recession/line direction for Kind::Unbounded
    bool direction_is_line = false;
};

/// Vertices of { x : all halfspaces hold }, or a diagnosis that the set is
/// empty or unbounded.  Works in any dimension; the result polytope may be
/// lower-dimensional.
inline HalfspaceIntersection intersect_halfspaces(const std::vector<HalfspaceQ>& hs, int n) {
    std::vector<VecZ> rows;
    rows.reserve(hs.size() + 1);
    for (const auto& h : hs) {
        if (static_cast<int>(h.normal.size()) != n)
            throw DimensionMismatchError("intersect_halfspaces: normal length mismatch");
        VecQ hom = h.normal;
        hom.push_back(-h.offset);
        rows.push_back(primitive(hom));
    }
    VecZ last(n + 1, BigInt(0));
    last[n] = BigInt(1);
    rows.push_back(std::move(last));

    ConeRays cone = extreme_rays(rows, n + 1);

    HalfspaceIntersection out;
    std::vector<VecQ> verts;
    VecZ recession;
    for (const auto& r : cone.rays) {
        if (r[n].sign() > 0) {
            Rational t{r[n]};
            VecQ v(n);
            for (int i = 0; i < n; ++i) v[i] = Rational(r[i]) / t;
            verts.push_back(std::move(v));
        } else if (recession.empty()) {
            recession.assign(r.begin(), r.end() - 1);
        }
    }
    if (verts.empty()) {
        out.kind = HalfspaceIntersection::Kind::Empty;
        return out;
    }
    if (!cone.lineality.empty()) {
        out.kind = HalfspaceIntersection::Kind::Unbounded;
        out.direction.assign(cone.lineality[0].begin(), cone.lineality[0].end() - 1);
        out.direction_is_line = true;
        return out;
    }
    if (!recession.empty()) {
        out.kind = HalfspaceIntersection::Kind::Unbounded;
        out.direction = std::move(recession);
        return out;
    }
    out.kind = HalfspaceIntersection::Kind::Polytope;
    std::sort(verts.begin(), verts.end(), [](const VecQ& a, const VecQ& b) { return lex_compare(a, b) < 0; });
    out.vertices = std::move(verts);
    return out;
}

}  // namespace qreflex
