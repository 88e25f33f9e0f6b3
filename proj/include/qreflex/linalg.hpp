#pragma once

/// Exact linear algebra over Rational and BigInt: Gaussian elimination,
/// nullspaces, inverses, integer Hermite normal form, and unimodular
/// coordinates on the hyperplane orthogonal to a primitive covector.

#include "qreflex/bigint.hpp"
#include "qreflex/errors.hpp"
#include "qreflex/rational.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace qreflex {

using VecQ = std::vector<Rational>;
using VecZ = std::vector<BigInt>;
using MatQ = std::vector<VecQ>;
using MatZ = std::vector<VecZ>;

inline Rational dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("dot: vector lengths differ");
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline BigInt dot(const VecZ& a, const VecZ& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("dot: vector lengths differ");
    BigInt s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const VecQ& a, const VecZ& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("dot: vector lengths differ");
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

inline std::strong_ordering lex_compare(const VecQ& a, const VecQ& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

inline std::strong_ordering lex_compare(const VecZ& a, const VecZ& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

struct VecQLess {
    bool operator()(const VecQ& a, const VecQ& b) const { return lex_compare(a, b) < 0; }
};
struct VecZLess {
    bool operator()(const VecZ& a, const VecZ& b) const { return lex_compare(a, b) < 0; }
};

inline VecQ to_vecq(const VecZ& v) {
    VecQ out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

inline std::optional<VecZ> to_vecz(const VecQ& v) {
    VecZ out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_integer()) return std::nullopt;
        out.push_back(x.num());
    }
    return out;
}

inline bool is_zero(const VecQ& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}
inline bool is_zero(const VecZ& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Scales a rational direction to the unique primitive integer vector on the
/// same ray (positive scaling only).  The zero vector maps to zero.
inline VecZ primitive(const VecQ& v) {
    BigInt l(1);
    for (const auto& x : v) l = lcm(l, x.den());
    VecZ w;
    w.reserve(v.size());
    BigInt g;
    Rational lq{l};
    for (const auto& x : v) {
        Rational y = x * lq;
        w.push_back(y.num());
        g = gcd(g, w.back());
    }
    if (g.is_zero()) return w;
    for (auto& x : w) x = x / g;
    return w;
}

inline VecZ primitive(const VecZ& v) {
    BigInt g;
    for (const auto& x : v) g = gcd(g, x);
    VecZ w = v;
    if (g.is_zero() || g.is_one()) return w;
    for (auto& x : w) x = x / g;
    return w;
}

inline VecQ operator+(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("vector add: lengths differ");
    VecQ r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}
inline VecQ operator-(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("vector sub: lengths differ");
    VecQ r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}
inline VecQ operator*(const Rational& t, const VecQ& v) {
    VecQ r(v);
    for (auto& x : r) x *= t;
    return r;
}

// ---------------------------------------------------------------------------
// Gaussian elimination over Q
// ---------------------------------------------------------------------------

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(MatQ& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && a[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        Rational inv = a[r][c].reciprocal();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline int rank(MatQ a) { return static_cast<int>(detail::rref(a).size()); }

/// Any solution x of Ax = b, or nullopt if the system is inconsistent.
inline std::optional<VecQ> solve(const MatQ& A, const VecQ& b) {
    if (A.size() != b.size()) throw DimensionMismatchError("solve: row count mismatch");
    if (A.empty()) return VecQ{};
    size_t cols = A[0].size();
    MatQ aug(A);
    for (size_t i = 0; i < A.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = detail::rref(aug);
    for (size_t k = 0; k < pivots.size(); ++k)
        if (pivots[k] == static_cast<int>(cols)) return std::nullopt;
    VecQ x(cols, Rational(0));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
    return x;
}

/// Basis of { x : Ax = 0 }.
inline std::vector<VecQ> nullspace(const MatQ& A) {
    if (A.empty()) return {};
    size_t cols = A[0].size();
    MatQ a(A);
    auto pivots = detail::rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<VecQ> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        VecQ v(cols, Rational(0));
        v[free_col] = Rational(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<MatQ> inverse(const MatQ& A) {
    size_t n = A.size();
    if (n == 0) return MatQ{};
    MatQ aug(A);
    for (size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw DimensionMismatchError("inverse: matrix not square");
        for (size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
    }
    auto pivots = detail::rref(aug);
    if (pivots.size() != n) return std::nullopt;
    MatQ inv(n, VecQ(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

// ---------------------------------------------------------------------------
// Integer normal forms
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form.  Unique canonical representative of the
/// left GL(n,Z)-orbit of A: echelon shape, positive pivots, entries above a
/// pivot reduced into [0, pivot).
inline MatZ hnf(MatZ a) {
    if (a.empty()) return a;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Clear the column below row r with gcd row operations.
        while (true) {
            size_t sel = rows;
            for (size_t i = r; i < rows; ++i)
                if (!a[i][c].is_zero() && (sel == rows || abs(a[i][c]) < abs(a[sel][c]))) sel = i;
            if (sel == rows) break;
            std::swap(a[sel], a[r]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (a[i][c].is_zero()) continue;
                BigInt q = floor_div(a[i][c], a[r][c]);
                for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (!a[i][c].is_zero()) done = false;
            }
            if (done) break;
        }
        if (a[r][c].is_zero()) continue;
        if (a[r][c].sign() < 0)
            for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        for (size_t i = 0; i < r; ++i) {
            BigInt q = floor_div(a[i][c], a[r][c]);
            if (q.is_zero()) continue;
            for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    return a;
}

/// Unimodular coordinates adapted to a primitive integral covector h:
/// U has columns u_1,...,u_n with <u_i, h> = 0 for i < n and <u_n, h> = 1,
/// V = U^{-1}.  Lattice points on the hyperplane h^perp are exactly the
/// integer combinations of u_1..u_{n-1}; their chart coordinates are the
/// first n-1 entries of V x.
struct HyperplaneChart {
    MatZ U;  // n x n, columns as above
    MatZ V;  // inverse of U
    int n = 0;

    /// Chart coordinates (length n-1) of an ambient rational point x with <x,h>=0.
    VecQ to_chart(const VecQ& x) const {
        VecQ z(n - 1, Rational(0));
        for (int i = 0; i + 1 < n; ++i) {
            Rational s;
            for (int j = 0; j < n; ++j) s += Rational(V[i][j]) * x[j];
            z[i] = s;
        }
        return z;
    }
    /// Ambient point of chart coordinates z (length n-1).
    VecQ from_chart(const VecQ& z) const {
        VecQ x(n, Rational(0));
        for (int j = 0; j + 1 < n; ++j)
            for (int i = 0; i < n; ++i) x[i] += z[j] * Rational(U[i][j]);
        return x;
    }
};

inline HyperplaneChart hyperplane_chart(const VecZ& h) {
    int n = static_cast<int>(h.size());
    MatZ U(n, VecZ(n, BigInt(0))), V(n, VecZ(n, BigInt(0)));
    for (int i = 0; i < n; ++i) U[i][i] = V[i][i] = BigInt(1);
    VecZ w = h;  // row vector being reduced by column operations on U

    auto col_axpy = [&](int dst, int src, const BigInt& q) {
        // column dst -= q * column src; inverse tracked on V rows.
        for (int i = 0; i < n; ++i) U[i][dst] -= q * U[i][src];
        for (int j = 0; j < n; ++j) V[src][j] += q * V[dst][j];
        w[dst] -= q * w[src];
    };
    auto col_swap = [&](int i, int j) {
        for (int k = 0; k < n; ++k) std::swap(U[k][i], U[k][j]);
        std::swap(V[i], V[j]);
        std::swap(w[i], w[j]);
    };
    auto col_negate = [&](int i) {
        for (int k = 0; k < n; ++k) U[k][i] = -U[k][i];
        for (int j = 0; j < n; ++j) V[i][j] = -V[i][j];
        w[i] = -w[i];
    };

    while (true) {
        int nz = -1, count = 0;
        for (int i = 0; i < n; ++i)
            if (!w[i].is_zero()) {
                ++count;
                if (nz == -1 || abs(w[i]) < abs(w[nz])) nz = i;
            }
        if (count == 0) throw StructureError("hyperplane_chart: zero covector");
        if (count == 1) {
            if (w[nz].sign() < 0) col_negate(nz);
            if (!w[nz].is_one()) throw StructureError("hyperplane_chart: covector is not primitive");
            if (nz != n - 1) col_swap(nz, n - 1);
            break;
        }
        for (int i = 0; i < n; ++i) {
            if (i == nz || w[i].is_zero()) continue;
            col_axpy(i, nz, floor_div(w[i], w[nz]));
        }
    }
    return HyperplaneChart{std::move(U), std::move(V), n};
}

}  // namespace qreflex
