#pragma once

/// Unimodular-equivalence deduplication of lattice polytopes.  The canonical
/// form of a polytope is the lexicographic minimum, over all vertex
/// orderings, of the row Hermite normal form of the vertex matrix; two
/// polytopes agree on it exactly when a GL(d,Z) map carries one vertex set
/// to the other.

#include "qreflex/linalg.hpp"
#include "qreflex/polytope.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qreflex {

namespace detail {

inline std::string matz_key(const MatZ& m) {
    std::string s;
    for (const auto& row : m) {
        for (const auto& x : row) {
            s += x.to_string();
            s += ' ';
        }
        s += ';';
    }
    return s;
}

}  // namespace detail

/// Canonical GL(d,Z)-invariant key of a full-dimensional lattice polytope.
/// Exhaustive over vertex permutations; intended for the small vertex counts
/// of the classification workloads (guarded at 9 vertices).
inline std::string gl_canonical_form(const Polytope& P) {
    if (P.is_empty() || !P.is_lattice()) throw DimensionMismatchError("gl_canonical_form: lattice polytope required");
    const int d = P.rank();
    const int n = static_cast<int>(P.vertices().size());
    if (n > 9) throw DimensionMismatchError("gl_canonical_form: more than 9 vertices is not supported");
    MatZ V(d, VecZ(n));
    for (int j = 0; j < n; ++j) {
        auto z = to_vecz(P.vertices()[j]);
        for (int i = 0; i < d; ++i) V[i][j] = (*z)[i];
    }
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::string best;
    do {
        MatZ W(d, VecZ(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < d; ++i) W[i][j] = V[i][perm[j]];
        std::string key = detail::matz_key(hnf(std::move(W)));
        if (best.empty() || key < best) best = std::move(key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Partitions lattice polytopes into unimodular-equivalence classes and
/// returns one representative per class, in input order of first occurrence.
inline std::vector<Polytope> dedup_gl(const std::vector<Polytope>& polys) {
    std::map<std::string, size_t> seen;
    std::vector<Polytope> reps;
    for (const auto& P : polys) {
        std::string key = gl_canonical_form(P);
        if (seen.emplace(std::move(key), reps.size()).second) reps.push_back(P);
    }
    return reps;
}

/// Class count without keeping representatives.
inline size_t gl_class_count(const std::vector<Polytope>& polys) { return dedup_gl(polys).size(); }

}  // namespace qreflex
