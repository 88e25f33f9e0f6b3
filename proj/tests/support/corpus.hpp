#pragma once

// Deterministic corpora for the property and acceptance suites: reflexive
// polytopes in dimensions 2-4 (plus rational Q-reflexive members in
// dimension 5), rational dilates, and Q-nef-partitions generated by the
// ray-partition heuristic with rejection sampling.

#include "qreflex/classify2d.hpp"
#include "qreflex/dedup.hpp"
#include "qreflex/nef_partition.hpp"
#include "qreflex/polytope.hpp"
#include "qreflex/reflexivity.hpp"
#include "qreflex/toric.hpp"

#include <random>
#include <vector>

namespace corpus {

using namespace qreflex;

inline Polytope cross_polytope(int d) {
    std::vector<VecQ> pts;
    for (int i = 0; i < d; ++i)
        for (int s : {-1, 1}) {
            VecQ e(d, Rational(0));
            e[i] = Rational(s);
            pts.push_back(e);
        }
    return Polytope::hull(pts, d, LatticeTag::M);
}

inline Polytope cube(int d) {
    std::vector<VecQ> pts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        VecQ v(d);
        for (int i = 0; i < d; ++i) v[i] = Rational((mask >> i & 1) ? 1 : -1);
        pts.push_back(v);
    }
    return Polytope::hull(pts, d, LatticeTag::M);
}

/// conv{e_1,...,e_d, -(1,...,1)}: the fan simplex of projective space.
inline Polytope projective_simplex(int d) {
    std::vector<VecQ> pts;
    for (int i = 0; i < d; ++i) {
        VecQ e(d, Rational(0));
        e[i] = Rational(1);
        pts.push_back(e);
    }
    pts.push_back(VecQ(d, Rational(-1)));
    return Polytope::hull(pts, d, LatticeTag::M);
}

inline Polytope product(const Polytope& A, const Polytope& B) {
    std::vector<VecQ> pts;
    for (const auto& a : A.vertices())
        for (const auto& b : B.vertices()) {
            VecQ v = a;
            v.insert(v.end(), b.begin(), b.end());
            pts.push_back(std::move(v));
        }
    return Polytope::hull(pts, A.rank() + B.rank(), A.tag());
}

/// conv(A x 0, 0 x B): dual of the product of the duals.
inline Polytope free_sum(const Polytope& A, const Polytope& B) {
    std::vector<VecQ> pts;
    for (const auto& a : A.vertices()) {
        VecQ v = a;
        v.insert(v.end(), static_cast<size_t>(B.rank()), Rational(0));
        pts.push_back(std::move(v));
    }
    for (const auto& b : B.vertices()) {
        VecQ v(static_cast<size_t>(A.rank()), Rational(0));
        v.insert(v.end(), b.begin(), b.end());
        pts.push_back(std::move(v));
    }
    return Polytope::hull(pts, A.rank() + B.rank(), A.tag());
}

/// Random unimodular image via a short word of elementary shears, swaps and
/// sign flips.
inline Polytope random_unimodular_image(const Polytope& P, std::mt19937_64& rng) {
    int d = P.rank();
    MatZ U(d, VecZ(d, BigInt(0)));
    for (int i = 0; i < d; ++i) U[i][i] = BigInt(1);
    std::uniform_int_distribution<int> pick(0, d - 1), shear(-2, 2), op(0, 2);
    for (int step = 0; step < 2 * d; ++step) {
        int i = pick(rng), j = pick(rng);
        switch (op(rng)) {
            case 0: {
                if (i == j) break;
                int s = shear(rng);
                for (int k = 0; k < d; ++k) U[i][k] += BigInt(s) * U[j][k];
                break;
            }
            case 1:
                std::swap(U[i], U[j]);
                break;
            default:
                for (int k = 0; k < d; ++k) U[i][k] = -U[i][k];
        }
    }
    std::vector<VecQ> pts;
    for (const auto& v : P.vertices()) {
        VecQ w(d, Rational(0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) w[i] += Rational(U[i][k]) * v[k];
        pts.push_back(std::move(w));
    }
    return Polytope::hull(pts, d, P.tag());
}

/// Frozen 5D instance: canonical Fano, almost reflexive, not reflexive; its
/// polar dual is a rational non-lattice Q-reflexive polytope.
inline Polytope almost_not_reflexive_5d() {
    std::vector<VecQ> pts;
    for (int i = 0; i < 5; ++i) {
        VecQ e(5, Rational(0));
        e[i] = Rational(1);
        pts.push_back(e);
    }
    pts.push_back({Rational(-1), Rational(-1), Rational(-1), Rational(-2), Rational(-3)});
    return Polytope::hull(pts, 5, LatticeTag::M);
}

/// 16 class representatives of the reflexive polygons.
inline std::vector<Polytope> reflexive_polygon_classes() {
    return dedup_gl(enumerate_reflexive_polygons(2));
}

struct ReflexiveCorpus {
    std::vector<Polytope> reflexive;      // verified reflexive, dims 2..4
    std::vector<Polytope> dilates;        // rational dilates of the above (0 interior, full-dim)
    std::vector<Polytope> q_reflexive_rational;  // non-lattice Q-reflexive members
};

inline ReflexiveCorpus build_reflexive_corpus(uint64_t seed, int polygons_raw = 80) {
    std::mt19937_64 rng(seed);
    ReflexiveCorpus out;

    auto polygons = enumerate_reflexive_polygons(2);
    auto classes = dedup_gl(polygons);
    for (const auto& P : classes) out.reflexive.push_back(P);
    for (int i = 0; i < polygons_raw && i < static_cast<int>(polygons.size()); ++i)
        out.reflexive.push_back(polygons[(i * 7) % polygons.size()]);

    // 3D and 4D seeds.
    std::vector<Polytope> seeds3 = {cube(3), cross_polytope(3), projective_simplex(3),
                                    product(classes[0], Polytope::hull({{Rational(-1)}, {Rational(1)}}, 1, LatticeTag::M))};
    for (int i = 0; i < 6; ++i) seeds3.push_back(product(classes[i % classes.size()],
                                                         Polytope::hull({{Rational(-1)}, {Rational(1)}}, 1, LatticeTag::M)));
    std::vector<Polytope> seeds4 = {cube(4), cross_polytope(4), projective_simplex(4)};
    for (int i = 0; i < 8; ++i)
        seeds4.push_back(product(classes[i % classes.size()], classes[(i * 3 + 1) % classes.size()]));
    for (int i = 0; i < 4; ++i)
        seeds4.push_back(free_sum(classes[i % classes.size()], classes[(i * 5 + 2) % classes.size()]));

    for (const auto& S : seeds3) {
        out.reflexive.push_back(S);
        out.reflexive.push_back(random_unimodular_image(S, rng));
    }
    for (const auto& S : seeds4) {
        out.reflexive.push_back(S);
        out.reflexive.push_back(random_unimodular_image(S, rng));
    }

    // Rational dilates (not reflexive, but full-dimensional with 0 interior).
    const Rational factors[] = {Rational(3, 2), Rational(2, 3), Rational(5, 3)};
    for (size_t i = 0; i < out.reflexive.size(); i += 3)
        out.dilates.push_back(scale(out.reflexive[i], factors[(i / 3) % 3]));

    // Rational Q-reflexive members from the frozen 5D instance.
    Polytope S5 = almost_not_reflexive_5d();
    out.q_reflexive_rational.push_back(polar_dual(S5));
    {
        std::vector<VecQ> pts;
        for (int i = 0; i < 5; ++i) {
            VecQ e(5, Rational(0));
            e[i] = Rational(1);
            pts.push_back(e);
        }
        pts.push_back({Rational(-1), Rational(-1), Rational(-2), Rational(-2), Rational(-3)});
        Polytope S5b = Polytope::hull(pts, 5, LatticeTag::M);
        out.q_reflexive_rational.push_back(polar_dual(S5b));
    }
    return out;
}

/// Random Q-nef-partitions by partitioning the rays of the normal fan into
/// groups and taking the section polytopes of the grouped divisors;
/// rejection-sampled against the exact predicate.
inline std::vector<MinkowskiPartition> build_partition_corpus(uint64_t seed, size_t target = 56) {
    std::mt19937_64 rng(seed);
    std::vector<MinkowskiPartition> out;

    auto seg = [](int d, int axis) {
        VecQ a(d, Rational(0)), b(d, Rational(0));
        a[axis] = Rational(-1);
        b[axis] = Rational(1);
        return Polytope::hull({a, b}, d, LatticeTag::M);
    };

    // Hand-picked members the acceptance criteria name explicitly.
    out.push_back(MinkowskiPartition({seg(2, 0), seg(2, 1)}));  // square self-mirror
    {
        auto classes = reflexive_polygon_classes();
        Polytope diamond2 = cross_polytope(2);
        std::vector<VecQ> d1, d2;
        for (const auto& v : diamond2.vertices()) {
            VecQ a = v;
            a.insert(a.end(), {Rational(0), Rational(0)});
            d1.push_back(a);
            VecQ b{Rational(0), Rational(0)};
            b.insert(b.end(), v.begin(), v.end());
            d2.push_back(b);
        }
        out.push_back(MinkowskiPartition({Polytope::hull(d1, 4, LatticeTag::M), Polytope::hull(d2, 4, LatticeTag::M)}));
        // r = 1 trivial partitions over a spread of reflexive polytopes.
        for (size_t i = 0; i < classes.size(); i += 3) out.push_back(MinkowskiPartition({classes[i]}));
    }
    out.push_back(MinkowskiPartition({seg(3, 0), seg(3, 1), seg(3, 2)}));  // cube, r = 3
    out.push_back(MinkowskiPartition({cube(2), Polytope::hull({VecQ{Rational(0), Rational(0)}}, 2, LatticeTag::M)}));

    // Ray-partition generator.
    ReflexiveCorpus refl = build_reflexive_corpus(seed ^ 0x9e3779b9, 24);
    std::uniform_int_distribution<int> rdist(2, 3);
    size_t source = 0;
    int attempts = 0;
    while (out.size() < target && attempts < 4000) {
        ++attempts;
        const Polytope& total = refl.reflexive[source % refl.reflexive.size()];
        ++source;
        if (total.rank() > 4) continue;
        Fan fan = normal_fan(total);
        int r = rdist(rng);
        if (static_cast<int>(fan.rays.size()) < r) continue;
        std::vector<int> group(fan.rays.size());
        std::uniform_int_distribution<int> gdist(0, r - 1);
        for (auto& g : group) g = gdist(rng);
        bool all_used = true;
        for (int k = 0; k < r; ++k)
            all_used = all_used && std::find(group.begin(), group.end(), k) != group.end();
        if (!all_used) continue;
        std::vector<Polytope> parts;
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) {
            ToricDivisor D{&fan, VecQ(fan.rays.size(), Rational(0))};
            for (size_t i = 0; i < group.size(); ++i)
                if (group[i] == k) D.coefficients[i] = Rational(1);
            if (!is_qnef(D).is_qnef()) {
                ok = false;
                break;
            }
            try {
                parts.push_back(divisor_polytope(D));
            } catch (const UnboundedError&) {
                ok = false;
            }
        }
        if (!ok) continue;
        MinkowskiPartition cand(parts);
        if (!(cand.total() == total)) continue;
        if (!is_q_nef_partition(cand)) continue;
        out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace corpus
