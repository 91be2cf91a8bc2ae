#ifndef ZK_TESTS_SUPPORT_HPP
#define ZK_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "core/equivariant.hpp"
#include "core/error.hpp"
#include "core/koszul.hpp"
#include "core/linalg.hpp"
#include "core/oracle.hpp"
#include "core/simplicial.hpp"

namespace zk::test {

inline SimplicialComplex cycle_complex(int m) {
    std::vector<VertexMask> facets;
    for (int i = 0; i < m; ++i)
        facets.push_back((VertexMask(1) << i) | (VertexMask(1) << ((i + 1) % m)));
    return SimplicialComplex::from_facets(VertexSet::numbered(m), std::move(facets));
}

inline SimplicialComplex simplex_complex(int m) {
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    return SimplicialComplex::from_facets(VertexSet::numbered(m), {full});
}

inline SimplicialComplex boundary_simplex(int m) {
    VertexMask full = (VertexMask(1) << m) - 1;
    std::vector<VertexMask> facets;
    for (int i = 0; i < m; ++i) facets.push_back(full & ~(VertexMask(1) << i));
    return SimplicialComplex::from_facets(VertexSet::numbered(m), std::move(facets));
}

inline SimplicialComplex ghosts_only(int m) {
    return SimplicialComplex::from_facets(VertexSet::numbered(m), {});
}

/// Faces = subsets containing none of the given minimal non-faces.
inline SimplicialComplex complex_from_missing_faces(int m,
                                                    const std::vector<VertexMask>& mf) {
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    std::vector<VertexMask> facets;
    for (VertexMask s = 0;; ++s) {
        bool face = true;
        for (VertexMask bad : mf)
            if ((s & bad) == bad) { face = false; break; }
        if (face) {
            bool maximal = false;
            for (int v = 0; v < m && !maximal; ++v) {
                VertexMask up = s | (VertexMask(1) << v);
                if (up == s) continue;
                bool up_face = true;
                for (VertexMask bad : mf)
                    if ((up & bad) == bad) { up_face = false; break; }
                if (up_face) maximal = true;  // s is not maximal
            }
            if (!maximal) facets.push_back(s);
        }
        if (s == full) break;
    }
    return SimplicialComplex::from_facets(VertexSet::numbered(m), std::move(facets));
}

/// The five-vertex complex with missing faces {1,2,3} and {3,4,5}.
inline SimplicialComplex wedge_example() {
    return complex_from_missing_faces(5, {0b00111, 0b11100});
}

// ---- independent oracles ----

/// Minimal non-faces by direct enumeration over all subsets, using only the
/// facet list (downward closure recomputed from scratch).
inline std::vector<VertexMask> brute_force_missing_faces(const SimplicialComplex& k) {
    int m = k.vertex_count();
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    auto face = [&](VertexMask s) {
        for (VertexMask f : k.facets())
            if ((s & f) == s) return true;
        return false;
    };
    std::vector<VertexMask> out;
    for (VertexMask s = 1; full != 0; ++s) {
        if (!face(s)) {
            bool minimal = true;
            for_each_vertex(s, [&](int v) {
                if (!face(s & ~(VertexMask(1) << v))) minimal = false;
            });
            if (minimal) out.push_back(s);
        }
        if (s == full) break;
    }
    return out;
}

/// Rank over Q by fraction-free (Bareiss) elimination; independent of the SNF
/// path.
inline int bareiss_rank(IntMatrix m) {
    int rows = m.rows(), cols = m.cols();
    Int prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m.at(r, c) = (m.at(rank, col) * m.at(r, c) - m.at(r, col) * m.at(rank, c)) / prev;
            m.at(r, col) = 0;
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

/// Cohomology of the model at one degree via the monomial basis and the
/// cochain-level differential; shares nothing with the block engine.
inline oracle::GroupData naive_model_cohomology(const SimplicialComplex& k, TorusSubset i,
                                                Model model, int n, int truncation) {
    auto matrix_of_d = [&](const std::vector<Monomial>& from,
                           const std::vector<Monomial>& to) {
        IntMatrix d(static_cast<int>(to.size()), static_cast<int>(from.size()));
        MonomialOrder less;
        for (int c = 0; c < static_cast<int>(from.size()); ++c) {
            Cochain dc = differential(Cochain::monomial(k, i, model, from[c]));
            for (const auto& [mono, coeff] : dc.terms()) {
                auto it = std::lower_bound(to.begin(), to.end(), mono, less);
                if (it == to.end() || less(mono, *it) || less(*it, mono))
                    throw_internal("differential image missed the target basis");
                d.at(static_cast<int>(it - to.begin()), c) = coeff;
            }
        }
        return d;
    };
    std::vector<Monomial> level_n = basis(k, i, model, n, truncation);
    std::vector<Monomial> below =
        n > 0 ? basis(k, i, model, n - 1, truncation) : std::vector<Monomial>{};
    std::vector<Monomial> above =
        n + 1 <= truncation ? basis(k, i, model, n + 1, truncation) : std::vector<Monomial>{};
    IntMatrix d_in = matrix_of_d(below, level_n);
    IntMatrix d_out = matrix_of_d(level_n, above);
    if (below.empty()) d_in = IntMatrix(static_cast<int>(level_n.size()), 0);
    if (above.empty()) d_out = IntMatrix(0, static_cast<int>(level_n.size()));
    CohomologyStep step(d_in, d_out);
    oracle::GroupData g;
    g.free_rank = step.free_rank();
    g.torsion = step.torsion();
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

inline SimplicialComplex random_complex(std::mt19937& rng, int m, int max_facets) {
    std::uniform_int_distribution<int> facet_count(1, max_facets);
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    std::uniform_int_distribution<VertexMask> subset(0, full);
    std::vector<VertexMask> facets;
    int n = facet_count(rng);
    for (int t = 0; t < n; ++t) facets.push_back(subset(rng));
    return SimplicialComplex::from_facets(VertexSet::numbered(m), std::move(facets));
}

}  // namespace zk::test

#endif
