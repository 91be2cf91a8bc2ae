#include "oracle.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace zk::oracle {

namespace {

// Augmented simplicial cochain complex: bases[p] holds the faces with p
// vertices (p = 0 is the empty face), coboundary[p] maps level p to p + 1.
// Level p corresponds to reduced degree p - 1.
struct CochainComplex {
    std::vector<std::vector<VertexMask>> bases;
    std::vector<IntMatrix> coboundary;
};

CochainComplex build_cochain_complex(const SimplicialComplex& k) {
    CochainComplex cc;
    int top = k.dimension() + 1;  // largest face size
    cc.bases.assign(top + 1, {});
    for (VertexMask f : k.faces()) cc.bases[popcount(f)].push_back(f);

    cc.coboundary.resize(top + 1);
    for (int p = 0; p <= top; ++p) {
        int rows = p + 1 <= top ? static_cast<int>(cc.bases[p + 1].size()) : 0;
        IntMatrix d(rows, static_cast<int>(cc.bases[p].size()));
        if (rows > 0) {
            const auto& up = cc.bases[p + 1];
            for (int c = 0; c < static_cast<int>(cc.bases[p].size()); ++c) {
                VertexMask f = cc.bases[p][c];
                for (int v = 0; v < k.vertex_count(); ++v) {
                    VertexMask bit = VertexMask(1) << v;
                    if (f & bit) continue;
                    VertexMask g = f | bit;
                    auto it = std::lower_bound(up.begin(), up.end(), g);
                    if (it == up.end() || *it != g) continue;
                    // sign: position of v among the sorted vertices of g
                    int pos = popcount(g & (bit - 1));
                    d.at(static_cast<int>(it - up.begin()), c) = pos % 2 == 0 ? 1 : -1;
                }
            }
        }
        cc.coboundary[p] = std::move(d);
    }
    return cc;
}

GroupData group_of_step(const CohomologyStep& step) {
    GroupData g;
    g.free_rank = step.free_rank();
    g.torsion = step.torsion();
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

// All reduced cohomology groups of K; index p holds degree p - 1.
std::vector<GroupData> all_reduced_cohomology(const SimplicialComplex& k) {
    CochainComplex cc = build_cochain_complex(k);
    int top = static_cast<int>(cc.bases.size()) - 1;
    std::vector<GroupData> out(top + 1);
    for (int p = 0; p <= top; ++p) {
        IntMatrix d_in = p > 0 ? cc.coboundary[p - 1]
                               : IntMatrix(static_cast<int>(cc.bases[0].size()), 0);
        CohomologyStep step(d_in, cc.coboundary[p]);
        out[p] = group_of_step(step);
    }
    return out;
}

}  // namespace

GroupData reduced_simplicial_cohomology(const SimplicialComplex& k, int n) {
    if (n < -1 || n > k.dimension()) return GroupData{};
    return all_reduced_cohomology(k)[n + 1];
}

std::vector<GroupData> ordinary_cohomology_hochster(const SimplicialComplex& k,
                                                    int truncation) {
    std::vector<GroupData> table(truncation + 1);
    VertexMask full = k.full_mask();
    VertexMask s = 0;
    for (;;) {
        SimplicialComplex sub = k.full_subcomplex(s);
        std::vector<GroupData> reduced = all_reduced_cohomology(sub);
        int size = popcount(s);
        for (int p = 0; p < static_cast<int>(reduced.size()); ++p) {
            int n = (p - 1) + size + 1;
            if (n < 0 || n > truncation) continue;
            table[n].free_rank += reduced[p].free_rank;
            table[n].torsion.insert(table[n].torsion.end(), reduced[p].torsion.begin(),
                                    reduced[p].torsion.end());
        }
        if (s == full) break;
        s = (s - full) & full;
    }
    for (GroupData& g : table) std::sort(g.torsion.begin(), g.torsion.end());
    return table;
}

void exhaustive_complex_enumeration(
    int m, const std::function<void(const SimplicialComplex&)>& emit) {
    if (m < 0 || m > 5) throw_input("exhaustive enumeration supports 0 <= m <= 5");

    // Nonempty subsets ordered by size then value; a subset may be chosen only
    // if all its one-smaller subsets are chosen.
    std::vector<VertexMask> order;
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    for (int size = 1; size <= m; ++size)
        for (VertexMask s = 1; s <= full && full != 0; ++s)
            if (popcount(s) == size) order.push_back(s);

    std::vector<bool> chosen(std::size_t(1) << m, false);
    chosen[0] = true;  // the empty face

    VertexSet vertices = VertexSet::numbered(m);
    auto flush = [&]() {
        std::vector<VertexMask> facets;
        for (std::size_t s = 0; s < chosen.size(); ++s) {
            if (!chosen[s]) continue;
            bool maximal = true;
            for (int v = 0; v < m && maximal; ++v)
                if (!(s & (std::size_t(1) << v)) && chosen[s | (std::size_t(1) << v)])
                    maximal = false;
            if (maximal) facets.push_back(static_cast<VertexMask>(s));
        }
        emit(SimplicialComplex::from_facets(vertices, std::move(facets)));
    };

    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == order.size()) {
            flush();
            return;
        }
        VertexMask s = order[idx];
        bool allowed = true;
        for_each_vertex(s, [&](int v) {
            if (!chosen[s & ~(VertexMask(1) << v)]) allowed = false;
        });
        self(self, idx + 1);  // s not a face
        if (allowed) {
            chosen[s] = true;
            self(self, idx + 1);
            chosen[s] = false;
        }
    };
    rec(rec, 0);
}

std::vector<VertexMask> canonical_form(const SimplicialComplex& k) {
    int m = k.vertex_count();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<VertexMask> best;
    bool have = false;
    do {
        std::vector<VertexMask> relabeled;
        relabeled.reserve(k.facets().size());
        for (VertexMask f : k.facets()) {
            VertexMask g = 0;
            for_each_vertex(f, [&](int v) { g |= VertexMask(1) << perm[v]; });
            relabeled.push_back(g);
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (!have || relabeled < best) {
            best = std::move(relabeled);
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace zk::oracle
