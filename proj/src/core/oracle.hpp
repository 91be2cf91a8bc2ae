#ifndef ZK_CORE_ORACLE_HPP
#define ZK_CORE_ORACLE_HPP

#include <functional>
#include <vector>

#include "linalg.hpp"
#include "simplicial.hpp"

namespace zk::oracle {

/// Rank and torsion of one cohomology group (torsion ascending).
struct GroupData {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const GroupData&) const = default;
};

/// Reduced simplicial cohomology of K itself (not of a moment-angle complex),
/// from the augmented simplicial cochain complex; n >= -1 is meaningful, any
/// n is accepted. Shares only the Smith-normal-form substrate with the main
/// computation path.
GroupData reduced_simplicial_cohomology(const SimplicialComplex& k, int n);

/// table[n] = H^n of the moment-angle complex of K, assembled subsetwise from
/// reduced cohomology of full subcomplexes: the degree-n part collects
/// H~^{n-|S|-1}(K_S) over all vertex subsets S.
std::vector<GroupData> ordinary_cohomology_hochster(const SimplicialComplex& k,
                                                    int truncation);

/// Stream every complex on m labeled vertices (every downward-closed family
/// containing the empty face; ghost vertices arise naturally). m <= 5.
void exhaustive_complex_enumeration(
    int m, const std::function<void(const SimplicialComplex&)>& emit);

/// Facet list minimized over all vertex relabelings; equal signatures mean
/// isomorphic complexes. Intended for deduplication at small m.
std::vector<VertexMask> canonical_form(const SimplicialComplex& k);

}  // namespace zk::oracle

#endif
