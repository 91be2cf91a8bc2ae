#ifndef ZK_CORE_SIMPLICIAL_HPP
#define ZK_CORE_SIMPLICIAL_HPP

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zk {

/// Subset of the vertex set, one bit per vertex (canonical index i <-> bit i).
using VertexMask = std::uint32_t;

/// Hard cap on the number of vertices; subset enumeration is 2^m.
inline constexpr int kMaxVertices = 24;

inline int popcount(VertexMask s) { return std::popcount(s); }

/// Iterate set bits low to high.
template <typename F>
void for_each_vertex(VertexMask s, F&& f) {
    while (s) {
        int i = std::countr_zero(s);
        f(i);
        s &= s - 1;
    }
}

/// Ordered vertex labels; position in the vector is the canonical index.
struct VertexSet {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }

    /// 1-based default labels "1".."m".
    static VertexSet numbered(int m);

    /// Index of a label, or -1.
    int index_of(const std::string& label) const;
};

enum class GraphClass {
    BoundaryTriangle,   // 3-cycle
    FourCycle,          // join of two vertex pairs
    TwoPoints,          // two vertices, no edge
    Edge,               // one edge
    EdgePlusConePoint,  // path on three vertices
    Point,              // single vertex
    Other,
};

const char* to_string(GraphClass g);

/// K = boundary(V_1) * ... * boundary(V_p) * simplex(U); parts partition the
/// vertex set.
struct JoinDecomposition {
    std::vector<VertexMask> boundary_parts;  // each |V_k| >= 1, sorted by lowest bit
    VertexMask simplex_part = 0;
};

/// A finite simplicial complex with ghost vertices, stored by its facets
/// (inclusion-maximal faces). The empty set is always a face. Immutable after
/// construction; face/missing-face enumerations are cached lazily behind a
/// mutex and safe to share across threads.
class SimplicialComplex {
public:
    /// Facets are reduced to the inclusion-maximal ones; vertices appearing in
    /// no facet remain as ghost vertices. A complex with no facets has the
    /// single facet {} (only the empty face).
    static SimplicialComplex from_facets(VertexSet vertices,
                                         std::vector<VertexMask> facets);

    /// Convenience: facets given as label lists.
    static SimplicialComplex from_facet_labels(
        VertexSet vertices, const std::vector<std::vector<std::string>>& facets);

    int vertex_count() const { return m_; }
    VertexMask full_mask() const { return m_ == 0 ? 0 : (VertexMask(1) << m_) - 1; }
    const VertexSet& vertices() const { return vertices_; }
    const std::string& label(int i) const { return vertices_.labels[i]; }
    const std::vector<VertexMask>& facets() const { return facets_; }

    bool is_face(VertexMask s) const;
    bool is_ghost_vertex(int i) const { return !is_face(VertexMask(1) << i); }

    /// All faces including {}, ascending as masks.
    const std::vector<VertexMask>& faces() const;

    /// Minimal non-faces, ascending as masks. A ghost vertex i contributes {i}.
    const std::vector<VertexMask>& missing_faces() const;

    /// f[k] = number of faces with k vertices (f[0] = 1 for the empty face).
    std::vector<long> f_vector() const;

    /// dim = max |facet| - 1; the complex {} only has dim -1.
    int dimension() const;

    /// Faces contained in W, on vertex set W (relabeled to indices 0..|W|-1,
    /// original labels kept). Vertices of W spanning no face become ghosts.
    SimplicialComplex full_subcomplex(VertexMask w) const;

    bool operator==(const SimplicialComplex& other) const {
        return vertices_.labels == other.vertices_.labels && facets_ == other.facets_;
    }

private:
    SimplicialComplex() = default;

    struct FaceCache {
        std::vector<VertexMask> faces;          // ascending
        std::vector<VertexMask> missing_faces;  // ascending
    };
    const FaceCache& face_cache() const;

    int m_ = 0;
    VertexSet vertices_;
    std::vector<VertexMask> facets_;  // inclusion-maximal, ascending

    // Built on first use; the first build wins, so returned references stay
    // valid for the complex's lifetime. Copies share an already-built cache.
    mutable std::shared_ptr<const FaceCache> cache_;
};

/// Join on disjoint label sets: faces are unions of one face from each factor.
SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2);

/// The boundary-of-simplices-times-simplex decomposition, when it exists.
/// Exists iff the missing faces are pairwise disjoint; the result is verified
/// by reconstructing the join before being returned.
std::optional<JoinDecomposition> join_decomposition(const SimplicialComplex& k);

/// Rebuild the complex a decomposition describes, on the same vertex set.
SimplicialComplex reconstruct_join(const VertexSet& vertices,
                                   const JoinDecomposition& d);

/// True iff every missing face has exactly two vertices.
bool is_flag(const SimplicialComplex& k);

/// Identify a one-dimensional complex up to relabeling. Complexes with ghost
/// vertices classify as Other; a facet with three or more vertices is an error.
GraphClass graph_classify(const SimplicialComplex& k);

std::string mask_to_string(const SimplicialComplex& k, VertexMask s);

}  // namespace zk

#endif
