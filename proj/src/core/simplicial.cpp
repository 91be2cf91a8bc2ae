#include "simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "error.hpp"

namespace zk {

VertexSet VertexSet::numbered(int m) {
    VertexSet v;
    v.labels.reserve(m);
    for (int i = 1; i <= m; ++i) v.labels.push_back(std::to_string(i));
    return v;
}

int VertexSet::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

const char* to_string(GraphClass g) {
    switch (g) {
        case GraphClass::BoundaryTriangle: return "boundary-triangle";
        case GraphClass::FourCycle: return "four-cycle";
        case GraphClass::TwoPoints: return "two-points";
        case GraphClass::Edge: return "edge";
        case GraphClass::EdgePlusConePoint: return "edge-plus-cone-point";
        case GraphClass::Point: return "point";
        case GraphClass::Other: return "other";
    }
    return "other";
}

SimplicialComplex SimplicialComplex::from_facets(VertexSet vertices,
                                                 std::vector<VertexMask> facets) {
    int m = vertices.size();
    if (m > kMaxVertices)
        throw_resource("complex has " + std::to_string(m) + " vertices; limit is " +
                       std::to_string(kMaxVertices));
    {
        std::set<std::string> seen;
        for (const auto& l : vertices.labels) {
            if (l.empty()) throw_input("empty vertex label");
            if (!seen.insert(l).second) throw_input("duplicate vertex label '" + l + "'");
        }
    }
    VertexMask full = m == 0 ? 0 : (VertexMask(1) << m) - 1;
    for (VertexMask f : facets)
        if ((f & ~full) != 0) throw_input("facet references a vertex outside the vertex set");

    // Keep inclusion-maximal facets only; {} stands in when there are none.
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    std::vector<VertexMask> maximal;
    for (VertexMask f : facets) {
        bool contained = false;
        for (VertexMask g : facets)
            if (g != f && (f & g) == f) { contained = true; break; }
        if (!contained) maximal.push_back(f);
    }
    if (maximal.empty()) maximal.push_back(0);

    SimplicialComplex k;
    k.m_ = m;
    k.vertices_ = std::move(vertices);
    k.facets_ = std::move(maximal);
    return k;
}

SimplicialComplex SimplicialComplex::from_facet_labels(
    VertexSet vertices, const std::vector<std::vector<std::string>>& facets) {
    std::vector<VertexMask> masks;
    masks.reserve(facets.size());
    for (const auto& facet : facets) {
        VertexMask f = 0;
        for (const auto& l : facet) {
            int i = vertices.index_of(l);
            if (i < 0) throw_input("facet vertex '" + l + "' not in the vertex set");
            f |= VertexMask(1) << i;
        }
        masks.push_back(f);
    }
    return from_facets(std::move(vertices), std::move(masks));
}

bool SimplicialComplex::is_face(VertexMask s) const {
    for (VertexMask f : facets_)
        if ((s & f) == s) return true;
    return false;
}

const SimplicialComplex::FaceCache& SimplicialComplex::face_cache() const {
    auto cached = std::atomic_load_explicit(&cache_, std::memory_order_acquire);
    if (cached) return *cached;

    std::size_t n = std::size_t(1) << m_;
    std::vector<bool> table(n, false);
    for (VertexMask f : facets_) table[f] = true;
    // Downward closure: a mask is a face iff some facet contains it.
    for (int i = 0; i < m_; ++i) {
        VertexMask bit = VertexMask(1) << i;
        for (std::size_t s = 0; s < n; ++s)
            if (!(s & bit) && table[s | bit]) table[s] = true;
    }
    auto built = std::make_shared<FaceCache>();
    for (std::size_t s = 0; s < n; ++s)
        if (table[s]) built->faces.push_back(static_cast<VertexMask>(s));
    for (std::size_t s = 1; s < n; ++s) {
        if (table[s]) continue;
        bool minimal = true;
        VertexMask mask = static_cast<VertexMask>(s);
        for_each_vertex(mask, [&](int i) {
            if (!table[mask & ~(VertexMask(1) << i)]) minimal = false;
        });
        if (minimal) built->missing_faces.push_back(mask);
    }

    std::shared_ptr<const FaceCache> expected;
    std::shared_ptr<const FaceCache> desired = built;
    if (std::atomic_compare_exchange_strong(&cache_, &expected, desired))
        return *desired;
    return *expected;  // another thread built it first
}

const std::vector<VertexMask>& SimplicialComplex::faces() const {
    return face_cache().faces;
}

const std::vector<VertexMask>& SimplicialComplex::missing_faces() const {
    return face_cache().missing_faces;
}

std::vector<long> SimplicialComplex::f_vector() const {
    std::vector<long> f(m_ + 1, 0);
    for (VertexMask s : faces()) ++f[popcount(s)];
    return f;
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (VertexMask f : facets_) d = std::max(d, popcount(f) - 1);
    return d;
}

SimplicialComplex SimplicialComplex::full_subcomplex(VertexMask w) const {
    if ((w & ~full_mask()) != 0) throw_input("full_subcomplex: W is not a vertex subset");
    // Compress bit i of w to position rank(i).
    std::vector<int> pos(m_, -1);
    VertexSet sub;
    for_each_vertex(w, [&](int i) {
        pos[i] = sub.size();
        sub.labels.push_back(vertices_.labels[i]);
    });
    std::vector<VertexMask> facets;
    for (VertexMask f : facets_) {
        VertexMask r = f & w, c = 0;
        for_each_vertex(r, [&](int i) { c |= VertexMask(1) << pos[i]; });
        facets.push_back(c);
    }
    return from_facets(std::move(sub), std::move(facets));
}

SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2) {
    VertexSet vertices = k1.vertices();
    for (const auto& l : k2.vertices().labels) {
        if (vertices.index_of(l) >= 0)
            throw_input("join: vertex label '" + l + "' occurs in both factors");
        vertices.labels.push_back(l);
    }
    int shift = k1.vertex_count();
    std::vector<VertexMask> facets;
    for (VertexMask f1 : k1.facets())
        for (VertexMask f2 : k2.facets())
            facets.push_back(f1 | (f2 << shift));
    return SimplicialComplex::from_facets(std::move(vertices), std::move(facets));
}

SimplicialComplex reconstruct_join(const VertexSet& vertices,
                                   const JoinDecomposition& d) {
    // Facets are unions of one (|V_k|-1)-subset per part with the simplex part.
    std::vector<VertexMask> facets{d.simplex_part};
    for (VertexMask part : d.boundary_parts) {
        std::vector<VertexMask> next;
        for_each_vertex(part, [&](int i) {
            VertexMask sub = part & ~(VertexMask(1) << i);
            for (VertexMask f : facets) next.push_back(f | sub);
        });
        facets = std::move(next);
    }
    return SimplicialComplex::from_facets(vertices, std::move(facets));
}

std::optional<JoinDecomposition> join_decomposition(const SimplicialComplex& k) {
    const auto& mf = k.missing_faces();
    VertexMask used = 0;
    for (VertexMask s : mf) {
        if (s & used) return std::nullopt;  // missing faces intersect
        used |= s;
    }
    JoinDecomposition d;
    d.boundary_parts = mf;
    d.simplex_part = k.full_mask() & ~used;
    SimplicialComplex rebuilt = reconstruct_join(k.vertices(), d);
    if (!(rebuilt == k)) return std::nullopt;
    return d;
}

bool is_flag(const SimplicialComplex& k) {
    for (VertexMask s : k.missing_faces())
        if (popcount(s) != 2) return false;
    return true;
}

GraphClass graph_classify(const SimplicialComplex& k) {
    if (k.dimension() > 1) throw_input("graph_classify: complex has a facet with 3+ vertices");
    int m = k.vertex_count();
    for (int i = 0; i < m; ++i)
        if (k.is_ghost_vertex(i)) return GraphClass::Other;

    std::vector<VertexMask> edges;
    for (VertexMask f : k.facets())
        if (popcount(f) == 2) edges.push_back(f);
    int e = static_cast<int>(edges.size());

    switch (m) {
        case 1: return e == 0 ? GraphClass::Point : GraphClass::Other;
        case 2:
            if (e == 0) return GraphClass::TwoPoints;
            return GraphClass::Edge;
        case 3:
            if (e == 2) return GraphClass::EdgePlusConePoint;  // any 2 edges on 3 vertices
            if (e == 3) return GraphClass::BoundaryTriangle;
            return GraphClass::Other;
        case 4: {
            if (e != 4) return GraphClass::Other;
            for (int i = 0; i < 4; ++i) {
                int deg = 0;
                for (VertexMask edge : edges)
                    if (edge & (VertexMask(1) << i)) ++deg;
                if (deg != 2) return GraphClass::Other;
            }
            return GraphClass::FourCycle;  // 4 edges, all degrees 2: the 4-cycle
        }
        default: return GraphClass::Other;
    }
}

std::string mask_to_string(const SimplicialComplex& k, VertexMask s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for_each_vertex(s, [&](int i) {
        if (!first) out << ',';
        first = false;
        out << k.label(i);
    });
    out << '}';
    return out.str();
}

}  // namespace zk
