#ifndef ZK_CORE_KOSZUL_HPP
#define ZK_CORE_KOSZUL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "linalg.hpp"
#include "simplicial.hpp"

namespace zk {

/// The two cochain algebra models for a pair (K, I):
///   full:    exterior generators u_i (i not in I, degree 1) tensored with the
///            face ring of K (v_i of degree 2), d u_i = v_i;
///   reduced: the quotient by the ideal (u_i v_i, v_i^2 : i not in I), finite
///            in each multidegree. Their cohomology agrees; the reduced model
///            is the production route, the full one a cross-check.
enum class Model { full, reduced };

/// Coordinate subtorus index set I, as a vertex mask.
using TorusSubset = VertexMask;

/// Exponent vector over the vertex set.
using MultiDegree = std::vector<std::uint16_t>;

/// Monomial u_J v^a. deg u_i = 1, deg v_i = 2; the multidegree a + 1_J is
/// preserved by the differential.
struct Monomial {
    VertexMask u_part = 0;
    MultiDegree exps;  // size = vertex count

    int degree() const;
    MultiDegree multidegree() const;
    VertexMask support() const;  // vertices with positive exponent

    bool operator==(const Monomial& o) const { return u_part == o.u_part && exps == o.exps; }
};

/// Canonical order: multidegree lexicographic, then u_part as a bitmask value.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

bool is_admissible(const SimplicialComplex& k, TorusSubset i, Model model,
                   const Monomial& mono);

/// Integer linear combination of admissible monomials of one model over one
/// ambient (K, I). When built from a plain reference the complex must outlive
/// the cochain; the shared_ptr overload keeps it alive.
class Cochain {
public:
    Cochain(const SimplicialComplex& k, TorusSubset i, Model model)
        : k_(&k), i_(i), model_(model) {}
    Cochain(std::shared_ptr<const SimplicialComplex> k, TorusSubset i, Model model)
        : k_(k.get()), owner_(std::move(k)), i_(i), model_(model) {}

    static Cochain monomial(const SimplicialComplex& k, TorusSubset i, Model model,
                            const Monomial& mono, Int coeff = 1);
    static Cochain one(const SimplicialComplex& k, TorusSubset i, Model model);
    /// Zero cochain with the same ambient (and owner) as c.
    static Cochain like(const Cochain& c);

    const SimplicialComplex& complex() const { return *k_; }
    TorusSubset torus() const { return i_; }
    Model model() const { return model_; }

    /// Adds coeff * mono if the monomial is admissible, else drops it (the
    /// monomial is zero in the model). Zero coefficients are never stored.
    void add_term(const Monomial& mono, const Int& coeff);

    const std::map<Monomial, Int, MonomialOrder>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Common cohomological degree of the terms; -1 for the zero cochain.
    int degree() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(const Int& c) const;

private:
    const SimplicialComplex* k_;
    std::shared_ptr<const SimplicialComplex> owner_;  // may be null
    TorusSubset i_;
    Model model_;
    std::map<Monomial, Int, MonomialOrder> terms_;
};

/// d(u_J v^a) = sum over j in J of (-1)^{|{j' in J : j' < j}|} u_{J-j} v^{a+e_j},
/// with inadmissible targets dropped. Satisfies d(d(c)) = 0 and the graded
/// Leibniz rule.
Cochain differential(const Cochain& c);

/// Bilinear extension of the monomial product with the exterior-shuffle sign;
/// graded-commutative. Throws on mismatched ambient (K, I, model).
Cochain multiply(const Cochain& a, const Cochain& b);

/// All admissible monomials of cohomological degree n, canonically ordered.
/// For the reduced model the result is intrinsically finite; the truncation D
/// only validates n <= D.
std::vector<Monomial> basis(const SimplicialComplex& k, TorusSubset i, Model model,
                            int n, int truncation);

/// basis(..) partitioned by multidegree (the differential preserves each part).
std::map<MultiDegree, std::vector<Monomial>> multidegree_blocks(
    const SimplicialComplex& k, TorusSubset i, Model model, int n, int truncation);

}  // namespace zk

#endif
