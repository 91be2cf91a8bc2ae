#ifndef ZK_CORE_EQUIVARIANT_HPP
#define ZK_CORE_EQUIVARIANT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul.hpp"
#include "linalg.hpp"
#include "simplicial.hpp"

namespace zk {

/// The cohomology of the chosen model of (K, I) in all degrees up to a
/// truncation, with multigraded refinement, stored generator representatives
/// and exact class arithmetic. Computed blockwise per multidegree; cheap to
/// copy and safe to share across threads once built.
class EquivariantCohomology {
public:
    EquivariantCohomology(const SimplicialComplex& k, TorusSubset i, int truncation,
                          Model model = Model::reduced);

    const SimplicialComplex& complex() const { return *k_; }
    std::shared_ptr<const SimplicialComplex> complex_ptr() const { return k_; }
    TorusSubset torus() const { return i_; }
    int truncation() const { return truncation_; }
    Model model() const { return model_; }

    /// Rank of the free part of H^n, 0 <= n <= truncation.
    long free_rank(int n) const;
    /// Torsion coefficients of H^n, ascending.
    std::vector<Int> torsion(int n) const;

    /// Generators: the free ones first (multidegree order), then the torsion
    /// ones (multidegree order).
    long generator_count(int n) const;
    bool generator_is_torsion(int n, long g) const;
    /// Torsion order of a generator; 0 for free generators.
    Int generator_order(int n, long g) const;
    Cochain representative(int n, long g) const;

    /// A cohomology class in the generator coordinates of its degree.
    struct ClassExpr {
        int degree = -1;
        std::vector<Int> free_coords;
        std::vector<Int> torsion_coords;  // reduced mod the generator's order
        bool is_zero() const;
    };

    /// Express a cocycle of degree <= truncation. Throws Error(internal) if z
    /// is not a cocycle, Error(input) on degree overflow.
    ClassExpr classify(const Cochain& z) const;
    bool is_coboundary(const Cochain& z) const { return classify(z).is_zero(); }
    /// [a] == [b] or [a] == -[b].
    bool same_class_up_to_sign(const Cochain& a, const Cochain& b) const;

    /// Multidegree refinement of H^n: one row per multidegree with nonzero
    /// cohomology, multidegree-ascending.
    struct BlockSummary {
        MultiDegree mu;
        long free_rank = 0;
        std::vector<Int> torsion;
    };
    std::vector<BlockSummary> blocks(int n) const;

    struct Impl;

private:
    friend std::optional<struct TorsionWitness> torsion_witness_search(
        const EquivariantCohomology&);

    std::shared_ptr<const SimplicialComplex> k_;
    TorusSubset i_ = 0;
    int truncation_ = 0;
    Model model_ = Model::reduced;
    std::shared_ptr<const Impl> impl_;
};

/// Product of two classes given by cocycle representatives, expressed in the
/// generator basis of the target degree. Throws Error(input) if the target
/// degree exceeds the truncation.
EquivariantCohomology::ClassExpr cup_product(const EquivariantCohomology& e,
                                             const Cochain& x, const Cochain& y);

/// Action of the polynomial monomial v^exps (supported in I) on a class;
/// this is the module structure the freeness questions are about.
EquivariantCohomology::ClassExpr module_action(const EquivariantCohomology& e,
                                               const MultiDegree& v_exps,
                                               const Cochain& x);

/// Monomial v^exps as a cochain (exponents anywhere in the vertex set).
Cochain v_monomial(const SimplicialComplex& k, TorusSubset i, Model model,
                   const MultiDegree& exps);

/// Dimensions over the rationals of the face ring of K per cohomological
/// degree (deg v_i = 2), up to the truncation inclusive.
std::vector<Int> hilbert_face_ring(const SimplicialComplex& k, int truncation);

/// A nonzero class annihilated by a v-monomial over I: a certificate that the
/// cohomology is not a free module. Every witness is replay-verified before
/// being reported.
struct TorsionWitness {
    enum class Kind { non_face, missing_face_pair, generic };
    Kind kind;
    Cochain representative;
    MultiDegree annihilator;  // exponent vector of a monomial in {v_i : i in I}
    // provenance when kind == missing_face_pair
    VertexMask mf1 = 0, mf2 = 0;
    int j = -1;
};

/// First degree where the rational dimensions of E fall short of the graded
/// product of the polynomial dimensions of I with the ordinary rational Betti
/// numbers; nullopt means the dimensions match everywhere up to the
/// truncation. A deficit certifies non-freeness; a pass is evidence only.
/// `ordinary` must be the I = {} computation of the same complex at the same
/// truncation.
std::optional<int> collapse_check(const EquivariantCohomology& e,
                                  const EquivariantCohomology& ordinary);

/// Structured torsion-witness search: the non-face certificate, then
/// missing-face pairs with difference exactly I, then a generic scan testing
/// v_i * x over all computed generators x. Returns the first verified witness.
std::optional<TorsionWitness> torsion_witness_search(const EquivariantCohomology& e);

/// Replay a witness: representative is a non-coboundary cocycle and the
/// annihilator times it is a coboundary.
bool verify_witness(const EquivariantCohomology& e, const TorsionWitness& w);

struct FreenessVerdict {
    enum class Status { free, not_free, undetermined };
    Status status = Status::undetermined;

    // FREE certificate: the join decomposition and the induced split of I
    // (one proper subset per boundary part, then the simplex-part piece).
    std::optional<JoinDecomposition> decomposition;
    std::vector<VertexMask> torus_split;

    // NOT_FREE certificate: a witness, or a collapse deficit degree.
    std::optional<TorsionWitness> witness;
    std::optional<int> deficit_degree;

    // truncated evidence (meaningful for undetermined and not_free outcomes)
    int truncation = 0;
    bool witness_searched = false;
    bool collapse_passed = false;
};

const char* to_string(FreenessVerdict::Status s);

/// Decide freeness of H over the polynomial ring on I:
///   I not a face               -> not_free (witness: the class of 1);
///   join decomposition + I face -> free (structural certificate);
///   verified torsion witness    -> not_free;
///   collapse deficit            -> not_free;
///   otherwise                   -> undetermined with the truncated evidence.
/// Pass the I = {} computation through `ordinary` to share it across calls.
FreenessVerdict freeness_verdict(const SimplicialComplex& k, TorusSubset i,
                                 int truncation,
                                 const EquivariantCohomology* ordinary = nullptr);

struct SurveyResult {
    std::vector<VertexMask> simplices;      // all I in K, ascending as masks
    std::vector<FreenessVerdict> verdicts;  // aligned with simplices
    bool decomposable = false;              // join decomposition exists
    bool complete_intersection = false;     // same condition, by construction
    std::optional<JoinDecomposition> decomposition;
};

/// Verdicts for every simplex I of K. When the complex decomposes, every
/// verdict is free; a not_free verdict in that case is an internal error.
SurveyResult formality_survey(const SimplicialComplex& k, int truncation,
                              int threads = 1);

/// Default truncation: covers the missing-face-pair witness degrees plus the
/// annihilator action.
int default_truncation(const SimplicialComplex& k);

struct FlagReport {
    bool condition_b = false;  // pairwise-disjoint missing faces, all of size 2
    std::optional<JoinDecomposition> decomposition;
    std::vector<FreenessVerdict> vertex_verdicts;  // I = {i} per vertex
    bool no_vertex_obstruction = false;            // no single-circle not_free
    bool agreement = false;                        // condition_b == no_vertex_obstruction
};

/// Flag-complex criterion with the per-vertex cross-check. Throws
/// Error(input) if K is not flag.
FlagReport flag_criterion(const SimplicialComplex& k, int truncation);

struct GraphReport {
    GraphClass classification = GraphClass::Other;
    bool in_list = false;
    std::vector<FreenessVerdict> vertex_verdicts;
    bool no_vertex_obstruction = false;
    bool agreement = false;
};

/// One-dimensional criterion with the per-vertex cross-check. Throws
/// Error(input) if dim K > 1.
GraphReport graph_criterion(const SimplicialComplex& k, int truncation);

}  // namespace zk

#endif
