#ifndef ZK_CORE_IO_HPP
#define ZK_CORE_IO_HPP

#include <string>

#include <json.hpp>

#include "equivariant.hpp"
#include "koszul.hpp"
#include "simplicial.hpp"

namespace zk::io {

using Json = nlohmann::ordered_json;

/// Facet-list format: one facet per line as whitespace-separated labels,
/// '#' starts a comment, an optional "vertices:" line declares the vertex set
/// (required to express ghost vertices). Errors carry line numbers.
SimplicialComplex parse_complex_text(const std::string& text);

/// {"vertices": ["1","2",...], "facets": [["1","2"], ...]}; "vertices" is
/// optional when every vertex occurs in a facet.
SimplicialComplex parse_complex_json(const std::string& text);

/// Dispatch on the first non-space byte ('{' means JSON).
SimplicialComplex parse_complex_auto(const std::string& text);

Json complex_to_json(const SimplicialComplex& k);

/// "none", "all", or comma-separated vertex labels.
TorusSubset parse_torus(const SimplicialComplex& k, const std::string& text);

std::vector<std::string> mask_labels(const SimplicialComplex& k, VertexMask s);

/// Monomial grammar: "u<i>" and "v<i>^<k>" factors joined by '*', u factors
/// then v factors, each ascending by index; exponent omitted when 1; the unit
/// monomial is "1".
std::string monomial_to_string(const SimplicialComplex& k, const Monomial& mono);
std::string cochain_to_string(const Cochain& c);
std::string v_exponents_to_string(const SimplicialComplex& k, const MultiDegree& exps);

/// Inverse of cochain_to_string for the same grammar; used to replay reported
/// certificates.
Cochain parse_cochain(const SimplicialComplex& k, TorusSubset i, Model model,
                      const std::string& text);
MultiDegree parse_v_exponents(const SimplicialComplex& k, const std::string& text);

/// rational = true reports dimensions over the rationals: the torsion column
/// and torsion representatives are dropped.
Json cohomology_report(const EquivariantCohomology& e, bool with_blocks,
                       bool rational = false);
Json formality_report(const SimplicialComplex& k, TorusSubset i,
                      const FreenessVerdict& v, int truncation);
Json survey_report(const SimplicialComplex& k, const SurveyResult& survey,
                   int truncation);
Json classify_report(const SimplicialComplex& k);

}  // namespace zk::io

#endif
