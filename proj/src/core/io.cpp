#include "io.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace zk::io {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(static_cast<long>(x.get_si()));
    return Json(x.get_str());
}

}  // namespace

SimplicialComplex parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    VertexSet vertices;
    std::vector<std::pair<int, std::vector<std::string>>> facet_lines;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "vertices:") {
            if (have_header)
                throw_input("line " + std::to_string(lineno) + ": duplicate vertices: line");
            have_header = true;
            vertices.labels.assign(toks.begin() + 1, toks.end());
            continue;
        }
        facet_lines.emplace_back(lineno, std::move(toks));
    }

    if (!have_header) {
        // vertex set = labels in order of first appearance
        for (const auto& [no, toks] : facet_lines)
            for (const auto& t : toks)
                if (vertices.index_of(t) < 0) vertices.labels.push_back(t);
    }
    {
        std::vector<std::string> seen;
        for (const auto& l : vertices.labels) {
            if (std::find(seen.begin(), seen.end(), l) != seen.end())
                throw_input("duplicate vertex label '" + l + "' in the vertices: line");
            seen.push_back(l);
        }
    }
    if (vertices.size() > kMaxVertices)
        throw_resource("complex has more than " + std::to_string(kMaxVertices) + " vertices");

    std::vector<VertexMask> facets;
    for (const auto& [no, toks] : facet_lines) {
        VertexMask f = 0;
        for (const auto& t : toks) {
            int idx = vertices.index_of(t);
            if (idx < 0)
                throw_input("line " + std::to_string(no) + ": unknown vertex '" + t + "'");
            f |= VertexMask(1) << idx;
        }
        facets.push_back(f);
    }
    return SimplicialComplex::from_facets(std::move(vertices), std::move(facets));
}

SimplicialComplex parse_complex_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw_input(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("facets") || !j["facets"].is_array())
        throw_input("JSON complex needs a \"facets\" array");

    VertexSet vertices;
    std::vector<std::vector<std::string>> facets;
    for (const auto& row : j["facets"]) {
        if (!row.is_array()) throw_input("each facet must be an array of labels");
        std::vector<std::string> facet;
        for (const auto& cell : row) {
            std::string label = cell.is_string() ? cell.get<std::string>() : cell.dump();
            facet.push_back(label);
        }
        facets.push_back(std::move(facet));
    }
    if (j.contains("vertices")) {
        if (!j["vertices"].is_array()) throw_input("\"vertices\" must be an array");
        for (const auto& cell : j["vertices"])
            vertices.labels.push_back(cell.is_string() ? cell.get<std::string>()
                                                       : cell.dump());
    } else {
        for (const auto& facet : facets)
            for (const auto& label : facet)
                if (vertices.index_of(label) < 0) vertices.labels.push_back(label);
    }
    return SimplicialComplex::from_facet_labels(std::move(vertices), facets);
}

SimplicialComplex parse_complex_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_complex_json(text);
        break;
    }
    return parse_complex_text(text);
}

Json complex_to_json(const SimplicialComplex& k) {
    Json out;
    out["vertices"] = Json::array();
    for (const auto& l : k.vertices().labels) out["vertices"].push_back(l);
    out["facets"] = Json::array();
    for (VertexMask f : k.facets()) out["facets"].push_back(mask_labels(k, f));
    return out;
}

TorusSubset parse_torus(const SimplicialComplex& k, const std::string& text) {
    if (text == "none" || text.empty()) return 0;
    if (text == "all") return k.full_mask();
    TorusSubset mask = 0;
    std::string current;
    auto flush = [&](const std::string& label) {
        if (label.empty()) return;
        int idx = k.vertices().index_of(label);
        if (idx < 0) throw_input("torus subset: unknown vertex '" + label + "'");
        mask |= TorusSubset(1) << idx;
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    flush(current);
    return mask;
}

std::vector<std::string> mask_labels(const SimplicialComplex& k, VertexMask s) {
    std::vector<std::string> out;
    for_each_vertex(s, [&](int v) { out.push_back(k.label(v)); });
    return out;
}

std::string monomial_to_string(const SimplicialComplex& k, const Monomial& mono) {
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << '*';
        first = false;
    };
    for_each_vertex(mono.u_part, [&](int v) {
        sep();
        out << 'u' << k.label(v);
    });
    for (int v = 0; v < static_cast<int>(mono.exps.size()); ++v) {
        if (mono.exps[v] == 0) continue;
        sep();
        out << 'v' << k.label(v);
        if (mono.exps[v] > 1) out << '^' << mono.exps[v];
    }
    if (first) out << '1';
    return out.str();
}

std::string cochain_to_string(const Cochain& c) {
    if (c.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : c.terms()) {
        Int a = coeff;
        if (first) {
            if (a < 0) out << '-';
        } else {
            out << (a < 0 ? " - " : " + ");
        }
        first = false;
        Int mag = abs(a);
        if (mag != 1) out << mag.get_str() << '*';
        out << monomial_to_string(c.complex(), mono);
    }
    return out.str();
}

std::string v_exponents_to_string(const SimplicialComplex& k, const MultiDegree& exps) {
    Monomial mono;
    mono.exps = exps;
    mono.exps.resize(k.vertex_count(), 0);
    return monomial_to_string(k, mono);
}


namespace {

// one monomial factor: "u<label>" or "v<label>" or "v<label>^<k>"
void apply_factor(const SimplicialComplex& k, Monomial& mono, const std::string& factor) {
    if (factor.empty()) throw_input("empty factor in monomial");
    if (factor == "1") return;
    char kind = factor[0];
    if (kind != 'u' && kind != 'v')
        throw_input("monomial factor must start with u or v: '" + factor + "'");
    std::string rest = factor.substr(1);
    int exp = 1;
    if (auto caret = rest.find('^'); caret != std::string::npos) {
        if (kind == 'u') throw_input("exterior factors carry no exponent");
        exp = std::stoi(rest.substr(caret + 1));
        rest.erase(caret);
    }
    int idx = k.vertices().index_of(rest);
    if (idx < 0) throw_input("unknown vertex '" + rest + "' in monomial");
    if (kind == 'u') {
        if (mono.u_part & (VertexMask(1) << idx))
            throw_input("repeated exterior factor u" + rest);
        mono.u_part |= VertexMask(1) << idx;
    } else {
        mono.exps[idx] = static_cast<std::uint16_t>(mono.exps[idx] + exp);
    }
}

}  // namespace

Cochain parse_cochain(const SimplicialComplex& k, TorusSubset i, Model model,
                      const std::string& text) {
    Cochain out(k, i, model);
    if (text == "0") return out;
    std::size_t pos = 0;
    int sign = 1;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_space();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') sign = -1;
        ++pos;
    }
    while (pos < text.size()) {
        skip_space();
        std::size_t end = pos;
        while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
        std::string term = text.substr(pos, end - pos);
        // split on '*'
        std::vector<std::string> factors;
        std::string cur;
        for (char c : term) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c == '*') {
                factors.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) factors.push_back(cur);
        if (factors.empty()) throw_input("empty term in cochain");
        Int coeff = sign;
        std::size_t first = 0;
        if (!factors[0].empty() &&
            std::isdigit(static_cast<unsigned char>(factors[0][0]))) {
            coeff *= Int(factors[0]);
            first = 1;
        }
        Monomial mono;
        mono.exps.assign(k.vertex_count(), 0);
        if (first == factors.size()) {
            // bare coefficient: the unit monomial
        } else {
            for (std::size_t f = first; f < factors.size(); ++f)
                apply_factor(k, mono, factors[f]);
        }
        out.add_term(mono, coeff);
        pos = end;
        if (pos < text.size()) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        }
    }
    return out;
}

MultiDegree parse_v_exponents(const SimplicialComplex& k, const std::string& text) {
    Cochain c = parse_cochain(k, k.full_mask(), Model::reduced, text);
    if (c.terms().size() != 1 || c.terms().begin()->second != 1 ||
        c.terms().begin()->first.u_part != 0)
        throw_input("expected a single v-monomial: '" + text + "'");
    return c.terms().begin()->first.exps;
}

Json cohomology_report(const EquivariantCohomology& e, bool with_blocks,
                       bool rational) {
    const SimplicialComplex& k = e.complex();
    Json out;
    out["complex"] = complex_to_json(k);
    out["torus_subset"] = mask_labels(k, e.torus());
    out["truncation"] = e.truncation();
    out["model"] = e.model() == Model::reduced ? "reduced" : "full";
    out["coefficients"] = rational ? "rational" : "integral";
    out["results"] = Json::array();
    for (int n = 0; n <= e.truncation(); ++n) {
        Json row;
        row["degree"] = n;
        row["rank"] = e.free_rank(n);
        if (!rational) {
            row["torsion"] = Json::array();
            for (const Int& t : e.torsion(n)) row["torsion"].push_back(int_to_json(t));
        }
        row["representatives"] = Json::array();
        long total = e.generator_count(n);
        // free generators first, then torsion generators by ascending order
        std::vector<std::pair<Int, long>> torsion_gens;
        for (long g = 0; g < total; ++g) {
            if (!e.generator_is_torsion(n, g))
                row["representatives"].push_back(cochain_to_string(e.representative(n, g)));
            else if (!rational)
                torsion_gens.emplace_back(e.generator_order(n, g), g);
        }
        std::stable_sort(torsion_gens.begin(), torsion_gens.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [order, g] : torsion_gens)
            row["representatives"].push_back(cochain_to_string(e.representative(n, g)));
        if (with_blocks) {
            row["blocks"] = Json::array();
            for (const auto& b : e.blocks(n)) {
                Json br;
                br["multidegree"] = Json::array();
                for (auto x : b.mu) br["multidegree"].push_back(x);
                br["rank"] = b.free_rank;
                br["torsion"] = Json::array();
                for (const Int& t : b.torsion) br["torsion"].push_back(int_to_json(t));
                row["blocks"].push_back(std::move(br));
            }
        }
        out["results"].push_back(std::move(row));
    }
    out["verdict"] = nullptr;
    return out;
}

namespace {

Json decomposition_json(const SimplicialComplex& k, const JoinDecomposition& d) {
    Json out;
    out["boundary_parts"] = Json::array();
    for (VertexMask part : d.boundary_parts) out["boundary_parts"].push_back(mask_labels(k, part));
    out["simplex_part"] = mask_labels(k, d.simplex_part);
    return out;
}

Json verdict_json(const SimplicialComplex& k, const FreenessVerdict& v) {
    Json out;
    out["status"] = to_string(v.status);
    Json cert;
    switch (v.status) {
        case FreenessVerdict::Status::free: {
            cert["type"] = "join_decomposition";
            cert["decomposition"] = decomposition_json(k, *v.decomposition);
            cert["torus_split"] = Json::array();
            for (VertexMask piece : v.torus_split)
                cert["torus_split"].push_back(mask_labels(k, piece));
            break;
        }
        case FreenessVerdict::Status::not_free: {
            if (v.witness) {
                const TorsionWitness& w = *v.witness;
                cert["type"] = "torsion_witness";
                cert["kind"] = w.kind == TorsionWitness::Kind::non_face ? "non-face"
                               : w.kind == TorsionWitness::Kind::missing_face_pair
                                   ? "missing-face-pair"
                                   : "generic";
                cert["class"] = cochain_to_string(w.representative);
                cert["class_degree"] = w.representative.degree();
                cert["annihilator"] = v_exponents_to_string(k, w.annihilator);
                if (w.kind == TorsionWitness::Kind::missing_face_pair) {
                    cert["missing_faces"] =
                        Json::array({mask_labels(k, w.mf1), mask_labels(k, w.mf2)});
                    cert["u_vertex"] = k.label(w.j);
                }
            } else {
                cert["type"] = "collapse_deficit";
                cert["degree"] = *v.deficit_degree;
            }
            break;
        }
        case FreenessVerdict::Status::undetermined: {
            cert["type"] = "truncated_evidence";
            cert["truncation"] = v.truncation;
            cert["witness_search"] = v.witness_searched ? "none found" : "skipped";
            cert["collapse"] = v.collapse_passed ? "pass" : "skipped";
            break;
        }
    }
    out["certificate"] = std::move(cert);
    return out;
}

}  // namespace

Json formality_report(const SimplicialComplex& k, TorusSubset i,
                      const FreenessVerdict& v, int truncation) {
    Json out;
    out["complex"] = complex_to_json(k);
    out["torus_subset"] = mask_labels(k, i);
    out["truncation"] = truncation;
    out["results"] = Json::array();
    out["verdict"] = verdict_json(k, v);
    return out;
}

Json survey_report(const SimplicialComplex& k, const SurveyResult& survey,
                   int truncation) {
    Json out;
    out["complex"] = complex_to_json(k);
    out["truncation"] = truncation;
    out["report"] = Json::object();
    out["report"]["decomposable"] = survey.decomposable;
    out["report"]["complete_intersection"] = survey.complete_intersection;
    out["report"]["decomposition"] =
        survey.decomposition ? decomposition_json(k, *survey.decomposition) : Json(nullptr);
    out["survey"] = Json::array();
    for (std::size_t idx = 0; idx < survey.simplices.size(); ++idx) {
        Json row;
        row["torus_subset"] = mask_labels(k, survey.simplices[idx]);
        row["verdict"] = verdict_json(k, survey.verdicts[idx]);
        out["survey"].push_back(std::move(row));
    }
    return out;
}

Json classify_report(const SimplicialComplex& k) {
    Json out;
    out["complex"] = complex_to_json(k);
    out["flag"] = is_flag(k);
    out["one_dimensional"] = k.dimension() <= 1;
    bool ghost = false;
    for (int v = 0; v < k.vertex_count(); ++v)
        if (k.is_ghost_vertex(v)) ghost = true;
    out["missing_faces"] = Json::array();
    for (VertexMask s : k.missing_faces()) out["missing_faces"].push_back(mask_labels(k, s));

    auto dec = join_decomposition(k);
    out["decomposable"] = dec.has_value();
    out["decomposition"] = dec ? decomposition_json(k, *dec) : Json(nullptr);
    if (!dec) {
        // first intersecting pair of missing faces, the obstruction
        const auto& mf = k.missing_faces();
        Json pair = nullptr;
        for (std::size_t a = 0; a < mf.size() && pair.is_null(); ++a)
            for (std::size_t b = a + 1; b < mf.size(); ++b)
                if (mf[a] & mf[b]) {
                    pair = Json::array({mask_labels(k, mf[a]), mask_labels(k, mf[b])});
                    break;
                }
        out["obstruction_pair"] = pair;
    } else {
        out["obstruction_pair"] = nullptr;
    }
    out["graph_class"] = k.dimension() <= 1 && !ghost
                             ? Json(to_string(graph_classify(k)))
                             : Json(nullptr);
    return out;
}

}  // namespace zk::io
