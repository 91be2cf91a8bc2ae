// zk: command-line front end over the libzk C API.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zk.h"

namespace {

using Json = nlohmann::json;

struct ComplexHandle {
    zk_complex* k = nullptr;
    ~ComplexHandle() { zk_complex_free(k); }
};

struct StringHandle {
    char* s = nullptr;
    ~StringHandle() { zk_string_free(s); }
};

int fail(zk_status status) {
    std::cerr << "error: " << zk_last_error() << "\n";
    return static_cast<int>(status);
}

int load_complex(const std::string& path, ComplexHandle& handle) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return static_cast<int>(ZK_ERROR_INPUT);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    bool json = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        json = c == '{';
        break;
    }
    zk_status st = json ? zk_complex_from_json(text.c_str(), &handle.k)
                        : zk_complex_from_text(text.c_str(), &handle.k);
    if (st != ZK_OK) return fail(st);
    return 0;
}

std::string join_labels(const Json& arr, const char* sep = ",") {
    std::string out;
    for (const auto& cell : arr) {
        if (!out.empty()) out += sep;
        out += cell.get<std::string>();
    }
    return out;
}

std::string set_string(const Json& arr) { return "{" + join_labels(arr) + "}"; }

std::string certificate_line(const Json& verdict) {
    const Json& cert = verdict["certificate"];
    std::string type = cert["type"].get<std::string>();
    std::ostringstream out;
    if (type == "join_decomposition") {
        const Json& dec = cert["decomposition"];
        bool first = true;
        for (const auto& part : dec["boundary_parts"]) {
            if (!first) out << " * ";
            first = false;
            out << "bd" << set_string(part);
        }
        if (!dec["simplex_part"].empty() || first) {
            if (!first) out << " * ";
            out << "simplex" << set_string(dec["simplex_part"]);
        }
        return "decomposition: " + out.str();
    }
    if (type == "torsion_witness") {
        out << "witness: class [" << cert["class"].get<std::string>() << "], annihilator "
            << cert["annihilator"].get<std::string>();
        std::string kind = cert["kind"].get<std::string>();
        if (kind == "missing-face-pair")
            out << ", via missing-face pair (I1=" << set_string(cert["missing_faces"][0])
                << ", I2=" << set_string(cert["missing_faces"][1]) << ")";
        else if (kind == "non-face")
            out << ", via non-face torus subset";
        else
            out << ", via generic annihilation scan";
        return out.str();
    }
    if (type == "collapse_deficit")
        return "collapse deficit at degree " + std::to_string(cert["degree"].get<int>());
    out << "evidence: witness search " << cert["witness_search"].get<std::string>()
        << ", collapse " << cert["collapse"].get<std::string>() << ", truncation "
        << cert["truncation"].get<int>();
    return out.str();
}

void print_cohomology_table(const Json& report) {
    std::cout << "H*_T(Z_K), torus subset " << set_string(report["torus_subset"])
              << ", truncation " << report["truncation"].get<int>() << "\n\n";
    std::cout << "degree  rank  torsion     representatives\n";
    for (const auto& row : report["results"]) {
        long rank = row["rank"].get<long>();
        bool has_torsion = row.contains("torsion") && !row["torsion"].empty();
        if (rank == 0 && !has_torsion) continue;
        std::string torsion = "-";
        if (row.contains("torsion") && !row["torsion"].empty()) {
            torsion.clear();
            for (const auto& t : row["torsion"]) {
                if (!torsion.empty()) torsion += ",";
                torsion += t.dump();
            }
        }
        std::ostringstream reps;
        bool first = true;
        for (const auto& rep : row["representatives"]) {
            if (!first) reps << ";  ";
            first = false;
            reps << rep.get<std::string>();
        }
        std::printf("%-7d %-5ld %-11s %s\n", row["degree"].get<int>(), rank,
                    torsion.c_str(), reps.str().c_str());
        if (row.contains("blocks")) {
            for (const auto& b : row["blocks"]) {
                std::string mu;
                for (const auto& x : b["multidegree"]) {
                    if (!mu.empty()) mu += ",";
                    mu += x.dump();
                }
                std::printf("        multidegree (%s): rank %ld\n", mu.c_str(),
                            b["rank"].get<long>());
            }
        }
    }
}

int run_cohomology(const std::string& input, const std::string& torus, int max_degree,
                   const std::string& format, bool multidegree, bool rational) {
    ComplexHandle k;
    if (int rc = load_complex(input, k)) return rc;
    StringHandle out;
    zk_status st = zk_cohomology(k.k, torus.c_str(), max_degree, multidegree ? 1 : 0,
                                 rational ? 1 : 0, &out.s);
    if (st != ZK_OK) return fail(st);
    if (format == "json") {
        std::cout << out.s << "\n";
    } else {
        print_cohomology_table(Json::parse(out.s));
    }
    return 0;
}

int run_formality(const std::string& input, const std::string& torus, int max_degree,
                  const std::string& format, bool survey, int threads) {
    ComplexHandle k;
    if (int rc = load_complex(input, k)) return rc;
    StringHandle out;
    zk_status st = survey ? zk_formality_survey(k.k, max_degree, threads, &out.s)
                          : zk_formality(k.k, torus.c_str(), max_degree, &out.s);
    if (st != ZK_OK) return fail(st);
    if (format == "json") {
        std::cout << out.s << "\n";
        return 0;
    }
    Json report = Json::parse(out.s);
    if (survey) {
        const Json& meta = report["report"];
        std::cout << (meta["decomposable"].get<bool>()
                          ? "decomposable: join of simplex boundaries and a simplex "
                            "(complete intersection)"
                          : "not decomposable (missing faces intersect)")
                  << "\n\n";
        for (const auto& row : report["survey"]) {
            std::printf("I = %-14s %-13s %s\n", set_string(row["torus_subset"]).c_str(),
                        row["verdict"]["status"].get<std::string>().c_str(),
                        certificate_line(row["verdict"]).c_str());
        }
    } else {
        std::cout << report["verdict"]["status"].get<std::string>() << "  "
                  << certificate_line(report["verdict"]) << "\n";
    }
    return 0;
}

int run_classify(const std::string& input, const std::string& format) {
    ComplexHandle k;
    if (int rc = load_complex(input, k)) return rc;
    StringHandle out;
    zk_status st = zk_classify(k.k, &out.s);
    if (st != ZK_OK) return fail(st);
    if (format == "json") {
        std::cout << out.s << "\n";
        return 0;
    }
    Json report = Json::parse(out.s);
    std::cout << "flag complex:    " << (report["flag"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "one-dimensional: "
              << (report["one_dimensional"].get<bool>() ? "yes" : "no") << "\n";
    if (!report["graph_class"].is_null())
        std::cout << "graph class:     " << report["graph_class"].get<std::string>() << "\n";
    std::cout << "missing faces:   ";
    bool first = true;
    for (const auto& mf : report["missing_faces"]) {
        if (!first) std::cout << " ";
        first = false;
        std::cout << set_string(mf);
    }
    if (first) std::cout << "(none)";
    std::cout << "\n";
    if (report["decomposable"].get<bool>()) {
        const Json& dec = report["decomposition"];
        std::cout << "decomposition:   ";
        for (const auto& part : dec["boundary_parts"]) std::cout << "bd" << set_string(part) << " ";
        std::cout << "simplex" << set_string(dec["simplex_part"]) << "\n";
    } else {
        std::cout << "not decomposable";
        if (!report["obstruction_pair"].is_null())
            std::cout << "; intersecting missing faces "
                      << set_string(report["obstruction_pair"][0]) << " and "
                      << set_string(report["obstruction_pair"][1]);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact equivariant cohomology of moment-angle complexes"};
    app.set_version_flag("--version", zk_version());
    app.require_subcommand(1);

    std::string input, torus = "none", format = "table", coefficients = "integral";
    int max_degree = -1;
    int threads = 1;
    bool multidegree = false, survey = false;

    auto add_common = [&](CLI::App* cmd, bool with_degree) {
        cmd->add_option("--input", input, "facet-list or JSON complex file")->required();
        cmd->add_option("--format", format, "json|table")
            ->check(CLI::IsMember({"json", "table"}));
        if (with_degree)
            cmd->add_option("--max-degree", max_degree,
                            "truncation degree (default: 4 * vertex count)");
    };

    CLI::App* cohomology = app.add_subcommand(
        "cohomology", "cohomology table of the chosen subtorus action");
    add_common(cohomology, true);
    cohomology->add_option("--torus", torus, "subtorus: none|all|label,label,...");
    cohomology->add_flag("--multidegree", multidegree, "include multidegree blocks");
    cohomology->add_option("--coefficients", coefficients,
                           "integral|rational (rational drops torsion)")
        ->check(CLI::IsMember({"integral", "rational"}));

    CLI::App* formality = app.add_subcommand(
        "formality", "freeness verdict(s) with machine-checkable certificates");
    add_common(formality, true);
    formality->add_option("--torus", torus, "subtorus: none|all|label,label,...");
    formality->add_flag("--survey", survey, "verdicts for every simplex I of K");
    formality->add_option("--threads", threads, "worker threads for the survey");

    CLI::App* classify =
        app.add_subcommand("classify", "missing faces, flag/graph class, decomposition");
    add_common(classify, false);

    CLI11_PARSE(app, argc, argv);

    if (cohomology->parsed())
        return run_cohomology(input, torus, max_degree, format, multidegree,
                              coefficients == "rational");
    if (formality->parsed())
        return run_formality(input, torus, max_degree, format, survey, threads);
    return run_classify(input, format);
}
