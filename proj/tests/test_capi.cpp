#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <string>

#include "zk.h"

using Json = nlohmann::json;

namespace {

const char* kPentagon =
    "# pentagon\n"
    "vertices: 1 2 3 4 5\n"
    "1 2\n2 3\n3 4\n4 5\n1 5\n";

struct Complex {
    zk_complex* k = nullptr;
    ~Complex() { zk_complex_free(k); }
};

struct Out {
    char* s = nullptr;
    ~Out() { zk_string_free(s); }
    Json json() const { return Json::parse(s); }
};

}  // namespace

TEST_CASE("version and null argument handling") {
    CHECK(std::strlen(zk_version()) > 0);
    CHECK(zk_complex_from_text(nullptr, nullptr) == ZK_ERROR_INPUT);
    CHECK(std::strlen(zk_last_error()) > 0);
}

TEST_CASE("parse text and JSON complexes") {
    Complex a;
    REQUIRE(zk_complex_from_text(kPentagon, &a.k) == ZK_OK);
    Out ja;
    REQUIRE(zk_complex_to_json(a.k, &ja.s) == ZK_OK);
    Json parsed = ja.json();
    CHECK(parsed["vertices"].size() == 5);
    CHECK(parsed["facets"].size() == 5);

    Complex b;
    std::string round_trip = ja.json().dump();
    REQUIRE(zk_complex_from_json(round_trip.c_str(), &b.k) == ZK_OK);
    Out jb;
    REQUIRE(zk_complex_to_json(b.k, &jb.s) == ZK_OK);
    CHECK(std::string(ja.s) == jb.s);

    Complex bad;
    CHECK(zk_complex_from_text("vertices: 1\n1 2\n", &bad.k) == ZK_ERROR_INPUT);
    CHECK(std::string(zk_last_error()).find("line 2") != std::string::npos);
    CHECK(zk_complex_from_json("{\"facets\": 3}", &bad.k) == ZK_ERROR_INPUT);
}

TEST_CASE("cohomology endpoint") {
    Complex k;
    REQUIRE(zk_complex_from_text("vertices: 1 2 3\n1 2\n1 3\n2 3\n", &k.k) == ZK_OK);
    Out out;
    REQUIRE(zk_cohomology(k.k, "none", 6, 0, 0, &out.s) == ZK_OK);
    Json r = out.json();
    CHECK(r["truncation"] == 6);
    CHECK(r["results"].size() == 7);
    CHECK(r["results"][0]["rank"] == 1);
    CHECK(r["results"][5]["rank"] == 1);  // Z_K is the 5-sphere
    CHECK(r["results"][3]["rank"] == 0);
    CHECK(r["verdict"].is_null());

    // byte determinism
    Out again;
    REQUIRE(zk_cohomology(k.k, "none", 6, 0, 0, &again.s) == ZK_OK);
    CHECK(std::string(out.s) == again.s);

    // face-ring endpoint: I = all
    Out ring;
    REQUIRE(zk_cohomology(k.k, "all", 8, 0, 0, &ring.s) == ZK_OK);
    Json jr = ring.json();
    CHECK(jr["results"][4]["rank"] == 6);
    CHECK(jr["results"][8]["rank"] == 12);

    // multidegree detail
    Out blocks;
    REQUIRE(zk_cohomology(k.k, "none", 5, 1, 0, &blocks.s) == ZK_OK);
    CHECK(blocks.json()["results"][5].contains("blocks"));

    // rational mode drops the torsion column
    Out rational;
    REQUIRE(zk_cohomology(k.k, "none", 5, 0, 1, &rational.s) == ZK_OK);
    CHECK(rational.json()["coefficients"] == "rational");
    CHECK(!rational.json()["results"][5].contains("torsion"));
    CHECK(rational.json()["results"][5]["rank"] == 1);

    Out bad;
    CHECK(zk_cohomology(k.k, "1,9", 4, 0, 0, &bad.s) == ZK_ERROR_INPUT);

    Out huge;
    CHECK(zk_cohomology(k.k, "all", 100000, 0, 0, &huge.s) == ZK_ERROR_RESOURCE);
}

TEST_CASE("formality endpoint") {
    Complex pentagon;
    REQUIRE(zk_complex_from_text(kPentagon, &pentagon.k) == ZK_OK);
    Out out;
    REQUIRE(zk_formality(pentagon.k, "5", 20, &out.s) == ZK_OK);
    Json r = out.json();
    CHECK(r["verdict"]["status"] == "NOT_FREE");
    CHECK(r["verdict"]["certificate"]["type"] == "torsion_witness");
    CHECK(r["verdict"]["certificate"]["kind"] == "missing-face-pair");
    CHECK(r["verdict"]["certificate"]["class"] == "u4*v2");
    CHECK(r["verdict"]["certificate"]["annihilator"] == "v5");
    CHECK(r["verdict"]["certificate"]["missing_faces"][0] == Json::array({"2", "5"}));
    CHECK(r["verdict"]["certificate"]["missing_faces"][1] == Json::array({"2", "4"}));
}

TEST_CASE("survey endpoint") {
    Complex square;
    REQUIRE(zk_complex_from_text("1 2\n2 3\n3 4\n1 4\n", &square.k) == ZK_OK);
    Out out;
    REQUIRE(zk_formality_survey(square.k, 16, 2, &out.s) == ZK_OK);

    // output does not depend on the thread count
    Out serial;
    REQUIRE(zk_formality_survey(square.k, 16, 1, &serial.s) == ZK_OK);
    CHECK(std::string(out.s) == serial.s);

    Complex pentagon;
    REQUIRE(zk_complex_from_text(kPentagon, &pentagon.k) == ZK_OK);
    Out p1, p4;
    REQUIRE(zk_formality_survey(pentagon.k, 20, 1, &p1.s) == ZK_OK);
    REQUIRE(zk_formality_survey(pentagon.k, 20, 4, &p4.s) == ZK_OK);
    CHECK(std::string(p1.s) == p4.s);
    Json r = out.json();
    CHECK(r["report"]["decomposable"] == true);
    CHECK(r["report"]["complete_intersection"] == true);
    CHECK(r["survey"].size() == 9);
    for (const auto& row : r["survey"]) CHECK(row["verdict"]["status"] == "FREE");
}

TEST_CASE("classify endpoint") {
    Complex hexagon;
    REQUIRE(zk_complex_from_text("1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n", &hexagon.k) == ZK_OK);
    Out out;
    REQUIRE(zk_classify(hexagon.k, &out.s) == ZK_OK);
    Json r = out.json();
    CHECK(r["flag"] == true);
    CHECK(r["one_dimensional"] == true);
    CHECK(r["decomposable"] == false);
    CHECK(!r["obstruction_pair"].is_null());
    CHECK(r["missing_faces"].size() == 9);  // non-edges of the 6-cycle

    Complex path3;
    REQUIRE(zk_complex_from_text("1 2\n2 3\n", &path3.k) == ZK_OK);
    Out p;
    REQUIRE(zk_classify(path3.k, &p.s) == ZK_OK);
    CHECK(p.json()["graph_class"] == "edge-plus-cone-point");

    Complex triangle;
    REQUIRE(zk_complex_from_text("1 2\n1 3\n2 3\n", &triangle.k) == ZK_OK);
    Out t;
    REQUIRE(zk_classify(triangle.k, &t.s) == ZK_OK);
    CHECK(t.json()["graph_class"] == "boundary-triangle");
}
