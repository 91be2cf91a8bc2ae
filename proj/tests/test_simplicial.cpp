#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/simplicial.hpp"
#include "support.hpp"

using namespace zk;
using test::boundary_simplex;
using test::cycle_complex;
using test::ghosts_only;
using test::simplex_complex;

TEST_CASE("from_facets reduces to maximal facets and keeps ghosts") {
    SimplicialComplex k = SimplicialComplex::from_facet_labels(
        VertexSet::numbered(3), {{"1", "2"}, {"1", "3"}, {"2", "3"}});
    CHECK(k.facets().size() == 3);
    CHECK(k.faces().size() == 7);  // empty face, 3 vertices, 3 edges

    SimplicialComplex ghost = ghosts_only(1);
    CHECK(ghost.faces() == std::vector<VertexMask>{0});
    CHECK(ghost.is_ghost_vertex(0));

    SimplicialComplex dedup = SimplicialComplex::from_facets(VertexSet::numbered(2),
                                                             {0b01, 0b01});
    CHECK(dedup.facets() == std::vector<VertexMask>{0b01});
    CHECK(dedup.is_ghost_vertex(1));

    SimplicialComplex nested = SimplicialComplex::from_facets(VertexSet::numbered(3),
                                                              {0b011, 0b111, 0b001});
    CHECK(nested.facets() == std::vector<VertexMask>{0b111});
}

TEST_CASE("from_facets input validation") {
    VertexSet dup;
    dup.labels = {"a", "a"};
    CHECK_THROWS_AS(SimplicialComplex::from_facets(dup, {}), Error);
    CHECK_THROWS_AS(SimplicialComplex::from_facets(VertexSet::numbered(2), {0b100}), Error);
    CHECK_THROWS_AS(SimplicialComplex::from_facet_labels(VertexSet::numbered(1), {{"9"}}),
                    Error);
    VertexSet big = VertexSet::numbered(25);
    CHECK_THROWS_AS(SimplicialComplex::from_facets(big, {}), Error);
}

TEST_CASE("faces of small fixtures") {
    CHECK(simplex_complex(2).faces() == std::vector<VertexMask>{0, 1, 2, 3});
    CHECK(ghosts_only(2).faces() == std::vector<VertexMask>{0});
    CHECK(simplex_complex(0).faces() == std::vector<VertexMask>{0});
}

TEST_CASE("missing faces: fixtures and brute-force agreement") {
    CHECK(boundary_simplex(3).missing_faces() == std::vector<VertexMask>{0b111});

    SimplicialComplex pentagon = cycle_complex(5);
    // non-edges of the 5-cycle
    std::vector<VertexMask> expected{0b00101, 0b01001, 0b01010, 0b10010, 0b10100};
    CHECK(pentagon.missing_faces() == expected);
    CHECK(test::brute_force_missing_faces(pentagon) == expected);

    SimplicialComplex wedge = test::wedge_example();
    CHECK(wedge.missing_faces() == std::vector<VertexMask>{0b00111, 0b11100});

    CHECK(ghosts_only(1).missing_faces() == std::vector<VertexMask>{1});
    CHECK(simplex_complex(3).missing_faces().empty());
}

TEST_CASE("missing faces are minimal non-faces (exhaustive small complexes)") {
    oracle::exhaustive_complex_enumeration(4, [](const SimplicialComplex& k) {
        auto mf = k.missing_faces();
        CHECK(mf == test::brute_force_missing_faces(k));
        for (VertexMask s : mf) {
            CHECK(!k.is_face(s));
            for_each_vertex(s, [&](int v) {
                CHECK(k.is_face(s & ~(VertexMask(1) << v)));
            });
        }
    });
}

TEST_CASE("full subcomplex") {
    SimplicialComplex pentagon = cycle_complex(5);
    SimplicialComplex path = pentagon.full_subcomplex(0b00111);
    CHECK(path.vertex_count() == 3);
    CHECK(path.facets() == std::vector<VertexMask>{0b011, 0b110});  // edges 12, 23
    CHECK(path.vertices().labels == std::vector<std::string>{"1", "2", "3"});

    CHECK(pentagon.full_subcomplex(pentagon.full_mask()) == pentagon);

    SimplicialComplex pair = pentagon.full_subcomplex(0b00101);  // vertices 1, 3
    CHECK(pair.facets() == std::vector<VertexMask>{0b01, 0b10});  // two isolated points
}

TEST_CASE("full subcomplex missing faces restrict") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        SimplicialComplex k = test::random_complex(rng, 5, 6);
        std::uniform_int_distribution<VertexMask> subset(0, k.full_mask());
        VertexMask w = subset(rng);
        SimplicialComplex sub = k.full_subcomplex(w);
        // relabel expected missing faces into sub's indices
        std::vector<VertexMask> expected;
        for (VertexMask s : k.missing_faces()) {
            if ((s & w) != s) continue;
            VertexMask c = 0;
            for_each_vertex(s, [&](int v) {
                c |= VertexMask(1) << popcount(w & ((VertexMask(1) << v) - 1));
            });
            expected.push_back(c);
        }
        std::sort(expected.begin(), expected.end());
        CHECK(sub.missing_faces() == expected);
    }
}

TEST_CASE("join basics") {
    SimplicialComplex two_points_13 = SimplicialComplex::from_facet_labels(
        VertexSet{{"1", "3"}}, {{"1"}, {"3"}});
    SimplicialComplex two_points_24 = SimplicialComplex::from_facet_labels(
        VertexSet{{"2", "4"}}, {{"2"}, {"4"}});
    SimplicialComplex square = join(two_points_13, two_points_24);
    CHECK(square.vertex_count() == 4);
    CHECK(graph_classify(square) == GraphClass::FourCycle);

    SimplicialComplex empty0 = simplex_complex(0);
    SimplicialComplex pentagon = cycle_complex(5);
    SimplicialComplex same = join(pentagon, empty0);
    CHECK(same.facets() == pentagon.facets());

    SimplicialComplex cone_pt = SimplicialComplex::from_facet_labels(
        VertexSet{{"3"}}, {{"3"}});
    SimplicialComplex two_points_12 = SimplicialComplex::from_facet_labels(
        VertexSet{{"1", "2"}}, {{"1"}, {"2"}});
    SimplicialComplex path = join(two_points_12, cone_pt);
    CHECK(graph_classify(path) == GraphClass::EdgePlusConePoint);

    CHECK_THROWS_AS(join(pentagon, cycle_complex(3)), Error);  // label collision
}

TEST_CASE("join face counts multiply") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        SimplicialComplex k1 = test::random_complex(rng, 3, 4);
        SimplicialComplex k2 = test::random_complex(rng, 3, 4);
        VertexSet relabeled;
        for (int v = 0; v < 3; ++v) relabeled.labels.push_back("b" + std::to_string(v));
        SimplicialComplex k2r = SimplicialComplex::from_facets(relabeled, k2.facets());
        SimplicialComplex j = join(k1, k2r);
        CHECK(j.faces().size() == k1.faces().size() * k2.faces().size());
    }
}

TEST_CASE("join decomposition") {
    auto four = join_decomposition(cycle_complex(4));
    REQUIRE(four.has_value());
    CHECK(four->boundary_parts == std::vector<VertexMask>{0b0101, 0b1010});
    CHECK(four->simplex_part == 0);

    CHECK(!join_decomposition(cycle_complex(5)).has_value());

    auto full = join_decomposition(simplex_complex(4));
    REQUIRE(full.has_value());
    CHECK(full->boundary_parts.empty());
    CHECK(full->simplex_part == 0b1111);
}

TEST_CASE("join decomposition iff pairwise-disjoint missing faces (exhaustive)") {
    for (int m = 0; m <= 4; ++m) {
        oracle::exhaustive_complex_enumeration(m, [](const SimplicialComplex& k) {
            auto mf = k.missing_faces();
            bool disjoint = true;
            for (std::size_t a = 0; a < mf.size(); ++a)
                for (std::size_t b = a + 1; b < mf.size(); ++b)
                    if (mf[a] & mf[b]) disjoint = false;
            auto dec = join_decomposition(k);
            CHECK(dec.has_value() == disjoint);
            if (dec) {
                SimplicialComplex rebuilt = reconstruct_join(k.vertices(), *dec);
                CHECK(rebuilt == k);
            }
        });
    }
}

TEST_CASE("flag detection") {
    CHECK(is_flag(cycle_complex(5)));
    CHECK(!is_flag(boundary_simplex(3)));
    CHECK(!is_flag(ghosts_only(1)));
    CHECK(is_flag(simplex_complex(3)));  // no missing faces at all
}

TEST_CASE("graph classification") {
    CHECK(graph_classify(cycle_complex(3)) == GraphClass::BoundaryTriangle);
    CHECK(graph_classify(cycle_complex(4)) == GraphClass::FourCycle);

    SimplicialComplex path4 = SimplicialComplex::from_facets(
        VertexSet::numbered(4), {0b0011, 0b0110, 0b1100});
    CHECK(graph_classify(path4) == GraphClass::Other);

    SimplicialComplex point = simplex_complex(1);
    CHECK(graph_classify(point) == GraphClass::Point);

    SimplicialComplex two_points = SimplicialComplex::from_facets(
        VertexSet::numbered(2), {0b01, 0b10});
    CHECK(graph_classify(two_points) == GraphClass::TwoPoints);
    CHECK(graph_classify(simplex_complex(2)) == GraphClass::Edge);

    SimplicialComplex edge_plus_point = SimplicialComplex::from_facets(
        VertexSet::numbered(3), {0b011, 0b100});
    CHECK(graph_classify(edge_plus_point) == GraphClass::Other);

    CHECK_THROWS_AS(graph_classify(simplex_complex(3)), Error);  // 2-dimensional
}

TEST_CASE("graph classification matches decomposability on 1-dim complexes") {
    // over all graphs on <= 4 vertices: in the six-item list <=> decomposable
    for (int m = 1; m <= 4; ++m) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
        for (unsigned set = 0; set < (1u << pairs.size()); ++set) {
            std::vector<VertexMask> facets;
            for (int v = 0; v < m; ++v) facets.push_back(VertexMask(1) << v);
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (set & (1u << p))
                    facets.push_back((VertexMask(1) << pairs[p].first) |
                                     (VertexMask(1) << pairs[p].second));
            SimplicialComplex k =
                SimplicialComplex::from_facets(VertexSet::numbered(m), std::move(facets));
            bool in_list = graph_classify(k) != GraphClass::Other;
            CHECK(in_list == join_decomposition(k).has_value());
        }
    }
}

TEST_CASE("mask_to_string uses original labels") {
    VertexSet v;
    v.labels = {"x", "y", "z"};
    SimplicialComplex k = SimplicialComplex::from_facets(v, {0b111});
    CHECK(mask_to_string(k, 0b101) == "{x,z}");
}

TEST_CASE("join is associative and commutative up to relabeling") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        SimplicialComplex a = test::random_complex(rng, 2, 3);
        SimplicialComplex b0 = test::random_complex(rng, 2, 3);
        SimplicialComplex c0 = test::random_complex(rng, 2, 3);
        VertexSet vb, vc;
        vb.labels = {"b1", "b2"};
        vc.labels = {"c1", "c2"};
        SimplicialComplex b = SimplicialComplex::from_facets(vb, b0.facets());
        SimplicialComplex c = SimplicialComplex::from_facets(vc, c0.facets());
        CHECK(oracle::canonical_form(join(join(a, b), c)) ==
              oracle::canonical_form(join(a, join(b, c))));
        CHECK(oracle::canonical_form(join(a, b)) == oracle::canonical_form(join(b, a)));
    }
}
