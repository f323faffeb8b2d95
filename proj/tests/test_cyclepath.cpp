#include <catch2/catch_amalgamated.hpp>

#include "loomlab/cyclepath.hpp"

using namespace loomlab;

TEST_CASE("canonical 1-cycle C(3,1,3)") {
    auto C = build_cycle(3, 1, 3);
    CHECK(C.verts == std::vector<int>{0, 1, 2, 3, 4, 5});
    auto ws = C.windows();
    REQUIRE(ws.size() == 3);
    CHECK(ws[0] == std::vector<int>{0, 1, 2});
    CHECK(ws[1] == std::vector<int>{2, 3, 4});
    CHECK(ws[2] == std::vector<int>{4, 5, 0});
}

TEST_CASE("cycle (5,3,4) validates") {
    auto C = build_cycle(5, 3, 4);
    CHECK(C.order() == 8);
    auto ws = C.windows();
    REQUIRE(ws.size() == 4);
    for (size_t i = 0; i < ws.size(); ++i) {
        Edge a(ws[i]), b(ws[(i + 1) % ws.size()]);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(intersection_size(a, b) == 3);
    }
}

TEST_CASE("cycle below admissible length is rejected") {
    CHECK_THROWS_AS(build_cycle(3, 1, 2), PreconditionError);  // windows overlap in 2
    CHECK_THROWS_AS(build_cycle(5, 3, 3), PreconditionError);
    CHECK(min_cycle_length(3, 1) == 3);
    CHECK(min_cycle_length(5, 3) == 4);
    CHECK_NOTHROW(build_cycle(3, 1, min_cycle_length(3, 1)));
    CHECK_NOTHROW(build_cycle(5, 3, min_cycle_length(5, 3)));
}

TEST_CASE("canonical paths") {
    auto P = build_path(3, 1, 3);
    CHECK(P.order() == 7);
    auto ws = P.windows();
    REQUIRE(ws.size() == 3);
    CHECK(ws[0] == std::vector<int>{0, 1, 2});
    CHECK(ws[2] == std::vector<int>{4, 5, 6});
    CHECK_THROWS_AS(build_path(3, 1, 2), PreconditionError);  // end edges intersect
    auto P53 = build_path(5, 3, 5);
    CHECK(P53.order() == 13);
    CHECK((P53.order() - 5) % 2 == 0);
}

TEST_CASE("single-edge path is admissible") {
    auto P = build_path(3, 1, 1);
    CHECK(P.order() == 3);
    CHECK(P.edge_count() == 1);
    CHECK(!validate_cyclepath(P));
}

TEST_CASE("order congruences hold for any accepted object") {
    for (int k = 3; k <= 6; ++k)
        for (int l = 1; l < k; ++l) {
            for (int t = 1; t <= 7; ++t) {
                CyclePath cp;
                cp.k = k;
                cp.l = l;
                cp.kind = CyclePath::Kind::Cycle;
                cp.verts.resize((size_t)t * (k - l));
                std::iota(cp.verts.begin(), cp.verts.end(), 0);
                if (!validate_cyclepath(cp)) CHECK(cp.order() % (k - l) == 0);
                cp.kind = CyclePath::Kind::Path;
                cp.verts.resize(k + (size_t)(t - 1) * (k - l));
                std::iota(cp.verts.begin(), cp.verts.end(), 0);
                if (!validate_cyclepath(cp)) CHECK((cp.order() - k) % (k - l) == 0);
            }
        }
}

TEST_CASE("validator catches host violations") {
    auto host = Hypergraph::uniform(6, 3, {{0, 1, 2}, {2, 3, 4}});
    auto C = build_cycle(3, 1, 3);
    auto err = validate_cyclepath(C, &host);
    REQUIRE(err.has_value());
    CHECK(err->find("not a host edge") != std::string::npos);
}

TEST_CASE("validator catches repeated vertices and bad intersections") {
    CyclePath bad;
    bad.k = 3;
    bad.l = 1;
    bad.kind = CyclePath::Kind::Cycle;
    bad.verts = {0, 1, 2, 3, 4, 0};
    CHECK(validate_cyclepath(bad).has_value());
}
