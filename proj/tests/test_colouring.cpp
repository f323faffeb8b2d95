#include <catch2/catch_amalgamated.hpp>

#include "loomlab/colouring.hpp"
#include "loomlab/partite.hpp"

using namespace loomlab;

TEST_CASE("lambda constants") {
    CHECK(lambda_constant(3, 1) == Rat(1, 4));
    CHECK(lambda_constant(5, 3) == Rat(1, 6));
    CHECK(lambda_constant(7, 5) == Rat(1, 8));
    CHECK(lambda_constant(4, 2) == Rat(1, 4));  // defined even when k-l | k
}

TEST_CASE("path colouring (3,1) m=7 matches exhaustive enumeration") {
    auto P = build_path(3, 1, 3);
    auto col = path_colouring(P);
    CHECK(is_proper_colouring(P, col));
    auto sizes = col.class_sizes();
    CHECK(colouring_sizes_admissible(3, 1, 7, sizes));
    CHECK((sizes[2] == 1 || sizes[2] == 2));  // lambda*m = 7/4
    // oracle: some exhaustive colouring attains the same window
    bool any = false;
    enumerate_proper_colourings(P, 3, [&](const std::vector<int>& c) {
        Colouring cc{3, c};
        if (colouring_sizes_admissible(3, 1, 7, cc.class_sizes())) any = true;
    });
    CHECK(any);
}

TEST_CASE("path colouring (5,3) m=13") {
    auto P = build_path(5, 3, 5);
    REQUIRE(P.order() == 13);
    auto col = path_colouring(P);
    CHECK(is_proper_colouring(P, col));
    auto sizes = col.class_sizes();
    CHECK(colouring_sizes_admissible(5, 3, 13, sizes));
    CHECK((sizes[4] == 2 || sizes[4] == 3));  // 13/6 within +-1
}

TEST_CASE("single edge path colouring") {
    auto P = build_path(3, 1, 1);
    auto col = path_colouring(P);
    CHECK(is_proper_colouring(P, col));
    auto sizes = col.class_sizes();
    CHECK(sizes == std::vector<int>{1, 1, 1});
}

TEST_CASE("path colouring scales to the balanced-cycle regime") {
    auto P = build_path(3, 1, 50);  // 101 vertices
    auto col = path_colouring(P);
    CHECK(is_proper_colouring(P, col));
    CHECK(colouring_sizes_admissible(3, 1, P.order(), col.class_sizes()));
}

TEST_CASE("exhaustive colourings of C(3,1,3) are balanced") {
    auto C = build_cycle(3, 1, 3);
    int total = 0;
    enumerate_proper_colourings(C, 3, [&](const std::vector<int>& c) {
        ++total;
        std::vector<int> sizes(4, 0);
        for (int x : c) ++sizes[x];
        CHECK(sizes[1] == 2);
        CHECK(sizes[2] == 2);
        CHECK(sizes[3] == 2);
    });
    CHECK(total > 0);
}

TEST_CASE("partite spanning path at the guaranteed size (3,1)") {
    // parts of size k*l*(k-l)+1 = 7 each
    std::vector<std::vector<int>> parts(3);
    int id = 0;
    for (auto& p : parts)
        for (int i = 0; i < 7; ++i) p.push_back(id++);
    auto res = partite_spanning_path(parts, 3, 1, {parts[0][0]}, {parts[2][6]});
    REQUIRE(res.status == SearchStatus::Found);
    const auto& path = *res.value;
    CHECK(path.order() == 21);
    CHECK(path.edge_count() == 10);
    CHECK(path.first_tuple() == std::vector<int>{parts[0][0]});
    CHECK(path.last_tuple() == std::vector<int>{parts[2][6]});
    // spanning + rainbow windows
    std::vector<int> sorted(path.verts);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 21; ++i) CHECK(sorted[i] == i);
    for (auto& w : path.windows()) {
        std::set<int> ps;
        for (int v : w) ps.insert(v / 7);
        CHECK(ps.size() == 3);
    }
}

TEST_CASE("partite path on singleton parts") {
    std::vector<std::vector<int>> parts{{0}, {1}, {2}};
    auto res = partite_spanning_path(parts, 3, 1, {0}, {2});
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.value->verts == std::vector<int>{0, 1, 2});
}

TEST_CASE("partite path NotFound on unbalanced parts") {
    // parts (2,1,1): 4 vertices but path orders are 3,5,7.. and 5 > 4
    std::vector<std::vector<int>> parts{{0, 1}, {2}, {3}};
    auto res = partite_spanning_path(parts, 3, 1, {0}, {2});
    CHECK(res.status == SearchStatus::NotFound);
}

TEST_CASE("balanced cycle (3,1)") {
    auto bc = balanced_cycle(3, 1, 60, Rat(1, 20));
    CHECK(bc.cycle.order() == 120);
    CHECK(!validate_cyclepath(bc.cycle));
    auto sizes = bc.parts.class_sizes();
    CHECK(abs(Rat(sizes[0], 120) - Rat(1, 4)) <= Rat(1, 20));
    for (int c = 1; c < 3; ++c) CHECK(abs(Rat(sizes[c], 120) - Rat(3, 8)) <= Rat(1, 20));
    // every window is rainbow under the part colouring
    for (int w = 0; w < bc.cycle.edge_count(); ++w) {
        std::set<int> seen;
        for (int j = 0; j < 3; ++j) seen.insert(bc.parts.colour[(w * 2 + j) % 120]);
        CHECK(seen.size() == 3);
    }
}

TEST_CASE("balanced cycle too small errors") {
    CHECK_THROWS_AS(balanced_cycle(3, 1, 4, Rat(1, 100)), PreconditionError);
    CHECK_THROWS_AS(balanced_cycle(4, 2, 50, Rat(1, 20)), PreconditionError);  // k-l | k
}

TEST_CASE("balanced cycle (5,3)") {
    auto bc = balanced_cycle(5, 3, 120, Rat(1, 20));
    CHECK(bc.cycle.order() == 240);
    CHECK(!validate_cyclepath(bc.cycle));
    auto sizes = bc.parts.class_sizes();
    CHECK(abs(Rat(sizes[0], 240) - Rat(1, 6)) <= Rat(1, 20));
}
