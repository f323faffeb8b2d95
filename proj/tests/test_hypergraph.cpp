#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loomlab/hypergraph.hpp"
#include "loomlab/json_io.hpp"

using namespace loomlab;

namespace {

Hypergraph random_uniform(int n, int k, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> es;
    visit_subsets(n, k, [&](const std::vector<int>& s) {
        if (coin(rng) < p) es.push_back(s);
        return true;
    });
    return Hypergraph::uniform(n, k, std::move(es));
}

Hypergraph space_barrier_graph(int n, int a, int k) {
    std::vector<Edge> es;
    visit_subsets(n, k, [&](const std::vector<int>& s) {
        if (s.front() < a) es.push_back(s);
        return true;
    });
    return Hypergraph::uniform(n, k, std::move(es));
}

}  // namespace

TEST_CASE("construction validates edges") {
    CHECK_NOTHROW(Hypergraph::uniform(4, 3, {{0, 1, 2}, {1, 2, 3}}));
    CHECK_THROWS_AS(Hypergraph::uniform(4, 3, {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(Hypergraph::uniform(4, 3, {{0, 1, 4}}), PreconditionError);
    CHECK_THROWS_AS(Hypergraph::uniform(4, 3, {{0, 1, 1}}), PreconditionError);
    CHECK_THROWS_AS(Hypergraph::uniform(4, 3, {{0, 1, 2}, {2, 1, 0}}), PreconditionError);
    CHECK_NOTHROW(Hypergraph::bounded(4, 3, {{0}, {0, 1}, {0, 1, 2}}));
    CHECK_THROWS_AS(Hypergraph::bounded(4, 2, {{0, 1, 2}}), PreconditionError);
}

TEST_CASE("min_degree on complete graph") {
    auto G = Hypergraph::complete(5, 3);
    auto rep = min_degree(G, 2);
    CHECK(rep.min_deg == 3);
    CHECK(rep.ratio == 1);
}

TEST_CASE("min_degree on space barrier SB(3,1,8,1)") {
    auto G = space_barrier_graph(8, 1, 3);
    auto rep = min_degree(G, 2);
    // exhaustive oracle: scan all 2-sets directly
    Int expect = -1;
    visit_subsets(8, 2, [&](const std::vector<int>& s) {
        Int c = (Int)G.edges_containing(s).size();
        if (expect < 0 || c < expect) expect = c;
        return true;
    });
    CHECK(expect == 1);
    CHECK(rep.min_deg == expect);
    CHECK(rep.ratio == Rat(1, 6));
}

TEST_CASE("min_degree edge cases") {
    auto G = Hypergraph::empty(6, 3);
    CHECK(min_degree(G, 1).min_deg == 0);
    CHECK_THROWS_AS(min_degree(G, 3), PreconditionError);
    CHECK_THROWS_AS(min_degree(G, 0), PreconditionError);
}

TEST_CASE("shadow of a single edge") {
    auto G = Hypergraph::uniform(3, 3, {{0, 1, 2}});
    auto S2 = shadow(G, 2);
    CHECK(S2.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    auto S1 = shadow(G, 1);
    CHECK(S1.edges() == std::vector<Edge>{{0}, {1}, {2}});
    CHECK_THROWS_AS(shadow(G, 3), PreconditionError);
}

TEST_CASE("shadow of two disjoint edges") {
    auto G = Hypergraph::uniform(6, 3, {{0, 1, 2}, {3, 4, 5}});
    CHECK(shadow(G, 2).edge_count() == 6);
}

TEST_CASE("shadow composition") {
    auto G = random_uniform(7, 4, 0.5, 42);
    CHECK(shadow(G, 2) == shadow(shadow(G, 3), 2));
    CHECK(shadow(G, 1) == shadow(shadow(G, 2), 1));
}

TEST_CASE("link of complete graph") {
    auto G = Hypergraph::complete(5, 3);
    auto L = link(G, {0});
    CHECK(L.k() == 2);
    CHECK(L.edge_count() == 6);  // K(4,2) on {1..4}
    for (auto& e : L.edges()) CHECK(e.front() >= 1);
}

TEST_CASE("link of space barrier") {
    auto G = space_barrier_graph(8, 1, 3);
    auto L0 = link(G, {0});
    CHECK(L0.edge_count() == 21);  // complete 2-graph on the other 7
    auto L12 = link(G, {1, 2});
    CHECK(L12.edges() == std::vector<Edge>{{0}});
    CHECK_THROWS_AS(link(G, {0, 1, 2}), PreconditionError);
}

TEST_CASE("induced subgraphs") {
    auto K6 = Hypergraph::complete(6, 3);
    CHECK(induced(K6, {1, 2, 4, 5}).edge_count() == 4);  // K(4,3)
    // 1-cycle C(3,1,3): windows {0,1,2},{2,3,4},{4,5,0}
    auto C = Hypergraph::uniform(6, 3, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}});
    auto I = induced(C, {0, 1, 2, 3});
    CHECK(I.edges() == std::vector<Edge>{{0, 1, 2}});
    CHECK(induced(C, {}).n() == 0);
    CHECK(induced(C, {}).edge_count() == 0);
}

TEST_CASE("induced edge count equals brute count") {
    auto G = random_uniform(8, 3, 0.4, 7);
    std::vector<int> S{1, 3, 4, 6, 7};
    size_t brute = 0;
    for (auto& e : G.edges())
        if (is_subset_of(e, S)) ++brute;
    CHECK(induced(G, S).edge_count() == brute);
}

TEST_CASE("blow_up counts") {
    auto one2 = Hypergraph::uniform(2, 2, {{0, 1}});
    CHECK(blow_up(one2, {2, 2}).first.edge_count() == 4);
    auto one3 = Hypergraph::uniform(3, 3, {{0, 1, 2}});
    CHECK(blow_up(one3, {2, 3, 1}).first.edge_count() == 6);
    auto K32 = Hypergraph::complete(3, 2);
    CHECK(blow_up(K32, {2, 2, 2}).first.edge_count() == 12);
    CHECK_THROWS_AS(blow_up(one2, {2, 0}), PreconditionError);
}

TEST_CASE("blow_up edge count formula on random graphs") {
    auto R = random_uniform(5, 3, 0.6, 99);
    std::vector<int> sizes{2, 1, 3, 2, 1};
    auto [B, clusters] = blow_up(R, sizes);
    size_t expect = 0;
    for (auto& e : R.edges()) {
        size_t prod = 1;
        for (int x : e) prod *= sizes[x];
        expect += prod;
    }
    CHECK(B.edge_count() == expect);
    CHECK(B.n() == 9);
}

TEST_CASE("degree monotonicity across orders") {
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        auto G = random_uniform(8, 4, 0.55, seed);
        if (G.edge_count() == 0) continue;
        Rat prev = -1;
        for (int d = 3; d >= 1; --d) {
            Rat r = min_degree(G, d).ratio;
            if (prev >= 0) CHECK(r >= prev);  // ratio(d) >= ratio(d') for d <= d'
            prev = r;
        }
    }
}

TEST_CASE("hypergraph json round trip") {
    auto G = Hypergraph::bounded(5, 3, {{0}, {1, 2}, {2, 3, 4}});
    auto j = hypergraph_to_json(G);
    auto H = hypergraph_from_json(j);
    CHECK(G == H);
}

TEST_CASE("hypergraph json rejects bad input with positions") {
    Json j{{"n", 3}, {"k", 3}, {"edges", Json::array({{0, 1, 5}})}};
    try {
        hypergraph_from_json(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("edge 0 entry 2") != std::string::npos);
    }
    Json dup{{"n", 3}, {"k", 2}, {"edges", Json::array({{0, 1}, {1, 0}})}};
    CHECK_THROWS_AS(hypergraph_from_json(dup), ParseError);
    Json rep{{"n", 3}, {"k", 2}, {"edges", Json::array({{1, 1}})}};
    CHECK_THROWS_AS(hypergraph_from_json(rep), ParseError);
}
