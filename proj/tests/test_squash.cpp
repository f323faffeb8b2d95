#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loomlab/squash.hpp"

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
}  // namespace

TEST_CASE("squash of a single edge") {
    auto H = Hypergraph::uniform(6, 4, {{0, 1, 2, 3}});
    BlockPartition Q{2, {{0, 1}, {2, 3}, {4, 5}}};
    auto S = squash(H, Q);
    CHECK(S.edges() == std::vector<Edge>{{0, 1}});
    BlockPartition Q2{2, {{0, 2}, {1, 4}, {3, 5}}};
    CHECK(squash(H, Q2).edge_count() == 0);
}

TEST_CASE("squash of the complete graph is complete") {
    auto H = Hypergraph::complete(6, 4);
    auto Q = random_partition(6, 2, 123, 0);
    auto S = squash(H, Q);
    CHECK(S.edge_count() == 3);  // K(3,2)
}

TEST_CASE("squash validates the partition") {
    auto H = Hypergraph::complete(6, 4);
    BlockPartition bad{2, {{0, 1}, {2, 3}, {3, 5}}};
    CHECK_THROWS_AS(squash(H, bad), PreconditionError);
    BlockPartition wrong_q{3, {{0, 1, 2}, {3, 4, 5}}};
    CHECK_THROWS_AS(squash(H, wrong_q), PreconditionError);  // 4 not divisible by 3
}

TEST_CASE("edge count never grows under squashing") {
    for (uint64_t s : {1u, 2u, 3u}) {
        auto H = random_uniform(8, 4, 0.5, s);
        for (uint64_t t = 0; t < 5; ++t) {
            auto Q = random_partition(8, 2, s, t);
            CHECK(squash(H, Q).edge_count() <= H.edge_count());
        }
    }
}

TEST_CASE("exact expectation on the single-edge instance") {
    // q=2, n=3: one 4-edge on 6 vertices; 3 of 15 pairings keep it
    auto H = Hypergraph::uniform(6, 4, {{0, 1, 2, 3}});
    auto rep = expectation_exact(H, 2);
    CHECK(rep.partition_count == 15);
    CHECK(rep.average == Rat(1, 5));
    CHECK(rep.closed_form == Rat(binom(3, 2), binom(6, 4)));
    CHECK(rep.match);
}

TEST_CASE("expectation matches closed form exhaustively at qn <= 8") {
    std::mt19937_64 rng(5);
    for (int total : {4, 6, 8}) {
        // extremes
        CHECK(expectation_exact(Hypergraph::complete(total, 4), 2).match);
        CHECK(expectation_exact(Hypergraph::empty(total, 4), 2).match);
        // random graphs
        for (int i = 0; i < 15; ++i) {
            auto H = random_uniform(total, 4, std::uniform_real_distribution<double>(0, 1)(rng),
                                    rng());
            CHECK(expectation_exact(H, 2).match);
        }
    }
    // a q=3 case for coverage
    CHECK(expectation_exact(random_uniform(9, 3, 0.5, 77), 3).match);
}

TEST_CASE("complete expectation equals binom(n,k)") {
    auto H = Hypergraph::complete(8, 4);
    auto rep = expectation_exact(H, 2);
    CHECK(rep.average == binom(4, 2));
}

TEST_CASE("concentration experiment stays below the closed-form bound") {
    auto H = random_uniform(12, 4, 0.7, 9);
    auto rep = concentration_experiment(H, 2, 0.2, 300, 42);
    CHECK(rep.consistent);
    CHECK(rep.trials == 300);
    CHECK((long)rep.rows.size() == 300);
    CHECK_THROWS_AS(concentration_experiment(H, 2, 0.2, 0, 1), PreconditionError);
}

TEST_CASE("concentration trivially consistent when the bound exceeds one") {
    auto H = random_uniform(8, 4, 0.6, 11);
    auto rep = concentration_experiment(H, 2, 1.5, 50, 7);
    CHECK(rep.bound >= 1.0);
    CHECK(rep.consistent);
}

TEST_CASE("determinism: same seed, same rows") {
    auto H = random_uniform(10, 4, 0.5, 3);
    auto a = concentration_experiment(H, 2, 0.25, 40, 99);
    auto b = concentration_experiment(H, 2, 0.25, 40, 99);
    CHECK(a.rows == b.rows);
    auto c = concentration_experiment(H, 2, 0.25, 40, 100);
    CHECK(a.rows != c.rows);  // different stream
}

TEST_CASE("degree preservation: complete host keeps ratio one") {
    auto H = Hypergraph::complete(8, 4);
    auto rep = degree_preservation_experiment(H, 2, 1, Rat(1, 100), 20, 5);
    CHECK(rep.host_ratio == 1);
    for (auto& r : rep.squashed_ratios) CHECK(r == 1);
    CHECK(rep.within_eps == 20);
}

TEST_CASE("degree preservation: q=1 is the identity") {
    auto H = random_uniform(8, 3, 0.6, 21);
    auto rep = degree_preservation_experiment(H, 1, 2, Rat(0), 5, 8);
    for (auto& r : rep.squashed_ratios) CHECK(r == rep.host_ratio);
}

TEST_CASE("squash commutes with links on random instances") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto H = random_uniform(8, 4, 0.55, rng());
        auto Q = random_partition(8, 2, 17, (uint64_t)trial);
        auto HQ = squash(H, Q);
        // pick a block index I = {i}; compare links
        for (int i = 0; i < 4; ++i) {
            auto LHQ = link(HQ, {i});  // (k/q - 1)-graph on block indices
            // squash the host link of the block's vertex set
            auto LH = link(H, Q.blocks[i]);
            // restrict the partition to the remaining blocks, keeping indices
            std::set<Edge> lhs, rhs;
            for (auto& e : LHQ.edges()) lhs.insert(e);
            visit_subsets(4, HQ.k() - 1, [&](const std::vector<int>& J) {
                if (std::find(J.begin(), J.end(), i) != J.end()) return true;
                Edge u;
                for (int j : J) u.insert(u.end(), Q.blocks[j].begin(), Q.blocks[j].end());
                std::sort(u.begin(), u.end());
                if (LH.has_edge(u)) rhs.insert(J);
                return true;
            });
            CHECK(lhs == rhs);
        }
    }
}
