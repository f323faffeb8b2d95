#ifndef LOOMLAB_SQUASH_HPP
#define LOOMLAB_SQUASH_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "loomlab/hypergraph.hpp"
#include "loomlab/rational.hpp"

namespace loomlab {

/// Partition of 0..qn-1 into n blocks of size q.
struct BlockPartition {
    int q = 0;
    std::vector<std::vector<int>> blocks;

    int n() const { return (int)blocks.size(); }

    void validate(int total) const {
        std::vector<bool> seen(total, false);
        if (q < 1) throw PreconditionError("block size must be positive");
        for (auto& b : blocks) {
            if ((int)b.size() != q) throw PreconditionError("block of wrong size");
            for (int v : b) {
                if (v < 0 || v >= total || seen[v])
                    throw PreconditionError("blocks must exactly cover the vertex set");
                seen[v] = true;
            }
        }
        if ((int)blocks.size() * q != total)
            throw PreconditionError("blocks must exactly cover the vertex set");
    }
};

/// Squashed hypergraph: k-set I of block indices is an edge exactly when the
/// union of its blocks is an edge of H.
inline Hypergraph squash(const Hypergraph& H, const BlockPartition& Q) {
    if (H.is_bounded()) throw PreconditionError("squash expects a uniform graph");
    Q.validate(H.n());
    if (H.k() % Q.q != 0) throw PreconditionError("uniformity must be divisible by q");
    int k = H.k() / Q.q;
    int n = Q.n();
    std::vector<Edge> out;
    visit_subsets(n, k, [&](const std::vector<int>& I) {
        Edge u;
        for (int i : I) u.insert(u.end(), Q.blocks[i].begin(), Q.blocks[i].end());
        std::sort(u.begin(), u.end());
        if (H.has_edge(u)) out.push_back(I);
        return true;
    });
    return Hypergraph::uniform(n, k, std::move(out));
}

/// Seeded random partition: shuffle the vertices and cut consecutive
/// q-blocks, mirroring the permutation sampling of the concentration proof.
/// Streams are independent per (seed, trial) pair.
inline BlockPartition random_partition(int total, int q, uint64_t seed, uint64_t trial) {
    std::seed_seq sq{(uint32_t)(seed & 0xffffffff), (uint32_t)(seed >> 32), (uint32_t)(trial & 0xffffffff),
                     (uint32_t)(trial >> 32)};
    std::mt19937_64 rng(sq);
    std::vector<int> perm(total);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BlockPartition Q;
    Q.q = q;
    for (int i = 0; i < total / q; ++i)
        Q.blocks.push_back({perm.begin() + (size_t)i * q, perm.begin() + (size_t)(i + 1) * q});
    for (auto& b : Q.blocks) std::sort(b.begin(), b.end());
    return Q;
}

struct ExpectationReport {
    Rat average;           // exact mean of |H_Q| over all partitions
    Rat closed_form;       // binom(n,k) |H| / binom(qn,qk)
    Int partition_count;   // (qn)! / (q!^n n!)
    bool match = false;
};

/// Exact expectation of |H_Q| by exhaustive enumeration of all partitions
/// into q-blocks (capped at qn <= 12).
inline ExpectationReport expectation_exact(const Hypergraph& H, int q, int cap = 12) {
    if (H.is_bounded()) throw PreconditionError("expectation_exact expects a uniform graph");
    if (H.k() % q != 0 || H.n() % q != 0)
        throw PreconditionError("need q dividing both the uniformity and the order");
    if (H.n() > cap) throw BudgetError("expectation_exact: exhaustive cap exceeded");
    int total = H.n();
    int n = total / q;
    int k = H.k() / q;
    Int partitions = 0;
    Int edge_sum = 0;
    std::vector<std::vector<int>> blocks;
    std::vector<bool> used(total, false);
    std::function<void()> rec = [&]() {
        int first = -1;
        for (int v = 0; v < total; ++v)
            if (!used[v]) {
                first = v;
                break;
            }
        if (first < 0) {
            ++partitions;
            BlockPartition Q{q, blocks};
            edge_sum += (Int)squash(H, Q).edge_count();
            return;
        }
        // group the least unused vertex with each (q-1)-subset of the rest
        std::vector<int> pool;
        for (int v = first + 1; v < total; ++v)
            if (!used[v]) pool.push_back(v);
        visit_subsets((int)pool.size(), q - 1, [&](const std::vector<int>& pos) {
            std::vector<int> block{first};
            for (int p : pos) block.push_back(pool[p]);
            for (int v : block) used[v] = true;
            blocks.push_back(block);
            rec();
            blocks.pop_back();
            for (int v : block) used[v] = false;
            return true;
        });
    };
    used[0] = false;
    rec();
    ExpectationReport rep;
    rep.partition_count = partitions;
    // cross-check the enumeration against the closed count
    Int expect_count = factorial(total);
    for (int i = 0; i < n; ++i) expect_count /= factorial(q);
    expect_count /= factorial(n);
    if (partitions != expect_count)
        throw std::logic_error("expectation_exact: partition enumeration count mismatch");
    rep.average = Rat(edge_sum, partitions);
    rep.closed_form = Rat(binom(n, k) * (Int)H.edge_count(), binom(total, H.k()));
    rep.match = rep.average == rep.closed_form;
    return rep;
}

struct ConcentrationReport {
    long trials = 0;
    long violations = 0;
    double violation_freq = 0;
    double bound = 0;       // 2 exp(-eps^2 n / (16 q))
    bool consistent = false;
    Rat mean_closed_form;
    std::vector<std::pair<long, long>> rows;  // (trial, |H_Q|)
};

/// Monte Carlo check of the squash concentration bound: the fraction of
/// trials with |H_Q| < E|H_Q| - eps n^k must stay below 2 exp(-eps^2 n/(16q)).
inline ConcentrationReport concentration_experiment(const Hypergraph& H, int q, double eps,
                                                    long trials, uint64_t seed) {
    if (trials < 1) throw PreconditionError("need at least one trial");
    if (H.k() % q != 0 || H.n() % q != 0)
        throw PreconditionError("need q dividing both the uniformity and the order");
    int n = H.n() / q;
    int k = H.k() / q;
    ConcentrationReport rep;
    rep.trials = trials;
    rep.mean_closed_form = Rat(binom(n, k) * (Int)H.edge_count(), binom(H.n(), H.k()));
    double mean = (double)numerator(rep.mean_closed_form).convert_to<double>() /
                  (double)denominator(rep.mean_closed_form).convert_to<double>();
    double slack = eps * std::pow((double)n, k);
    for (long t = 0; t < trials; ++t) {
        auto Q = random_partition(H.n(), q, seed, (uint64_t)t);
        long edges = (long)squash(H, Q).edge_count();
        rep.rows.push_back({t, edges});
        if ((double)edges < mean - slack) ++rep.violations;
    }
    rep.violation_freq = (double)rep.violations / (double)trials;
    rep.bound = 2.0 * std::exp(-eps * eps * (double)n / (16.0 * q));
    rep.consistent = rep.violation_freq <= rep.bound;
    return rep;
}

struct DegreePreservationReport {
    long trials = 0;
    Rat host_ratio;                     // delta_{qd}(H) ratio
    std::vector<Rat> squashed_ratios;   // per trial, exact
    long within_eps = 0;                // trials with |ratio - host_ratio| <= eps
    double within_eps_freq = 0;
};

/// Sampled minimum d-degree ratios of squashed graphs against the host's
/// qd-degree ratio.
inline DegreePreservationReport degree_preservation_experiment(const Hypergraph& H, int q, int d,
                                                               const Rat& eps, long trials,
                                                               uint64_t seed) {
    if (trials < 1) throw PreconditionError("need at least one trial");
    if (H.k() % q != 0 || H.n() % q != 0)
        throw PreconditionError("need q dividing both the uniformity and the order");
    DegreePreservationReport rep;
    rep.trials = trials;
    rep.host_ratio = min_degree(H, q * d).ratio;
    for (long t = 0; t < trials; ++t) {
        auto Q = random_partition(H.n(), q, seed, (uint64_t)t);
        auto HQ = squash(H, Q);
        Rat r = HQ.n() >= HQ.k() ? min_degree(HQ, d).ratio : Rat(0);
        if (abs(r - rep.host_ratio) <= eps) ++rep.within_eps;
        rep.squashed_ratios.push_back(r);
    }
    rep.within_eps_freq = (double)rep.within_eps / (double)trials;
    return rep;
}

}  // namespace loomlab

#endif
