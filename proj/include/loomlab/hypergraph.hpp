#ifndef LOOMLAB_HYPERGRAPH_HPP
#define LOOMLAB_HYPERGRAPH_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loomlab/combinatorics.hpp"
#include "loomlab/errors.hpp"
#include "loomlab/rational.hpp"

namespace loomlab {

using Edge = std::vector<int>;  // sorted, duplicate-free vertex set

/// Immutable hypergraph on vertices 0..n-1.  Either k-uniform or k-bounded
/// (edge sizes 1..k).  Edge list is kept sorted; per-edge bitmasks and a
/// vertex->edges index are built at construction, so all queries are const
/// and safe to run concurrently.
class Hypergraph {
public:
    Hypergraph() = default;

    static Hypergraph uniform(int n, int k, std::vector<Edge> edges) {
        return Hypergraph(n, k, false, std::move(edges));
    }
    static Hypergraph bounded(int n, int k, std::vector<Edge> edges) {
        return Hypergraph(n, k, true, std::move(edges));
    }
    static Hypergraph complete(int n, int k) {
        if (k > n) return uniform(n, k, {});
        return uniform(n, k, all_subsets(n, k));
    }
    static Hypergraph complete_bounded(int n, int k) {
        std::vector<Edge> es;
        for (int j = 1; j <= std::min(n, k); ++j) {
            auto level = all_subsets(n, j);
            es.insert(es.end(), level.begin(), level.end());
        }
        return bounded(n, k, std::move(es));
    }
    static Hypergraph empty(int n, int k, bool is_bounded = false) {
        return Hypergraph(n, k, is_bounded, {});
    }

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_bounded() const { return bounded_; }
    const std::vector<Edge>& edges() const { return edges_; }
    size_t edge_count() const { return edges_.size(); }

    bool has_edge(const Edge& sorted) const {
        return std::binary_search(edges_.begin(), edges_.end(), sorted);
    }
    const VertexSet& mask(size_t idx) const { return masks_[idx]; }

    /// Indices of edges containing vertex v.
    const std::vector<int>& edges_at(int v) const { return vertex_edges_[v]; }

    /// Edge indices of the i-uniform level (all edges when uniform and i == k).
    std::vector<int> level_indices(int i) const {
        std::vector<int> out;
        for (size_t j = 0; j < edges_.size(); ++j)
            if ((int)edges_[j].size() == i) out.push_back((int)j);
        return out;
    }

    /// The i-uniform level as its own graph (same vertex set).
    Hypergraph level(int i) const {
        std::vector<Edge> es;
        for (const auto& e : edges_)
            if ((int)e.size() == i) es.push_back(e);
        return uniform(n_, i, std::move(es));
    }

    /// Edges whose vertex set contains `set` (given sorted).
    std::vector<int> edges_containing(const std::vector<int>& set) const {
        if (set.empty()) {
            std::vector<int> all(edges_.size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
            return all;
        }
        // iterate over the incidence list of the least-frequent member
        int best = set[0];
        for (int v : set)
            if (vertex_edges_[v].size() < vertex_edges_[best].size()) best = v;
        std::vector<int> out;
        for (int idx : vertex_edges_[best])
            if (is_subset_of(set, edges_[idx])) out.push_back(idx);
        return out;
    }

    bool operator==(const Hypergraph&) const = default;

private:
    Hypergraph(int n, int k, bool bounded, std::vector<Edge> edges)
        : n_(n), k_(k), bounded_(bounded), edges_(std::move(edges)) {
        if (n_ < 0) throw PreconditionError("vertex count must be nonnegative");
        if (k_ < 1) throw PreconditionError("uniformity must be positive");
        for (auto& e : edges_) std::sort(e.begin(), e.end());
        std::sort(edges_.begin(), edges_.end());
        for (size_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            if (e.empty()) throw PreconditionError("edge " + std::to_string(i) + " is empty");
            for (size_t j = 0; j + 1 < e.size(); ++j)
                if (e[j] == e[j + 1])
                    throw PreconditionError("edge " + std::to_string(i) + " has duplicate vertex " +
                                            std::to_string(e[j]));
            if (e.front() < 0 || e.back() >= n_)
                throw PreconditionError("edge " + std::to_string(i) + " has vertex out of range");
            if (bounded_) {
                if ((int)e.size() > k_)
                    throw PreconditionError("edge " + std::to_string(i) + " exceeds bound " +
                                            std::to_string(k_));
            } else if ((int)e.size() != k_) {
                throw PreconditionError("edge " + std::to_string(i) + " has size " +
                                        std::to_string(e.size()) + ", expected " + std::to_string(k_));
            }
            if (i > 0 && edges_[i - 1] == e)
                throw PreconditionError("duplicate edge at index " + std::to_string(i));
        }
        masks_.reserve(edges_.size());
        vertex_edges_.assign(n_, {});
        for (size_t i = 0; i < edges_.size(); ++i) {
            VertexSet m(n_);
            for (int v : edges_[i]) {
                m.set(v);
                vertex_edges_[v].push_back((int)i);
            }
            masks_.push_back(std::move(m));
        }
    }

    int n_ = 0;
    int k_ = 1;
    bool bounded_ = false;
    std::vector<Edge> edges_;
    std::vector<VertexSet> masks_;
    std::vector<std::vector<int>> vertex_edges_;
};

struct DegreeReport {
    int d = 0;
    Int min_deg = 0;
    Rat ratio = 0;             // min_deg / binom(n-d, k-d)
    std::vector<int> argmin;   // a witnessing d-set
};

/// Minimum d-degree of a uniform k-graph: the least number of edges over all
/// d-sets of vertices, with the normalised ratio against binom(n-d, k-d).
inline DegreeReport min_degree(const Hypergraph& G, int d) {
    if (G.is_bounded())
        throw PreconditionError("min_degree needs a uniform graph; extract a level first");
    if (d < 1 || d > G.k() - 1) throw PreconditionError("degree order d must be in 1..k-1");
    if (G.n() < G.k()) throw PreconditionError("graph must have at least k vertices");
    DegreeReport rep;
    rep.d = d;
    Int best = -1;
    visit_subsets(G.n(), d, [&](const std::vector<int>& s) {
        Int cnt = (Int)G.edges_containing(s).size();
        if (best < 0 || cnt < best) {
            best = cnt;
            rep.argmin = s;
        }
        return best != 0;  // cannot go below zero
    });
    rep.min_deg = best;
    rep.ratio = Rat(best, binom(G.n() - d, G.k() - d));
    return rep;
}

/// Shadow l-graph: all l-sets contained in some edge of the k-level.
inline Hypergraph shadow(const Hypergraph& G, int l) {
    if (l < 1 || l >= G.k()) throw PreconditionError("shadow level must be in 1..k-1");
    std::vector<Edge> out;
    for (const auto& e : G.edges()) {
        if ((int)e.size() != G.k()) continue;
        visit_subsets((int)e.size(), l, [&](const std::vector<int>& pos) {
            Edge s(l);
            for (int i = 0; i < l; ++i) s[i] = e[pos[i]];
            out.push_back(std::move(s));
            return true;
        });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Hypergraph::uniform(G.n(), l, std::move(out));
}

/// Link graph of X: edges Y disjoint from X with Y + X an edge of G.
/// Keeps the host vertex numbering (vertices of X become isolated).
inline Hypergraph link(const Hypergraph& G, const std::vector<int>& X) {
    if ((int)X.size() >= G.k()) throw PreconditionError("link set must have fewer than k vertices");
    std::vector<int> xs(X);
    std::sort(xs.begin(), xs.end());
    std::vector<Edge> out;
    for (int idx : G.edges_containing(xs)) {
        const Edge& e = G.edges()[idx];
        if ((int)e.size() != G.k()) continue;
        out.push_back(set_minus(e, xs));
    }
    return Hypergraph::uniform(G.n(), G.k() - (int)X.size(), std::move(out));
}

/// Induced subgraph on S, relabelled to 0..|S|-1 in S's sorted order.
inline Hypergraph induced(const Hypergraph& G, const std::vector<int>& S) {
    std::vector<int> s(S);
    std::sort(s.begin(), s.end());
    for (int v : s)
        if (v < 0 || v >= G.n()) throw PreconditionError("induced set has vertex out of range");
    std::map<int, int> relabel;
    for (size_t i = 0; i < s.size(); ++i) relabel[s[i]] = (int)i;
    std::vector<Edge> out;
    for (const auto& e : G.edges()) {
        if (!is_subset_of(e, s)) continue;
        Edge img(e.size());
        for (size_t i = 0; i < e.size(); ++i) img[i] = relabel[e[i]];
        out.push_back(std::move(img));
    }
    return G.is_bounded() ? Hypergraph::bounded((int)s.size(), G.k(), std::move(out))
                          : Hypergraph::uniform((int)s.size(), G.k(), std::move(out));
}

/// Vertex-deleted subgraph G - X on the surviving vertices, relabelled.
inline Hypergraph remove_vertices(const Hypergraph& G, const std::vector<int>& X) {
    std::vector<int> xs(X);
    std::sort(xs.begin(), xs.end());
    std::vector<int> keep;
    for (int v = 0; v < G.n(); ++v)
        if (!std::binary_search(xs.begin(), xs.end(), v)) keep.push_back(v);
    return induced(G, keep);
}

/// Blow-up of a (possibly bounded) reduced graph R by positive cluster sizes.
/// Returns the blown-up graph plus the cluster partition.
inline std::pair<Hypergraph, std::vector<std::vector<int>>> blow_up(const Hypergraph& R,
                                                                    const std::vector<int>& sizes) {
    if ((int)sizes.size() != R.n()) throw PreconditionError("one cluster size per reduced vertex");
    std::vector<std::vector<int>> clusters(R.n());
    int next = 0;
    for (int x = 0; x < R.n(); ++x) {
        if (sizes[x] <= 0) throw PreconditionError("cluster sizes must be positive");
        for (int i = 0; i < sizes[x]; ++i) clusters[x].push_back(next++);
    }
    std::vector<Edge> out;
    for (const auto& re : R.edges()) {
        // all transversals of the clusters of re
        std::vector<int> pick(re.size(), 0);
        while (true) {
            Edge e(re.size());
            for (size_t i = 0; i < re.size(); ++i) e[i] = clusters[re[i]][pick[i]];
            std::sort(e.begin(), e.end());
            out.push_back(std::move(e));
            size_t j = 0;
            while (j < pick.size()) {
                if (++pick[j] < (int)clusters[re[j]].size()) break;
                pick[j++] = 0;
            }
            if (j == pick.size()) break;
        }
    }
    Hypergraph B = R.is_bounded() ? Hypergraph::bounded(next, R.k(), std::move(out))
                                  : Hypergraph::uniform(next, R.k(), std::move(out));
    return {std::move(B), std::move(clusters)};
}

}  // namespace loomlab

#endif
