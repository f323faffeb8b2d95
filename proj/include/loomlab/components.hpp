#ifndef LOOMLAB_COMPONENTS_HPP
#define LOOMLAB_COMPONENTS_HPP

#include <numeric>
#include <vector>

#include "loomlab/hypergraph.hpp"

namespace loomlab {

namespace detail {
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};
}  // namespace detail

/// l-components of the k-level: partition of the k-edge indices into the
/// connected components of the l-line graph (edges adjacent when they share
/// at least l vertices).
inline std::vector<std::vector<int>> components(const Hypergraph& G, int l) {
    auto idx = G.level_indices(G.k());
    detail::UnionFind uf((int)idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (G.mask(idx[i]).intersect_count(G.mask(idx[j])) >= l) uf.unite((int)i, (int)j);
    std::vector<std::vector<int>> comps;
    std::vector<int> root_slot((int)idx.size(), -1);
    for (size_t i = 0; i < idx.size(); ++i) {
        int r = uf.find((int)i);
        if (root_slot[r] < 0) {
            root_slot[r] = (int)comps.size();
            comps.emplace_back();
        }
        comps[root_slot[r]].push_back(idx[i]);
    }
    return comps;
}

/// True when one l-component spans every vertex of G (so in particular G has
/// no isolated vertices).
inline bool spans_all_vertices(const Hypergraph& G, const std::vector<int>& comp) {
    VertexSet seen(G.n());
    for (int idx : comp)
        for (int v : G.edges()[idx]) seen.set(v);
    return seen.count() == G.n();
}

/// l-connectivity: exactly one l-component and it spans all vertices.
inline bool is_l_connected(const Hypergraph& G, int l) {
    auto comps = components(G, l);
    return comps.size() == 1 && spans_all_vertices(G, comps[0]);
}

struct AdherenceReport {
    Hypergraph adherence;  // uniform k-graph on V(G)
    bool dcon = false;     // adherence is a single vertex-spanning l-component
};

/// l-adherence of a bounded graph: the union of the k-level l-components
/// tc(e) over the l-edges e, where tc(e) is the component containing the
/// k-edges that contain e.  dcon holds when the result is one spanning
/// component.
inline AdherenceReport adherence(const Hypergraph& G, int l) {
    auto comps = components(G, l);
    std::vector<int> comp_of;  // edge index -> component slot
    {
        int maxidx = -1;
        for (auto& c : comps)
            for (int e : c) maxidx = std::max(maxidx, e);
        comp_of.assign(maxidx + 1, -1);
        for (size_t ci = 0; ci < comps.size(); ++ci)
            for (int e : comps[ci]) comp_of[e] = (int)ci;
    }
    std::vector<bool> keep(comps.size(), false);
    for (int li : G.level_indices(l)) {
        const Edge& e = G.edges()[li];
        for (int ki : G.edges_containing(e)) {
            if ((int)G.edges()[ki].size() != G.k()) continue;
            keep[comp_of[ki]] = true;
        }
    }
    std::vector<Edge> adh_edges;
    for (size_t ci = 0; ci < comps.size(); ++ci)
        if (keep[ci])
            for (int e : comps[ci]) adh_edges.push_back(G.edges()[e]);
    AdherenceReport rep{Hypergraph::uniform(G.n(), G.k(), std::move(adh_edges)), false};
    rep.dcon = is_l_connected(rep.adherence, l);
    return rep;
}

}  // namespace loomlab

#endif
