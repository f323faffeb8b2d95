#ifndef LOOMLAB_CYCLEPATH_HPP
#define LOOMLAB_CYCLEPATH_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "loomlab/errors.hpp"
#include "loomlab/hypergraph.hpp"

namespace loomlab {

/// Windows of a vertex sequence read on the (k, l) grid: k consecutive
/// entries stepping by k-l, wrapping around when cyclic.
inline std::vector<std::vector<int>> sequence_windows(const std::vector<int>& verts, int k, int l,
                                                      bool cyclic) {
    int m = (int)verts.size();
    int step = k - l;
    std::vector<std::vector<int>> out;
    if (cyclic) {
        if (m % step != 0) return out;
        int t = m / step;
        for (int i = 0; i < t; ++i) {
            std::vector<int> w(k);
            for (int j = 0; j < k; ++j) w[j] = verts[(i * step + j) % m];
            out.push_back(std::move(w));
        }
    } else {
        if (m < k || (m - k) % step != 0) return out;
        int t = (m - k) / step + 1;
        for (int i = 0; i < t; ++i) {
            std::vector<int> w(k);
            for (int j = 0; j < k; ++j) w[j] = verts[i * step + j];
            out.push_back(std::move(w));
        }
    }
    return out;
}

/// An l-cycle or l-path of a k-graph, stored as its ordered vertex sequence.
struct CyclePath {
    enum class Kind { Cycle, Path };

    int k = 0;
    int l = 0;
    Kind kind = Kind::Cycle;
    std::vector<int> verts;

    int order() const { return (int)verts.size(); }
    int edge_count() const {
        int step = k - l;
        return kind == Kind::Cycle ? order() / step : (order() - k) / step + 1;
    }
    std::vector<std::vector<int>> windows() const {
        return sequence_windows(verts, k, l, kind == Kind::Cycle);
    }
    std::vector<int> first_tuple() const { return {verts.begin(), verts.begin() + l}; }
    std::vector<int> last_tuple() const { return {verts.end() - l, verts.end()}; }
};

/// Independent validator.  Checks vertex distinctness, window alignment,
/// exact consecutive intersections, pairwise-distinct window edges and,
/// for paths with at least two edges, disjoint end edges.  When a host
/// graph is given, every window must be one of its edges.
///
/// strict_path_ends=false drops the end-edge disjointness requirement:
/// Hamilton (e,f,l)-paths of order k+(k-l) necessarily have intersecting end
/// edges, and connection checks need those.
inline std::optional<std::string> validate_cyclepath(const CyclePath& cp,
                                                     const Hypergraph* host = nullptr,
                                                     bool strict_path_ends = true) {
    int k = cp.k, l = cp.l;
    if (l < 1 || l > k - 1) return "l out of range";
    int step = k - l;
    int m = cp.order();
    if (cp.kind == CyclePath::Kind::Cycle) {
        if (m == 0 || m % step != 0) return "cycle order not divisible by k-l";
    } else {
        if (m < k || (m - k) % step != 0) return "path order not congruent to k mod k-l";
    }
    {
        std::vector<int> s(cp.verts);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) return "repeated vertex";
    }
    auto ws = cp.windows();
    if (ws.empty()) return "no windows";
    std::vector<Edge> sorted;
    for (const auto& w : ws) {
        Edge e(w);
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) return "window repeats a vertex";
        sorted.push_back(std::move(e));
    }
    int t = (int)ws.size();
    int consecutive_pairs = cp.kind == CyclePath::Kind::Cycle ? t : t - 1;
    if (cp.kind == CyclePath::Kind::Cycle && t == 1) return "degenerate single-window cycle";
    for (int i = 0; i < consecutive_pairs; ++i) {
        int z = intersection_size(sorted[i], sorted[(i + 1) % t]);
        if (z != l)
            return "windows " + std::to_string(i) + "," + std::to_string((i + 1) % t) +
                   " intersect in " + std::to_string(z) + " != l";
    }
    {
        auto uniq = sorted;
        std::sort(uniq.begin(), uniq.end());
        if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end())
            return "two windows coincide as edges";
    }
    if (cp.kind == CyclePath::Kind::Path && t >= 2 && strict_path_ends) {
        if (intersection_size(sorted.front(), sorted.back()) != 0)
            return "end edges of path intersect";
    }
    if (host) {
        for (size_t i = 0; i < sorted.size(); ++i)
            if (!host->has_edge(sorted[i]))
                return "window " + std::to_string(i) + " is not a host edge";
    }
    return std::nullopt;
}

/// Least t for which the canonical l-cycle passes the validator.
inline int min_cycle_length(int k, int l) {
    return (k + (k - l) - 1) / (k - l) + 1;  // ceil(k/(k-l)) + 1
}

/// Canonical l-cycle on vertices 0..t(k-l)-1.
inline CyclePath build_cycle(int k, int l, int t) {
    if (l < 1 || l > k - 1) throw PreconditionError("need 1 <= l <= k-1");
    CyclePath cp;
    cp.k = k;
    cp.l = l;
    cp.kind = CyclePath::Kind::Cycle;
    cp.verts.resize((size_t)t * (k - l));
    std::iota(cp.verts.begin(), cp.verts.end(), 0);
    if (auto err = validate_cyclepath(cp))
        throw PreconditionError("build_cycle(" + std::to_string(k) + "," + std::to_string(l) + "," +
                                std::to_string(t) + "): " + *err);
    return cp;
}

/// Canonical l-path with t edges on vertices 0..k+(t-1)(k-l)-1.
inline CyclePath build_path(int k, int l, int t) {
    if (l < 1 || l > k - 1) throw PreconditionError("need 1 <= l <= k-1");
    if (t < 1) throw PreconditionError("path needs at least one edge");
    CyclePath cp;
    cp.k = k;
    cp.l = l;
    cp.kind = CyclePath::Kind::Path;
    cp.verts.resize((size_t)k + (size_t)(t - 1) * (k - l));
    std::iota(cp.verts.begin(), cp.verts.end(), 0);
    if (auto err = validate_cyclepath(cp))
        throw PreconditionError("build_path(" + std::to_string(k) + "," + std::to_string(l) + "," +
                                std::to_string(t) + "): " + *err);
    return cp;
}

/// The l-cycle or l-path as a plain hypergraph on its own vertex count
/// (vertices relabelled by first appearance order, which for canonical
/// constructions is the identity).
inline Hypergraph as_hypergraph(const CyclePath& cp) {
    int m = cp.order();
    std::vector<Edge> es;
    for (auto& w : cp.windows()) {
        Edge e(w);
        std::sort(e.begin(), e.end());
        es.push_back(std::move(e));
    }
    int top = 0;
    for (int v : cp.verts) top = std::max(top, v);
    (void)m;
    return Hypergraph::uniform(top + 1, cp.k, std::move(es));
}

}  // namespace loomlab

#endif
