#ifndef LOOMLAB_ALLOC_HPP
#define LOOMLAB_ALLOC_HPP

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "loomlab/blowup.hpp"
#include "loomlab/lattice.hpp"
#include "loomlab/tiling.hpp"
#include "loomlab/walks.hpp"

namespace loomlab {

/// Raised when an explicit stock/size inequality fails; the message names it.
class ParamsTooSmall : public std::runtime_error {
public:
    explicit ParamsTooSmall(const std::string& what) : std::runtime_error(what) {}
};

class PreconditionFailed : public std::runtime_error {
public:
    explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

/// Per-cluster pools of free host vertices; all draws take the lowest id.
struct ClusterPools {
    std::vector<std::vector<int>> avail;  // ascending

    explicit ClusterPools(const std::vector<std::vector<int>>& clusters) : avail(clusters) {
        for (auto& a : avail) std::sort(a.begin(), a.end());
    }
    int size(int x) const { return (int)avail[x].size(); }
    int total() const {
        int t = 0;
        for (auto& a : avail) t += (int)a.size();
        return t;
    }
    int take(int x, const char* stage) {
        if (avail[x].empty())
            throw ParamsTooSmall(std::string(stage) + ": cluster " + std::to_string(x) + " exhausted");
        int v = avail[x].front();
        avail[x].erase(avail[x].begin());
        return v;
    }
    void reserve_specific(int x, int v, const char* stage) {
        auto it = std::lower_bound(avail[x].begin(), avail[x].end(), v);
        if (it == avail[x].end() || *it != v)
            throw PreconditionFailed(std::string(stage) + ": vertex " + std::to_string(v) +
                                     " not free in cluster " + std::to_string(x));
        avail[x].erase(it);
    }
    void give(int x, int v) {
        auto it = std::lower_bound(avail[x].begin(), avail[x].end(), v);
        avail[x].insert(it, v);
    }
};

/// Lifts a closed reduced walk to a vertex-disjoint cycle in the blow-up.
inline CyclePath place_cycle_copy(const ClosedWalk& w, ClusterPools& pools, const char* stage) {
    CyclePath cp;
    cp.k = w.k;
    cp.l = w.l;
    cp.kind = CyclePath::Kind::Cycle;
    for (int cluster : w.slots) cp.verts.push_back(pools.take(cluster, stage));
    return cp;
}

inline bool pools_can_host(const ClusterPools& pools, const std::vector<int>& counts) {
    for (size_t x = 0; x < counts.size(); ++x)
        if (counts[x] > pools.size((int)x)) return false;
    return true;
}

/// Rotates a closed walk to its lexicographically least slot sequence, so
/// copies of the same shape always start at the same oriented window.
inline ClosedWalk canonical_rotation(const ClosedWalk& w) {
    int step = w.k - w.l;
    int m = (int)w.slots.size();
    ClosedWalk best = w;
    for (int off = step; off < m; off += step) {
        ClosedWalk cand = w;
        for (int i = 0; i < m; ++i) cand.slots[i] = w.slots[(off + i) % m];
        if (cand.slots < best.slots) best = cand;
    }
    return best;
}

/// Nonnegative integral decomposition b = sum n_j cols_j by bounded DFS with
/// a failed-state memo.
inline std::optional<std::vector<long>> nonneg_decompose(const std::vector<std::vector<int>>& cols,
                                                         const std::vector<long>& target,
                                                         long node_budget = 300'000) {
    size_t n = cols.size();
    std::vector<long> mult(n, 0);
    std::set<std::pair<size_t, std::vector<long>>> failed;
    long nodes = 0;
    std::function<bool(size_t, std::vector<long>&)> dfs = [&](size_t idx,
                                                              std::vector<long>& b) -> bool {
        bool zero = true;
        for (long v : b)
            if (v != 0) {
                zero = false;
                break;
            }
        if (zero) return true;
        if (idx == n) return false;
        if (++nodes > node_budget) return false;
        if (failed.count({idx, b})) return false;
        long cap = -1;
        for (size_t i = 0; i < b.size(); ++i) {
            if (cols[idx][i] == 0) continue;
            long c = b[i] / cols[idx][i];
            cap = cap < 0 ? c : std::min(cap, c);
        }
        if (cap < 0) cap = 0;
        for (long take = cap; take >= 0; --take) {
            std::vector<long> nb(b);
            for (size_t i = 0; i < nb.size(); ++i) nb[i] -= take * cols[idx][i];
            mult[idx] = take;
            if (dfs(idx + 1, nb)) return true;
            mult[idx] = 0;
        }
        failed.insert({idx, b});
        return false;
    };
    std::vector<long> b(target);
    if (!dfs(0, b)) return std::nullopt;
    return mult;
}

inline std::vector<int> deleted_to_original(int n, const std::vector<int>& deleted) {
    std::vector<int> map;
    for (int v = 0; v < n; ++v)
        if (std::find(deleted.begin(), deleted.end(), v) == deleted.end()) map.push_back(v);
    return map;
}

/// Relabels a closed walk over a vertex-deleted reduced graph back to the
/// original cluster indices.
inline ClosedWalk relabel_walk(const ClosedWalk& w, const std::vector<int>& to_original) {
    ClosedWalk out = w;
    for (auto& s : out.slots) s = to_original[s];
    return out;
}

}  // namespace detail

struct MatchingResult {
    std::vector<Edge> edges;   // host-id transversals, each missing one cluster
    std::vector<int> missing;  // per edge, the missed cluster index
};

/// Perfect matching of a blow-up of the complete (s-1)-graph on s clusters:
/// each edge takes one vertex from all clusters but one.  Exists exactly when
/// the total is divisible by s-1 and no cluster exceeds total/(s-1); built by
/// assigning each cluster its deficit count of missed edges.
inline MatchingResult balancing_matching(const std::vector<std::vector<int>>& clusters) {
    int s = (int)clusters.size();
    if (s < 2) throw PreconditionError("balancing_matching needs at least two clusters");
    long total = 0;
    for (auto& c : clusters) total += (long)c.size();
    if (total % (s - 1) != 0)
        throw PreconditionFailed("balancing matching: total not divisible by " + std::to_string(s - 1));
    long M = total / (s - 1);
    for (int x = 0; x < s; ++x)
        if ((long)clusters[x].size() > M)
            throw ParamsTooSmall("ImbalanceTooLarge: cluster " + std::to_string(x) + " has " +
                                 std::to_string(clusters[x].size()) + " > " + std::to_string(M) +
                                 " coverable");
    std::vector<int> miss_list;
    for (int x = 0; x < s; ++x) {
        long mx = M - (long)clusters[x].size();
        for (long i = 0; i < mx; ++i) miss_list.push_back(x);
    }
    detail::ClusterPools pools(clusters);
    MatchingResult out;
    for (long e = 0; e < M; ++e) {
        int miss = miss_list[e];
        Edge edge;
        for (int x = 0; x < s; ++x) {
            if (x == miss) continue;
            edge.push_back(pools.take(x, "balancing matching"));
        }
        std::sort(edge.begin(), edge.end());
        out.edges.push_back(std::move(edge));
        out.missing.push_back(miss);
    }
    return out;
}

/// Everything the tiling pipeline may place, precomputed from the reduced
/// graph alone (sizes do not matter), with canonically rotated witnesses.
/// The skeleton of a Hamilton-path allocation covers exactly the first-window
/// patterns of these shapes.
struct TilingShapes {
    CyclePath D;
    int vD = 0, tD = 0;
    std::vector<IndicatorColumn> dcols;  // full distinct column set of D over adh(R)
    std::vector<size_t> gen;             // indices of a generating subset
    std::map<int, ClosedWalk> stock;     // window-count residue -> cycle shape
    std::map<int, FracTiling> covers;    // per deleted vertex x: fractional tiling of adh(R-x),
                                         // witnesses in R's cluster labels
};

inline TilingShapes compute_tiling_shapes(const Hypergraph& R, int l, long node_budget = 2'000'000) {
    int k = R.k();
    int s = R.n();
    int step = k - l;
    auto adh = adherence(R, l);
    if (!adh.dcon) throw PreconditionFailed("dcon(R) fails");
    const Hypergraph& K = adh.adherence;

    TilingShapes sh;
    // D: shortest cycle with a complete lattice over K
    for (int t = min_cycle_length(k, l); t <= min_cycle_length(k, l) + 8 && sh.vD == 0; ++t) {
        auto C = build_cycle(k, l, t);
        auto L = lattice_complete(C, K, node_budget);
        if (L.status == LatticeStatus::Complete) {
            sh.D = C;
            sh.dcols = L.columns;
            sh.vD = C.order();
        }
    }
    if (sh.vD == 0) {
        int m_ceil = (k + step - 1) / step;
        auto C = build_cycle(k, l, k * k * l + m_ceil);
        auto L = lattice_complete(C, K, 4 * node_budget);
        if (L.status == LatticeStatus::Complete) {
            sh.D = C;
            sh.dcols = L.columns;
            sh.vD = C.order();
        }
    }
    if (sh.vD == 0) throw PreconditionFailed("no cycle with complete lattice over adh(R)");
    sh.tD = sh.vD / step;
    for (auto& c : sh.dcols) c.witness = detail::canonical_rotation(c.witness);

    // generating subset
    {
        IntCols chosen;
        HermiteBasis H;
        for (size_t j = 0; j < sh.dcols.size(); ++j) {
            IntVec v(sh.dcols[j].counts.begin(), sh.dcols[j].counts.end());
            if (!chosen.empty() && lattice_solve(H, v, chosen.size())) continue;
            chosen.push_back(v);
            sh.gen.push_back(j);
            H = hermite_reduce(chosen, s);
        }
    }

    // divisibility stock: one shape per nonzero residue of the window count
    for (int r = 1; r < sh.tD; ++r) {
        std::optional<ClosedWalk> shape;
        for (int t = min_cycle_length(k, l); t < min_cycle_length(k, l) + 3 * sh.tD && !shape;
             ++t) {
            if (t % sh.tD != r % sh.tD) continue;
            auto en = enum_hom_columns(build_cycle(k, l, t), K, node_budget / 4, 1);
            if (!en.columns.empty()) shape = en.columns.front().witness;
        }
        if (!shape)
            throw ParamsTooSmall("divisibility stock: no cycle of window residue " +
                                 std::to_string(r) + " found");
        sh.stock.emplace(r, detail::canonical_rotation(*shape));
    }

    // per-x cover tilings (fractional, exact)
    for (int x = 0; x < s; ++x) {
        auto Rx = remove_vertices(R, {x});
        auto to_orig = detail::deleted_to_original(s, {x});
        auto adh_x = adherence(Rx, l);
        long cap = (long)k * k;
        for (int i = 0; i < l; ++i) cap *= std::max(1, s - 1);
        auto v = frac_tiling(adh_x.adherence, l, cap, node_budget / 4);
        if (v.status != TilingStatus::Feasible)
            throw PreconditionFailed("dspa(R - " + std::to_string(x) + ") fails");
        FracTiling lifted;
        for (size_t j = 0; j < v.tiling.columns.size(); ++j) {
            ClosedWalk w = detail::canonical_rotation(
                detail::relabel_walk(v.tiling.columns[j].witness, to_orig));
            lifted.columns.push_back({walk_counts(w, s), w});
            lifted.weights.push_back(v.tiling.weights[j]);
        }
        sh.covers.emplace(x, std::move(lifted));
    }
    return sh;
}

/// First-window cluster patterns of every shape the pipeline may place.
inline std::set<std::vector<int>> shape_patterns(const TilingShapes& sh) {
    std::set<std::vector<int>> pats;
    auto first_window = [&](const ClosedWalk& w) {
        return std::vector<int>(w.slots.begin(), w.slots.begin() + w.k);
    };
    for (auto& c : sh.dcols) pats.insert(first_window(c.witness));
    for (auto& [r, w] : sh.stock) pats.insert(first_window(w));
    for (auto& [x, ft] : sh.covers)
        for (auto& c : ft.columns) pats.insert(first_window(c.witness));
    return pats;
}

struct AllocationLedger {
    int cycle_length_D = 0;
    long reservoir_copies = 0;
    long stock_copies = 0;
    long cover_copies = 0;
    long correction_placed = 0;
    long correction_dissolved = 0;
    long skeleton_order = 0;
    long spliced_cycles = 0;
    std::vector<std::pair<int, long>> cycles_by_length;
};

struct PerfectTilingResult {
    std::vector<CyclePath> cycles;  // vertex-disjoint, covering the blow-up
    AllocationLedger ledger;
};

/// Perfect integral l-cycle tiling of a balanced blow-up: reservoir copies of
/// the lattice cycle D, a divisibility stock, a balancing matching splitting
/// the bulk into per-x balanced sub-blow-ups tiled by floored fractional
/// tilings, and a final lattice correction that may dissolve reservoir
/// copies.  Explicit inequalities replace the asymptotic hierarchy; each
/// failure names its inequality.
inline PerfectTilingResult perfect_tiling_allocation(const BlowupSpec& spec, int l, int q = 2,
                                                     long node_budget = 2'000'000,
                                                     const TilingShapes* pre = nullptr) {
    if (auto err = spec.validate()) throw PreconditionFailed("blow-up spec: " + *err);
    if (spec.exceptional) throw PreconditionFailed("perfect tiling expects no exceptional cluster");
    const Hypergraph& R = spec.R;
    int k = R.k();
    int s = R.n();
    int step = k - l;
    if (spec.total() % step != 0)
        throw PreconditionFailed("total " + std::to_string(spec.total()) + " not divisible by k-l");

    TilingShapes local;
    if (!pre) {
        local = compute_tiling_shapes(R, l, node_budget);
        pre = &local;
    }
    const TilingShapes& sh = *pre;

    PerfectTilingResult result;
    result.ledger.cycle_length_D = sh.vD;
    detail::ClusterPools pools(spec.clusters);

    // reservoir: q rounds over the generating shapes; the first round is
    // mandatory, later rounds are taken while capacity admits them
    std::vector<CyclePath> reservoir_cycles;
    std::vector<size_t> reservoir_shape;  // index into sh.dcols
    std::vector<bool> reservoir_alive;
    for (int round = 0; round < q; ++round) {
        for (size_t j : sh.gen) {
            const auto& c = sh.dcols[j];
            if (!detail::pools_can_host(pools, c.counts)) {
                if (round == 0)
                    throw ParamsTooSmall("reservoir: first copy of a generator does not fit");
                continue;
            }
            reservoir_cycles.push_back(detail::place_cycle_copy(c.witness, pools, "reservoir"));
            reservoir_shape.push_back(j);
            reservoir_alive.push_back(true);
            ++result.ledger.reservoir_copies;
        }
    }

    // divisibility stock
    std::map<int, std::pair<ClosedWalk, CyclePath>> stock;
    for (auto& [r, shape] : sh.stock) {
        if (!detail::pools_can_host(pools, walk_counts(shape, s)))
            throw ParamsTooSmall("divisibility stock exceeds cluster capacity");
        auto placed = detail::place_cycle_copy(shape, pools, "divisibility stock");
        stock.emplace(r, std::make_pair(shape, placed));
        ++result.ledger.stock_copies;
    }

    // trim X so the remainder splits into transversal (s-1)-sets
    std::vector<std::pair<int, int>> X;  // (cluster, vertex)
    {
        long rem = pools.total();
        long excess = rem % (s - 1);
        for (long i = 0; i < excess; ++i) {
            int largest = 0;
            for (int x = 1; x < s; ++x)
                if (pools.size(x) > pools.size(largest)) largest = x;
            X.push_back({largest, pools.take(largest, "trim")});
        }
    }

    // balancing matching over the complete (s-1)-graph on the clusters
    auto matching = balancing_matching(pools.avail);
    std::map<int, int> cluster_of;
    for (int x = 0; x < s; ++x)
        for (int v : spec.clusters[x]) cluster_of[v] = x;

    std::vector<std::vector<std::vector<int>>> Sx(s, std::vector<std::vector<int>>(s));
    for (size_t e = 0; e < matching.edges.size(); ++e) {
        int x = matching.missing[e];
        for (int v : matching.edges[e]) Sx[x][cluster_of[v]].push_back(v);
    }

    // floored per-x covers
    std::vector<int> leftover_counts(s, 0);
    std::vector<std::vector<int>> leftover_pool(s);
    auto stash_leftover = [&](int cluster, int v) {
        leftover_pool[cluster].push_back(v);
        ++leftover_counts[cluster];
    };
    for (auto& [cl, v] : X) stash_leftover(cl, v);
    std::vector<CyclePath> placed_cycles;
    for (int x = 0; x < s; ++x) {
        long m_x = 0;
        for (int y = 0; y < s; ++y) m_x = std::max(m_x, (long)Sx[x][y].size());
        if (m_x == 0) continue;
        detail::ClusterPools xp(Sx[x]);
        const auto& ft = sh.covers.at(x);
        for (size_t j = 0; j < ft.columns.size(); ++j) {
            Rat W = ft.weights[j] * m_x;
            long copies = (long)rat_floor(W);
            for (long i = 0; i < copies; ++i) {
                placed_cycles.push_back(detail::place_cycle_copy(ft.columns[j].witness, xp, "cover"));
                ++result.ledger.cover_copies;
            }
        }
        for (int y = 0; y < s; ++y)
            for (int u : xp.avail[y]) stash_leftover(y, u);
    }

    // leftover divisibility: dissolve one stocked cycle when needed
    long leftover_total = 0;
    for (int x = 0; x < s; ++x) leftover_total += leftover_counts[x];
    if (leftover_total % step != 0) throw std::logic_error("leftover breaks k-l divisibility");
    int rho = (int)((leftover_total / step) % sh.tD);
    if (rho != 0) {
        int need = (sh.tD - rho) % sh.tD;
        auto it = stock.find(need);
        if (it == stock.end()) throw ParamsTooSmall("divisibility stock missing residue");
        const auto& [shape, placed] = it->second;
        for (size_t i = 0; i < placed.verts.size(); ++i)
            stash_leftover(shape.slots[i], placed.verts[i]);
        stock.erase(it);
        --result.ledger.stock_copies;
    }

    // correction: decompose the leftover over the D-columns, dissolving
    // reservoir copies as extra mass when the direct decomposition fails
    long btotal = 0;
    for (long c : leftover_counts) btotal += c;
    if (btotal % sh.vD != 0) throw std::logic_error("correction target not divisible by v(D)");
    if (btotal > 0) {
        std::vector<std::vector<int>> colvecs;
        for (auto& c : sh.dcols) colvecs.push_back(c.counts);
        std::vector<long> b(leftover_counts.begin(), leftover_counts.end());
        std::optional<std::vector<long>> direct = detail::nonneg_decompose(colvecs, b);
        std::vector<size_t> dissolved;
        if (!direct) {
            // grow the target by dissolving reservoir copies, smallest subsets first
            size_t rn = reservoir_cycles.size();
            for (size_t subset = 1; subset < (1ULL << rn) && !direct; ++subset) {
                std::vector<long> nb(b);
                std::vector<size_t> ds;
                for (size_t i = 0; i < rn; ++i) {
                    if (!(subset & (1ULL << i))) continue;
                    ds.push_back(i);
                    const auto& counts = sh.dcols[reservoir_shape[i]].counts;
                    for (int x = 0; x < s; ++x) nb[x] += counts[x];
                }
                direct = detail::nonneg_decompose(colvecs, nb);
                if (direct) dissolved = ds;
            }
            if (!direct)
                throw ParamsTooSmall("correction: leftover not decomposable within reservoir stock q=" +
                                     std::to_string(q));
        }
        detail::ClusterPools lp(leftover_pool);
        for (size_t i : dissolved) {
            reservoir_alive[i] = false;
            const auto& pc = reservoir_cycles[i];
            const auto& w = sh.dcols[reservoir_shape[i]].witness;
            for (size_t p = 0; p < pc.verts.size(); ++p) lp.give(w.slots[p], pc.verts[p]);
            ++result.ledger.correction_dissolved;
        }
        for (size_t j = 0; j < colvecs.size(); ++j)
            for (long i = 0; i < (*direct)[j]; ++i) {
                placed_cycles.push_back(detail::place_cycle_copy(sh.dcols[j].witness, lp, "correction"));
                ++result.ledger.correction_placed;
            }
        for (int x = 0; x < s; ++x)
            if (lp.size(x) != 0) throw std::logic_error("correction left vertices uncovered");
    }

    for (size_t rc = 0; rc < reservoir_cycles.size(); ++rc)
        if (reservoir_alive[rc]) result.cycles.push_back(reservoir_cycles[rc]);
    for (auto& [r, pair] : stock) result.cycles.push_back(pair.second);
    for (auto& c : placed_cycles) result.cycles.push_back(c);

    std::map<int, long> by_len;
    for (auto& c : result.cycles) ++by_len[c.order()];
    for (auto& [len, cnt] : by_len) result.ledger.cycles_by_length.push_back({len, cnt});
    return result;
}

/// Independent validator: disjoint cycles exactly covering the blow-up, every
/// window a transversal of a k-edge of R.
inline std::optional<std::string> validate_perfect_tiling(const BlowupSpec& spec, int l,
                                                          const std::vector<CyclePath>& cycles) {
    std::map<int, int> cluster_of;
    for (int x = 0; x < (int)spec.clusters.size(); ++x)
        for (int v : spec.clusters[x]) cluster_of[v] = x;
    std::set<int> covered;
    for (auto& c : cycles) {
        if (auto err = validate_cyclepath(c)) return "cycle: " + *err;
        if (c.k != spec.R.k() || c.l != l) return "cycle with wrong parameters";
        for (int v : c.verts)
            if (!covered.insert(v).second) return "vertex covered twice";
        for (auto& w : c.windows()) {
            Edge pattern;
            for (int v : w) {
                auto it = cluster_of.find(v);
                if (it == cluster_of.end()) return "vertex outside the blow-up";
                pattern.push_back(it->second);
            }
            std::sort(pattern.begin(), pattern.end());
            if (std::adjacent_find(pattern.begin(), pattern.end()) != pattern.end())
                return "window revisits a cluster";
            if (!spec.R.has_edge(pattern)) return "window pattern is not a reduced edge";
        }
    }
    if ((int)covered.size() != spec.total()) return "tiling does not cover every vertex";
    return std::nullopt;
}

/// Splices a cycle into a path at a window site realising the same oriented
/// cluster/vertex pattern: the site window splits after its first k-l slots
/// and the cycle, re-rooted behind its first window, fills the gap.  The
/// caller supplies the edge membership test for the mixed boundary windows.
inline CyclePath splice_cycle(const CyclePath& P, const CyclePath& C, int site_window,
                              const std::function<bool(Edge)>& edge_ok) {
    if (P.kind != CyclePath::Kind::Path || C.kind != CyclePath::Kind::Cycle)
        throw PreconditionError("splice needs a path and a cycle");
    if (P.k != C.k || P.l != C.l) throw PreconditionError("parameter mismatch");
    int k = P.k, l = P.l, step = k - l;
    int t = P.edge_count();
    if (site_window < 0 || site_window >= t) throw PreconditionError("no such site window");
    int ws = site_window * step;
    int r = C.order();
    CyclePath out;
    out.k = k;
    out.l = l;
    out.kind = CyclePath::Kind::Path;
    out.verts.assign(P.verts.begin(), P.verts.begin() + ws + step);
    // go once around C starting behind its first window
    for (int i = 0; i < r; ++i) out.verts.push_back(C.verts[(step + i) % r]);
    out.verts.insert(out.verts.end(), P.verts.begin() + ws + step, P.verts.end());
    if (auto err = validate_cyclepath(out, nullptr, false))
        throw PreconditionError("splice produced an invalid path: " + *err);
    for (auto& w : out.windows()) {
        Edge e(w);
        std::sort(e.begin(), e.end());
        if (!edge_ok(e)) throw PreconditionError("splice window is not an edge at the site");
    }
    return out;
}

struct HamiltonPathResult {
    CyclePath path;
    AllocationLedger ledger;
};

/// Hamilton (f1, f2, l)-path of a quasi-balanced blow-up: a skeleton path
/// covering one site per shape pattern of the tiling pool, the exceptional
/// vertex on a short detour, and a perfect tiling of the rest spliced in.
inline HamiltonPathResult hamilton_path_allocation(const BlowupSpec& spec, int l,
                                                   const std::vector<int>& f1,
                                                   const std::vector<int>& f2, int q = 2,
                                                   long node_budget = 2'000'000) {
    if (auto err = spec.validate()) throw PreconditionFailed("blow-up spec: " + *err);
    const Hypergraph& R = spec.R;
    int k = R.k();
    int s = R.n();
    int step = k - l;
    if (k % step == 0) throw PreconditionFailed("needs k-l not dividing k");
    int N = spec.total();
    if ((N - k) % step != 0)
        throw PreconditionFailed("total " + std::to_string(N) + " not congruent to k mod k-l");
    if ((int)f1.size() != l || (int)f2.size() != l)
        throw PreconditionFailed("endtuples must have l vertices");
    {
        std::vector<int> both(f1);
        both.insert(both.end(), f2.begin(), f2.end());
        std::sort(both.begin(), both.end());
        if (std::adjacent_find(both.begin(), both.end()) != both.end())
            throw PreconditionFailed("endtuples must be vertex-disjoint");
    }
    std::map<int, int> cluster_of;
    for (int x = 0; x < s; ++x)
        for (int v : spec.clusters[x]) cluster_of[v] = x;
    auto pattern_of = [&](const std::vector<int>& verts) {
        std::vector<int> p;
        for (int v : verts) {
            auto it = cluster_of.find(v);
            if (it == cluster_of.end()) throw PreconditionFailed("endtuple vertex outside blow-up");
            p.push_back(it->second);
        }
        return p;
    };
    int xstar = spec.exceptional ? *spec.exceptional : -1;
    for (auto* f : {&f1, &f2}) {
        for (int v : *f)
            if (xstar >= 0 && cluster_of.at(v) == xstar)
                throw PreconditionFailed("endtuple meets the exceptional cluster");
        Edge pat = pattern_of(*f);
        std::sort(pat.begin(), pat.end());
        if (std::adjacent_find(pat.begin(), pat.end()) != pat.end() || !R.has_edge(pat))
            throw PreconditionFailed("endtuple pattern is not an l-edge of R");
    }

    auto adh_full = adherence(R, l);
    if (!adh_full.dcon) throw PreconditionFailed("dcon(R) fails");

    // inner reduced graph R - x*, relabelled to 0..s-2
    std::vector<int> keep;
    for (int x = 0; x < s; ++x)
        if (x != xstar) keep.push_back(x);
    std::vector<int> inner_of(s, -1);
    for (size_t i = 0; i < keep.size(); ++i) inner_of[keep[i]] = (int)i;
    Hypergraph Rin = xstar >= 0 ? remove_vertices(R, {xstar}) : R;
    auto adh_in = adherence(Rin, l);
    if (!adh_in.dcon) throw PreconditionFailed("dcon(R - x*) fails");

    auto shapes = compute_tiling_shapes(Rin, l, node_budget);
    auto inner_patterns = shape_patterns(shapes);

    // K*: usable k-edges avoiding x*, original labels (for skeleton walks)
    std::vector<Edge> kstar_edges;
    for (auto& e : adh_in.adherence.edges()) {
        Edge o;
        for (int v : e) o.push_back(keep[v]);
        std::sort(o.begin(), o.end());
        kstar_edges.push_back(o);
    }
    Hypergraph Kstar = Hypergraph::uniform(s, k, kstar_edges);
    WalkGraph wg(Kstar, l);

    HamiltonPathResult result;
    detail::ClusterPools pools(spec.clusters);
    for (int i = 0; i < l; ++i) pools.reserve_specific(cluster_of.at(f1[i]), f1[i], "endtuple f1");
    for (int i = 0; i < l; ++i) pools.reserve_specific(cluster_of.at(f2[i]), f2[i], "endtuple f2");
    int vstar = xstar >= 0 ? spec.clusters[xstar][0] : -1;
    if (xstar >= 0) pools.reserve_specific(xstar, vstar, "exceptional vertex");

    // ---- reduced skeleton: one arc per shape pattern, plus connectors ----
    WalkState start = pattern_of(f1);
    WalkState goal = pattern_of(f2);
    if (!wg.supported(start) || !wg.supported(goal))
        throw PreconditionFailed("endtuple pattern unsupported in adh(R - x*)");
    // pattern arcs in ORIGINAL labels
    std::set<std::pair<WalkState, std::vector<int>>> uncovered;
    for (auto& pat : inner_patterns) {
        std::vector<int> orig(pat);
        for (auto& c : orig) c = keep[c];
        uncovered.insert({WalkState(orig.begin(), orig.begin() + l),
                          std::vector<int>(orig.begin() + l, orig.end())});
    }
    std::vector<int> reduced_slots(start.begin(), start.end());
    std::vector<int> forced_host(f1);
    WalkState cur = start;
    auto append_transition = [&](const WalkState& next, const std::vector<int>& appended) {
        for (int c : appended) {
            reduced_slots.push_back(c);
            forced_host.push_back(-1);
        }
        cur = next;
    };
    auto next_state_of = [&](const WalkState& st, const std::vector<int>& appended) {
        std::vector<int> window(st);
        window.insert(window.end(), appended.begin(), appended.end());
        return WalkState(window.end() - l, window.end());
    };
    auto goto_state = [&](const WalkState& target, const char* stage) {
        auto path = wg.shortest_path(cur, target, 1 << 20);
        if (!path) throw PreconditionFailed(std::string(stage) + ": state unreachable in adh(R - x*)");
        for (auto& tr : *path) {
            uncovered.erase({cur, tr.appended});
            append_transition(tr.next, tr.appended);
        }
    };
    while (!uncovered.empty()) {
        bool advanced = false;
        for (auto it = uncovered.begin(); it != uncovered.end(); ++it) {
            if (it->first == cur) {
                auto appended = it->second;
                uncovered.erase(it);
                append_transition(next_state_of(cur, appended), appended);
                advanced = true;
                break;
            }
        }
        if (advanced) continue;
        goto_state(uncovered.begin()->first, "skeleton connector");
    }
    if (xstar >= 0) {
        auto Pstar = path_through_vertex(adh_full.adherence, l, xstar, node_budget);
        if (!Pstar) throw PreconditionFailed("no short path through the exceptional cluster");
        WalkState pstart(Pstar->slots.begin(), Pstar->slots.begin() + l);
        goto_state(pstart, "exceptional connector");
        int m = (int)Pstar->slots.size();
        for (int i = l; i < m; ++i) {
            reduced_slots.push_back(Pstar->slots[i]);
            forced_host.push_back(Pstar->slots[i] == xstar ? vstar : -1);
        }
        cur.assign(Pstar->slots.end() - l, Pstar->slots.end());
    }
    goto_state(goal, "final connector");
    for (int i = 0; i < l; ++i) forced_host[forced_host.size() - l + i] = f2[i];

    CyclePath skeleton;
    skeleton.k = k;
    skeleton.l = l;
    skeleton.kind = CyclePath::Kind::Path;
    for (size_t i = 0; i < reduced_slots.size(); ++i) {
        int host = forced_host[i] >= 0 ? forced_host[i]
                                       : pools.take(reduced_slots[i], "skeleton lift");
        skeleton.verts.push_back(host);
    }
    result.ledger.skeleton_order = skeleton.order();
    if (auto err = validate_cyclepath(skeleton, nullptr, false))
        throw std::logic_error("skeleton path invalid: " + *err);

    // ---- perfect tiling of the remainder ----
    if (xstar >= 0 && pools.size(xstar) != 0)
        throw std::logic_error("exceptional cluster not fully consumed");
    long rem = pools.total();
    if (rem % step != 0) throw std::logic_error("skeleton left a non-divisible remainder");
    std::vector<CyclePath> tiling_cycles;
    if (rem > 0) {
        BlowupSpec inner;
        inner.R = Rin;
        for (int x : keep) inner.clusters.push_back(pools.avail[x]);
        auto tiling = perfect_tiling_allocation(inner, l, q, node_budget, &shapes);
        auto skel_order = result.ledger.skeleton_order;
        result.ledger = tiling.ledger;
        result.ledger.skeleton_order = skel_order;
        // relabel cycle verts: they are host ids already (clusters carried them)
        tiling_cycles = std::move(tiling.cycles);
    }

    // ---- splice the tiling cycles into the skeleton ----
    CyclePath path = skeleton;
    auto membership = [&](const Edge& e) {
        Edge pat;
        for (int v : e) pat.push_back(cluster_of.at(v));
        std::sort(pat.begin(), pat.end());
        if (std::adjacent_find(pat.begin(), pat.end()) != pat.end()) return false;
        return R.has_edge(pat);
    };
    for (auto& C : tiling_cycles) {
        std::vector<int> want;
        for (int i = 0; i < k; ++i) want.push_back(cluster_of.at(C.verts[i]));
        int site = -1;
        int tw = path.edge_count();
        for (int w = 0; w < tw && site < 0; ++w) {
            bool match = true;
            for (int i = 0; i < k; ++i)
                if (cluster_of.at(path.verts[w * step + i]) != want[i]) {
                    match = false;
                    break;
                }
            if (match) site = w;
        }
        if (site < 0) throw std::logic_error("no splice site for a tiling cycle pattern");
        path = splice_cycle(path, C, site, membership);
        ++result.ledger.spliced_cycles;
    }
    if (path.order() != N) throw std::logic_error("allocation missed vertices");
    result.path = std::move(path);
    return result;
}

/// Independent validator for Hamilton (f1, f2, l)-paths of a blow-up.
inline std::optional<std::string> validate_hamilton_path(const BlowupSpec& spec, int l,
                                                         const std::vector<int>& f1,
                                                         const std::vector<int>& f2,
                                                         const CyclePath& path) {
    if (path.kind != CyclePath::Kind::Path) return "not a path";
    if (auto err = validate_cyclepath(path, nullptr, false)) return *err;
    if (path.order() != spec.total()) return "path does not span the blow-up";
    if (path.first_tuple() != f1) return "first endtuple mismatch";
    if (path.last_tuple() != f2) return "last endtuple mismatch";
    std::map<int, int> cluster_of;
    for (int x = 0; x < (int)spec.clusters.size(); ++x)
        for (int v : spec.clusters[x]) cluster_of[v] = x;
    std::set<int> seen;
    for (int v : path.verts) {
        if (!cluster_of.count(v)) return "vertex outside the blow-up";
        if (!seen.insert(v).second) return "vertex repeated";
    }
    for (auto& w : path.windows()) {
        Edge pat;
        for (int v : w) pat.push_back(cluster_of[v]);
        std::sort(pat.begin(), pat.end());
        if (std::adjacent_find(pat.begin(), pat.end()) != pat.end())
            return "window revisits a cluster";
        if (!spec.R.has_edge(pat)) return "window pattern is not a reduced edge";
    }
    return std::nullopt;
}

struct ChainResult {
    CyclePath cycle;
    AllocationLedger ledger;
    std::vector<int> trimmed_per_family;  // vertices moved out of each W family
};

/// Hamilton l-cycle of a covered host graph: divisibility trimming around the
/// shape cycle, endtuple selection in the hit parts, Hamilton paths through
/// every W and V blow-up, concatenated cyclically.
inline ChainResult assemble_chain(const Hypergraph& G, const CoverSpec& cover, int l, int q = 2,
                                  long node_budget = 2'000'000) {
    if (auto err = validate_cover(G, cover)) throw PreconditionFailed("CoverInvalid: " + *err);
    int k = G.k();
    int step = k - l;
    if (G.n() % step != 0) throw PreconditionFailed("host order not divisible by k-l");
    int b = cover.b;
    ChainResult result;
    result.trimmed_per_family.assign(b, 0);

    auto vfam = cover.vfam;
    auto wfam = cover.wfam;
    auto wsum = [&](int e) {
        long t = 0;
        for (auto& c : wfam[e].clusters) t += (long)c.size();
        return t;
    };
    auto vsum = [&](int i) {
        long t = 0;
        for (auto& c : vfam[i].clusters) t += (long)c.size();
        return t;
    };
    // (a) |W^e| = k and (b) |V^i| - |W^(i-1,i)| - |W^(i,i+1)| = -l, mod k-l;
    // enforced by moving vertices out of hit parts while walking around the
    // shape cycle (the moved vertices stay in their V parts)
    auto move_out_of_hit = [&](int e, int side, int count) {
        for (int c = 0; c < count; ++c) {
            bool moved = false;
            for (auto& [wp, vp] : cover.hits[e][side]) {
                auto& part = wfam[e].clusters[wp];
                if ((int)part.size() > 1) {
                    part.pop_back();
                    moved = true;
                    ++result.trimmed_per_family[e];
                    break;
                }
            }
            if (!moved) throw ParamsTooSmall("trimming: hit parts too small to trim");
        }
    };
    for (int i = 0; i < b; ++i) {
        int e_out = i;
        long expr = vsum(i) - wsum((i - 1 + b) % b) - wsum(e_out);
        int need = (int)((((-l - expr) % step) + step) % step);
        move_out_of_hit(e_out, 0, need);
        long wexpr = wsum(e_out);
        int need_w = (int)((((k - wexpr) % step) + step) % step);
        if (i < b - 1) move_out_of_hit(e_out, 1, need_w);
        else if (need_w != 0)
            throw std::logic_error("final W family out of residue despite divisible total");
    }
    for (int e = 0; e < b; ++e)
        if (result.trimmed_per_family[e] > 2 * step - 2)
            throw std::logic_error("trimming exceeded 2(k-l)-2 vertices in one family");

    // endtuples: e_i from the incoming family's hit parts of V^i, f_i from the
    // outgoing family's; disjoint because the W families are disjoint
    std::vector<std::vector<int>> etup(b), ftup(b);
    for (int i = 0; i < b; ++i) {
        auto pick = [&](int e, int side) {
            std::vector<int> tup;
            for (int j = 0; j < l; ++j) {
                auto& [wp, vp] = cover.hits[e][side][j];
                tup.push_back(wfam[e].clusters[wp].front());
            }
            return tup;
        };
        etup[i] = pick((i - 1 + b) % b, 1);
        ftup[i] = pick(i, 0);
    }

    std::vector<CyclePath> wpaths(b);
    for (int e = 0; e < b; ++e) {
        BlowupSpec spec = wfam[e];
        spec.m = 0;
        auto r = hamilton_path_allocation(spec, l, ftup[e], etup[(e + 1) % b], q, node_budget);
        if (auto err = validate_hamilton_path(spec, l, ftup[e], etup[(e + 1) % b], r.path))
            throw std::logic_error("W path failed validation: " + *err);
        wpaths[e] = r.path;
        result.ledger.spliced_cycles += r.ledger.spliced_cycles;
    }
    std::vector<CyclePath> vpaths(b);
    for (int i = 0; i < b; ++i) {
        std::set<int> used;
        for (int e : {(i - 1 + b) % b, i})
            for (int v : wpaths[e].verts) used.insert(v);
        for (int v : etup[i]) used.erase(v);
        for (int v : ftup[i]) used.erase(v);
        BlowupSpec spec = vfam[i];
        spec.m = 0;
        for (auto& c : spec.clusters) {
            std::vector<int> keep;
            for (int v : c)
                if (!used.count(v)) keep.push_back(v);
            c = keep;
        }
        auto r = hamilton_path_allocation(spec, l, etup[i], ftup[i], q, node_budget);
        if (auto err = validate_hamilton_path(spec, l, etup[i], ftup[i], r.path))
            throw std::logic_error("V path failed validation: " + *err);
        vpaths[i] = r.path;
        result.ledger.spliced_cycles += r.ledger.spliced_cycles;
    }

    // cyclic concatenation with overlapping endtuples
    std::vector<int> verts;
    for (int i = 0; i < b; ++i) {
        const auto& pv = vpaths[i].verts;
        verts.insert(verts.end(), pv.begin() + (i == 0 ? 0 : l), pv.end());
        const auto& pw = wpaths[i].verts;
        verts.insert(verts.end(), pw.begin() + l, pw.end());
    }
    verts.erase(verts.end() - l, verts.end());
    result.cycle.k = k;
    result.cycle.l = l;
    result.cycle.kind = CyclePath::Kind::Cycle;
    result.cycle.verts = std::move(verts);
    if (auto err = validate_cyclepath(result.cycle, &G))
        throw std::logic_error("assembled chain invalid: " + *err);
    if (result.cycle.order() != G.n()) throw std::logic_error("assembled chain misses vertices");
    return result;
}

}  // namespace loomlab

#endif
