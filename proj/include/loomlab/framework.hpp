#ifndef LOOMLAB_FRAMEWORK_HPP
#define LOOMLAB_FRAMEWORK_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "loomlab/colouring.hpp"
#include "loomlab/components.hpp"
#include "loomlab/cyclepath.hpp"
#include "loomlab/tiling.hpp"

namespace loomlab {

struct ThresholdTable {
    int k = 0, l = 0;
    bool applicable = false;  // false when k-l divides k
    Rat lambda;
    Rat delta_codegree;
    Rat delta_k_minus_2;
};

/// Exact threshold constants: lambda(k,l) for codegrees and the (k-2)-degree
/// value 1-(1-lambda)^2, maxed with 1/4 when l = k-2 and k is odd.
inline ThresholdTable thresholds(int k, int l) {
    if (l < 1 || l > k - 2) throw PreconditionError("thresholds needs 1 <= l <= k-2");
    ThresholdTable t;
    t.k = k;
    t.l = l;
    t.applicable = k % (k - l) != 0;
    if (!t.applicable) return t;
    t.lambda = lambda_constant(k, l);
    t.delta_codegree = t.lambda;
    Rat base = 1 - (1 - t.lambda) * (1 - t.lambda);
    if (l == k - 2 && k % 2 == 1)
        t.delta_k_minus_2 = std::max(Rat(1, 4), base);
    else
        t.delta_k_minus_2 = base;
    return t;
}

using Predicate = std::function<bool(const Hypergraph&)>;

/// Named predicate registry.  Families: deg (minimum d-degree at ratio
/// delta), dcon/dspa on bounded graphs, nonempty, always, conjunction, and
/// the Del_q closure wrapper.
inline Predicate make_deg_predicate(int d, const Rat& delta) {
    return [d, delta](const Hypergraph& G) {
        const Hypergraph* U = &G;
        Hypergraph lvl;
        if (G.is_bounded()) {
            lvl = G.level(G.k());
            U = &lvl;
        }
        if (U->n() < U->k() || d > U->k() - 1) return false;
        return min_degree(*U, d).ratio >= delta;
    };
}

inline Predicate make_dcon_predicate(int l) {
    return [l](const Hypergraph& G) { return adherence(G, l).dcon; };
}

inline Predicate make_dspa_predicate(int l, long node_budget = 200'000) {
    return [l, node_budget](const Hypergraph& G) {
        auto adh = adherence(G, l).adherence;
        auto v = frac_tiling(adh, l, 0, node_budget);
        return v.status == TilingStatus::Feasible;
    };
}

inline Predicate make_nonempty_predicate() {
    return [](const Hypergraph& G) { return G.edge_count() > 0; };
}

inline Predicate make_always_predicate() {
    return [](const Hypergraph&) { return true; };
}

inline Predicate make_conj_predicate(std::vector<Predicate> ps) {
    return [ps = std::move(ps)](const Hypergraph& G) {
        for (auto& p : ps)
            if (!p(G)) return false;
        return true;
    };
}

inline Predicate make_del_predicate(Predicate inner, int q) {
    return [inner = std::move(inner), q](const Hypergraph& G) {
        for (int j = 0; j <= q; ++j) {
            bool ok = visit_subsets(G.n(), j, [&](const std::vector<int>& X) {
                return inner(remove_vertices(G, X));
            });
            if (!ok) return false;
        }
        return true;
    };
}

struct PropertyGraphReport {
    Hypergraph graph;  // s-uniform property graph
    bool exact = true;
    long samples = 0;  // when sampled
};

/// Property s-graph: an edge per s-set whose induced subgraph satisfies the
/// predicate.  Exhaustive when C(n,s) is within the cap, otherwise a seeded
/// uniform sample labelled Estimated (exact=false).
inline PropertyGraphReport property_graph(const Hypergraph& G, const Predicate& P, int s,
                                          long exhaustive_cap = 1'000'000,
                                          long sample_count = 20'000, uint64_t seed = 1) {
    if (s > G.n()) throw PreconditionError("property_graph needs s <= n");
    PropertyGraphReport rep;
    std::vector<Edge> es;
    if (binom(G.n(), s) <= exhaustive_cap) {
        visit_subsets(G.n(), s, [&](const std::vector<int>& S) {
            if (P(induced(G, S))) es.push_back(S);
            return true;
        });
        rep.exact = true;
    } else {
        std::mt19937_64 rng(seed);
        std::set<Edge> seen;
        for (long i = 0; i < sample_count; ++i) {
            std::vector<int> pool(G.n());
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
            Edge S(pool.begin(), pool.begin() + s);
            std::sort(S.begin(), S.end());
            if (!seen.insert(S).second) continue;
            if (P(induced(G, S))) es.push_back(S);
        }
        rep.exact = false;
        rep.samples = sample_count;
    }
    rep.graph = Hypergraph::uniform(G.n(), s, std::move(es));
    return rep;
}

struct RobustnessReport {
    DegreeReport degree;
    Rat bar;         // delta * binom(n-r, s-r)
    bool pass = false;
};

/// Minimum r-degree of a property s-graph against the robustness bar
/// delta * binom(n-r, s-r); delta defaults to 1 - 1/s^2.
inline RobustnessReport robustness_degree(const Hypergraph& P, int r,
                                          std::optional<Rat> delta = std::nullopt) {
    if (r >= P.k()) throw PreconditionError("robustness needs r < s");
    RobustnessReport rep;
    rep.degree = min_degree(P, r);
    Rat d = delta ? *delta : Rat(1) - Rat(1, (long)P.k() * P.k());
    rep.bar = d;
    rep.pass = rep.degree.ratio >= d;
    return rep;
}

struct DelQReport {
    bool pass = true;
    std::vector<int> witness;  // a deleted set X with G - X outside the property
};

/// Exhaustive Del_q membership: G - X in P for every |X| <= q.
inline DelQReport del_q_closure(const Hypergraph& G, const Predicate& P, int q) {
    if (q >= G.n()) throw PreconditionError("del_q_closure needs q < n");
    DelQReport rep;
    for (int j = 0; j <= q && rep.pass; ++j) {
        visit_subsets(G.n(), j, [&](const std::vector<int>& X) {
            if (!P(remove_vertices(G, X))) {
                rep.pass = false;
                rep.witness = X;
                return false;
            }
            return true;
        });
    }
    return rep;
}

/// Space barrier SB(k, l, n, a): all k-sets meeting the first a vertices.
struct SpaceBarrier {
    Hypergraph graph;
    int a = 0;
    Rat delta_codegree_ratio;   // min (k-1)-degree ratio
    int cycle_edge_cap = 0;     // max edges of a Hamilton l-cycle meeting A, per vertex
    long hamilton_edges = 0;    // edges any Hamilton l-cycle must have
};

inline SpaceBarrier space_barrier(int k, int l, int n, int a) {
    if (a < 1 || a > n - k + 1) throw PreconditionError("need 1 <= a <= n-k+1");
    std::vector<Edge> es;
    visit_subsets(n, k, [&](const std::vector<int>& s) {
        if (s.front() < a) es.push_back(s);
        return true;
    });
    SpaceBarrier sb;
    sb.graph = Hypergraph::uniform(n, k, std::move(es));
    sb.a = a;
    sb.delta_codegree_ratio = sb.graph.edge_count() == 0 ? Rat(0) : min_degree(sb.graph, k - 1).ratio;
    sb.cycle_edge_cap = (k + (k - l) - 1) / (k - l);
    sb.hamilton_edges = n % (k - l) == 0 ? n / (k - l) : 0;
    return sb;
}

/// Exhaustive Hamilton l-cycle / l-path search (slot backtracking with
/// subset-of-some-edge pruning on partial windows).  Vertices distinct and
/// covering; every window a host edge.  None only on full exhaustion.
class BruteHamilton {
public:
    BruteHamilton(const Hypergraph& G, int l, int cap = 24) : G_(&G), l_(l) {
        if (G.is_bounded()) throw PreconditionError("brute_hamilton expects a uniform graph");
        if (G.n() > cap)
            throw BudgetError("brute_hamilton: n=" + std::to_string(G.n()) + " exceeds cap " +
                              std::to_string(cap));
    }

    std::optional<CyclePath> cycle() {
        int k = G_->k(), n = G_->n(), step = k - l_;
        if (n % step != 0) throw PreconditionError("cycle needs k-l dividing n");
        if (n < k) return std::nullopt;
        init(n, /*cyclic=*/true);
        slots_.assign(n, -1);
        used_.assign(n, false);
        if (!dfs(0, /*cyclic=*/true)) return std::nullopt;
        CyclePath cp{k, l_, CyclePath::Kind::Cycle, slots_};
        if (auto err = validate_cyclepath(cp, G_))
            throw std::logic_error("brute_hamilton cycle invalid: " + *err);
        return cp;
    }

    std::optional<CyclePath> path(const std::vector<int>& f1, const std::vector<int>& f2) {
        int k = G_->k(), n = G_->n(), step = k - l_;
        if ((n - k) % step != 0 || n < k)
            throw PreconditionError("path needs n congruent to k mod k-l");
        if ((int)f1.size() != l_ || (int)f2.size() != l_)
            throw PreconditionError("endtuples must have l vertices");
        init(n, /*cyclic=*/false);
        slots_.assign(n, -1);
        used_.assign(n, false);
        for (int i = 0; i < l_; ++i) {
            if (used_[f1[i]]) throw PreconditionError("endtuples overlap");
            slots_[i] = f1[i];
            used_[f1[i]] = true;
        }
        for (int i = 0; i < l_; ++i) {
            if (used_[f2[i]]) throw PreconditionError("endtuples overlap");
            slots_[n - l_ + i] = f2[i];
            used_[f2[i]] = true;
        }
        if (!dfs(0, /*cyclic=*/false)) return std::nullopt;
        CyclePath cp{k, l_, CyclePath::Kind::Path, slots_};
        if (auto err = validate_cyclepath(cp, G_, /*strict_path_ends=*/false))
            throw std::logic_error("brute_hamilton path invalid: " + *err);
        return cp;
    }

private:
    void init(int n, bool cyclic) {
        int k = G_->k(), step = k - l_;
        windows_.clear();
        int t = cyclic ? n / step : (n - k) / step + 1;
        for (int w = 0; w < t; ++w) {
            std::vector<int> sl(k);
            for (int j = 0; j < k; ++j) sl[j] = cyclic ? (w * step + j) % n : w * step + j;
            windows_.push_back(sl);
        }
        windows_of_slot_.assign(n, {});
        for (int w = 0; w < (int)windows_.size(); ++w)
            for (int sl : windows_[w]) windows_of_slot_[sl].push_back(w);
    }

    bool window_viable(int w) const {
        Edge partial;
        bool complete = true;
        for (int sl : windows_[w]) {
            if (slots_[sl] < 0) complete = false;
            else partial.push_back(slots_[sl]);
        }
        std::sort(partial.begin(), partial.end());
        if (std::adjacent_find(partial.begin(), partial.end()) != partial.end()) return false;
        if (complete) return G_->has_edge(partial);
        return !G_->edges_containing(partial).empty();
    }

    bool dfs(int pos, bool cyclic) {
        int n = G_->n();
        while (pos < n && slots_[pos] >= 0) ++pos;
        if (pos == n) return true;
        int step = G_->k() - l_;
        for (int v = 0; v < n; ++v) {
            if (used_[v]) continue;
            // cycle canonical form: some rotation puts vertex 0 in slots [0, step)
            if (cyclic && !used_[0] && pos == step - 1 && v != 0) continue;
            slots_[pos] = v;
            used_[v] = true;
            bool ok = true;
            for (int w : windows_of_slot_[pos])
                if (!window_viable(w)) {
                    ok = false;
                    break;
                }
            if (ok && dfs(pos + 1, cyclic)) return true;
            slots_[pos] = -1;
            used_[v] = false;
        }
        return false;
    }

    const Hypergraph* G_;
    int l_;
    std::vector<int> slots_;
    std::vector<bool> used_;
    std::vector<std::vector<int>> windows_;
    std::vector<std::vector<int>> windows_of_slot_;
};

inline std::optional<CyclePath> brute_hamilton_cycle(const Hypergraph& G, int l, int cap = 24) {
    return BruteHamilton(G, l, cap).cycle();
}

inline std::optional<CyclePath> brute_hamilton_path(const Hypergraph& G, int l,
                                                    const std::vector<int>& f1,
                                                    const std::vector<int>& f2, int cap = 24) {
    return BruteHamilton(G, l, cap).path(f1, f2);
}

/// l-connectivity decision: one l-component spanning every vertex.
inline bool connectivity_check(const Hypergraph& G, int l) {
    const Hypergraph* U = &G;
    Hypergraph lvl;
    if (G.is_bounded()) {
        lvl = G.level(G.k());
        U = &lvl;
    }
    return is_l_connected(*U, l);
}

struct HamconReport {
    bool pass = false;
    std::string reason;
    std::vector<int> witness_e, witness_f;  // a failing oriented pair
};

/// Hamilton connectedness of a bounded graph: the l-level has two disjoint
/// edges and every orientation of every disjoint l-edge pair is joined by a
/// Hamilton (e,f,l)-path of the k-level.
inline HamconReport hamcon_check(const Hypergraph& G, int l, int cap = 24) {
    HamconReport rep;
    int k = G.k();
    if ((G.n() - k) % (k - l) != 0)
        throw PreconditionError("hamcon needs v(G) congruent to k mod k-l");
    auto ledges = G.level_indices(l);
    std::vector<Edge> ls;
    for (int idx : ledges) ls.push_back(G.edges()[idx]);
    bool two_disjoint = false;
    for (size_t i = 0; i < ls.size() && !two_disjoint; ++i)
        for (size_t j = i + 1; j < ls.size(); ++j)
            if (intersection_size(ls[i], ls[j]) == 0) {
                two_disjoint = true;
                break;
            }
    if (!two_disjoint) {
        rep.pass = false;
        rep.reason = "fewer than two disjoint l-edges";
        return rep;
    }
    auto K = G.level(k);
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = 0; j < ls.size(); ++j) {
            if (i == j || intersection_size(ls[i], ls[j]) != 0) continue;
            std::vector<int> e(ls[i]);
            std::sort(e.begin(), e.end());
            do {
                std::vector<int> f(ls[j]);
                std::sort(f.begin(), f.end());
                do {
                    if (!brute_hamilton_path(K, l, e, f, cap)) {
                        rep.pass = false;
                        rep.reason = "missing Hamilton path";
                        rep.witness_e = e;
                        rep.witness_f = f;
                        return rep;
                    }
                } while (std::next_permutation(f.begin(), f.end()));
            } while (std::next_permutation(e.begin(), e.end()));
        }
    }
    rep.pass = true;
    return rep;
}

struct FrameworkVerdict {
    bool f1_pass = true, f2_pass = true, f3_pass = true;
    std::string f1_witness, f2_witness, f3_witness;
    long members_checked = 0;
    long consistency_pairs = 0;
};

/// Verifies the three framework properties over an explicit member list:
/// connectivity (the selected subgraph is a spanning l-component), space
/// (perfect fractional l-cycle tiling), and consistency (selected subgraphs
/// of two members glued over a shared extension stay l-connected).  The
/// consistency search extends members by one vertex whose link is copied
/// from another member's vertex, as a finite stand-in for all supergraphs.
inline FrameworkVerdict check_framework(const std::vector<Hypergraph>& members,
                                        const Predicate& membership,
                                        const std::function<Hypergraph(const Hypergraph&)>& F,
                                        int l) {
    FrameworkVerdict v;
    for (const auto& G : members) {
        ++v.members_checked;
        auto FG = F(G);
        auto comps = components(FG, l);
        bool f1 = comps.size() == 1 && spans_all_vertices(FG, comps[0]);
        if (f1) {
            // edge-maximality within G: the component of G containing F(G)'s
            // edges must not be strictly larger
            auto gcomps = components(G, l);
            std::set<Edge> fedges(FG.edges().begin(), FG.edges().end());
            for (auto& comp : gcomps) {
                bool touches = false, covered = true;
                for (int ei : comp) {
                    if (fedges.count(G.edges()[ei])) touches = true;
                    else covered = false;
                }
                if (touches && !covered) f1 = false;
            }
        }
        if (!f1 && v.f1_pass) {
            v.f1_pass = false;
            v.f1_witness = "member with non-spanning or non-maximal selection";
        }
        if (frac_tiling(FG, l, 0, 200'000).status != TilingStatus::Feasible && v.f2_pass) {
            v.f2_pass = false;
            v.f2_witness = "member without perfect fractional l-cycle tiling";
        }
    }
    // consistency: glue two members over an added vertex
    for (size_t a = 0; a < members.size(); ++a) {
        for (size_t b = 0; b < members.size(); ++b) {
            const auto& G1 = members[a];
            const auto& G2 = members[b];
            if (G1.n() != G2.n()) continue;
            int s = G1.n();
            for (int v2 = 0; v2 < std::min(G2.n(), 3); ++v2) {
                // H = G1 plus vertex s with the link of v2 in G2 (identity on labels)
                std::vector<Edge> es(G1.edges());
                for (int ei : G2.edges_at(v2)) {
                    Edge e;
                    for (int u : G2.edges()[ei]) e.push_back(u == v2 ? s : u);
                    std::sort(e.begin(), e.end());
                    es.push_back(e);
                }
                std::sort(es.begin(), es.end());
                es.erase(std::unique(es.begin(), es.end()), es.end());
                Hypergraph H = G1.is_bounded() ? Hypergraph::bounded(s + 1, G1.k(), es)
                                               : Hypergraph::uniform(s + 1, G1.k(), es);
                for (int x = 0; x < H.n(); ++x) {
                    for (int y = x + 1; y < H.n(); ++y) {
                        auto Hx = remove_vertices(H, {x});
                        auto Hy = remove_vertices(H, {y});
                        if (!membership(Hx) || !membership(Hy)) continue;
                        ++v.consistency_pairs;
                        // union of the selections, re-expressed on V(H)
                        auto lift = [&](const Hypergraph& S, int removed) {
                            std::vector<Edge> out;
                            for (auto& e : S.edges()) {
                                Edge le;
                                for (int u : e) le.push_back(u >= removed ? u + 1 : u);
                                out.push_back(le);
                            }
                            return out;
                        };
                        auto ex = lift(F(Hx), x);
                        auto ey = lift(F(Hy), y);
                        ex.insert(ex.end(), ey.begin(), ey.end());
                        std::sort(ex.begin(), ex.end());
                        ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
                        auto U = Hypergraph::uniform(H.n(), H.k(), ex);
                        if (!is_l_connected(U, l) && v.f3_pass) {
                            v.f3_pass = false;
                            v.f3_witness = "union of selections disconnected";
                        }
                    }
                }
            }
        }
    }
    return v;
}

}  // namespace loomlab

#endif
