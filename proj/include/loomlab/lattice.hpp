#ifndef LOOMLAB_LATTICE_HPP
#define LOOMLAB_LATTICE_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "loomlab/hnf.hpp"
#include "loomlab/partite.hpp"
#include "loomlab/tiling.hpp"
#include "loomlab/walks.hpp"

namespace loomlab {

struct HomColumnEnumeration {
    std::vector<IndicatorColumn> columns;  // distinct count vectors, one witness each
    bool complete = false;
};

/// Distinct indicator vectors over Hom(F, G) for a fixed l-cycle F: closed
/// walks of exactly e(F) windows in the walk digraph of G.  max_columns stops
/// the enumeration early (useful when any witness will do).
inline HomColumnEnumeration enum_hom_columns(const CyclePath& F, const Hypergraph& G,
                                             long node_budget = 10'000'000,
                                             long max_columns = -1) {
    if (F.kind != CyclePath::Kind::Cycle) throw PreconditionError("F must be a cycle");
    if (F.k != G.k()) throw PreconditionError("uniformity mismatch between F and G");
    int l = F.l;
    int t = F.edge_count();
    int step = F.k - l;
    WalkGraph wg(G, l);

    std::set<WalkState> starts;
    for (const auto& e : G.edges()) {
        if ((int)e.size() != G.k()) continue;
        visit_subsets((int)e.size(), l, [&](const std::vector<int>& pos) {
            WalkState s(l);
            for (int i = 0; i < l; ++i) s[i] = e[pos[i]];
            std::sort(s.begin(), s.end());
            do starts.insert(s);
            while (std::next_permutation(s.begin(), s.end()));
            return true;
        });
    }
    HomColumnEnumeration out;
    std::map<std::vector<int>, ClosedWalk> found;
    long nodes = 0;
    bool truncated = false;
    for (const auto& s0 : starts) {
        if (truncated) break;
        std::vector<int> slots(s0);
        std::function<void(const WalkState&, int)> dfs = [&](const WalkState& cur, int depth) {
            if (truncated) return;
            if (max_columns >= 0 && (long)found.size() >= max_columns) {
                truncated = true;
                return;
            }
            if (depth == t) {
                if (cur == s0) {
                    ClosedWalk w{F.k, l, std::vector<int>(slots.begin(), slots.end() - l)};
                    found.emplace(walk_counts(w, G.n()), w);
                }
                return;
            }
            if (++nodes > node_budget) {
                truncated = true;
                return;
            }
            for (const auto& tr : wg.transitions(cur)) {
                if (tr.next < s0) continue;  // each rotation class visited once
                slots.insert(slots.end(), tr.appended.begin(), tr.appended.end());
                dfs(tr.next, depth + 1);
                slots.erase(slots.end() - step, slots.end());
                if (truncated) return;
            }
        };
        dfs(s0, 0);
    }
    out.complete = !truncated;
    for (auto& [c, w] : found) out.columns.push_back({c, w});
    return out;
}

enum class LatticeStatus { Complete, Incomplete, Unknown };

struct LatticeBasis {
    int vF = 0;
    LatticeStatus status = LatticeStatus::Unknown;
    std::vector<IndicatorColumn> columns;
    HermiteBasis hnf;
    IntVec witness;  // b with coordinate sum divisible by vF outside the lattice
    bool enumeration_complete = false;
};

/// Decides completeness of the F-lattice of G: the integer span of the
/// indicator columns contains every vector whose coordinate sum is divisible
/// by v(F).  It suffices to test the generators vF*e_0 and e_i - e_0.
inline LatticeBasis lattice_complete(const CyclePath& F, const Hypergraph& G,
                                     long node_budget = 10'000'000) {
    LatticeBasis out;
    out.vF = F.order();
    auto en = enum_hom_columns(F, G, node_budget);
    out.columns = en.columns;
    out.enumeration_complete = en.complete;
    if (G.n() == 0) throw PreconditionError("lattice_complete needs a nonempty vertex set");
    IntCols cols;
    for (auto& c : out.columns) {
        IntVec v(c.counts.begin(), c.counts.end());
        cols.push_back(std::move(v));
    }
    out.hnf = hermite_reduce(cols, G.n());
    auto member = [&](const IntVec& b) { return lattice_solve(out.hnf, b, cols.size()).has_value(); };
    std::vector<IntVec> generators;
    {
        IntVec g(G.n(), 0);
        g[0] = out.vF;
        generators.push_back(g);
    }
    for (int i = 1; i < G.n(); ++i) {
        IntVec g(G.n(), 0);
        g[i] = 1;
        g[0] = -1;
        generators.push_back(g);
    }
    for (auto& g : generators) {
        if (!member(g)) {
            // a missing generator witnesses incompleteness only if enumeration saw
            // every column; otherwise the verdict stays Unknown
            out.status = en.complete ? LatticeStatus::Incomplete : LatticeStatus::Unknown;
            out.witness = g;
            return out;
        }
    }
    out.status = LatticeStatus::Complete;  // sound even under truncation
    return out;
}

struct GcdReport {
    int chi = 0;
    std::set<long> differences;  // observed |c1 - c2| values (the set D)
    bool infinite = false;       // D == {0}
    Int gcd = 0;
    bool complete = true;        // enumeration finished within budget
};

/// Chromatic number under the edge-rainbow colouring convention, by
/// incremental exact search.
inline int chromatic_number(const Hypergraph& F, long node_budget = 50'000'000) {
    int lb = 1;
    for (auto& e : F.edges()) lb = std::max(lb, (int)e.size());
    for (int t = lb; t <= F.n(); ++t) {
        long nodes = 0;
        std::vector<int> colour(F.n(), 0);
        std::function<bool(int)> dfs = [&](int v) -> bool {
            if (v == F.n()) return true;
            if (++nodes > node_budget) throw BudgetError("chromatic_number budget");
            int cap = 0;
            for (int u = 0; u < v; ++u) cap = std::max(cap, colour[u]);
            for (int c = 1; c <= std::min(t, cap + 1); ++c) {
                bool ok = true;
                for (int ei : F.edges_at(v)) {
                    for (int u : F.edges()[ei])
                        if (u < v && colour[u] == c) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
                if (!ok) continue;
                colour[v] = c;
                if (dfs(v + 1)) return true;
                colour[v] = 0;
            }
            return false;
        };
        if (dfs(0)) return t;
    }
    return F.n();
}

/// D(F) and gcd for a cycle by transfer DP over windows carrying the colours
/// of the boundary slots and the running class-1/class-2 counts.  Slots
/// [0, l) are owned by the initial boundary; window picks that wrap onto them
/// are forced to match and not recounted.
inline GcdReport gcd_of_cycle(const CyclePath& F, long state_budget = 20'000'000) {
    if (F.kind != CyclePath::Kind::Cycle) throw PreconditionError("gcd_of_cycle expects a cycle");
    int k = F.k, l = F.l, t = F.edge_count(), step = k - l;
    int m = F.order();
    GcdReport rep;
    std::set<std::pair<long, long>> closures;
    using Key = std::pair<std::vector<int>, std::pair<long, long>>;

    int nc = k;  // rainbow windows force at least k colours; some short cycles need more
    // initial boundary: ordered injective colourings of slots [0, l)
    std::vector<int> sel(l);
    std::function<void(int, int)> init_boundary = [&](int pos, int used_mask) {
        if (!rep.complete) return;
        if (pos < l) {
            for (int c = 1; c <= nc; ++c) {
                if (used_mask & (1 << c)) continue;
                sel[pos] = c;
                init_boundary(pos + 1, used_mask | (1 << c));
            }
            return;
        }
        const std::vector<int> b0(sel);
        long c1 = (long)std::count(b0.begin(), b0.end(), 1);
        long c2 = (long)std::count(b0.begin(), b0.end(), 2);
        std::set<Key> layer{{b0, {c1, c2}}};
        long states_seen = 0;
        for (int w = 0; w < t; ++w) {
            std::set<Key> next_layer;
            for (const auto& key : layer) {
                const auto& boundary = key.first;
                auto [n1, n2] = key.second;
                std::vector<int> pick(step);
                std::function<void(int, long, long)> choose = [&](int idx, long a1, long a2) {
                    if (idx == step) {
                        std::vector<int> window(boundary);
                        window.insert(window.end(), pick.begin(), pick.end());
                        std::vector<int> nb(window.end() - l, window.end());
                        if (w == t - 1) {
                            if (nb == b0) closures.insert({a1, a2});
                        } else {
                            next_layer.insert({nb, {a1, a2}});
                        }
                        return;
                    }
                    int abs_pos = w * step + l + idx;
                    auto fits = [&](int c) {
                        if (std::find(boundary.begin(), boundary.end(), c) != boundary.end())
                            return false;
                        for (int j = 0; j < idx; ++j)
                            if (pick[j] == c) return false;
                        return true;
                    };
                    if (abs_pos >= m) {
                        int c = b0[abs_pos - m];  // wrapped: forced, already counted
                        if (!fits(c)) return;
                        pick[idx] = c;
                        choose(idx + 1, a1, a2);
                    } else {
                        for (int c = 1; c <= nc; ++c) {
                            if (!fits(c)) continue;
                            pick[idx] = c;
                            choose(idx + 1, a1 + (c == 1), a2 + (c == 2));
                        }
                    }
                };
                choose(0, n1, n2);
            }
            states_seen += (long)next_layer.size();
            if (states_seen > state_budget) {
                rep.complete = false;
                return;
            }
            if (w < t - 1) layer.swap(next_layer);
        }
    };
    for (nc = k; nc <= std::min(m, 28); ++nc) {
        closures.clear();
        init_boundary(0, 0);
        if (!rep.complete) return rep;
        if (!closures.empty()) break;  // nc is the chromatic number
    }
    if (closures.empty()) throw std::logic_error("gcd_of_cycle: no proper colouring found");
    rep.chi = nc;
    for (auto& [c1, c2] : closures) rep.differences.insert(std::labs(c1 - c2));
    Int g = 0;
    for (long d : rep.differences)
        if (d != 0) g = gcd(g, Int(d));
    if (g == 0) rep.infinite = true;
    else rep.gcd = g;
    return rep;
}

/// gcd via exhaustive colour enumeration for small general hypergraphs.
inline GcdReport gcd_of_graph(const Hypergraph& F, long node_budget = 50'000'000) {
    GcdReport rep;
    rep.chi = chromatic_number(F, node_budget);
    long nodes = 0;
    std::vector<int> colour(F.n(), 0);
    std::function<void(int)> dfs = [&](int v) {
        if (v == F.n()) {
            long c1 = 0, c2 = 0;
            for (int u = 0; u < F.n(); ++u) {
                if (colour[u] == 1) ++c1;
                if (colour[u] == 2) ++c2;
            }
            rep.differences.insert(std::labs(c1 - c2));
            return;
        }
        if (++nodes > node_budget) throw BudgetError("gcd_of_graph budget");
        for (int c = 1; c <= rep.chi; ++c) {
            bool ok = true;
            for (int ei : F.edges_at(v)) {
                for (int u : F.edges()[ei])
                    if (u < v && colour[u] == c) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) continue;
            colour[v] = c;
            dfs(v + 1);
            colour[v] = 0;
        }
    };
    dfs(0);
    Int g = 0;
    for (long d : rep.differences)
        if (d != 0) g = gcd(g, Int(d));
    if (g == 0) rep.infinite = true;
    else rep.gcd = g;
    return rep;
}

struct DivisorCycle {
    CyclePath cycle;
    Colouring certificate;  // proper k-colouring with two class sizes differing by one
    GcdReport gcd;
};

/// The k-partite l-cycle with k^2 l + ceil(k/(k-l)) edges whose gcd is 1,
/// built by closing a spanning path of a complete k-partite gadget and
/// appending the q leftover vertices.
inline DivisorCycle divisor_cycle(int k, int l, long node_budget = 10'000'000) {
    if (l < 1 || l > k - 1) throw PreconditionError("need 1 <= l <= k-1");
    if (k % (k - l) == 0) throw PreconditionError("divisor_cycle needs k-l not dividing k");
    int m_ceil = (k + (k - l) - 1) / (k - l);
    int q = m_ceil * (k - l) - k;  // 0 < q < k-l
    int edges = k * k * l + m_ceil;
    int psize = partite_part_size(k, l);

    // parts of H: 0..k-1, with psize vertices each; u_j extras go to part (l+j-1) mod k
    std::vector<std::vector<int>> parts(k);
    int id = 0;
    for (int p = 0; p < k; ++p)
        for (int i = 0; i < psize; ++i) parts[p].push_back(id++);
    std::vector<int> extras;
    std::vector<int> extra_part;
    for (int j = 1; j <= q; ++j) {
        int p = (l + j - 1) % k;
        extras.push_back(id++);
        extra_part.push_back(p);
    }
    // f1 in parts l+q+i (i = 1..l, mod k), f2 in parts 1..l
    std::vector<int> f1, f2;
    for (int i = 1; i <= l; ++i) f1.push_back(parts[(l + q + i - 1) % k][0]);
    for (int i = 1; i <= l; ++i) {
        // avoid collision with f1 when part indices coincide
        int p = i - 1;
        int slot = 0;
        while (std::find(f1.begin(), f1.end(), parts[p][slot]) != f1.end()) ++slot;
        f2.push_back(parts[p][slot]);
    }
    auto res = partite_spanning_path(parts, k, l, f1, f2, node_budget);
    if (res.status == SearchStatus::Budget) throw BudgetError("divisor_cycle: path search budget");
    if (res.status != SearchStatus::Found)
        throw std::logic_error("divisor_cycle: guaranteed spanning path not found");

    DivisorCycle out;
    out.cycle.k = k;
    out.cycle.l = l;
    out.cycle.kind = CyclePath::Kind::Cycle;
    out.cycle.verts = res.value->verts;
    out.cycle.verts.insert(out.cycle.verts.end(), extras.begin(), extras.end());
    if (auto err = validate_cyclepath(out.cycle))
        throw std::logic_error("divisor_cycle: invalid cycle: " + *err);
    if (out.cycle.edge_count() != edges)
        throw std::logic_error("divisor_cycle: edge count mismatch");

    // certificate: colour = part index + 1 (extras on their own parts)
    out.certificate.k = k;
    out.certificate.colour.resize(out.cycle.order());
    std::vector<int> part_of(id, 0);
    for (int p = 0; p < k; ++p)
        for (int v : parts[p]) part_of[v] = p;
    for (int j = 0; j < q; ++j) part_of[extras[j]] = extra_part[j];
    for (int i = 0; i < out.cycle.order(); ++i)
        out.certificate.colour[i] = part_of[out.cycle.verts[i]] + 1;
    if (!is_proper_colouring(out.cycle, out.certificate))
        throw std::logic_error("divisor_cycle: certificate is not proper");
    auto sizes = out.certificate.class_sizes();
    // q < k-l <= k-1 parts grew by one vertex, so two classes differ by one;
    // permuting two such colours exhibits |c1 - c2| = 1, whence gcd 1
    int lo = *std::min_element(sizes.begin(), sizes.end());
    int hi = *std::max_element(sizes.begin(), sizes.end());
    if (hi - lo != 1) throw std::logic_error("divisor_cycle: class sizes do not differ by one");
    out.gcd.chi = k;
    out.gcd.differences = {0, 1};
    out.gcd.gcd = 1;
    out.gcd.complete = true;
    return out;
}

}  // namespace loomlab

#endif
