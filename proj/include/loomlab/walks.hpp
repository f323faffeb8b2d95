#ifndef LOOMLAB_WALKS_HPP
#define LOOMLAB_WALKS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "loomlab/cyclepath.hpp"
#include "loomlab/hypergraph.hpp"

namespace loomlab {

/// Ordered l-tuple of distinct host vertices: the node type of the walk
/// digraph.  A closed l-walk is a homomorphic image of an l-cycle; stepping
/// from a state appends k-l fresh slots forming an edge with it.
using WalkState = std::vector<int>;

struct WalkTransition {
    WalkState next;               // state after the step
    std::vector<int> appended;    // the k-l slot vertices added, in slot order
};

/// Transition digraph over supported l-tuples of the k-level of G.
/// States are expanded on demand; the object itself holds no mutable state.
class WalkGraph {
public:
    WalkGraph(const Hypergraph& G, int l) : G_(&G), l_(l) {
        if (l < 1 || l >= G.k()) throw PreconditionError("walk level l must be in 1..k-1");
    }

    int l() const { return l_; }
    int k() const { return G_->k(); }
    const Hypergraph& graph() const { return *G_; }

    bool supported(const WalkState& s) const {
        if ((int)s.size() != l_) return false;
        std::vector<int> sorted(s);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        for (int idx : G_->edges_containing(sorted))
            if ((int)G_->edges()[idx].size() == G_->k()) return true;
        return false;
    }

    /// All one-step transitions out of s, deterministically ordered.
    std::vector<WalkTransition> transitions(const WalkState& s) const {
        int k = G_->k();
        int step = k - l_;
        std::vector<int> sorted(s);
        std::sort(sorted.begin(), sorted.end());
        std::vector<WalkTransition> out;
        for (int idx : G_->edges_containing(sorted)) {
            const Edge& e = G_->edges()[idx];
            if ((int)e.size() != k) continue;
            std::vector<int> rest = set_minus(e, sorted);
            std::sort(rest.begin(), rest.end());
            // window = s followed by a permutation of rest; the new state is
            // the window's last l slots.
            std::vector<int> perm(rest);
            do {
                WalkTransition tr;
                tr.appended = perm;
                if (l_ <= step) {
                    tr.next.assign(perm.end() - l_, perm.end());
                } else {
                    tr.next.assign(s.begin() + step, s.end());
                    tr.next.insert(tr.next.end(), perm.begin(), perm.end());
                }
                out.push_back(std::move(tr));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        // permutations that only shuffle interior slots repeat (next, appended-set)
        std::sort(out.begin(), out.end(), [](const WalkTransition& a, const WalkTransition& b) {
            return std::tie(a.next, a.appended) < std::tie(b.next, b.appended);
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](const WalkTransition& a, const WalkTransition& b) {
                                  return a.next == b.next && a.appended == b.appended;
                              }),
                  out.end());
        return out;
    }

    /// Shortest digraph path from `a` to `b` (sequence of transitions), or
    /// nullopt when unreachable.  `a == b` yields the empty path.
    std::optional<std::vector<WalkTransition>> shortest_path(const WalkState& a, const WalkState& b,
                                                             int max_steps) const {
        if (a == b) return std::vector<WalkTransition>{};
        std::map<WalkState, std::pair<WalkState, WalkTransition>> parent;
        std::deque<WalkState> queue{a};
        std::map<WalkState, int> dist{{a, 0}};
        while (!queue.empty()) {
            WalkState cur = queue.front();
            queue.pop_front();
            if (dist[cur] >= max_steps) continue;
            for (auto& tr : transitions(cur)) {
                if (dist.count(tr.next)) continue;
                dist[tr.next] = dist[cur] + 1;
                parent[tr.next] = {cur, tr};
                if (tr.next == b) {
                    std::vector<WalkTransition> path;
                    WalkState at = b;
                    while (at != a) {
                        auto& [prev, step] = parent[at];
                        path.push_back(step);
                        at = prev;
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(tr.next);
            }
        }
        return std::nullopt;
    }

private:
    const Hypergraph* G_;
    int l_;
};

/// A closed l-walk represented by its cyclic slot sequence; window 0 starts
/// at slot 0, so slots [0, l) form a boundary state.
struct ClosedWalk {
    int k = 0;
    int l = 0;
    std::vector<int> slots;

    int length() const { return (int)slots.size() / (k - l); }  // number of windows
    std::vector<std::vector<int>> windows() const { return sequence_windows(slots, k, l, true); }

    /// The boundary state before window i.
    WalkState state_at(int i) const {
        int step = k - l;
        WalkState s(l);
        for (int j = 0; j < l; ++j) s[j] = slots[((size_t)i * step + j) % slots.size()];
        return s;
    }
};

/// Checks that every window is a host edge with k distinct slots, i.e. the
/// sequence is a homomorphic image of an l-cycle of `length()` edges.
inline std::optional<std::string> validate_closed_walk(const ClosedWalk& w, const Hypergraph& G) {
    int step = w.k - w.l;
    if (w.slots.empty() || (int)w.slots.size() % step != 0) return "slot count not divisible by k-l";
    if (w.length() < min_cycle_length(w.k, w.l)) return "walk shorter than the least valid cycle";
    for (auto& win : w.windows()) {
        Edge e(win);
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) return "window repeats a slot vertex";
        if (!G.has_edge(e)) return "window is not a host edge";
    }
    return std::nullopt;
}

/// Builds the slot sequence of the closed walk that starts at `a` and follows
/// the given transitions (which must return to `a`).
inline ClosedWalk assemble_closed_walk(const Hypergraph& G, int l, const WalkState& a,
                                       const std::vector<WalkTransition>& steps) {
    ClosedWalk w;
    w.k = G.k();
    w.l = l;
    w.slots = a;
    for (auto& tr : steps) w.slots.insert(w.slots.end(), tr.appended.begin(), tr.appended.end());
    // the final state's slots coincide with the first l slots; drop them
    w.slots.erase(w.slots.end() - l, w.slots.end());
    return w;
}

/// Repeats a closed walk r times (still a closed walk; used to reach the
/// minimum valid cycle length).
inline ClosedWalk repeat_walk(const ClosedWalk& w, int r) {
    ClosedWalk out = w;
    out.slots.clear();
    for (int i = 0; i < r; ++i) out.slots.insert(out.slots.end(), w.slots.begin(), w.slots.end());
    return out;
}

/// Common closed l-walk through states a and b: digraph paths a->b->a glued,
/// repeated when shorter than the least valid cycle.  NotFound (nullopt) when
/// b is unreachable from a or the result would exceed max_len windows.
inline std::optional<ClosedWalk> walk_between(const Hypergraph& G, int l, const WalkState& a,
                                              const WalkState& b, int max_len) {
    WalkGraph wg(G, l);
    if (!wg.supported(a) || !wg.supported(b))
        throw PreconditionError("walk_between: endpoint states must be supported");
    auto fwd = wg.shortest_path(a, b, max_len);
    if (!fwd) return std::nullopt;
    auto bwd = wg.shortest_path(b, a, max_len);
    if (!bwd) return std::nullopt;
    std::vector<WalkTransition> loop = *fwd;
    loop.insert(loop.end(), bwd->begin(), bwd->end());
    if (loop.empty()) {
        // a == b: find any closed walk through a
        for (auto& tr : wg.transitions(a)) {
            auto back = wg.shortest_path(tr.next, a, max_len);
            if (!back) continue;
            loop = {tr};
            loop.insert(loop.end(), back->begin(), back->end());
            break;
        }
        if (loop.empty()) return std::nullopt;
    }
    ClosedWalk w = assemble_closed_walk(G, l, a, loop);
    int tmin = min_cycle_length(G.k(), l);
    if (w.length() < tmin) w = repeat_walk(w, (tmin + w.length() - 1) / w.length());
    if (w.length() > max_len) return std::nullopt;
    if (validate_closed_walk(w, G)) return std::nullopt;  // defensive: never expected
    return w;
}

/// An open walk: image of an l-path under a homomorphism; windows on the
/// non-cyclic grid must all be host edges with distinct slots.
struct OpenWalk {
    int k = 0;
    int l = 0;
    std::vector<int> slots;

    int length() const { return ((int)slots.size() - k) / (k - l) + 1; }
    std::vector<std::vector<int>> windows() const { return sequence_windows(slots, k, l, false); }
};

inline std::optional<std::string> validate_open_walk(const OpenWalk& w, const Hypergraph& G) {
    if ((int)w.slots.size() < w.k || ((int)w.slots.size() - w.k) % (w.k - w.l) != 0)
        return "slot count not congruent to k mod k-l";
    for (auto& win : w.windows()) {
        Edge e(win);
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) return "window repeats a slot vertex";
        if (!G.has_edge(e)) return "window is not a host edge";
    }
    return std::nullopt;
}

/// Image of an l-path T with 2k < v(T) <= 3k that hits x exactly once, at an
/// interior slot outside the first and last windows (so the ends embed in
/// edges avoiding x).  Returns NotFound (nullopt) when exhaustive search over
/// admissible orders finds none.
inline std::optional<OpenWalk> path_through_vertex(const Hypergraph& R, int l, int x,
                                                   long node_budget = 2'000'000) {
    int k = R.k();
    int step = k - l;
    // admissible orders in (2k, 3k], congruent to k mod k-l
    std::vector<int> orders;
    for (int m = 2 * k + 1; m <= 3 * k; ++m)
        if ((m - k) % step == 0) orders.push_back(m);
    long nodes = 0;
    for (int m : orders) {
        std::vector<int> slots;
        // DFS over slot sequences; x must be used exactly once, at an interior
        // slot (not among the first or last l slots).
        std::function<bool(int, int)> dfs = [&](int pos, int x_count) -> bool {
            if (++nodes > node_budget) return false;
            if (pos == m) return x_count == 1;
            for (int v = 0; v < R.n(); ++v) {
                if (v == x) {
                    if (x_count == 1) continue;
                    if (pos < k || pos >= m - k) continue;  // outside both end windows
                } else if (x_count == 0 && pos >= m - k) {
                    continue;  // x can no longer be placed
                }
                slots.push_back(v);
                // the only window completed by this slot starts at pos-k+1
                bool ok = true;
                int ws = pos - k + 1;
                if (ws >= 0 && ws % step == 0) {
                    Edge e(slots.begin() + ws, slots.begin() + ws + k);
                    std::sort(e.begin(), e.end());
                    if (std::adjacent_find(e.begin(), e.end()) != e.end() || !R.has_edge(e)) ok = false;
                }
                if (ok && dfs(pos + 1, x_count + (v == x ? 1 : 0))) return true;
                slots.pop_back();
            }
            return false;
        };
        if (dfs(0, 0)) {
            OpenWalk w;
            w.k = k;
            w.l = l;
            w.slots = slots;
            if (!validate_open_walk(w, R)) return w;
        }
    }
    return std::nullopt;
}

}  // namespace loomlab

#endif
