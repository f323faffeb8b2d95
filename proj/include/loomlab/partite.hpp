#ifndef LOOMLAB_PARTITE_HPP
#define LOOMLAB_PARTITE_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "loomlab/colouring.hpp"
#include "loomlab/cyclepath.hpp"

namespace loomlab {

enum class SearchStatus { Found, NotFound, Budget };

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<T> value;
};

/// Spanning (f1, f2, l)-path of the complete k-partite k-graph on the given
/// parts: every window rainbow (one vertex per part), every vertex used once,
/// first l slots = f1 and last l slots = f2 in order.
///
/// Vertices within a part are interchangeable away from the endtuples, so the
/// search branches on parts, not vertices.  NotFound is proven exhaustion;
/// Budget means the node budget ran out first.
inline SearchResult<CyclePath> partite_spanning_path(const std::vector<std::vector<int>>& parts,
                                                     int k, int l, const std::vector<int>& f1,
                                                     const std::vector<int>& f2,
                                                     long node_budget = 10'000'000) {
    SearchResult<CyclePath> result;
    int P = (int)parts.size();
    if (P != k) throw PreconditionError("need exactly k parts");
    std::map<int, int> part_of;
    int m = 0;
    for (int p = 0; p < P; ++p) {
        if (parts[p].empty()) throw PreconditionError("empty part");
        for (int v : parts[p]) {
            if (part_of.count(v)) throw PreconditionError("vertex in two parts");
            part_of[v] = p;
        }
        m += (int)parts[p].size();
    }
    if ((int)f1.size() != l || (int)f2.size() != l) throw PreconditionError("endtuples must have l vertices");
    for (int v : f1)
        if (!part_of.count(v)) throw PreconditionError("f1 vertex not in any part");
    for (int v : f2)
        if (!part_of.count(v)) throw PreconditionError("f2 vertex not in any part");
    {
        std::vector<int> all(f1);
        all.insert(all.end(), f2.begin(), f2.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw PreconditionError("endtuples must be disjoint");
    }
    if (m < k || (m - k) % (k - l) != 0) return result;  // no spanning path shape exists

    int step = k - l;
    std::vector<int> slot(m, -1);
    std::vector<bool> used_flag;
    std::map<int, bool> used;
    for (auto& [v, p] : part_of) used[v] = false;
    std::vector<int> remaining(P);
    for (int p = 0; p < P; ++p) remaining[p] = (int)parts[p].size();
    for (int i = 0; i < l; ++i) slot[i] = f1[i];
    for (int i = 0; i < l; ++i) slot[m - l + i] = f2[i];
    for (int v : f1) {
        used[v] = true;
        --remaining[part_of[v]];
    }
    for (int v : f2) {
        used[v] = true;
        --remaining[part_of[v]];
    }
    // next unused vertex of a part, skipping endtuple vertices
    auto pick_vertex = [&](int p) -> int {
        for (int v : parts[p])
            if (!used[v]) return v;
        return -1;
    };
    int t_windows = (m - k) / step + 1;
    auto window_ok = [&](int w) -> bool {
        std::vector<bool> seen(P, false);
        for (int j = 0; j < k; ++j) {
            int v = slot[w * step + j];
            if (v < 0) continue;
            int p = part_of[v];
            if (seen[p]) return false;
            seen[p] = true;
        }
        return true;
    };
    long nodes = 0;
    bool budget_hit = false;
    std::function<bool(int)> dfs = [&](int pos) -> bool {
        while (pos < m && slot[pos] >= 0) ++pos;
        if (pos >= m) {
            for (int w = 0; w < t_windows; ++w)
                if (!window_ok(w)) return false;
            return true;
        }
        if (++nodes > node_budget) {
            budget_hit = true;
            return false;
        }
        int w_lo = pos - k + 1 <= 0 ? 0 : (pos - k + 1 + step - 1) / step;
        int w_hi = std::min(t_windows - 1, pos / step);
        std::vector<bool> blocked(P, false);
        for (int w = w_lo; w <= w_hi; ++w)
            for (int j = 0; j < k; ++j) {
                int v = slot[w * step + j];
                if (v >= 0 && w * step + j != pos) blocked[part_of[v]] = true;
            }
        std::vector<int> order;
        for (int p = 0; p < P; ++p)
            if (!blocked[p] && remaining[p] > 0) order.push_back(p);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return remaining[a] > remaining[b]; });
        for (int p : order) {
            int v = pick_vertex(p);
            if (v < 0) continue;
            slot[pos] = v;
            used[v] = true;
            --remaining[p];
            bool ok = true;
            for (int w = w_lo; ok && w <= w_hi; ++w) ok = window_ok(w);
            if (ok && dfs(pos + 1)) return true;
            slot[pos] = -1;
            used[v] = false;
            ++remaining[p];
            if (budget_hit) return false;
        }
        return false;
    };
    if (dfs(0)) {
        CyclePath cp;
        cp.k = k;
        cp.l = l;
        cp.kind = CyclePath::Kind::Path;
        cp.verts = slot;
        if (auto err = validate_cyclepath(cp))
            throw std::logic_error("partite_spanning_path produced invalid path: " + *err);
        result.status = SearchStatus::Found;
        result.value = cp;
    } else {
        result.status = budget_hit ? SearchStatus::Budget : SearchStatus::NotFound;
    }
    return result;
}

/// Part size used throughout the partite-path machinery.
inline int partite_part_size(int k, int l) { return k * l * (k - l) + 1; }

struct BalancedCycle {
    CyclePath cycle;
    Colouring parts;  // colour 1 is the lambda-density class
};

/// k-partite l-cycle on t(k-l) vertices whose part fractions are
/// lambda +- eps for part 1 and (1-lambda)/(k-1) +- eps for the rest.
/// Built by colouring a long path and closing it through a complete
/// k-partite gadget.
inline BalancedCycle balanced_cycle(int k, int l, int t, const Rat& eps,
                                    long node_budget = 10'000'000) {
    if (k % (k - l) == 0) throw PreconditionError("balanced_cycle needs k-l not dividing k");
    long b = (long)partite_part_size(k, l) * k - 2 * l;
    long m = (long)t * (k - l);
    if (b >= m) throw PreconditionError("t too small: closing gadget needs " + std::to_string(b) +
                                        " of " + std::to_string(m) + " vertices");
    long mp = m - b;  // path order; congruent to k mod k-l automatically
    if (mp < k) throw PreconditionError("t too small for any path");
    CyclePath P = build_path(k, l, (int)((mp - k) / (k - l) + 1));
    Colouring col = path_colouring(P);

    // embed: path vertices keep ids 0..mp-1, fresh gadget vertices follow
    std::vector<int> colour_of(m, 0);
    for (long i = 0; i < mp; ++i) colour_of[i] = col.colour[i];
    std::vector<std::vector<int>> parts(k);
    auto f1 = P.last_tuple(), f2 = P.first_tuple();
    for (int v : f1) parts[col.colour[v] - 1].push_back(v);
    for (int v : f2) parts[col.colour[v] - 1].push_back(v);
    int next_id = (int)mp;
    int psize = partite_part_size(k, l);
    for (int c = 0; c < k; ++c) {
        while ((int)parts[c].size() < psize) {
            parts[c].push_back(next_id);
            colour_of[next_id] = c + 1;
            ++next_id;
        }
    }
    if (next_id != m) throw std::logic_error("balanced_cycle: gadget size mismatch");

    auto res = partite_spanning_path(parts, k, l, f1, f2, node_budget);
    if (res.status == SearchStatus::Budget) throw BudgetError("balanced_cycle: closing search budget");
    if (res.status != SearchStatus::Found)
        throw PreconditionError("balanced_cycle: no spanning closing path");
    const auto& Q = res.value->verts;

    BalancedCycle out;
    out.cycle.k = k;
    out.cycle.l = l;
    out.cycle.kind = CyclePath::Kind::Cycle;
    out.cycle.verts = P.verts;
    out.cycle.verts.insert(out.cycle.verts.end(), Q.begin() + l, Q.end() - l);
    if (auto err = validate_cyclepath(out.cycle))
        throw std::logic_error("balanced_cycle: invalid cycle: " + *err);

    // relabel classes so the lambda class (colour k) becomes colour 1
    out.parts.k = k;
    out.parts.colour.resize(m);
    for (long i = 0; i < m; ++i) {
        int c = colour_of[out.cycle.verts[i]];
        out.parts.colour[i] = c == k ? 1 : c + 1;
    }
    auto sizes = out.parts.class_sizes();
    Rat lam = lambda_constant(k, l);
    if (abs(Rat(sizes[0], m) - lam) > eps)
        throw PreconditionError("t too small for the eps bound on part 1");
    Rat rest = (1 - lam) / (k - 1);
    for (int c = 1; c < k; ++c)
        if (abs(Rat(sizes[c], m) - rest) > eps)
            throw PreconditionError("t too small for the eps bound on part " + std::to_string(c + 1));
    return out;
}

}  // namespace loomlab

#endif
