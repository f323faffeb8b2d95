#ifndef LOOMLAB_COLOURING_HPP
#define LOOMLAB_COLOURING_HPP

#include <functional>
#include <optional>
#include <vector>

#include "loomlab/cyclepath.hpp"
#include "loomlab/rational.hpp"

namespace loomlab {

/// Exact space-barrier density 1/(ceil(k/(k-l)) * (k-l)).
inline Rat lambda_constant(int k, int l) {
    long tau = (k + (k - l) - 1) / (k - l);
    return Rat(1, tau * (k - l));
}

/// Vertex colouring of a cycle/path, stored per slot position (colours 1..k).
struct Colouring {
    int k = 0;
    std::vector<int> colour;  // per position of the owning CyclePath

    std::vector<int> class_sizes() const {
        std::vector<int> sizes(k + 1, 0);
        for (int c : colour) ++sizes[c];
        return {sizes.begin() + 1, sizes.end()};
    }
};

/// Proper: no window of cp carries the same colour twice.
inline bool is_proper_colouring(const CyclePath& cp, const Colouring& col) {
    if ((int)col.colour.size() != cp.order()) return false;
    int step = cp.k - cp.l;
    int m = cp.order();
    int t = cp.edge_count();
    bool cyclic = cp.kind == CyclePath::Kind::Cycle;
    for (int i = 0; i < t; ++i) {
        std::vector<bool> seen(col.k + 1, false);
        for (int j = 0; j < cp.k; ++j) {
            int pos = cyclic ? (i * step + j) % m : i * step + j;
            int c = col.colour[pos];
            if (c < 1 || c > col.k || seen[c]) return false;
            seen[c] = true;
        }
    }
    return true;
}

/// Class-size window of the path-colouring lemma: colour k within
/// lambda*m +- 1 and the rest pairwise within 1 of each other.
inline bool colouring_sizes_admissible(int k, int l, int m, const std::vector<int>& sizes) {
    Rat target = lambda_constant(k, l) * m;
    Rat ck = sizes[k - 1];
    if (abs(ck - target) > 1) return false;
    int lo = sizes[0], hi = sizes[0];
    for (int c = 0; c + 1 < k; ++c) {
        lo = std::min(lo, sizes[c]);
        hi = std::max(hi, sizes[c]);
    }
    return hi - lo <= 1;
}

/// Proper k-colouring of an l-path with colour k used lambda*m +- 1 times and
/// the remaining classes as equal as possible.  Backtracking with class-size
/// budgets; exhaustion within the node budget throws (valid paths always
/// admit such a colouring).
inline Colouring path_colouring(const CyclePath& P, long node_budget = 20'000'000) {
    if (P.kind != CyclePath::Kind::Path) throw PreconditionError("path_colouring expects a path");
    if (auto err = validate_cyclepath(P)) throw PreconditionError("path_colouring: " + *err);
    int k = P.k, l = P.l, m = P.order();
    int step = k - l;
    Rat lam_m = lambda_constant(k, l) * m;
    // admissible colour-k counts, best (closest to lambda*m) first
    std::vector<int> ck_options;
    {
        long lo = (long)rat_floor(lam_m - 1), hi = (long)rat_ceil(lam_m + 1);
        for (long c = lo; c <= hi; ++c)
            if (c >= 0 && c <= m && abs(Rat(c) - lam_m) <= 1) ck_options.push_back((int)c);
        std::sort(ck_options.begin(), ck_options.end(), [&](int a, int b) {
            return abs(Rat(a) - lam_m) < abs(Rat(b) - lam_m);
        });
    }
    long nodes = 0;
    int t_windows = P.edge_count();
    for (int ck : ck_options) {
        int rest = m - ck;
        int other_lo = rest / (k - 1);
        int other_hi = (rest + k - 2) / (k - 1);
        std::vector<int> cap(k + 1), floor_req(k + 1);
        for (int c = 1; c < k; ++c) cap[c] = other_hi, floor_req[c] = other_lo;
        cap[k] = ck;
        floor_req[k] = ck;
        std::vector<int> colour(m, 0), count(k + 1, 0);
        std::function<bool(int)> dfs = [&](int pos) -> bool {
            if (nodes++ > node_budget) return false;
            if (pos == m) {
                for (int c = 1; c <= k; ++c)
                    if (count[c] < floor_req[c]) return false;
                return true;
            }
            // colours blocked by windows sharing this position
            std::vector<bool> blocked(k + 1, false);
            int w_lo = pos - k + 1 <= 0 ? 0 : (pos - k + 1 + step - 1) / step;
            int w_hi = std::min(t_windows - 1, pos / step);
            for (int w = w_lo; w <= w_hi; ++w)
                for (int j = 0; j < k; ++j) {
                    int q = w * step + j;
                    if (q < pos && colour[q]) blocked[colour[q]] = true;
                }
            // order: colour k scheduled by quota, others by least count
            std::vector<int> order;
            for (int c = 1; c <= k; ++c)
                if (!blocked[c] && count[c] < cap[c]) order.push_back(c);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                Rat da = Rat(count[a] + 1, cap[a] ? cap[a] : 1);
                Rat db = Rat(count[b] + 1, cap[b] ? cap[b] : 1);
                return da < db;
            });
            int remaining = m - pos;
            for (int c : order) {
                // lower-bound feasibility after taking c
                long deficit = 0;
                for (int c2 = 1; c2 <= k; ++c2)
                    deficit += std::max(0, floor_req[c2] - count[c2] - (c2 == c ? 1 : 0));
                if (deficit > remaining - 1) continue;
                colour[pos] = c;
                ++count[c];
                if (dfs(pos + 1)) return true;
                --count[c];
                colour[pos] = 0;
            }
            return false;
        };
        if (dfs(0)) {
            Colouring col{k, colour};
            return col;
        }
        if (nodes > node_budget) break;
    }
    throw BudgetError("path_colouring: search exhausted (unexpected for a valid path)");
}

/// All proper k-colourings of a cycle/path (oracle for small orders); the
/// callback receives each complete colour vector.
inline void enumerate_proper_colourings(const CyclePath& cp, int num_colours,
                                        const std::function<void(const std::vector<int>&)>& fn) {
    int m = cp.order();
    int k = cp.k, step = k - cp.l;
    bool cyclic = cp.kind == CyclePath::Kind::Cycle;
    std::vector<int> colour(m, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == m) {
            fn(colour);
            return;
        }
        for (int c = 1; c <= num_colours; ++c) {
            bool ok = true;
            int t = cp.edge_count();
            for (int w = 0; ok && w < t; ++w) {
                bool in_window = false;
                for (int j = 0; j < k; ++j) {
                    int q = cyclic ? (w * step + j) % m : w * step + j;
                    if (q == pos) in_window = true;
                }
                if (!in_window) continue;
                for (int j = 0; j < k; ++j) {
                    int q = cyclic ? (w * step + j) % m : w * step + j;
                    if (q != pos && colour[q] == c) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            colour[pos] = c;
            rec(pos + 1);
            colour[pos] = 0;
        }
    };
    rec(0);
}

}  // namespace loomlab

#endif
