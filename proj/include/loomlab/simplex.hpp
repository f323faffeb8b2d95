#ifndef LOOMLAB_SIMPLEX_HPP
#define LOOMLAB_SIMPLEX_HPP

#include <vector>

#include "loomlab/errors.hpp"
#include "loomlab/rational.hpp"

namespace loomlab {

struct LpFeasibility {
    bool feasible = false;
    std::vector<Rat> solution;  // per column, when feasible
    std::vector<Rat> farkas;    // y with y.col <= 0 for every column and y.rhs > 0, when infeasible
};

/// Exact feasibility of { sum_j x_j col_j = rhs, x >= 0 } by phase-1 primal
/// simplex with Bland's rule.  Columns are given column-major.  Infeasible
/// outcomes carry a Farkas certificate in the original row space.
inline LpFeasibility solve_equality_feasibility(const std::vector<std::vector<Rat>>& cols,
                                                const std::vector<Rat>& rhs) {
    size_t m = rhs.size();
    size_t n = cols.size();
    for (auto& c : cols)
        if (c.size() != m) throw PreconditionError("column/rhs dimension mismatch");

    // orient rows so the right-hand side is nonnegative
    std::vector<int> sign(m, 1);
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n + m + 1, Rat(0)));
    for (size_t i = 0; i < m; ++i) {
        sign[i] = rhs[i] < 0 ? -1 : 1;
        for (size_t j = 0; j < n; ++j) T[i][j] = sign[i] * cols[j][i];
        T[i][n + i] = 1;
        T[i][n + m] = sign[i] * rhs[i];
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;

    // reduced costs for min sum(artificials); cost 1 on columns >= n
    auto reduced_cost = [&](size_t j) {
        Rat c = j >= n ? Rat(1) : Rat(0);
        for (size_t i = 0; i < m; ++i)
            if (basis[i] >= n) c -= T[i][j];
        return c;
    };

    while (true) {
        size_t enter = n + m;
        for (size_t j = 0; j < n + m; ++j) {
            if (reduced_cost(j) < 0) {
                enter = j;  // Bland: first improving column
                break;
            }
        }
        if (enter == n + m) break;
        size_t leave = m;
        Rat best_ratio;
        for (size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = T[i][n + m] / T[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw std::logic_error("phase-1 objective unbounded below");  // impossible
        // pivot
        Rat piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += T[i][n + m];

    LpFeasibility out;
    if (objective == 0) {
        out.feasible = true;
        out.solution.assign(n, Rat(0));
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.solution[basis[i]] = T[i][n + m];
    } else {
        out.feasible = false;
        // y_i = 1 - reduced_cost(artificial_i), mapped back through row signs
        out.farkas.assign(m, Rat(0));
        for (size_t i = 0; i < m; ++i) out.farkas[i] = (Rat(1) - reduced_cost(n + i)) * sign[i];
    }
    return out;
}

/// Independent check of a Farkas certificate: y.col <= 0 for every column and
/// y.rhs > 0.
inline bool verify_farkas(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& rhs,
                          const std::vector<Rat>& y) {
    if (y.size() != rhs.size()) return false;
    Rat yb = 0;
    for (size_t i = 0; i < rhs.size(); ++i) yb += y[i] * rhs[i];
    if (yb <= 0) return false;
    for (const auto& c : cols) {
        Rat dot = 0;
        for (size_t i = 0; i < c.size(); ++i) dot += y[i] * c[i];
        if (dot > 0) return false;
    }
    return true;
}

}  // namespace loomlab

#endif
