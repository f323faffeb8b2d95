#ifndef LOOMLAB_HNF_HPP
#define LOOMLAB_HNF_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "loomlab/rational.hpp"

namespace loomlab {

using IntVec = std::vector<Int>;
using IntCols = std::vector<IntVec>;  // column-major integer matrix

/// Column-style Hermite reduction with a tracked unimodular transform:
/// after reduce(), basis[j] = sum_i transform[j][i] * original[i].
struct HermiteBasis {
    IntCols basis;                         // echelon columns, pivots top-down
    std::vector<std::pair<int, int>> pivots;  // (row, column) pairs
    IntCols transform;                     // expresses basis columns over the originals

    size_t rows() const { return basis.empty() ? 0 : basis[0].size(); }
};

inline HermiteBasis hermite_reduce(const IntCols& columns, size_t m) {
    HermiteBasis H;
    H.basis = columns;
    size_t n = columns.size();
    H.transform.assign(n, IntVec(n, 0));
    for (size_t j = 0; j < n; ++j) H.transform[j][j] = 1;

    auto colop_sub = [&](size_t dst, size_t src, const Int& q) {
        // column dst -= q * column src
        for (size_t r = 0; r < m; ++r) H.basis[dst][r] -= q * H.basis[src][r];
        for (size_t i = 0; i < n; ++i) H.transform[dst][i] -= q * H.transform[src][i];
    };
    auto colswap = [&](size_t a, size_t b) {
        std::swap(H.basis[a], H.basis[b]);
        std::swap(H.transform[a], H.transform[b]);
    };
    auto colneg = [&](size_t a) {
        for (auto& v : H.basis[a]) v = -v;
        for (auto& v : H.transform[a]) v = -v;
    };

    size_t h = 0;  // next pivot column
    for (size_t r = 0; r < m && h < n; ++r) {
        // euclidean elimination across columns h..n-1 at row r
        while (true) {
            size_t jmin = n;
            for (size_t j = h; j < n; ++j) {
                if (H.basis[j][r] == 0) continue;
                if (jmin == n || abs(H.basis[j][r]) < abs(H.basis[jmin][r])) jmin = j;
            }
            if (jmin == n) break;  // all zero
            if (jmin != h) colswap(h, jmin);
            if (H.basis[h][r] < 0) colneg(h);
            bool cleared = true;
            for (size_t j = h + 1; j < n; ++j) {
                if (H.basis[j][r] == 0) continue;
                Int q = H.basis[j][r] / H.basis[h][r];
                colop_sub(j, h, q);
                if (H.basis[j][r] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h < n && H.basis[h][r] != 0) {
            // reduce earlier columns at the pivot row into [0, pivot)
            for (size_t j = 0; j < h; ++j) {
                Int q = H.basis[j][r] / H.basis[h][r];
                if (H.basis[j][r] - q * H.basis[h][r] < 0) q -= 1;
                if (q != 0) colop_sub(j, h, q);
            }
            H.pivots.push_back({(int)r, (int)h});
            ++h;
        }
    }
    // drop zero columns beyond the pivots
    H.basis.resize(h);
    H.transform.resize(h);
    return H;
}

/// Solves sum_j x_j * basis[j] = b over the integers using the echelon
/// structure; returns coefficients over the *original* columns via the
/// transform, or nullopt when b is outside the lattice.
inline std::optional<IntVec> lattice_solve(const HermiteBasis& H, const IntVec& b_in,
                                           size_t n_original) {
    IntVec b(b_in);
    size_t m = b.size();
    IntVec coeff(H.basis.size(), 0);
    for (size_t p = 0; p < H.pivots.size(); ++p) {
        auto [r, j] = H.pivots[p];
        Int q = b[r] / H.basis[j][r];
        if (q * H.basis[j][r] != b[r]) return std::nullopt;  // non-exact division
        coeff[j] = q;
        for (size_t i = 0; i < m; ++i) b[i] -= q * H.basis[j][i];
    }
    for (auto& v : b)
        if (v != 0) return std::nullopt;
    IntVec out(n_original, 0);
    for (size_t j = 0; j < H.basis.size(); ++j)
        for (size_t i = 0; i < n_original; ++i) out[i] += coeff[j] * H.transform[j][i];
    return out;
}

}  // namespace loomlab

#endif
