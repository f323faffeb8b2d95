#ifndef LOOMLAB_COMBINATORICS_HPP
#define LOOMLAB_COMBINATORICS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace loomlab {

/// Visit every r-subset of {0..n-1} in lexicographic order.
/// The callback may return false to stop early; visit_subsets then returns false.
inline bool visit_subsets(int n, int r, const std::function<bool(const std::vector<int>&)>& fn) {
    if (r < 0 || r > n) return true;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return false;
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::vector<std::vector<int>> all_subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    visit_subsets(n, r, [&](const std::vector<int>& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

/// Sorted set difference a \ b (both sorted).
inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int i = 0, j = 0, c = 0;
    while (i < (int)a.size() && j < (int)b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++c; ++i; ++j; }
    }
    return c;
}

inline bool is_subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Dynamic bitset sized at construction; fixed width thereafter.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    void set(int v) { words_[v >> 6] |= (1ULL << (v & 63)); }
    void reset(int v) { words_[v >> 6] &= ~(1ULL << (v & 63)); }
    bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    int size() const { return n_; }

    bool contains(const VertexSet& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if ((other.words_[i] & ~words_[i]) != 0) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    int intersect_count(const VertexSet& other) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += __builtin_popcountll(words_[i] & other.words_[i]);
        return c;
    }
    bool operator==(const VertexSet&) const = default;

private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

/// FNV-1a over an int sequence, for hashing edges and count vectors.
inline uint64_t hash_ints(const std::vector<int>& v) {
    uint64_t h = 1469598103934665603ULL;
    for (int x : v) {
        h ^= (uint64_t)(x + 0x9e3779b9);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace loomlab

#endif
