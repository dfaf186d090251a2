#pragma once

#include <algorithm>
#include <bit>
#include <vector>

namespace terraquad {

/// Sparse table over a fixed array: O(n log n) build, O(1) range-min
/// queries returning the index of the minimum (leftmost on ties).
class MinSparseTable {
public:
    MinSparseTable() = default;
    explicit MinSparseTable(std::vector<double> values) : val_(std::move(values)) {
        const int n = static_cast<int>(val_.size());
        int levels = 1;
        while ((1 << levels) <= n) ++levels;
        idx_.assign(levels, std::vector<int>(n));
        for (int i = 0; i < n; ++i) idx_[0][i] = i;
        for (int j = 1; j < levels; ++j) {
            for (int i = 0; i + (1 << j) <= n; ++i) {
                int a = idx_[j - 1][i];
                int b = idx_[j - 1][i + (1 << (j - 1))];
                idx_[j][i] = val_[b] < val_[a] ? b : a;
            }
        }
    }

    int size() const { return static_cast<int>(val_.size()); }

    /// argmin over the closed index range [lo, hi], lo <= hi.
    int argmin(int lo, int hi) const {
        int j = std::bit_width(static_cast<unsigned>(hi - lo + 1)) - 1;
        int a = idx_[j][lo];
        int b = idx_[j][hi - (1 << j) + 1];
        return val_[b] < val_[a] ? b : a;
    }

    /// Largest index m in [lo, hi] with value < bound, or lo - 1.
    int last_below(int lo, int hi, double bound) const {
        int r = hi;
        for (int j = static_cast<int>(idx_.size()) - 1; j >= 0 && r >= lo; --j) {
            int len = 1 << j;
            if (r - len + 1 >= lo && val_[idx_[j][r - len + 1]] >= bound) r -= len;
        }
        if (r >= lo && val_[r] >= bound) return lo - 1;
        return r;
    }

private:
    std::vector<double> val_;
    std::vector<std::vector<int>> idx_;
};

}  // namespace terraquad
