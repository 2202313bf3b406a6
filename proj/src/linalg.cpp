#include "linfty/linalg.hpp"

#include <cstddef>

namespace linfty {

namespace {

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> reduce(Matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const Scalar inv = 1 / m[row][c];
        for (Scalar& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][c]) == 0) continue;
            const Scalar f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(Matrix m) {
    if (m.empty()) return 0;
    return static_cast<int>(reduce(m, m[0].size()).size());
}

std::vector<std::vector<Scalar>> nullspace(Matrix m, int cols) {
    const std::size_t n = static_cast<std::size_t>(cols);
    for (auto& row : m) row.resize(n);
    const std::vector<std::size_t> pivots = reduce(m, n);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(n, Scalar(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace linfty
