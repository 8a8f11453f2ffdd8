#include "pillow/linalg.hpp"

namespace pillow {

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t rows = A.size();
    if (rows == 0) return std::vector<Rat>{};
    size_t cols = A[0].size();
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        std::swap(b[pr], b[r]);
        Rat pv = A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] /= pv;
        b[r] /= pv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(int(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

int matrix_rank(std::vector<std::vector<Rat>> A) {
    size_t rows = A.size();
    if (rows == 0) return 0;
    size_t cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        Rat pv = A[r][c];
        for (size_t i = r + 1; i < rows; ++i) {
            if (A[i][c] == 0) continue;
            Rat f = A[i][c] / pv;
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        ++r;
    }
    return int(r);
}

}  // namespace pillow
