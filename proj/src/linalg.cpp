#include "siglab/linalg.hpp"

#include "siglab/errors.hpp"

namespace siglab {

Rat bareiss_determinant(MatR M) {
    const Eigen::Index n = M.rows();
    if (M.cols() != n) throw ConfigError("bareiss_determinant: matrix must be square");
    if (n == 0) return Rat(1);
    Rat prev(1);
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (M(k, k).is_zero()) {
            Eigen::Index swap_row = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (!M(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return Rat(0);
            M.row(k).swap(M.row(swap_row));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return Rat(sign) * M(n - 1, n - 1);
}

MatR exact_inverse(MatR M) {
    const Eigen::Index n = M.rows();
    if (M.cols() != n) throw ConfigError("exact_inverse: matrix must be square");
    MatR inv = MatR::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) inv(i, i) = Rat(1);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = k; i < n; ++i)
            if (!M(i, k).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw InvariantError("exact_inverse: singular matrix");
        if (pivot != k) {
            M.row(k).swap(M.row(pivot));
            inv.row(k).swap(inv.row(pivot));
        }
        Rat p = M(k, k);
        for (Eigen::Index j = 0; j < n; ++j) {
            M(k, j) = M(k, j) / p;
            inv(k, j) = inv(k, j) / p;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k || M(i, k).is_zero()) continue;
            Rat f = M(i, k);
            for (Eigen::Index j = 0; j < n; ++j) {
                M(i, j) = M(i, j) - f * M(k, j);
                inv(i, j) = inv(i, j) - f * inv(k, j);
            }
        }
    }
    return inv;
}

int exact_rank(MatR M) {
    const Eigen::Index rows = M.rows(), cols = M.cols();
    int rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = row; i < rows; ++i)
            if (!M(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row) M.row(row).swap(M.row(pivot));
        for (Eigen::Index i = row + 1; i < rows; ++i) {
            if (M(i, col).is_zero()) continue;
            Rat f = M(i, col) / M(row, col);
            for (Eigen::Index j = col; j < cols; ++j) M(i, j) = M(i, j) - f * M(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace siglab
