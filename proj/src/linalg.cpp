#include "circq/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "circq/errors.hpp"

namespace circq {

mat4 inverse4(const mat4& m) {
    double a[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j];
        for (int j = 4; j < 8; ++j) a[i][j] = (j - 4 == i) ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) throw singular_matrix();
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(a[piv][j], a[col][j]);
        const double d = a[col][col];
        for (int j = 0; j < 8; ++j) a[col][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[col][j];
        }
    }
    mat4 inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = a[i][j + 4];
    return inv;
}

double det4(const mat4& m) {
    double a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j];
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

std::vector<std::vector<double>> nullspace(dmatrix m, double pivot_eps) {
    const int R = m.rows, C = m.cols;
    std::vector<int> pivot_col_of_row;
    pivot_col_of_row.reserve(C);
    double scale = 0.0;
    for (double v : m.a) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) scale = 1.0;
    const double eps = pivot_eps * scale;

    int row = 0;
    std::vector<bool> is_pivot_col(C, false);
    for (int col = 0; col < C && row < R; ++col) {
        int piv = row;
        for (int r = row + 1; r < R; ++r)
            if (std::fabs(m.at(r, col)) > std::fabs(m.at(piv, col))) piv = r;
        if (std::fabs(m.at(piv, col)) <= eps) continue;
        if (piv != row)
            for (int j = 0; j < C; ++j) std::swap(m.at(piv, j), m.at(row, j));
        const double d = m.at(row, col);
        for (int j = col; j < C; ++j) m.at(row, j) /= d;
        for (int r = 0; r < R; ++r) {
            if (r == row) continue;
            const double f = m.at(r, col);
            if (f == 0.0) continue;
            for (int j = col; j < C; ++j) m.at(r, j) -= f * m.at(row, j);
        }
        is_pivot_col[col] = true;
        pivot_col_of_row.push_back(col);
        ++row;
    }

    std::vector<std::vector<double>> basis;
    for (int free_col = 0; free_col < C; ++free_col) {
        if (is_pivot_col[free_col]) continue;
        std::vector<double> v(C, 0.0);
        v[free_col] = 1.0;
        for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[pivot_col_of_row[r]] = -m.at(static_cast<int>(r), free_col);
        basis.push_back(std::move(v));
    }

    // Modified Gram-Schmidt.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double d = 0.0;
            for (int k = 0; k < C; ++k) d += basis[i][k] * basis[j][k];
            for (int k = 0; k < C; ++k) basis[i][k] -= d * basis[j][k];
        }
        double n2 = 0.0;
        for (int k = 0; k < C; ++k) n2 += basis[i][k] * basis[i][k];
        const double n = std::sqrt(n2);
        for (int k = 0; k < C; ++k) basis[i][k] /= n;
    }
    return basis;
}

void solve_small(int n, double a[], double b[]) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
        if (std::fabs(a[piv * n + col]) < 1e-300) throw singular_matrix();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * b[j];
        b[r] = s / a[r * n + r];
    }
}

}  // namespace circq
