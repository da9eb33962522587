#pragma once

#include <vector>

#include "circq/tensor.hpp"

namespace circq {

// Gauss-Jordan with partial pivoting. Throws singular_matrix.
mat4 inverse4(const mat4& m);

// Determinant via LU with partial pivoting.
double det4(const mat4& m);

// Dense row-major matrix, sized at construction.
struct dmatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;
    dmatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Orthonormal basis of the nullspace of `m`, by Gaussian elimination with
// partial pivoting; pivots below `pivot_eps` (relative to the largest pivot
// candidate seen) count as zero. Basis vectors are returned Gram-Schmidt
// orthonormalized for well-conditioned random sampling.
std::vector<std::vector<double>> nullspace(dmatrix m, double pivot_eps);

// Solve the small symmetric positive system (n<=4) in place; used by the
// min-norm Newton steps. Throws singular_matrix.
void solve_small(int n, double a[], double b[]);

}  // namespace circq
