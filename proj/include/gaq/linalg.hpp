#pragma once

#include "gaq/types.hpp"

namespace gaq::linalg {

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

/// Flip each column so that its first entry with |x| > tol is positive.
void fix_signs(Matrix& columns, double tol = 1e-12);
void fix_signs(Vector& column, double tol = 1e-12);

/// Thin SVD truncated to singular values above rel_tol * sigma_max.
struct ColumnSpace {
    Matrix left;       // n x rank, orthonormal
    Vector singular;   // rank, descending
    Matrix right;      // p x rank, orthonormal
    Index rank = 0;
    double sigma_max = 0.0;
};

ColumnSpace column_space(const Matrix& a, double rel_tol);

/// Result of a right-handed one-sided Jacobi SVD, sorted by ascending
/// singular value.
struct JacobiSvd {
    Vector singular;
    Matrix right;  // q x q orthogonal
    int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD of a tall matrix. Only column rotations
/// are applied, so rows are perturbed relative to their own size: for
/// a = D * B with diagonal D and well conditioned B, small singular values
/// keep high relative accuracy even when D spans many orders of magnitude.
JacobiSvd one_sided_jacobi(Matrix a, double tol = 1e-14, int max_sweeps = 80);

/// lambda_max / lambda_min of a symmetric PSD matrix; +inf when singular.
double condition_number(const Matrix& sym);

}  // namespace gaq::linalg
