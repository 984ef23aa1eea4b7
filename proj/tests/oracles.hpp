#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines: eigenproblems use a cyclic Jacobi sweep,
// inverses use Gauss-Jordan elimination, and Laplacians are assembled from
// raw edge lists.

#include <utility>
#include <vector>

#include "gaq/types.hpp"

namespace oracle {

using gaq::Index;
using gaq::Matrix;
using gaq::Vector;

struct RawEdge {
    Index a;
    Index b;
    double w = 1.0;
};

/// Dense I - D^{-1/2} A D^{-1/2} from an edge list (duplicates summed).
Matrix laplacian(Index n, const std::vector<RawEdge>& edges);

struct Eig {
    Vector values;   // ascending
    Matrix vectors;  // columns
};

/// Cyclic Jacobi eigensolver for small symmetric matrices.
Eig jacobi_eigen(Matrix a, double tol = 1e-15, int max_sweeps = 100);

/// Gauss-Jordan inverse with partial pivoting.
Matrix gauss_jordan_inverse(Matrix a);

/// Moore-Penrose pseudo-inverse of a symmetric PSD matrix via jacobi_eigen.
Matrix psd_pinv(const Matrix& a, double rel_tol = 1e-10);

/// Minimum-norm minimiser of sum_i w_i (y_i - a_i beta)^2 via the weighted
/// normal equations.
Vector weighted_normal_solve(const Matrix& a, const Vector& w, const Vector& y);

/// Resolvent-trace potential by explicit inversion.
double potential(const Matrix& c, double u, double l);

/// p_i by explicit inversion.
Vector probabilities(const Matrix& basis, const Matrix& c, double u, double l);

/// Rank by Gaussian elimination with relative pivot threshold.
Index rank(Matrix a, double rel_tol = 1e-9);

/// Connected simple graphs: random edge sets, rejected until connected.
std::vector<RawEdge> random_connected_graph(Index n, double p, unsigned seed);

bool connected(Index n, const std::vector<RawEdge>& edges);

/// Edges of a path 0-1-...-(n-1).
std::vector<RawEdge> path(Index n);

}  // namespace oracle
