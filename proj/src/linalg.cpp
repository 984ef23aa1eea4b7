#include "gaq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gaq::linalg {

SymmetricEigen symmetric_eigen(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

void fix_signs(Matrix& columns, double tol) {
    for (Index j = 0; j < columns.cols(); ++j) {
        for (Index i = 0; i < columns.rows(); ++i) {
            const double x = columns(i, j);
            if (std::abs(x) > tol) {
                if (x < 0) columns.col(j) *= -1.0;
                break;
            }
        }
    }
}

void fix_signs(Vector& column, double tol) {
    for (Index i = 0; i < column.size(); ++i) {
        if (std::abs(column(i)) > tol) {
            if (column(i) < 0) column *= -1.0;
            return;
        }
    }
}

ColumnSpace column_space(const Matrix& a, double rel_tol) {
    ColumnSpace out;
    if (a.size() == 0) return out;
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    out.sigma_max = s.size() > 0 ? s(0) : 0.0;
    Index rank = 0;
    while (rank < s.size() && s(rank) > rel_tol * out.sigma_max && s(rank) > 0.0) ++rank;
    out.rank = rank;
    out.left = svd.matrixU().leftCols(rank);
    out.right = svd.matrixV().leftCols(rank);
    out.singular = s.head(rank);
    return out;
}

JacobiSvd one_sided_jacobi(Matrix a, double tol, int max_sweeps) {
    const Index q = a.cols();
    Matrix v = Matrix::Identity(q, q);
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Index j = 0; j + 1 < q; ++j) {
            for (Index k = j + 1; k < q; ++k) {
                const double alpha = a.col(j).squaredNorm();
                const double beta = a.col(k).squaredNorm();
                const double gamma = a.col(j).dot(a.col(k));
                if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (Index i = 0; i < a.rows(); ++i) {
                    const double x = a(i, j);
                    const double y = a(i, k);
                    a(i, j) = c * x - s * y;
                    a(i, k) = s * x + c * y;
                }
                for (Index i = 0; i < q; ++i) {
                    const double x = v(i, j);
                    const double y = v(i, k);
                    v(i, j) = c * x - s * y;
                    v(i, k) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }
    Vector norms(q);
    for (Index j = 0; j < q; ++j) norms(j) = a.col(j).norm();
    std::vector<Index> order(static_cast<std::size_t>(q));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return norms(x) < norms(y); });

    JacobiSvd out;
    out.singular.resize(q);
    out.right.resize(q, q);
    for (Index j = 0; j < q; ++j) {
        out.singular(j) = norms(order[static_cast<std::size_t>(j)]);
        out.right.col(j) = v.col(order[static_cast<std::size_t>(j)]);
    }
    out.sweeps = sweep;
    return out;
}

double condition_number(const Matrix& sym) {
    if (sym.rows() == 0) return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    const double hi = solver.eigenvalues()(sym.rows() - 1);
    if (!(hi > 0.0)) return std::numeric_limits<double>::infinity();
    if (lo <= hi * 1e-14) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace gaq::linalg
