#include "gaq/covariates.hpp"

#include <cmath>
#include <string>

#include "gaq/error.hpp"
#include "gaq/linalg.hpp"

namespace gaq {

CovariateMatrix::CovariateMatrix(Matrix values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "covariate matrix is empty");
    }
    if (!names_.empty() && static_cast<Index>(names_.size()) != values_.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "column name count does not match covariate columns");
    }
    for (Index j = 0; j < values_.cols(); ++j) {
        bool nonzero = false;
        for (Index i = 0; i < values_.rows(); ++i) {
            const double v = values_(i, j);
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::NonFiniteCovariate,
                            "row " + std::to_string(i) + ", column " + std::to_string(j));
            }
            nonzero = nonzero || v != 0.0;
        }
        if (!nonzero) throw Error(ErrorCode::ZeroCovariateColumn, "column " + std::to_string(j) + " is all zero");
    }
}

CovariateMatrix CovariateMatrix::identity(Index n) { return CovariateMatrix(Matrix::Identity(n, n)); }

CovariateMatrix CovariateMatrix::zscored() const {
    Matrix z = values_;
    const double n = static_cast<double>(z.rows());
    for (Index j = 0; j < z.cols(); ++j) {
        const double mean = z.col(j).mean();
        z.col(j).array() -= mean;
        const double sd = n > 1 ? std::sqrt(z.col(j).squaredNorm() / (n - 1.0)) : 0.0;
        if (sd > 0.0) z.col(j) /= sd;
    }
    // A constant column centres to zero; keep the original so the matrix stays valid.
    for (Index j = 0; j < z.cols(); ++j) {
        if (z.col(j).isZero(0.0)) z.col(j) = values_.col(j);
    }
    return CovariateMatrix(std::move(z), names_);
}

SmoothedCovariates smoothed_basis(const SpectralBasis& sb, const CovariateMatrix& x, double rank_tol) {
    if (x.rows() != sb.eigenvectors.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "covariates have " + std::to_string(x.rows()) +
                                                      " rows, spectral basis has " +
                                                      std::to_string(sb.eigenvectors.rows()));
    }
    if (!(rank_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "rank_tol must be positive");

    const Matrix projected = sb.eigenvectors.transpose() * x.values();  // d x p
    Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double sigma_max = s.size() > 0 ? s(0) : 0.0;
    // No covariate energy inside the band at all (only rounding noise).
    if (!(sigma_max > rank_tol * x.values().norm())) {
        throw Error(ErrorCode::RankZero, "covariates are orthogonal to the selected spectral band");
    }
    Index r = 0;
    while (r < s.size() && s(r) > rank_tol * sigma_max) ++r;

    SmoothedCovariates out;
    out.spectral_dim = sb.eigenvectors.cols();
    out.rank = r;
    out.singular_values = s.head(r);
    out.right_vectors = svd.matrixV().leftCols(r);
    out.basis = sb.eigenvectors * svd.matrixU().leftCols(r);
    return out;
}

Projection project_signal(const SmoothedCovariates& sc, const Vector& f) {
    if (f.size() != sc.basis.rows()) throw Error(ErrorCode::DimensionMismatch, "signal length mismatch");
    Projection p;
    p.coefficients = sc.basis.transpose() * f;
    p.residual_norm = (f - sc.basis * p.coefficients).norm();
    return p;
}

}  // namespace gaq
