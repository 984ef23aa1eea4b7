#pragma once

#include <string>
#include <vector>

#include "gaq/graph.hpp"
#include "gaq/types.hpp"

namespace gaq {

/// Node covariates X (n x p). Rejects non-finite entries and all-zero columns.
class CovariateMatrix {
public:
    explicit CovariateMatrix(Matrix values, std::vector<std::string> names = {});

    static CovariateMatrix identity(Index n);

    const Matrix& values() const { return values_; }
    const std::vector<std::string>& names() const { return names_; }
    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }

    /// Column-wise z-scoring (opt-in; the selector uses covariates as given).
    /// Constant columns are centred only.
    CovariateMatrix zscored() const;

private:
    Matrix values_;
    std::vector<std::string> names_;
};

/// Orthonormal basis of the smoothed covariate space, from the thin SVD
/// U_d^T X = V1 Sigma V2^T with basis = U_d V1.
struct SmoothedCovariates {
    Matrix basis;           // n x r
    Index rank = 0;         // r
    Vector singular_values; // r, descending
    Matrix right_vectors;   // p x r
    Index spectral_dim = 0; // d

    /// Row v_i of the basis.
    RowVector row(NodeId i) const { return basis.row(i); }
};

SmoothedCovariates smoothed_basis(const SpectralBasis& sb, const CovariateMatrix& x, double rank_tol = 1e-10);

struct Projection {
    Vector coefficients;
    double residual_norm = 0.0;
};

Projection project_signal(const SmoothedCovariates& sc, const Vector& f);

}  // namespace gaq
