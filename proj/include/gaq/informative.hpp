#pragma once

#include <optional>
#include <vector>

#include "gaq/covariates.hpp"
#include "gaq/graph.hpp"
#include "gaq/types.hpp"

namespace gaq {

struct InfoOptions {
    /// Singular values of X restricted to the active rows below
    /// pinv_tol * sigma_max are dropped from (X^T X)^{+1/2}.
    double pinv_tol = 1e-10;
    /// Separates the Laplacian null space from genuine frequencies.
    double null_tol = 1e-8;
};

/**
 * Informativeness context for one selection round.
 *
 * z = X_{S^c} (X_{S^c}^T X_{S^c})^{+1/2} has exactly-zero rows on the queried
 * set S, so z z^T is the orthogonal projector onto span(z). phi is the unit
 * minimiser of g^T L^k g / g^T g over that span, ignoring the Laplacian null
 * vector; omega_hat is the k-th root of the minimum.
 */
struct InfoContext {
    std::vector<bool> queried;
    Matrix z;             // n x p
    Matrix active_basis;  // n x q, orthonormal basis of span(z)
    Vector phi;
    int k = 1;
    double omega_hat = 0.0;

    Index num_nodes() const { return z.rows(); }
};

InfoContext build_context(const LaplacianSpectrum& spectrum, const CovariateMatrix& x,
                          const std::vector<NodeId>& queried, int k, const InfoOptions& opts = {});
InfoContext build_context(const Graph& g, const CovariateMatrix& x, const std::vector<NodeId>& queried, int k,
                          const InfoOptions& opts = {});

/// Delta = t . phi . (z z^T (t . phi)) with t the indicator of unqueried nodes.
Vector info_gain_scores(const InfoContext& ctx);

/// Dense P L^k P with P = z z^T (diagnostics and tests only).
Matrix projected_operator(const Matrix& laplacian, const InfoContext& ctx);

/// Position in `candidates` of the best score; ties go to the lowest node id.
NodeId argmax_score(const Vector& scores, const std::vector<NodeId>& candidates);

struct BandwidthReport {
    double omega = 0.0;
    std::optional<Vector> witness;
};

/// Brute-force omega(S): eigendecomposition of Q^T L^k Q over an orthonormal
/// basis Q of H_{S^c}(X, A) (QR of the active rows, L^k by repeated products).
/// Eigenvalues <= null_tol are treated as null. Exact for small n and k.
BandwidthReport bandwidth_oracle(const Graph& g, const CovariateMatrix& x, const std::vector<NodeId>& queried, int k,
                                 const InfoOptions& opts = {});

}  // namespace gaq
