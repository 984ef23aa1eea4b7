#include "gaq/informative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaq/error.hpp"
#include "gaq/linalg.hpp"

namespace gaq {

namespace {

std::vector<NodeId> active_rows(const std::vector<bool>& queried) {
    std::vector<NodeId> rows;
    for (std::size_t i = 0; i < queried.size(); ++i) {
        if (!queried[i]) rows.push_back(static_cast<NodeId>(i));
    }
    return rows;
}

Matrix gather_rows(const Matrix& x, const std::vector<NodeId>& rows) {
    Matrix out(static_cast<Index>(rows.size()), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = x.row(rows[i]);
    return out;
}

Matrix scatter_rows(const Matrix& compact, const std::vector<NodeId>& rows, Index n) {
    Matrix out = Matrix::Zero(n, compact.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(rows[i]) = compact.row(static_cast<Index>(i));
    return out;
}

std::vector<bool> checked_mask(Index n, const std::vector<NodeId>& queried) {
    for (NodeId v : queried) {
        if (v < 0 || v >= n) throw Error(ErrorCode::NodeIdOutOfRange, "queried node " + std::to_string(v));
    }
    return node_mask(n, queried);
}

// Removes the direction of `null_vec` from span(basis) when it lies inside it.
Matrix deflate(const Matrix& basis, const Vector& null_vec, double tol) {
    const Vector coeff = basis.transpose() * null_vec;
    const double residual = (null_vec - basis * coeff).norm();
    if (residual > tol || basis.cols() == 0) return basis;
    // Complete coeff/||coeff|| to an orthonormal basis of R^q, drop its first column.
    const Index q = basis.cols();
    Matrix m = Matrix::Identity(q, q);
    m.col(0) = coeff.normalized();
    Eigen::HouseholderQR<Matrix> qr(m);
    const Matrix complete = qr.householderQ() * Matrix::Identity(q, q);
    return basis * complete.rightCols(q - 1);
}

}  // namespace

InfoContext build_context(const LaplacianSpectrum& spectrum, const CovariateMatrix& x,
                          const std::vector<NodeId>& queried, int k, const InfoOptions& opts) {
    const Index n = spectrum.size();
    if (x.rows() != n) throw Error(ErrorCode::DimensionMismatch, "covariate rows do not match the graph");
    if (k < 1) throw Error(ErrorCode::InvalidDimension, "power k must be >= 1");

    InfoContext ctx;
    ctx.k = k;
    ctx.queried = checked_mask(n, queried);
    const auto active = active_rows(ctx.queried);
    if (active.empty()) throw Error(ErrorCode::EmptyActiveSet, "every node is already queried");

    const auto cs = linalg::column_space(gather_rows(x.values(), active), opts.pinv_tol);
    if (cs.rank == 0) throw Error(ErrorCode::DegenerateCovariates, "covariates vanish on every unqueried node");
    ctx.z = scatter_rows(cs.left * cs.right.transpose(), active, n);
    ctx.active_basis = scatter_rows(cs.left, active, n);

    // The Laplacian null vector D^{1/2} 1 can only lie in span(z) when S is empty.
    Matrix search = ctx.active_basis;
    if (static_cast<Index>(active.size()) == n) search = deflate(search, spectrum.vectors.col(0), opts.null_tol);
    if (search.cols() == 0) {
        throw Error(ErrorCode::DegenerateCovariates, "covariate span holds only the constant-frequency signal");
    }

    // phi minimises g^T L^k g over span(search): right singular vectors of
    // Lambda^{k/2} U^T search.
    Vector scale = spectrum.values.cwiseMax(0.0).array().pow(0.5 * k);
    const Matrix graded = scale.asDiagonal() * (spectrum.vectors.transpose() * search);
    const auto svd = linalg::one_sided_jacobi(graded);
    ctx.phi = search * svd.right.col(0);
    ctx.phi.normalize();
    linalg::fix_signs(ctx.phi);
    const double mu = svd.singular(0) * svd.singular(0);
    ctx.omega_hat = mu > 0.0 ? std::pow(mu, 1.0 / k) : 0.0;
    return ctx;
}

InfoContext build_context(const Graph& g, const CovariateMatrix& x, const std::vector<NodeId>& queried, int k,
                          const InfoOptions& opts) {
    return build_context(laplacian_spectrum(g), x, queried, k, opts);
}

Vector info_gain_scores(const InfoContext& ctx) {
    const Index n = ctx.num_nodes();
    Vector tphi(n);
    for (Index i = 0; i < n; ++i) tphi(i) = ctx.queried[static_cast<std::size_t>(i)] ? 0.0 : ctx.phi(i);
    const Vector projected = ctx.z * (ctx.z.transpose() * tphi);
    return tphi.cwiseProduct(projected);
}

Matrix projected_operator(const Matrix& laplacian, const InfoContext& ctx) {
    const Matrix p = ctx.z * ctx.z.transpose();
    Matrix lk = Matrix::Identity(laplacian.rows(), laplacian.cols());
    for (int i = 0; i < ctx.k; ++i) lk = laplacian * lk;
    return p * lk * p;
}

NodeId argmax_score(const Vector& scores, const std::vector<NodeId>& candidates) {
    if (candidates.empty()) throw Error(ErrorCode::EmptyActiveSet, "no candidates to score");
    // Scores within kTieTol (relative) count as ties so that rounding in the
    // last bits cannot reorder symmetric nodes.
    constexpr double kTieTol = 1e-12;
    NodeId best = candidates.front();
    for (NodeId c : candidates) {
        const double margin = kTieTol * std::max(std::abs(scores(c)), std::abs(scores(best)));
        if (scores(c) > scores(best) + margin || (std::abs(scores(c) - scores(best)) <= margin && c < best)) best = c;
    }
    return best;
}

BandwidthReport bandwidth_oracle(const Graph& g, const CovariateMatrix& x, const std::vector<NodeId>& queried, int k,
                                 const InfoOptions& opts) {
    const Index n = g.num_nodes();
    if (x.rows() != n) throw Error(ErrorCode::DimensionMismatch, "covariate rows do not match the graph");
    if (k < 1) throw Error(ErrorCode::InvalidDimension, "power k must be >= 1");
    const auto mask = checked_mask(n, queried);
    const auto active = active_rows(mask);

    BandwidthReport report;
    // Nothing left to identify: every signal in H is pinned down.
    if (active.empty()) {
        report.omega = 2.0;
        return report;
    }

    const Matrix compact = gather_rows(x.values(), active);
    Eigen::ColPivHouseholderQR<Matrix> qr(compact);
    qr.setThreshold(opts.pinv_tol);
    const Index rank = qr.rank();
    if (rank == 0) throw Error(ErrorCode::DegenerateCovariates, "covariates vanish on every unqueried node");
    const Matrix thin_q = (qr.householderQ() * Matrix::Identity(compact.rows(), rank));
    const Matrix basis = scatter_rows(thin_q, active, n);

    const Matrix lap = normalized_laplacian(g);
    Matrix lk_basis = basis;
    for (int i = 0; i < k; ++i) lk_basis = lap * lk_basis;
    Matrix reduced = basis.transpose() * lk_basis;
    reduced = 0.5 * (reduced + reduced.transpose());
    const auto eig = linalg::symmetric_eigen(reduced);

    for (Index j = 0; j < eig.values.size(); ++j) {
        if (eig.values(j) > opts.null_tol) {
            report.omega = std::pow(eig.values(j), 1.0 / k);
            Vector w = basis * eig.vectors.col(j);
            w.normalize();
            linalg::fix_signs(w);
            report.witness = std::move(w);
            return report;
        }
    }
    // Only the null-space signal survives.
    report.omega = 0.0;
    return report;
}

}  // namespace gaq
