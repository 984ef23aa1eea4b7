#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gaq/types.hpp"

namespace gaq {

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    double weight = 1.0;
};

/**
 * @brief Undirected weighted connected graph.
 *
 * Each undirected edge is stored once with src < dst; duplicate edges in the
 * input (either orientation) are merged by summing their weights. Degrees
 * d_i = sum_j a_ij are strictly positive for every valid graph.
 */
class Graph {
public:
    Index num_nodes() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vector& degrees() const { return degrees_; }

    /// Neighbour lists (node, weight), symmetric.
    const std::vector<std::vector<std::pair<NodeId, double>>>& neighbors() const { return adjacency_; }

    Matrix adjacency() const;

private:
    friend Graph build_graph(Index n, std::span<const Edge> edges);

    Index n_ = 0;
    std::vector<Edge> edges_;
    Vector degrees_;
    std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
};

/// Validates ids, weights and connectivity (traversal over positive-weight edges).
Graph build_graph(Index n, std::span<const Edge> edges);

/// L = I - D^{-1/2} A D^{-1/2}, assembled entry-symmetric.
Matrix normalized_laplacian(const Graph& g);

/// L * x without forming L.
Vector laplacian_apply(const Graph& g, const Vector& x);

enum class SpectralMode { LowPass, LowHigh };

struct SpectralBasis {
    Vector eigenvalues;   // ascending within each band
    Matrix eigenvectors;  // n x d
    SpectralMode mode = SpectralMode::LowPass;
    Index low_count = 0;  // columns taken from the bottom of the spectrum
};

/// Full eigendecomposition of the normalized Laplacian (ascending, signs fixed).
struct LaplacianSpectrum {
    Matrix laplacian;
    Vector values;
    Matrix vectors;

    Index size() const { return values.size(); }
};

LaplacianSpectrum laplacian_spectrum(const Graph& g);

/// d smallest eigenpairs (LowPass) or d/2 smallest followed by d/2 largest
/// (LowHigh, d even).
SpectralBasis spectral_basis(const Graph& g, Index d, SpectralMode mode);
SpectralBasis spectral_basis(const LaplacianSpectrum& spectrum, Index d, SpectralMode mode);

/// Bands of arbitrary size: the n_low smallest and n_high largest eigenpairs.
SpectralBasis spectral_basis_split(const LaplacianSpectrum& spectrum, Index n_low, Index n_high);

/// Power-iterate bandwidth estimate (g^T L^k g / g^T g)^{1/k}, evaluated with
/// k matrix-vector products and per-step renormalisation.
double bandwidth_estimate(const Vector& signal, const Matrix& laplacian, int k = 16);

/// Exact bandwidth frequency: the largest eigenvalue whose GFT coefficient
/// exceeds tol * ||g||.
double spectral_support_max(const LaplacianSpectrum& spectrum, const Vector& signal, double tol = 1e-8);

}  // namespace gaq
