#include "gaq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "gaq/error.hpp"
#include "gaq/linalg.hpp"

namespace gaq {

Matrix Graph::adjacency() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (const Edge& e : edges_) {
        a(e.src, e.dst) += e.weight;
        a(e.dst, e.src) += e.weight;
    }
    return a;
}

Graph build_graph(Index n, std::span<const Edge> edges) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "a graph needs at least two nodes, got " + std::to_string(n));

    std::map<std::pair<NodeId, NodeId>, double> merged;
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
            throw Error(ErrorCode::NodeIdOutOfRange,
                        "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) + ") outside [0," +
                            std::to_string(n) + ")");
        }
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                                                       ") has weight " + std::to_string(e.weight));
        }
        if (e.src == e.dst) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.src));
        merged[{std::min(e.src, e.dst), std::max(e.src, e.dst)}] += e.weight;
    }

    Graph g;
    g.n_ = n;
    g.degrees_ = Vector::Zero(n);
    g.adjacency_.resize(static_cast<std::size_t>(n));
    g.edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        g.edges_.push_back({key.first, key.second, w});
        if (w > 0.0) {
            g.adjacency_[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
            g.adjacency_[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
        }
        g.degrees_(key.first) += w;
        g.degrees_(key.second) += w;
    }

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    Index reached = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (const auto& [u, w] : g.adjacency_[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    if (reached != n) {
        NodeId first_missing = 0;
        while (seen[static_cast<std::size_t>(first_missing)]) ++first_missing;
        throw Error(ErrorCode::DisconnectedGraph, std::to_string(n - reached) +
                                                      " node(s) unreachable from node 0 (first: " +
                                                      std::to_string(first_missing) + ")");
    }
    return g;
}

Matrix normalized_laplacian(const Graph& g) {
    const Index n = g.num_nodes();
    Matrix lap = Matrix::Identity(n, n);
    const Vector inv_sqrt = g.degrees().array().rsqrt();
    for (const Edge& e : g.edges()) {
        const double v = e.weight * inv_sqrt(e.src) * inv_sqrt(e.dst);
        lap(e.src, e.dst) -= v;
        lap(e.dst, e.src) -= v;
    }
    return lap;
}

Vector laplacian_apply(const Graph& g, const Vector& x) {
    const Vector inv_sqrt = g.degrees().array().rsqrt();
    Vector y = x;
    for (const Edge& e : g.edges()) {
        const double v = e.weight * inv_sqrt(e.src) * inv_sqrt(e.dst);
        y(e.src) -= v * x(e.dst);
        y(e.dst) -= v * x(e.src);
    }
    return y;
}

LaplacianSpectrum laplacian_spectrum(const Graph& g) {
    LaplacianSpectrum s;
    s.laplacian = normalized_laplacian(g);
    auto eig = linalg::symmetric_eigen(s.laplacian);
    s.values = eig.values;
    s.vectors = std::move(eig.vectors);
    linalg::fix_signs(s.vectors);
    return s;
}

SpectralBasis spectral_basis_split(const LaplacianSpectrum& spectrum, Index n_low, Index n_high) {
    const Index n = spectrum.size();
    if (n_low < 0 || n_high < 0 || n_low + n_high < 1 || n_low + n_high > n) {
        throw Error(ErrorCode::InvalidDimension, "spectral bands " + std::to_string(n_low) + "+" +
                                                     std::to_string(n_high) + " do not fit n=" + std::to_string(n));
    }
    SpectralBasis b;
    const Index d = n_low + n_high;
    b.mode = n_high > 0 ? SpectralMode::LowHigh : SpectralMode::LowPass;
    b.low_count = n_low;
    b.eigenvalues.resize(d);
    b.eigenvectors.resize(n, d);
    b.eigenvalues.head(n_low) = spectrum.values.head(n_low);
    b.eigenvectors.leftCols(n_low) = spectrum.vectors.leftCols(n_low);
    b.eigenvalues.tail(n_high) = spectrum.values.tail(n_high);
    b.eigenvectors.rightCols(n_high) = spectrum.vectors.rightCols(n_high);
    return b;
}

SpectralBasis spectral_basis(const LaplacianSpectrum& spectrum, Index d, SpectralMode mode) {
    const Index n = spectrum.size();
    if (mode == SpectralMode::LowPass) {
        if (d < 1 || d > n) {
            throw Error(ErrorCode::InvalidDimension, "d=" + std::to_string(d) + " outside [1," + std::to_string(n) + "]");
        }
        return spectral_basis_split(spectrum, d, 0);
    }
    if (d < 2 || d > n || d % 2 != 0) {
        throw Error(ErrorCode::InvalidDimension,
                    "LowHigh mode needs an even d in [2," + std::to_string(n) + "], got " + std::to_string(d));
    }
    return spectral_basis_split(spectrum, d / 2, d / 2);
}

SpectralBasis spectral_basis(const Graph& g, Index d, SpectralMode mode) {
    return spectral_basis(laplacian_spectrum(g), d, mode);
}

double bandwidth_estimate(const Vector& signal, const Matrix& laplacian, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidDimension, "power k must be >= 1");
    if (signal.size() != laplacian.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "signal length does not match the Laplacian");
    }
    const double norm = signal.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::ZeroSignal, "bandwidth of the zero signal is undefined");

    // log(g^T L^k g / g^T g) accumulated from normalised iterates. An iterate
    // with ||L h|| below kNullFloor is numerically in the null space: its
    // k-th root would otherwise report rounding noise as a frequency.
    constexpr double kNullFloor = 1e-12;
    Vector h = signal / norm;
    double log_ratio = 0.0;
    for (int step = 0; step < k / 2; ++step) {
        h = laplacian * h;
        const double s = h.norm();
        if (!(s > kNullFloor)) return 0.0;
        log_ratio += 2.0 * std::log(s);
        h /= s;
    }
    if (k % 2 == 1) {
        const double q = h.dot(laplacian * h);
        if (!(q > kNullFloor * kNullFloor)) return 0.0;
        log_ratio += std::log(q);
    }
    return std::exp(log_ratio / k);
}

double spectral_support_max(const LaplacianSpectrum& spectrum, const Vector& signal, double tol) {
    const double norm = signal.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::ZeroSignal, "bandwidth of the zero signal is undefined");
    const Vector coeffs = spectrum.vectors.transpose() * signal;
    for (Index j = coeffs.size() - 1; j >= 0; --j) {
        if (std::abs(coeffs(j)) > tol * norm) return std::max(0.0, spectrum.values(j));
    }
    return 0.0;
}

}  // namespace gaq
