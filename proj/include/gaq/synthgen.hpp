#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gaq/covariates.hpp"
#include "gaq/graph.hpp"
#include "gaq/types.hpp"

namespace gaq {

struct WattsStrogatz {
    int k = 4;          // ring neighbours (k/2 each side)
    double beta = 0.1;  // rewiring probability
};

struct StochasticBlock {
    int communities = 4;  // balanced sizes, remainder to the first blocks
    double p_in = 0.35;
    double p_out = 0.01;
};

struct BarabasiAlbert {
    int attachments = 3;  // seed clique of max(attachments, 2) nodes
};

using Topology = std::variant<WattsStrogatz, StochasticBlock, BarabasiAlbert>;

std::string topology_name(const Topology& t);

/// 1-based inclusive range of Laplacian eigenvector indices.
struct IndexRange {
    Index first = 1;
    Index last = 10;

    Index size() const { return last - first + 1; }
};

/// Entries of M are drawn N(mean, sd^2). The defaults read the published
/// N(0.3, 0.1) as mean and variance.
struct PerturbSpec {
    double mean = 0.3;
    double sd = 0.31622776601683794;  // sqrt(0.1)
};

/**
 * f = U_signal beta, Y = f + N(0, noise_sigma2 I),
 * X = U_signal + M U_perturb with M (n x n) i.i.d. N(perturb.mean, perturb.sd).
 */
struct SyntheticSpec {
    Topology topology = WattsStrogatz{};
    Index n = 100;
    IndexRange signal{1, 10};
    IndexRange perturb_range{45, 54};
    Vector beta = Vector::Constant(10, 5.0);
    double noise_sigma2 = 0.0;
    PerturbSpec perturb;
    std::uint64_t seed = 0;

    static SyntheticSpec watts_strogatz();
    static SyntheticSpec stochastic_block();
    static SyntheticSpec barabasi_albert();

    void validate() const;
};

struct SyntheticInstance {
    Graph graph;
    LaplacianSpectrum spectrum;
    CovariateMatrix x{Matrix::Ones(1, 1)};
    Vector y;
    Vector f_true;
    std::vector<Index> communities;  // SBM block of each node, empty otherwise
};

struct GeneratedGraph {
    Graph graph;
    std::vector<Index> communities;
};

/// Regenerates on a fresh sub-stream until connected, at most 100 attempts.
GeneratedGraph generate_graph(const Topology& topology, Index n, std::uint64_t seed);

SyntheticInstance generate_instance(const SyntheticSpec& spec);

/// Signal, covariates and noise on an existing network (fixed-network protocol).
/// `seed` drives M and the noise draw.
SyntheticInstance simulate_on(const GeneratedGraph& network, const LaplacianSpectrum& spectrum,
                              const SyntheticSpec& spec, std::uint64_t seed);

/// The covariates of simulate_on without the response draw.
CovariateMatrix synthetic_covariates(const LaplacianSpectrum& spectrum, const SyntheticSpec& spec,
                                     std::uint64_t seed);
Vector synthetic_signal(const LaplacianSpectrum& spectrum, const SyntheticSpec& spec);
Vector add_noise(const Vector& f, double sigma2, std::uint64_t seed);

}  // namespace gaq
