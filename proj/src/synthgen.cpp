#include "gaq/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gaq/error.hpp"
#include "gaq/rng.hpp"

namespace gaq {

namespace {

constexpr std::uint64_t kGraphStream = 11;
constexpr std::uint64_t kCovariateStream = 12;
constexpr std::uint64_t kNoiseStream = 13;
constexpr int kMaxAttempts = 100;

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

GeneratedGraph watts_strogatz(const WattsStrogatz& t, Index n, Rng& rng) {
    const Index half = t.k / 2;
    std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(n));
    auto link = [&](NodeId a, NodeId b) {
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    };
    for (NodeId u = 0; u < n; ++u) {
        for (Index j = 1; j <= half; ++j) link(u, (u + j) % n);
    }
    for (Index j = 1; j <= half; ++j) {
        for (NodeId u = 0; u < n; ++u) {
            if (rng.uniform() >= t.beta) continue;
            const NodeId v = (u + j) % n;
            auto& nu = adj[static_cast<std::size_t>(u)];
            if (static_cast<Index>(nu.size()) >= n - 1 || !nu.count(v)) continue;
            NodeId w = u;
            while (w == u || nu.count(w)) w = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
            nu.erase(v);
            adj[static_cast<std::size_t>(v)].erase(u);
            link(u, w);
        }
    }
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : adj[static_cast<std::size_t>(u)]) {
            if (u < v) edges.push_back({u, v, 1.0});
        }
    }
    return {build_graph(n, edges), {}};
}

GeneratedGraph stochastic_block(const StochasticBlock& t, Index n, Rng& rng) {
    std::vector<Index> block(static_cast<std::size_t>(n));
    const Index base = n / t.communities;
    const Index extra = n % t.communities;
    NodeId next = 0;
    for (Index c = 0; c < t.communities; ++c) {
        const Index size = base + (c < extra ? 1 : 0);
        for (Index j = 0; j < size; ++j) block[static_cast<std::size_t>(next++)] = c;
    }
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            const double p = block[static_cast<std::size_t>(u)] == block[static_cast<std::size_t>(v)] ? t.p_in : t.p_out;
            if (rng.uniform() < p) edges.push_back({u, v, 1.0});
        }
    }
    return {build_graph(n, edges), block};
}

GeneratedGraph barabasi_albert(const BarabasiAlbert& t, Index n, Rng& rng) {
    const Index n0 = std::max<Index>(t.attachments, 2);
    std::vector<Edge> edges;
    std::vector<NodeId> endpoints;  // each node once per incident edge
    for (NodeId u = 0; u < n0; ++u) {
        for (NodeId v = u + 1; v < n0; ++v) {
            edges.push_back({u, v, 1.0});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    for (NodeId u = n0; u < n; ++u) {
        std::set<NodeId> targets;
        while (static_cast<Index>(targets.size()) < t.attachments) {
            targets.insert(endpoints[static_cast<std::size_t>(rng.below(endpoints.size()))]);
        }
        for (NodeId v : targets) {
            edges.push_back({v, u, 1.0});
            endpoints.push_back(v);
            endpoints.push_back(u);
        }
    }
    return {build_graph(n, edges), {}};
}

Matrix eigen_block(const LaplacianSpectrum& spectrum, const IndexRange& r) {
    return spectrum.vectors.middleCols(r.first - 1, r.size());
}

}  // namespace

std::string topology_name(const Topology& t) {
    if (std::holds_alternative<WattsStrogatz>(t)) return "ws";
    if (std::holds_alternative<StochasticBlock>(t)) return "sbm";
    return "ba";
}

SyntheticSpec SyntheticSpec::watts_strogatz() { return SyntheticSpec{}; }

SyntheticSpec SyntheticSpec::stochastic_block() {
    SyntheticSpec s;
    s.topology = StochasticBlock{};
    return s;
}

SyntheticSpec SyntheticSpec::barabasi_albert() {
    SyntheticSpec s;
    s.topology = BarabasiAlbert{};
    s.signal = {1, 15};
    s.perturb_range = {45, 59};
    s.beta = Vector::Constant(15, 5.0);
    s.beta.head(5).setOnes();
    s.perturb = {0.5, std::sqrt(0.2)};
    return s;
}

void SyntheticSpec::validate() const {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "synthetic n must be >= 2");
    if (const auto* ws = std::get_if<WattsStrogatz>(&topology)) {
        if (ws->k < 2 || ws->k >= n) throw Error(ErrorCode::InvalidConfig, "ws k must be in [2, n)");
        if (!valid_probability(ws->beta)) throw Error(ErrorCode::InvalidConfig, "ws beta must be in [0, 1]");
    } else if (const auto* sbm = std::get_if<StochasticBlock>(&topology)) {
        if (sbm->communities < 1 || sbm->communities > n) {
            throw Error(ErrorCode::InvalidConfig, "sbm communities must be in [1, n]");
        }
        if (!valid_probability(sbm->p_in) || !valid_probability(sbm->p_out)) {
            throw Error(ErrorCode::InvalidConfig, "sbm probabilities must be in [0, 1]");
        }
    } else {
        const auto& ba = std::get<BarabasiAlbert>(topology);
        if (ba.attachments < 1 || std::max(ba.attachments, 2) >= n) {
            throw Error(ErrorCode::InvalidConfig, "ba attachments must be >= 1 and leave room for growth");
        }
    }
    for (const IndexRange* r : {&signal, &perturb_range}) {
        if (r->first < 1 || r->last < r->first || r->last > n) {
            throw Error(ErrorCode::IndexRangeInvalid, "eigen-index range [" + std::to_string(r->first) + ", " +
                                                          std::to_string(r->last) + "] not within [1, " +
                                                          std::to_string(n) + "]");
        }
    }
    if (signal.size() != perturb_range.size()) {
        throw Error(ErrorCode::IndexRangeInvalid, "signal and perturbation ranges must have equal width");
    }
    if (beta.size() != signal.size()) {
        throw Error(ErrorCode::DimensionMismatch, "beta length must equal the signal range width");
    }
    if (!(noise_sigma2 >= 0.0)) throw Error(ErrorCode::InvalidConfig, "noise_sigma2 must be >= 0");
    if (!(perturb.sd >= 0.0)) throw Error(ErrorCode::InvalidConfig, "perturbation sd must be >= 0");
}

GeneratedGraph generate_graph(const Topology& topology, Index n, std::uint64_t seed) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(derive_seed(seed, {kGraphStream, static_cast<std::uint64_t>(attempt)}));
        try {
            if (const auto* ws = std::get_if<WattsStrogatz>(&topology)) return watts_strogatz(*ws, n, rng);
            if (const auto* sbm = std::get_if<StochasticBlock>(&topology)) return stochastic_block(*sbm, n, rng);
            return barabasi_albert(std::get<BarabasiAlbert>(topology), n, rng);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DisconnectedGraph) throw;
        }
    }
    throw Error(ErrorCode::GenerationFailed,
                topology_name(topology) + " graph not connected after " + std::to_string(kMaxAttempts) + " attempts");
}

Vector synthetic_signal(const LaplacianSpectrum& spectrum, const SyntheticSpec& spec) {
    return eigen_block(spectrum, spec.signal) * spec.beta;
}

CovariateMatrix synthetic_covariates(const LaplacianSpectrum& spectrum, const SyntheticSpec& spec,
                                     std::uint64_t seed) {
    const Index n = spectrum.size();
    Matrix x = eigen_block(spectrum, spec.signal);
    if (spec.perturb.mean != 0.0 || spec.perturb.sd != 0.0) {
        Rng rng(derive_seed(seed, {kCovariateStream}));
        Matrix m(n, n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) m(i, j) = rng.normal(spec.perturb.mean, spec.perturb.sd);
        }
        x.noalias() += m * eigen_block(spectrum, spec.perturb_range);
    }
    return CovariateMatrix(std::move(x));
}

Vector add_noise(const Vector& f, double sigma2, std::uint64_t seed) {
    if (sigma2 == 0.0) return f;
    Rng rng(derive_seed(seed, {kNoiseStream}));
    const double sd = std::sqrt(sigma2);
    Vector y = f;
    for (Index i = 0; i < y.size(); ++i) y(i) += rng.normal(0.0, sd);
    return y;
}

SyntheticInstance simulate_on(const GeneratedGraph& network, const LaplacianSpectrum& spectrum,
                              const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spectrum.size() != spec.n || network.graph.num_nodes() != spec.n) {
        throw Error(ErrorCode::DimensionMismatch, "network size differs from spec n");
    }
    SyntheticInstance inst;
    inst.graph = network.graph;
    inst.spectrum = spectrum;
    inst.communities = network.communities;
    inst.f_true = synthetic_signal(spectrum, spec);
    inst.x = synthetic_covariates(spectrum, spec, seed);
    inst.y = add_noise(inst.f_true, spec.noise_sigma2, seed);
    return inst;
}

SyntheticInstance generate_instance(const SyntheticSpec& spec) {
    spec.validate();
    const GeneratedGraph network = generate_graph(spec.topology, spec.n, spec.seed);
    return simulate_on(network, laplacian_spectrum(network.graph), spec, spec.seed);
}

}  // namespace gaq
