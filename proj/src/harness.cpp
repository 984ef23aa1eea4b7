#include "gaq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "gaq/error.hpp"
#include "gaq/recovery.hpp"
#include "gaq/rng.hpp"

namespace gaq {

namespace {

constexpr std::uint64_t kNetworkStream = 21;
constexpr std::uint64_t kDataStream = 22;
constexpr std::uint64_t kNoiseStream = 23;
constexpr std::uint64_t kSelectStream = 24;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GridCell {
    std::size_t strategy_index;
    int budget;
    int seed_index;
};

struct SeedData {
    std::size_t network;  // index into networks
    CovariateMatrix x{Matrix::Ones(1, 1)};
};

struct Network {
    GeneratedGraph graph;
    LaplacianSpectrum spectrum;
};

}  // namespace

std::string_view strategy_name(Strategy s) noexcept {
    switch (s) {
        case Strategy::Proposed: return "proposed";
        case Strategy::Random: return "random";
        case Strategy::DOptimal: return "doptimal";
        case Strategy::ProposedNoRepr: return "proposed_no_repr";
        case Strategy::ProposedNoCov: return "proposed_no_cov";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Proposed, Strategy::Random, Strategy::DOptimal, Strategy::ProposedNoRepr,
                       Strategy::ProposedNoCov}) {
        if (strategy_name(s) == name) return s;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + std::string(name) + "'");
}

void SimulationConfig::validate() const {
    spec.validate();
    if (strategies.empty()) throw Error(ErrorCode::InvalidConfig, "no strategies");
    if (sigma2_grid.empty()) throw Error(ErrorCode::InvalidConfig, "empty noise grid");
    for (double s2 : sigma2_grid) {
        if (!(s2 >= 0.0)) throw Error(ErrorCode::InvalidConfig, "noise levels must be >= 0");
    }
    if (budgets.empty()) throw Error(ErrorCode::InvalidConfig, "no budgets");
    for (int b : budgets) {
        if (b < 1) throw Error(ErrorCode::InvalidBudget, "budgets must be >= 1");
        if (b > spec.n) throw Error(ErrorCode::BudgetExceedsN, "budget exceeds node count");
    }
    if (seeds < 1) throw Error(ErrorCode::InvalidConfig, "seeds must be >= 1");
    if (threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return values[lo];
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<CellAggregate> aggregate_records(const std::vector<RunRecord>& records) {
    using Key = std::tuple<Strategy, int, double>;
    std::vector<Key> order;
    std::map<Key, std::pair<std::vector<double>, std::vector<double>>> samples;
    std::map<Key, int> failures;
    for (const auto& r : records) {
        const Key key{r.strategy, r.budget, r.sigma2};
        if (!samples.count(key)) order.push_back(key);
        auto& [mses, conds] = samples[key];
        if (r.error) {
            ++failures[key];
            continue;
        }
        mses.push_back(r.mse);
        conds.push_back(r.condition_number);
    }
    std::vector<CellAggregate> out;
    for (const auto& key : order) {
        const auto& [mses, conds] = samples.at(key);
        CellAggregate a;
        std::tie(a.strategy, a.budget, a.sigma2) = key;
        a.count = static_cast<int>(mses.size());
        a.failures = failures.count(key) ? failures.at(key) : 0;
        a.mse_median = quantile(mses, 0.5);
        a.mse_iqr = quantile(mses, 0.75) - quantile(mses, 0.25);
        a.condition_median = quantile(conds, 0.5);
        a.condition_iqr = quantile(conds, 0.75) - quantile(conds, 0.25);
        out.push_back(a);
    }
    return out;
}

ExperimentReport run_simulation(const SimulationConfig& cfg) {
    cfg.validate();
    const SyntheticSpec& spec = cfg.spec;
    const std::string topo = topology_name(spec.topology);

    std::vector<Network> networks;
    auto make_network = [&](std::uint64_t seed) {
        Network net;
        net.graph = generate_graph(spec.topology, spec.n, seed);
        net.spectrum = laplacian_spectrum(net.graph.graph);
        networks.push_back(std::move(net));
    };
    if (!cfg.regenerate_topology) make_network(derive_seed(cfg.seed, {kNetworkStream}));

    std::vector<SeedData> data;
    for (int s = 0; s < cfg.seeds; ++s) {
        if (cfg.regenerate_topology) make_network(derive_seed(cfg.seed, {kNetworkStream, static_cast<std::uint64_t>(s)}));
        SeedData sd;
        sd.network = networks.size() - 1;
        sd.x = synthetic_covariates(networks[sd.network].spectrum, spec,
                                    derive_seed(cfg.seed, {kDataStream, static_cast<std::uint64_t>(s)}));
        data.push_back(std::move(sd));
    }

    std::vector<GridCell> tasks;
    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
        for (int b : cfg.budgets) {
            for (int s = 0; s < cfg.seeds; ++s) tasks.push_back({si, b, s});
        }
    }

    std::vector<std::vector<RunRecord>> results(tasks.size());
    auto run_task = [&](std::size_t t) {
        const GridCell& task = tasks[t];
        const Strategy strategy = cfg.strategies[task.strategy_index];
        const SeedData& sd = data[static_cast<std::size_t>(task.seed_index)];
        const Network& net = networks[sd.network];
        const Index n = spec.n;

        SelectorConfig sel = cfg.selector;
        sel.budget = task.budget;
        if (!sel.spectral_dim) sel.spectral_dim = spec.signal.size();
        sel.seed = derive_seed(cfg.seed, {kSelectStream, task.strategy_index,
                                          static_cast<std::uint64_t>(task.seed_index)});

        RunRecord base;
        base.topology = topo;
        base.strategy = strategy;
        base.seed_index = task.seed_index;
        base.seed = sel.seed;
        base.budget = task.budget;

        std::vector<RunRecord> out;
        auto fail_all = [&](const std::string& msg) {
            for (double s2 : cfg.sigma2_grid) {
                RunRecord r = base;
                r.sigma2 = s2;
                r.mse = kNaN;
                r.condition_number = kNaN;
                r.error = msg;
                out.push_back(r);
            }
        };

        try {
            const PreparedProblem problem = prepare_problem(net.spectrum, sd.x, sel);
            const auto start = std::chrono::steady_clock::now();
            QueryResult q;
            switch (strategy) {
                case Strategy::Proposed: q = select_nodes(problem, sd.x, sel); break;
                case Strategy::ProposedNoRepr:
                    sel.representative = false;
                    q = select_nodes(problem, sd.x, sel);
                    break;
                case Strategy::ProposedNoCov: {
                    const CovariateMatrix id = CovariateMatrix::identity(n);
                    q = select_nodes(prepare_problem(net.spectrum, id, sel), id, sel);
                    break;
                }
                case Strategy::Random: q = random_select(n, task.budget, sel.seed); break;
                case Strategy::DOptimal: q = doptimal_select(sd.x, task.budget, cfg.doptimal_ridge); break;
            }
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            base.wall_time_ms = ms;
            base.num_queried = static_cast<Index>(q.nodes.size());
            base.query_time_per_node_ms = ms / static_cast<double>(std::max<Index>(base.num_queried, 1));
            base.rounds = q.rounds;
            base.condition_number = weighted_condition_number(problem.smoothed.basis, q.nodes, q.weights);

            const Vector f = synthetic_signal(net.spectrum, spec);
            std::vector<bool> unlabeled(static_cast<std::size_t>(n), true);
            for (NodeId v : q.nodes) unlabeled[static_cast<std::size_t>(v)] = false;
            for (std::size_t k = 0; k < cfg.sigma2_grid.size(); ++k) {
                RunRecord r = base;
                r.sigma2 = cfg.sigma2_grid[k];
                try {
                    // One standard-normal draw per seed index, scaled per level.
                    const Vector y = add_noise(
                        f, r.sigma2, derive_seed(cfg.seed, {kNoiseStream, static_cast<std::uint64_t>(task.seed_index)}));
                    std::vector<LabeledSample> samples;
                    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
                        samples.push_back({q.nodes[j], y(q.nodes[j]), q.weights[j]});
                    }
                    const RecoveryModel model = fit_wls(problem.smoothed, samples);
                    r.mse = mse(predict(problem.smoothed, model), f, unlabeled);
                } catch (const Error& e) {
                    r.mse = kNaN;
                    r.error = std::string(to_string(e.code())) + ": " + e.what();
                }
                out.push_back(r);
            }
        } catch (const Error& e) {
            out.clear();
            fail_all(std::string(to_string(e.code())) + ": " + e.what());
        }
        results[t] = std::move(out);
    };

    const auto workers = static_cast<std::size_t>(std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks.size(); t = next++) run_task(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    ExperimentReport report;
    report.config = cfg;
    for (auto& r : results) {
        for (auto& rec : r) report.records.push_back(std::move(rec));
    }
    report.aggregates = aggregate_records(report.records);
    return report;
}

}  // namespace gaq
