// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances are fixed constants below; nothing is tuned per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gaq/error.hpp"
#include "gaq/harness.hpp"
#include "gaq/informative.hpp"
#include "gaq/recovery.hpp"
#include "gaq/representative.hpp"
#include "gaq/selector.hpp"
#include "gaq/synthgen.hpp"
#include "oracles.hpp"

using namespace gaq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

std::vector<oracle::RawEdge> raw_edges(const Graph& g) {
    std::vector<oracle::RawEdge> out;
    for (const auto& e : g.edges()) out.push_back({e.src, e.dst, e.weight});
    return out;
}

Graph to_graph(Index n, const std::vector<oracle::RawEdge>& raw) {
    std::vector<Edge> edges;
    for (const auto& e : raw) edges.push_back({e.a, e.b, e.w});
    return build_graph(n, edges);
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. Noiseless exact recovery.
Outcome noiseless_recovery() {
    constexpr int kSeeds = 50;
    constexpr double kRelTol = 1e-8;
    constexpr int kRequired = 48;  // 95% of 50, rounded up
    constexpr double kSeconds = 5.0;
    const auto t0 = Clock::now();
    int exact = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        auto spec = SyntheticSpec::watts_strogatz();
        spec.seed = seed;
        spec.noise_sigma2 = 0.0;
        spec.perturb = {0.0, 0.0};
        const auto inst = generate_instance(spec);
        SelectorConfig cfg;
        cfg.budget = 25;
        cfg.spectral_dim = 10;
        cfg.seed = seed;
        const auto prob = prepare_problem(inst.spectrum, inst.x, cfg);
        const auto q = select_nodes(prob, inst.x, cfg);
        std::vector<LabeledSample> samples;
        for (std::size_t j = 0; j < q.nodes.size(); ++j) samples.push_back({q.nodes[j], inst.y(q.nodes[j]), q.weights[j]});
        const Vector fhat = predict(prob.smoothed, fit_wls(prob.smoothed, samples));
        const double rel = (fhat - inst.f_true).norm() / inst.f_true.norm();
        worst = std::max(worst, rel);
        if (rel <= kRelTol) ++exact;
    }
    const double secs = seconds_since(t0);
    return {exact >= kRequired && secs < kSeconds,
            std::to_string(exact) + "/50 seeds with rel. error <= 1e-8 (need 48), worst " + fmt("%.2e", worst) +
                ", " + fmt("%.2f", secs) + " s (limit 5 s)"};
}

// 2. Potential at initialisation equals epsilon.
Outcome init_identity() {
    constexpr double kTol = 1e-12;
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<int> rd(1, 60), md(1, 200);
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
        const int r = rd(gen), m = md(gen);
        const double eps = std::uniform_real_distribution<double>(1e-6, 0.999 / m)(gen);
        const auto s = init_state(r, eps, m, 1);
        worst = std::max(worst, std::abs(potential(s) - eps));
    }
    return {worst <= kTol, "max |Phi_0 - eps| = " + fmt("%.2e", worst) + " over 20 configurations (tol 1e-12)"};
}

// 3. Probabilities sum to one in every round.
Outcome probability_normalization() {
    constexpr double kTol = 1e-10;
    auto spec = SyntheticSpec::watts_strogatz();
    const auto inst = generate_instance(spec);
    SelectorConfig cfg;
    cfg.budget = 40;
    cfg.spectral_dim = 10;
    const auto q = select_nodes(inst.graph, inst.x, cfg);
    double worst = 0.0;
    for (const auto& r : q.trace) worst = std::max(worst, std::abs(r.prob_sum - 1.0));
    const bool all_rounds = q.trace.size() == 40;
    return {all_rounds && worst <= kTol,
            std::to_string(q.trace.size()) + " rounds, max |sum p - 1| = " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

// 4. Barrier bracket over 10^4 rounds in 50 runs (WS n = 200, B = 200).
Outcome barrier_bracket() {
    constexpr int kRuns = 50;
    constexpr int kRounds = 200;
    constexpr double kRequired = 0.99;
    auto spec = SyntheticSpec::watts_strogatz();
    spec.n = kRounds;
    long held = 0, total = 0, violations = 0;
    for (std::uint64_t run = 0; run < kRuns; ++run) {
        spec.seed = run;
        const auto inst = generate_instance(spec);
        SelectorConfig cfg;
        cfg.budget = kRounds;
        cfg.spectral_dim = 10;
        cfg.seed = run;
        total += kRounds;
        try {
            const auto q = select_nodes(inst.graph, inst.x, cfg);
            for (const auto& r : q.trace) held += r.bracket_ok ? 1 : 0;
        } catch (const Error& e) {
            // A violation ends the run; its remaining rounds count as failures.
            if (e.code() != ErrorCode::BarrierViolated) throw;
            ++violations;
        }
    }
    const double frac = static_cast<double>(held) / static_cast<double>(total);
    return {frac >= kRequired, std::to_string(held) + "/" + std::to_string(total) + " rounds bracketed (" +
                                   fmt("%.4f", frac) + ", need 0.99), " + std::to_string(violations) +
                                   " runs stopped by BarrierViolated"};
}

// 5. Identification oracle on small graphs with X = I.
Outcome identification() {
    constexpr int kGraphs = 200;
    constexpr double kSeconds = 60.0;
    const auto t0 = Clock::now();
    long checks = 0, counterexamples = 0, mismatch = 0;
    for (unsigned seed = 0; seed < kGraphs; ++seed) {
        const Index n = 3 + seed % 4;
        const double p = 0.3 + 0.1 * (seed % 5);
        const auto raw = oracle::random_connected_graph(n, p, 7000 + seed);
        const Graph g = to_graph(n, raw);
        const Matrix lap = oracle::laplacian(n, raw);
        const auto ref = oracle::jacobi_eigen(lap);
        const auto x = CovariateMatrix::identity(n);
        for (int budget = 1; budget <= n; ++budget) {
            SelectorConfig cfg;
            cfg.budget = budget;
            cfg.seed = seed * 31 + static_cast<unsigned>(budget);
            const auto q = select_nodes(g, x, cfg);
            std::vector<NodeId> s = q.nodes;
            std::sort(s.begin(), s.end());
            ++checks;

            // omega(S) for k = 1: smallest eigenvalue of L on the unqueried block.
            std::vector<Index> rest;
            for (Index i = 0; i < n; ++i)
                if (!std::binary_search(s.begin(), s.end(), i)) rest.push_back(i);
            double omega = 2.0;
            if (!rest.empty()) {
                Matrix block(static_cast<Index>(rest.size()), static_cast<Index>(rest.size()));
                for (std::size_t a = 0; a < rest.size(); ++a)
                    for (std::size_t b = 0; b < rest.size(); ++b)
                        block(static_cast<Index>(a), static_cast<Index>(b)) = lap(rest[a], rest[b]);
                omega = oracle::jacobi_eigen(block).values(0);
            }
            const auto rep = bandwidth_oracle(g, x, s, 1);
            if (std::abs(rep.omega - omega) > 1e-9) ++mismatch;

            bool ok = true;
            std::vector<Index> cols;
            for (Index j = 0; j < n; ++j)
                if (ref.values(j) < omega - 1e-9) cols.push_back(j);
            Matrix rows(static_cast<Index>(s.size()), static_cast<Index>(cols.size()));
            for (std::size_t a = 0; a < s.size(); ++a)
                for (std::size_t b = 0; b < cols.size(); ++b)
                    rows(static_cast<Index>(a), static_cast<Index>(b)) = ref.vectors(s[a], cols[b]);
            if (!cols.empty() && oracle::rank(rows) != static_cast<Index>(cols.size())) ok = false;

            if (!rest.empty()) {
                if (!rep.witness || rep.witness->norm() < 0.5) {
                    ok = false;
                } else {
                    const Vector& w = *rep.witness;
                    for (NodeId v : s)
                        if (std::abs(w(v)) > 1e-10) ok = false;
                    const Vector coeffs = ref.vectors.transpose() * w;
                    double support = 0.0;
                    for (Index j = 0; j < n; ++j)
                        if (std::abs(coeffs(j)) > 1e-8) support = std::max(support, ref.values(j));
                    if (support < omega - 1e-9) ok = false;
                }
            }
            counterexamples += ok ? 0 : 1;
        }
    }
    const double secs = seconds_since(t0);
    return {counterexamples == 0 && mismatch == 0 && secs < kSeconds,
            std::to_string(checks) + " (graph, budget) checks, " + std::to_string(counterexamples) +
                " counterexamples, " + std::to_string(mismatch) + " omega(S) mismatches vs. block oracle, " +
                fmt("%.1f", secs) + " s (limit 60 s)"};
}

/// omega(S) for k = 1 and X = I from the unqueried block of L.
double block_omega(const Matrix& lap, const std::vector<bool>& queried) {
    std::vector<Index> rest;
    for (std::size_t i = 0; i < queried.size(); ++i)
        if (!queried[i]) rest.push_back(static_cast<Index>(i));
    if (rest.empty()) return 2.0;
    Matrix block(static_cast<Index>(rest.size()), static_cast<Index>(rest.size()));
    for (std::size_t a = 0; a < rest.size(); ++a)
        for (std::size_t b = 0; b < rest.size(); ++b)
            block(static_cast<Index>(a), static_cast<Index>(b)) = lap(rest[a], rest[b]);
    return oracle::jacobi_eigen(block).values(0);
}

// 6. One-step bandwidth gain: biased selection vs. random selection.
Outcome biased_gain() {
    constexpr int kTrials = 200;
    constexpr int kBoot = 10000;
    constexpr Index kN = 30;
    constexpr int kStart = 3;
    std::vector<double> diff;
    double sum_b = 0.0, sum_r = 0.0;
    for (std::uint64_t t = 0; t < kTrials; ++t) {
        const auto net = generate_graph(WattsStrogatz{}, kN, derive_seed(6, {t}));
        const auto spectrum = laplacian_spectrum(net.graph);
        const Matrix lap = oracle::laplacian(kN, raw_edges(net.graph));
        const auto x = CovariateMatrix::identity(kN);
        Rng rng(derive_seed(6, {t, 1}));

        std::vector<NodeId> s;
        while (static_cast<int>(s.size()) < kStart) {
            const auto v = static_cast<NodeId>(rng.below(kN));
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::vector<bool> mask(kN, false);
        for (NodeId v : s) mask[static_cast<std::size_t>(v)] = true;
        const double base = block_omega(lap, mask);

        // Biased: barrier-potential candidates, then the most informative one.
        SelectorConfig cfg;
        cfg.spectral_dim = 10;
        cfg.budget = 10;
        const auto prob = prepare_problem(spectrum, x, cfg);
        const auto state = init_state(prob.smoothed.rank, cfg.epsilon, *cfg.m, 1);
        const Vector p = sampling_probs(state, prob.smoothed);
        Vector masked = p;
        for (NodeId v : s) masked(v) = 0.0;
        const auto draw = draw_candidates(masked / masked.sum(), *cfg.m, rng, cfg.epsilon, potential(state));
        const auto ctx = build_context(spectrum, x, s, 1);
        const NodeId pick = argmax_score(info_gain_scores(ctx), draw.candidates);

        NodeId other = -1;
        while (other < 0 || mask[static_cast<std::size_t>(other)]) other = static_cast<NodeId>(rng.below(kN));

        auto with = [&](NodeId v) {
            auto m = mask;
            m[static_cast<std::size_t>(v)] = true;
            return block_omega(lap, m) - base;
        };
        const double gb = with(pick), gr = with(other);
        sum_b += gb;
        sum_r += gr;
        diff.push_back(gb - gr);
    }
    // One-sided 95% percentile bootstrap on the mean paired difference.
    Rng boot(derive_seed(6, {99}));
    std::vector<double> means;
    means.reserve(kBoot);
    for (int b = 0; b < kBoot; ++b) {
        double acc = 0.0;
        for (int j = 0; j < kTrials; ++j) acc += diff[boot.below(kTrials)];
        means.push_back(acc / kTrials);
    }
    const double lower = quantile(means, 0.05);
    return {lower >= 0.0, "mean gain biased " + fmt("%.4f", sum_b / kTrials) + " vs random " +
                              fmt("%.4f", sum_r / kTrials) + ", bootstrap 5% bound of difference " +
                              fmt("%.4f", lower) + " (need >= 0)"};
}

SimulationConfig figure_config(const SyntheticSpec& spec) {
    SimulationConfig cfg;
    cfg.spec = spec;
    cfg.strategies = {Strategy::Proposed, Strategy::Random, Strategy::DOptimal};
    cfg.seeds = 10;
    cfg.seed = 0;
    cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return cfg;
}

const CellAggregate& cell(const std::vector<CellAggregate>& cells, Strategy s, double sigma2) {
    for (const auto& c : cells)
        if (c.strategy == s && c.sigma2 == sigma2) return c;
    throw Error(ErrorCode::InvalidConfig, "missing cell");
}

// 7. Figure 1 direction.
Outcome figure_one() {
    constexpr double kSeconds = 600.0;
    constexpr double kDoptShare = 0.8;
    const auto t0 = Clock::now();
    int cells = 0, beat_random = 0, beat_dopt = 0, failures = 0;
    std::ostringstream lost;
    for (const auto& spec :
         {SyntheticSpec::watts_strogatz(), SyntheticSpec::stochastic_block(), SyntheticSpec::barabasi_albert()}) {
        const auto report = run_simulation(figure_config(spec));
        for (const auto& r : report.records) failures += r.error ? 1 : 0;
        for (double s2 : report.config.sigma2_grid) {
            ++cells;
            const double mp = cell(report.aggregates, Strategy::Proposed, s2).mse_median;
            const double mr = cell(report.aggregates, Strategy::Random, s2).mse_median;
            const double md = cell(report.aggregates, Strategy::DOptimal, s2).mse_median;
            beat_random += mp < mr ? 1 : 0;
            beat_dopt += mp < md ? 1 : 0;
            if (s2 == 1.0) {
                lost << ' ' << topology_name(spec.topology) << "@1.0 p/r/d=" << fmt("%.3f", mp) << '/'
                     << fmt("%.3f", mr) << '/' << fmt("%.3f", md);
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass =
        failures == 0 && beat_random == cells && beat_dopt >= kDoptShare * cells && secs < kSeconds;
    return {pass, "proposed < random in " + std::to_string(beat_random) + "/" + std::to_string(cells) +
                      " cells (need all), < D-optimal in " + std::to_string(beat_dopt) + "/" +
                      std::to_string(cells) + " (need >= 80%), " + std::to_string(failures) + " failed runs, " +
                      fmt("%.0f", secs) + " s;" + lost.str()};
}

// 8. Ablation directions.
Outcome ablation() {
    auto cond_cfg = figure_config(SyntheticSpec::watts_strogatz());
    cond_cfg.strategies = {Strategy::Proposed, Strategy::Random};
    cond_cfg.seeds = 20;
    cond_cfg.sigma2_grid = {1.0};
    const auto cond = run_simulation(cond_cfg);
    const double cp = cell(cond.aggregates, Strategy::Proposed, 1.0).condition_median;
    const double cr = cell(cond.aggregates, Strategy::Random, 1.0).condition_median;

    auto repr_cfg = figure_config(SyntheticSpec::stochastic_block());
    repr_cfg.strategies = {Strategy::Proposed, Strategy::ProposedNoRepr};
    repr_cfg.sigma2_grid = {1.0};
    const auto repr = run_simulation(repr_cfg);
    const double mp = cell(repr.aggregates, Strategy::Proposed, 1.0).mse_median;
    const double mn = cell(repr.aggregates, Strategy::ProposedNoRepr, 1.0).mse_median;
    return {cp <= cr && mn > mp, "WS median condition proposed " + fmt("%.2f", cp) + " vs random " +
                                     fmt("%.2f", cr) + "; SBM median MSE no_repr " + fmt("%.4f", mn) +
                                     " vs proposed " + fmt("%.4f", mp) + " (need strictly worse)"};
}

// 9. Softmax equivalence.
Outcome softmax_equivalence() {
    long nodes = 0, agree = 0;
    for (std::uint64_t fit = 0; fit < 20; ++fit) {
        auto spec = SyntheticSpec::stochastic_block();
        spec.seed = 900 + fit;
        const auto inst = generate_instance(spec);
        SelectorConfig cfg;
        cfg.budget = 30;
        cfg.spectral_dim = 10;
        cfg.seed = fit;
        const auto prob = prepare_problem(inst.spectrum, inst.x, cfg);
        const auto q = select_nodes(prob, inst.x, cfg);
        std::vector<LabeledSample> samples;
        for (std::size_t j = 0; j < q.nodes.size(); ++j) {
            samples.push_back({q.nodes[j], static_cast<double>(inst.communities[static_cast<std::size_t>(q.nodes[j])]),
                               q.weights[j]});
        }
        const auto c = classify(prob.smoothed, samples, 4);
        const auto soft = argmax_rows(softmax_rows(c.scores));
        const auto raw = argmax_rows(c.scores);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            ++nodes;
            agree += raw[i] == soft[i] ? 1 : 0;
        }
    }
    return {agree == nodes, std::to_string(agree) + "/" + std::to_string(nodes) + " nodes agree over 20 fits"};
}

// 10. Expected potential does not increase.
Outcome potential_drift() {
    constexpr int kSteps = 500;
    int ok = 0;
    double worst_z = -1e300;
    for (std::uint64_t k = 0; k < 10; ++k) {
        auto spec = SyntheticSpec::watts_strogatz();
        spec.seed = 50 + k;
        const auto inst = generate_instance(spec);
        SelectorConfig cfg;
        cfg.budget = 10;
        cfg.spectral_dim = 10;
        const auto prob = prepare_problem(inst.spectrum, inst.x, cfg);
        const Matrix& basis = prob.smoothed.basis;

        // Distinct states: advance k + 1 sampled steps from init.
        Rng rng(derive_seed(10, {k}));
        QueryState s = init_state(prob.smoothed.rank, 1e-3, 50, static_cast<int>(k) + 2);
        for (std::uint64_t t = 0; t <= k; ++t) {
            const Vector p = sampling_probs(s, basis);
            const NodeId i = CategoricalSampler(p)(rng);
            s = apply_selection(s, i, p(i), basis.row(i));
        }
        const double phi0 = potential(s);
        const Vector p = sampling_probs(s, basis);
        const CategoricalSampler sampler(p);
        double sum = 0.0, sum_sq = 0.0;
        for (int j = 0; j < kSteps; ++j) {
            const NodeId i = sampler(rng);
            const double d = potential(apply_selection(s, i, p(i), basis.row(i))) - phi0;
            sum += d;
            sum_sq += d * d;
        }
        const double mean = sum / kSteps;
        const double se = std::sqrt(std::max(0.0, (sum_sq / kSteps - mean * mean) / (kSteps - 1)));
        if (mean <= 3.0 * se) ++ok;
        worst_z = std::max(worst_z, se > 0.0 ? mean / se : (mean > 0.0 ? 1e300 : -1e300));
    }
    return {ok == 10, std::to_string(ok) + "/10 states with mean dPhi <= 3 SE (largest mean/SE " +
                          fmt("%.2f", worst_z) + ")"};
}

// 11. WLS against brute-force normal equations.
Outcome wls_oracle() {
    constexpr double kTol = 1e-8;
    std::mt19937 gen(11);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> uw(0.05, 5.0);
    double worst = 0.0;
    for (unsigned inst = 0; inst < 50; ++inst) {
        const Index n = 4 + inst % 7;
        const auto raw = oracle::random_connected_graph(n, 0.5, 1100 + inst);
        const Graph g = to_graph(n, raw);
        const Index p = 1 + inst % 4;
        Matrix xm(n, p);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < p; ++j) xm(i, j) = nd(gen);
        const CovariateMatrix x(xm);
        SelectorConfig cfg;
        cfg.budget = static_cast<int>(n);
        cfg.spectral_dim = std::min<Index>(n, p + 1 + inst % 3);
        const auto prob = prepare_problem(g, x, cfg);
        std::vector<LabeledSample> samples;
        for (NodeId i = 0; i < n; ++i)
            if ((i + inst) % 3 != 0) samples.push_back({i, nd(gen), uw(gen)});
        const Vector beta = fit_wls(prob.smoothed, samples).beta();

        const Index k = static_cast<Index>(samples.size());
        Matrix a(k, prob.smoothed.rank);
        Vector w(k), y(k);
        for (Index j = 0; j < k; ++j) {
            const auto& smp = samples[static_cast<std::size_t>(j)];
            a.row(j) = prob.smoothed.basis.row(smp.node);
            w(j) = smp.weight;
            y(j) = smp.response;
        }
        const Vector ref = oracle::weighted_normal_solve(a, w, y);
        worst = std::max(worst, (beta - ref).cwiseAbs().maxCoeff());
    }
    return {worst <= kTol, "max |beta - beta_oracle| = " + fmt("%.2e", worst) + " over 50 instances (tol 1e-8)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"noiseless exact recovery", noiseless_recovery},
        {"initial potential equals epsilon", init_identity},
        {"probability normalization", probability_normalization},
        {"barrier bracket", barrier_bracket},
        {"identification oracle", identification},
        {"biased vs random bandwidth gain", biased_gain},
        {"synthetic MSE direction", figure_one},
        {"ablation direction", ablation},
        {"softmax argmax equivalence", softmax_equivalence},
        {"expected potential non-increase", potential_drift},
        {"WLS oracle equivalence", wls_oracle},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
