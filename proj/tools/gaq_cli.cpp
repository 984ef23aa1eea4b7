// gaq: graph active querying from the command line.
//
// Exit codes: 0 success, 2 input error (unreadable or malformed files, bad
// configuration), 3 algorithm error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "gaq/error.hpp"
#include "gaq/harness.hpp"
#include "gaq/io.hpp"
#include "gaq/recovery.hpp"
#include "gaq/selector.hpp"

namespace fs = std::filesystem;
using gaq::Error;
using gaq::ErrorCode;
using gaq::io::Json;

namespace {

constexpr int kInputError = 2;
constexpr int kAlgorithmError = 3;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string out_dir = ".";
    int threads = 1;
};

struct DataArgs {
    std::string graph;
    std::optional<gaq::Index> num_nodes;
    std::string covariates;
    bool zscore = false;
};

struct SelectorArgs {
    std::optional<int> budget;
    std::optional<gaq::Index> dim;
    std::string mode;
    std::string m;
    std::optional<double> epsilon;
    std::optional<int> k;
    std::string rule;
    bool no_representative = false;
};

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("gaq");
    logger->set_pattern("gaq: %l: %v");
    spdlog::set_default_logger(logger);
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("GAQ_LOG")) level = spdlog::level::from_str(env);
    spdlog::set_level(level);
}

gaq::io::AppConfig load(const Globals& g) {
    gaq::io::AppConfig cfg = g.config.empty() ? gaq::io::AppConfig{} : gaq::io::load_config(g.config);
    if (g.seed) {
        cfg.selector.seed = *g.seed;
        cfg.simulation.seed = *g.seed;
    }
    cfg.simulation.threads = g.threads;
    return cfg;
}

void apply(const SelectorArgs& a, gaq::SelectorConfig& cfg) {
    if (a.budget) cfg.budget = *a.budget;
    if (a.dim) cfg.spectral_dim = *a.dim;
    if (!a.mode.empty()) cfg.mode = gaq::io::parse_mode(a.mode);
    if (!a.m.empty()) {
        if (a.m == "auto") {
            cfg.m.reset();
        } else {
            try {
                cfg.m = std::stoi(a.m);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidConfig, "--m must be an integer or 'auto'");
            }
        }
    }
    if (a.epsilon) cfg.epsilon = *a.epsilon;
    if (a.k) cfg.k = *a.k;
    if (!a.rule.empty()) cfg.rule = gaq::io::parse_rule(a.rule);
    if (a.no_representative) cfg.representative = false;
}

struct Data {
    gaq::Graph graph;
    gaq::CovariateMatrix x{gaq::Matrix::Ones(1, 1)};
};

Data load_data(const DataArgs& a, const gaq::io::AppConfig& cfg) {
    const std::string graph_path = !a.graph.empty() ? a.graph : cfg.graph_path.value_or("");
    if (graph_path.empty()) throw Error(ErrorCode::InvalidConfig, "no graph file given (--graph or [graph] path)");
    const auto n = a.num_nodes ? a.num_nodes : cfg.num_nodes;
    Data d{gaq::io::read_edge_list(graph_path, n)};
    spdlog::info("graph {}: {} nodes, {} edges", graph_path, d.graph.num_nodes(), d.graph.edges().size());

    const std::string cov_path = !a.covariates.empty() ? a.covariates : cfg.covariates_path.value_or("");
    if (cov_path.empty()) {
        spdlog::info("no covariates given, using the identity");
        d.x = gaq::CovariateMatrix::identity(d.graph.num_nodes());
    } else {
        d.x = gaq::io::read_covariates(cov_path);
        if (a.zscore || cfg.zscore) d.x = d.x.zscored();
    }
    if (d.x.rows() != d.graph.num_nodes()) {
        throw Error(ErrorCode::ParseError, "covariates have " + std::to_string(d.x.rows()) +
                                                      " rows, graph has " + std::to_string(d.graph.num_nodes()) +
                                                      " nodes");
    }
    return d;
}

fs::path out_path(const Globals& g, const std::string& explicit_path, const std::string& name) {
    return explicit_path.empty() ? fs::path(g.out_dir) / name : fs::path(explicit_path);
}

void add_data_options(CLI::App* cmd, DataArgs& a) {
    cmd->add_option("--graph", a.graph, "Edge list CSV (src,dst[,weight])");
    cmd->add_option("--num-nodes", a.num_nodes, "Node count when isolated ids would be missing from the edge list");
    cmd->add_option("--covariates", a.covariates, "Covariate CSV, one row per node (default: identity)");
    cmd->add_flag("--zscore", a.zscore, "Z-score covariate columns");
}

void add_selector_options(CLI::App* cmd, SelectorArgs& a) {
    cmd->add_option("--budget,-B", a.budget, "Number of query rounds");
    cmd->add_option("--dim,-d", a.dim, "Spectral dimension d (default min(p, B))");
    cmd->add_option("--mode", a.mode, "lowpass or lowhigh");
    cmd->add_option("--m", a.m, "Candidate count, or 'auto' to tune");
    cmd->add_option("--epsilon", a.epsilon, "Barrier step size (< 1/m)");
    cmd->add_option("--k", a.k, "Laplacian power for informativeness");
    cmd->add_option("--rule", a.rule, "algorithm or prose update constants");
    cmd->add_flag("--no-representative", a.no_representative, "Score every unqueried node each round");
}

std::vector<gaq::LabeledSample> regression_samples(const std::vector<gaq::io::LabelRow>& rows,
                                                   const gaq::io::QueryFile& q,
                                                   std::vector<gaq::io::LabelRow>& held_out) {
    std::vector<gaq::LabeledSample> out;
    for (const auto& r : rows) {
        const auto it = std::find(q.nodes.begin(), q.nodes.end(), r.node);
        if (it == q.nodes.end()) {
            held_out.push_back(r);
            continue;
        }
        out.push_back({r.node, 0.0, q.weights[static_cast<std::size_t>(it - q.nodes.begin())]});
    }
    return out;
}

double parse_response(const std::string& s, gaq::NodeId node) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size()) {
        throw Error(ErrorCode::ParseError, "label for node " + std::to_string(node) + " is not a number: " + s);
    }
    return v;
}

std::string csv_number(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

gaq::SmoothedCovariates basis_for(const Data& d, gaq::Index spectral_dim, gaq::SpectralMode mode, double rank_tol) {
    gaq::SelectorConfig sel;
    sel.spectral_dim = spectral_dim;
    sel.mode = mode;
    sel.rank_tol = rank_tol;
    return gaq::prepare_problem(d.graph, d.x, sel).smoothed;
}

int cmd_select(const Globals& g, const DataArgs& da, const SelectorArgs& sa, const std::string& out) {
    auto cfg = load(g);
    apply(sa, cfg.selector);
    const Data d = load_data(da, cfg);
    const auto q = gaq::select_nodes(d.graph, d.x, cfg.selector);
    gaq::SelectorConfig echo = cfg.selector;
    echo.m = q.m_used;
    const auto path = out_path(g, out, "query.json");
    gaq::io::write_text(path, gaq::io::dump(gaq::io::query_to_json(q, echo)));
    spdlog::info("selected {} nodes in {} rounds, condition number {}", q.nodes.size(), q.rounds, q.condition_number);
    std::cout << path.string() << '\n';
    return 0;
}

int cmd_fit(const Globals& g, const DataArgs& da, const std::string& labels_arg, const std::string& query_arg,
            const std::string& task) {
    auto cfg = load(g);
    const Data d = load_data(da, cfg);
    const std::string labels_path = !labels_arg.empty() ? labels_arg : cfg.labels_path.value_or("");
    if (labels_path.empty()) throw Error(ErrorCode::InvalidConfig, "no labels file given (--labels)");
    if (query_arg.empty()) throw Error(ErrorCode::InvalidConfig, "no query file given (--query)");
    if (task != "regression" && task != "classification") {
        throw Error(ErrorCode::InvalidConfig, "--task must be regression or classification");
    }
    const auto rows = gaq::io::read_labels(labels_path);
    for (const auto& r : rows) {
        if (r.node >= d.graph.num_nodes()) {
            throw Error(ErrorCode::NodeIdOutOfRange, "label for node " + std::to_string(r.node) + " out of range");
        }
    }
    const auto q = gaq::io::query_from_json(Json::parse(gaq::io::read_text(query_arg), nullptr, true));

    std::vector<gaq::io::LabelRow> held_out;
    auto samples = regression_samples(rows, q, held_out);
    if (!held_out.empty()) {
        spdlog::warn("{} labeled nodes are outside the query set; ignored for fitting, used as held-out", held_out.size());
    }
    if (samples.empty()) throw Error(ErrorCode::EmptyLabelIntersection, "no labels on queried nodes");

    const gaq::Index dim = q.config.spectral_dim.value_or(std::min<gaq::Index>(d.x.cols(), q.config.budget));
    const auto sc = basis_for(d, dim, q.config.mode, q.config.rank_tol);

    gaq::io::ModelFile mf;
    mf.spectral_dim = dim;
    mf.mode = q.config.mode;
    mf.rank_tol = q.config.rank_tol;
    Json metrics;
    std::vector<bool> eval_mask(static_cast<std::size_t>(d.graph.num_nodes()), false);
    for (const auto& r : held_out) eval_mask[static_cast<std::size_t>(r.node)] = true;

    std::ostringstream pred;
    if (task == "regression") {
        std::map<gaq::NodeId, double> truth;
        for (const auto& r : rows) truth[r.node] = parse_response(r.label, r.node);
        for (auto& s : samples) s.response = truth.at(s.node);
        mf.model = gaq::fit_wls(sc, samples);
        const gaq::Vector f = gaq::predict(sc, mf.model);
        pred << "node_id,prediction\n";
        for (gaq::Index i = 0; i < f.size(); ++i) pred << i << ',' << csv_number(f(i)) << '\n';

        // Held-out nodes when present, the training nodes otherwise.
        std::vector<bool> mask = eval_mask;
        if (held_out.empty()) {
            for (const auto& s : samples) mask[static_cast<std::size_t>(s.node)] = true;
        }
        gaq::Vector y = gaq::Vector::Zero(f.size());
        double num = 0.0, den = 0.0;
        for (const auto& [node, v] : truth) {
            y(node) = v;
            if (!mask[static_cast<std::size_t>(node)]) continue;
            num += (f(node) - v) * (f(node) - v);
            den += v * v;
        }
        metrics["evaluated_on"] = held_out.empty() ? "training" : "held_out";
        metrics["mse"] = gaq::io::number(gaq::mse(f, y, mask));
        metrics["relative_error"] = gaq::io::number(den > 0.0 ? std::sqrt(num / den) : std::sqrt(num));
    } else {
        mf.classes = gaq::io::ClassMap::from_labels(rows);
        std::map<gaq::NodeId, gaq::Index> truth;
        for (const auto& r : rows) truth[r.node] = mf.classes.index_of(r.label);
        for (auto& s : samples) s.response = static_cast<double>(truth.at(s.node));
        const auto cls = gaq::classify(sc, samples, mf.classes.size());
        mf.model = cls.model;
        if (cls.model.single_class) spdlog::warn("all training labels share one class; predictions are constant");
        pred << "node_id,label\n";
        std::ostringstream scores;
        scores << "node_id,class,score\n";
        for (gaq::Index i = 0; i < cls.scores.rows(); ++i) {
            pred << i << ',' << mf.classes.names[static_cast<std::size_t>(cls.labels[static_cast<std::size_t>(i)])]
                 << '\n';
            for (gaq::Index c = 0; c < cls.scores.cols(); ++c) {
                scores << i << ',' << mf.classes.names[static_cast<std::size_t>(c)] << ','
                       << csv_number(cls.scores(i, c)) << '\n';
            }
        }
        gaq::io::write_text(fs::path(g.out_dir) / "scores.csv", scores.str());
        if (!held_out.empty()) {
            std::vector<gaq::Index> t(static_cast<std::size_t>(d.graph.num_nodes()), 0);
            for (const auto& [node, c] : truth) t[static_cast<std::size_t>(node)] = c;
            const auto f1 = gaq::f1_scores(cls.labels, t, eval_mask);
            metrics["micro_f1"] = f1.micro;
            metrics["macro_f1"] = f1.macro;
        }
        metrics["single_class"] = cls.model.single_class;
    }
    metrics["num_train"] = samples.size();
    metrics["num_held_out"] = held_out.size();
    metrics["rank_used"] = mf.model.rank_used;
    metrics["condition_number"] = gaq::io::number(q.condition_number);

    gaq::io::write_text(fs::path(g.out_dir) / "model.json", gaq::io::dump(gaq::io::model_to_json(mf)));
    gaq::io::write_text(fs::path(g.out_dir) / "predictions.csv", pred.str());
    std::cout << gaq::io::dump(metrics);
    return 0;
}

int cmd_predict(const Globals& g, const DataArgs& da, const std::string& model_path) {
    auto cfg = load(g);
    const Data d = load_data(da, cfg);
    if (model_path.empty()) throw Error(ErrorCode::InvalidConfig, "no model file given (--model)");
    const auto mf = gaq::io::model_from_json(Json::parse(gaq::io::read_text(model_path), nullptr, true));
    const auto sc = basis_for(d, mf.spectral_dim, mf.mode, mf.rank_tol);
    const gaq::Matrix scores = gaq::predict_scores(sc.basis, mf.model);
    std::ostringstream pred;
    if (mf.model.task == gaq::Task::Regression) {
        pred << "node_id,prediction\n";
        for (gaq::Index i = 0; i < scores.rows(); ++i) pred << i << ',' << csv_number(scores(i, 0)) << '\n';
    } else {
        auto labels = gaq::argmax_rows(scores);
        if (mf.model.single_class) {
            const auto c = gaq::argmax_rows(gaq::Matrix(scores.colwise().sum()))[0];
            labels.assign(labels.size(), c);
        }
        pred << "node_id,label\n";
        for (gaq::Index i = 0; i < scores.rows(); ++i) {
            pred << i << ',' << mf.classes.names[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])]
                 << '\n';
        }
    }
    const auto path = fs::path(g.out_dir) / "predictions.csv";
    gaq::io::write_text(path, pred.str());
    std::cout << path.string() << '\n';
    return 0;
}

struct SimulateArgs {
    std::string topology;
    std::vector<std::string> strategies;
    std::vector<double> sigma2;
    std::vector<int> budgets;
    std::optional<int> seeds;
    bool ablation = false;
    bool regenerate = false;
    std::string export_dir;
};

std::string signal_csv(const gaq::Vector& v) {
    std::ostringstream out;
    out.precision(17);
    out << "node_id,label\n";
    for (gaq::Index i = 0; i < v.size(); ++i) out << i << ',' << v(i) << '\n';
    return out.str();
}

/// Writes one instance of the spec as edges.csv, covariates.csv, labels.csv
/// (noisy responses) and truth.csv (noiseless signal).
int export_instance(const gaq::SyntheticSpec& spec, const fs::path& dir) {
    const auto inst = gaq::generate_instance(spec);
    std::ostringstream edges;
    edges.precision(17);
    edges << "src,dst,weight\n";
    for (const auto& e : inst.graph.edges()) edges << e.src << ',' << e.dst << ',' << e.weight << '\n';
    std::ostringstream cov;
    cov.precision(17);
    const auto& x = inst.x.values();
    for (gaq::Index i = 0; i < x.rows(); ++i) {
        for (gaq::Index j = 0; j < x.cols(); ++j) cov << (j ? "," : "") << x(i, j);
        cov << '\n';
    }
    gaq::io::write_text(dir / "edges.csv", edges.str());
    gaq::io::write_text(dir / "covariates.csv", cov.str());
    gaq::io::write_text(dir / "labels.csv", signal_csv(inst.y));
    gaq::io::write_text(dir / "truth.csv", signal_csv(inst.f_true));
    std::cout << dir.string() << '\n';
    return 0;
}

int cmd_simulate(const Globals& g, const SimulateArgs& a, const SelectorArgs& sa) {
    auto cfg = load(g);
    auto& sim = cfg.simulation;
    if (!a.topology.empty()) {
        if (a.topology == "ws") {
            sim.spec = gaq::SyntheticSpec::watts_strogatz();
        } else if (a.topology == "sbm") {
            sim.spec = gaq::SyntheticSpec::stochastic_block();
        } else if (a.topology == "ba") {
            sim.spec = gaq::SyntheticSpec::barabasi_albert();
        } else {
            throw Error(ErrorCode::InvalidConfig, "--topology must be ws, sbm or ba");
        }
    }
    apply(sa, sim.selector);
    if (!a.strategies.empty()) {
        sim.strategies.clear();
        for (const auto& s : a.strategies) sim.strategies.push_back(gaq::parse_strategy(s));
    }
    if (a.ablation &&
        std::find(sim.strategies.begin(), sim.strategies.end(), gaq::Strategy::ProposedNoRepr) == sim.strategies.end()) {
        sim.strategies.push_back(gaq::Strategy::ProposedNoRepr);
    }
    if (!a.sigma2.empty()) sim.sigma2_grid = a.sigma2;
    if (!a.budgets.empty()) sim.budgets = a.budgets;
    if (a.seeds) sim.seeds = *a.seeds;
    if (a.regenerate) sim.regenerate_topology = true;
    if (!a.export_dir.empty()) {
        auto spec = sim.spec;
        spec.seed = sim.seed;
        if (!a.sigma2.empty()) spec.noise_sigma2 = a.sigma2.front();
        return export_instance(spec, a.export_dir);
    }

    const auto report = gaq::run_simulation(sim);
    std::size_t failed = 0;
    for (const auto& r : report.records) failed += r.error ? 1 : 0;
    if (failed) spdlog::warn("{} of {} records failed", failed, report.records.size());
    gaq::io::write_text(fs::path(g.out_dir) / "report.json", gaq::io::dump(gaq::io::report_to_json(report)));
    gaq::io::write_text(fs::path(g.out_dir) / "curves.csv", gaq::io::curves_csv(report.aggregates));
    std::cout << gaq::io::curves_csv(report.aggregates);
    return 0;
}

int cmd_tune(const Globals& g, const DataArgs& da, const SelectorArgs& sa, const std::vector<int>& grid_arg) {
    auto cfg = load(g);
    apply(sa, cfg.selector);
    const Data d = load_data(da, cfg);
    const std::vector<int> grid = grid_arg.empty() ? cfg.selector.m_grid : grid_arg;
    if (!std::is_sorted(grid.begin(), grid.end())) throw Error(ErrorCode::InvalidConfig, "m grid must be ascending");
    const auto t = gaq::tune_m(d.graph, d.x, cfg.selector, grid);
    Json j;
    j["m"] = t.m;
    j["no_conditioned_m"] = t.no_conditioned_m;
    j["grid"] = t.grid;
    Json conds = Json::array();
    for (double c : t.condition_numbers) conds.push_back(gaq::io::number(c));
    j["condition_numbers"] = conds;
    if (t.no_conditioned_m) spdlog::warn("no m in the grid reached condition number < 10");
    const std::string text = gaq::io::dump(j);
    gaq::io::write_text(fs::path(g.out_dir) / "tune.json", text);
    std::cout << text;
    return 0;
}

int cmd_diagnose(const Globals& g, const DataArgs& da, const SelectorArgs& sa, const std::string& query_arg,
                 const std::string& labels_arg) {
    auto cfg = load(g);
    apply(sa, cfg.selector);
    const Data d = load_data(da, cfg);
    Json j;
    if (!query_arg.empty()) {
        const auto q = gaq::io::query_from_json(Json::parse(gaq::io::read_text(query_arg), nullptr, true));
        Json omega = Json::array();
        for (double w : q.omega_trace) omega.push_back(gaq::io::number(w));
        j["omega_trace"] = omega;
        j["condition_number"] = gaq::io::number(q.condition_number);
        j["num_queried"] = q.nodes.size();
    } else {
        const auto q = gaq::select_nodes(d.graph, d.x, cfg.selector);
        Json omega = Json::array();
        for (double w : q.omega_trace) omega.push_back(gaq::io::number(w));
        j["omega_trace"] = omega;
        j["condition_number"] = gaq::io::number(q.condition_number);
        j["num_queried"] = q.nodes.size();
        j["rank"] = q.rank;
        Json bracket = Json::array();
        for (const auto& t : q.trace) bracket.push_back(t.bracket_ok);
        j["bracket_ok"] = bracket;
    }
    const std::string labels_path = !labels_arg.empty() ? labels_arg : cfg.labels_path.value_or("");
    if (!labels_path.empty()) {
        const auto rows = gaq::io::read_labels(labels_path);
        const auto classes = gaq::io::ClassMap::from_labels(rows);
        std::vector<gaq::Index> labels(static_cast<std::size_t>(d.graph.num_nodes()), -1);
        for (const auto& r : rows) {
            if (r.node >= d.graph.num_nodes()) throw Error(ErrorCode::NodeIdOutOfRange, "label node out of range");
            labels[static_cast<std::size_t>(r.node)] = classes.index_of(r.label);
        }
        // Edges with both endpoints labeled.
        std::size_t same = 0, total = 0;
        for (const auto& e : d.graph.edges()) {
            const auto a = labels[static_cast<std::size_t>(e.src)];
            const auto b = labels[static_cast<std::size_t>(e.dst)];
            if (a < 0 || b < 0) continue;
            ++total;
            same += a == b ? 1 : 0;
        }
        j["homophily_ratio"] = total ? Json(static_cast<double>(same) / static_cast<double>(total)) : Json(nullptr);
        j["homophily_edges"] = total;
    }
    std::cout << gaq::io::dump(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Graph active querying: select nodes to label, recover graph signals, run simulations"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "Base RNG seed");
    app.add_option("--config", g.config, "TOML config file");
    app.add_option("--out-dir", g.out_dir, "Directory for output files");
    app.add_option("--threads", g.threads, "Worker threads for simulate")->check(CLI::PositiveNumber);

    DataArgs data;
    SelectorArgs sel;

    std::string select_out;
    auto* select = app.add_subcommand("select", "Choose the nodes to label");
    add_data_options(select, data);
    add_selector_options(select, sel);
    select->add_option("--out", select_out, "Query JSON path (default <out-dir>/query.json)");

    std::string labels, query, task = "regression", model;
    auto* fit = app.add_subcommand("fit", "Fit on queried labels and predict every node");
    add_data_options(fit, data);
    fit->add_option("--labels", labels, "Labels CSV (node_id,label)");
    fit->add_option("--query", query, "Query JSON from select");
    fit->add_option("--task", task, "regression or classification");

    auto* predict = app.add_subcommand("predict", "Predict from a saved model");
    add_data_options(predict, data);
    predict->add_option("--model", model, "Model JSON from fit");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run a synthetic experiment grid");
    add_selector_options(simulate, sel);
    simulate->add_option("--topology", sim.topology, "ws, sbm or ba");
    simulate->add_option("--strategies", sim.strategies, "Strategies to compare")->delimiter(',');
    simulate->add_option("--sigma2", sim.sigma2, "Noise variances")->delimiter(',');
    simulate->add_option("--budgets", sim.budgets, "Budgets")->delimiter(',');
    simulate->add_option("--seeds", sim.seeds, "Replications per cell");
    simulate->add_flag("--ablation", sim.ablation, "Add the proposed_no_repr strategy");
    simulate->add_flag("--regenerate-topology", sim.regenerate, "New network per seed");
    simulate->add_option("--export", sim.export_dir,
                         "Write one instance (first --sigma2 level) as CSV files to this directory and stop");

    std::vector<int> grid;
    auto* tune = app.add_subcommand("tune-m", "Pick m by the condition-number rule");
    add_data_options(tune, data);
    add_selector_options(tune, sel);
    tune->add_option("--grid", grid, "Candidate m values, ascending")->delimiter(',');

    auto* diagnose = app.add_subcommand("diagnose", "Bandwidth trace, condition number, homophily");
    add_data_options(diagnose, data);
    add_selector_options(diagnose, sel);
    diagnose->add_option("--query", query, "Existing query JSON instead of running select");
    diagnose->add_option("--labels", labels, "Labels CSV for the homophily ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*select) return cmd_select(g, data, sel, select_out);
        if (*fit) return cmd_fit(g, data, labels, query, task);
        if (*predict) return cmd_predict(g, data, model);
        if (*simulate) return cmd_simulate(g, sim, sel);
        if (*tune) return cmd_tune(g, data, sel, grid);
        if (*diagnose) return cmd_diagnose(g, data, sel, query, labels);
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return e.is_input_error() ? kInputError : kAlgorithmError;
    } catch (const Json::exception& e) {
        spdlog::error("ParseError: {}", e.what());
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("ParseError: {}", e.what());
        return kInputError;
    }
    return 0;
}
