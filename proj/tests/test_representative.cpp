#include <cmath>
#include <random>

#include "gaq/representative.hpp"
#include "gaq/synthgen.hpp"
#include "helpers.hpp"

using namespace gaq;
using testing::expect_error;

namespace {

/// Orthonormal n x r basis from a seeded Gaussian matrix.
Matrix random_basis(Index n, Index r, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    Matrix a(n, r);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < r; ++j) a(i, j) = nd(gen);
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, r);
}

SmoothedCovariates ws_basis(std::uint64_t seed) {
    auto spec = SyntheticSpec::watts_strogatz();
    spec.seed = seed;
    const auto net = generate_graph(spec.topology, spec.n, seed);
    const auto spectrum = laplacian_spectrum(net.graph);
    const auto x = synthetic_covariates(spectrum, spec, seed);
    return smoothed_basis(spectral_basis(spectrum, 10, SpectralMode::LowPass), x);
}

/// Runs `steps` sampled updates (one candidate per round) from init.
QueryState advance(const Matrix& basis, int steps, Rng& rng, double eps = 1e-3, int m = 50) {
    QueryState s = init_state(basis.cols(), eps, m, steps + 1);
    for (int t = 0; t < steps; ++t) {
        const Vector p = sampling_probs(s, basis);
        const NodeId i = CategoricalSampler(p)(rng);
        s = apply_selection(s, i, p(i), basis.row(i));
    }
    return s;
}

}  // namespace

TEST_CASE("init constants") {
    const auto s = init_state(2, 0.01, 10, 5);
    CHECK(s.u == doctest::Approx(400.0));
    CHECK(s.l == doctest::Approx(-400.0));
    CHECK(s.kappa == doctest::Approx(3960.0));
    CHECK(s.budget_left == 5);
    CHECK(s.c.isZero());
    CHECK(barrier_bracket_holds(s));
    for (double eps : {1e-3, 0.01, 0.05}) {
        CHECK(potential(init_state(7, eps, 10, 1)) == doctest::Approx(eps).epsilon(1e-14));
    }

    expect_error([] { init_state(2, 0.2, 10, 1); }, ErrorCode::EpsilonOutOfRange);
    expect_error([] { init_state(2, 0.1, 10, 1); }, ErrorCode::EpsilonOutOfRange);
    expect_error([] { init_state(2, 0.0, 10, 1); }, ErrorCode::EpsilonOutOfRange);
    expect_error([] { init_state(2, 0.01, 10, 0); }, ErrorCode::InvalidBudget);
    expect_error([] { init_state(0, 0.01, 10, 1); }, ErrorCode::InvalidDimension);
}

TEST_CASE("potential closed form and barrier violation") {
    auto s = init_state(3, 0.01, 10, 1);
    s.c = 25.0 * Matrix::Identity(3, 3);
    CHECK(potential(s) == doctest::Approx(3.0 / (s.u - 25.0) + 3.0 / (25.0 - s.l)));

    s.c(0, 0) = s.u;
    expect_error([&] { potential(s); }, ErrorCode::BarrierViolated);
    CHECK(!barrier_bracket_holds(s));
    s.c(0, 0) = s.l - 1.0;
    expect_error([&] { potential(s); }, ErrorCode::BarrierViolated);
}

TEST_CASE("sampling probabilities at init") {
    const Matrix basis = random_basis(12, 4, 1);
    const auto s = init_state(4, 1e-3, 50, 3);
    const Vector p = sampling_probs(s, basis);
    for (Index i = 0; i < 12; ++i) CHECK(p(i) == doctest::Approx(basis.row(i).squaredNorm() / 4.0));
    CHECK(std::abs(p.sum() - 1.0) <= 1e-10);

    const Vector uniform = sampling_probs(init_state(5, 1e-3, 50, 3), Matrix::Identity(5, 5));
    for (Index i = 0; i < 5; ++i) CHECK(uniform(i) == doctest::Approx(0.2));

    expect_error([&] { sampling_probs(s, Matrix::Identity(5, 5)); }, ErrorCode::DimensionMismatch);
}

TEST_CASE("sampling probabilities agree with explicit inversion along a run") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Index n = 30, r = 2 + seed % 5;
        const Matrix basis = random_basis(n, r, 100 + seed);
        Rng rng(seed);
        QueryState s = init_state(r, 0.01, 20, 40);
        for (int t = 0; t < 40; ++t) {
            const Vector p = sampling_probs(s, basis);
            const Vector ref = oracle::probabilities(basis, s.c, s.u, s.l);
            CHECK((p - ref).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(std::abs(p.sum() - 1.0) <= 1e-10);
            CHECK(potential(s) == doctest::Approx(oracle::potential(s.c, s.u, s.l)).epsilon(1e-10));
            const NodeId i = CategoricalSampler(p)(rng);
            s = apply_selection(s, i, p(i), basis.row(i));
        }
    }
}

TEST_CASE("candidate draws") {
    Vector e3 = Vector::Zero(6);
    e3(3) = 1.0;
    Rng rng(7);
    const auto one = draw_candidates(e3, 1, rng, 1e-3, 2.0);
    REQUIRE(one.candidates.size() == 1);
    CHECK(one.candidates[0] == 3);
    CHECK(one.per_node_weight.at(3) == doctest::Approx(1e-3 / 2.0));

    const Vector p{{0.1, 0.2, 0.3, 0.4}};
    Rng a(42), b(42);
    CHECK(draw_candidates(p, 50, a, 1e-3, 1.0).candidates == draw_candidates(p, 50, b, 1e-3, 1.0).candidates);

    Rng big(99);
    const auto draw = draw_candidates(Vector::Constant(4, 0.25), 100000, big, 1e-3, 1.0);
    std::vector<int> counts(4, 0);
    for (NodeId i : draw.candidates) ++counts[static_cast<std::size_t>(i)];
    for (int c : counts) CHECK(std::abs(c / 1e5 - 0.25) <= 0.01);
    CHECK(draw.per_node_weight.size() == 4);
}

TEST_CASE("first selection from init") {
    const Matrix basis = random_basis(10, 3, 5);
    const double eps = 1e-3;
    const int m = 50;
    const auto s0 = init_state(3, eps, m, 2);
    const Vector p = sampling_probs(s0, basis);
    const NodeId i = 4;
    const auto s1 = apply_selection(s0, i, p(i), basis.row(i));
    const RowVector v = basis.row(i);
    const Matrix expected = (3.0 / v.squaredNorm()) * v.transpose() * v;
    CHECK((s1.c - expected).norm() <= 1e-9);
    CHECK(s1.c.trace() == doctest::Approx(3.0));
    CHECK(oracle::rank(s1.c) == 1);
    CHECK(s1.u - s0.u == doctest::Approx(1.0 / (1.0 - m * eps)));
    CHECK(s1.l - s0.l == doctest::Approx(1.0 / (1.0 + m * eps)));
    CHECK(s1.weights.at(i) == doctest::Approx((eps / (p(i) * eps)) / s0.kappa));
    CHECK(s1.budget_left == 1);
    CHECK(s1.t == 1);
    CHECK(s1.nodes == std::vector<NodeId>{i});

    // Re-selection keeps |S| and grows the weight.
    const Vector p1 = sampling_probs(s1, basis);
    const auto s2 = apply_selection(s1, i, p1(i), basis.row(i));
    CHECK(s2.nodes.size() == 1);
    CHECK(s2.weights.at(i) > s1.weights.at(i));
    CHECK(s2.budget_left == 0);
    expect_error([&] { apply_selection(s2, 0, 0.1, basis.row(0)); }, ErrorCode::BudgetExhausted);
    expect_error([&] { apply_selection(s1, 0, 0.0, basis.row(0)); }, ErrorCode::InvalidConfig);
}

TEST_CASE("prose update rule") {
    const Matrix basis = random_basis(10, 3, 6);
    const double eps = 1e-3;
    const auto s0 = init_state(3, eps, 50, 2, UpdateRule::Prose);
    const Vector p = sampling_probs(s0, basis);
    const auto s1 = apply_selection(s0, 2, p(2), basis.row(2));
    CHECK(s1.u - s0.u == doctest::Approx(1.0 / (1.0 - eps)));
    CHECK(s1.l - s0.l == doctest::Approx(1.0 / (1.0 + eps)));
    CHECK(s1.weights.at(2) == doctest::Approx(1.0 / p(2)));
}

TEST_CASE("barrier bracket holds across seeded step trials") {
    int steps = 0, held = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto sc = ws_basis(seed);
        for (std::uint64_t run = 0; run < 10; ++run) {
            Rng rng(derive_seed(seed, {run}));
            QueryState s = init_state(sc.rank, 1e-3, 50, 25);
            for (int t = 0; t < 25; ++t) {
                ++steps;
                try {
                    const Vector p = sampling_probs(s, sc.basis);
                    CHECK(std::abs(p.sum() - 1.0) <= 1e-10);
                    const NodeId i = CategoricalSampler(p)(rng);
                    s = apply_selection(s, i, p(i), sc.basis.row(i));
                } catch (const Error&) {
                    break;
                }
                if (barrier_bracket_holds(s)) ++held;
                double smallest = 1e300;
                for (const auto& [node, w] : s.weights) smallest = std::min(smallest, w);
                CHECK(smallest > 0.0);
            }
        }
    }
    CHECK(steps == 10000);
    CHECK(held >= 0.99 * steps);
}

TEST_CASE("expected potential does not increase") {
    const auto sc = ws_basis(3);
    Rng warm(11);
    const QueryState s = advance(sc.basis, 5, warm);
    const double phi0 = potential(s);
    const Vector p = sampling_probs(s, sc.basis);
    const CategoricalSampler sampler(p);
    Rng rng(12);
    const int trials = 2000;
    double sum = 0.0, sum_sq = 0.0;
    for (int j = 0; j < trials; ++j) {
        const NodeId i = sampler(rng);
        const double phi1 = potential(apply_selection(s, i, p(i), sc.basis.row(i)));
        sum += phi1;
        sum_sq += phi1 * phi1;
    }
    const double mean = sum / trials;
    const double se = std::sqrt(std::max(0.0, sum_sq / trials - mean * mean) / trials);
    CHECK(mean <= phi0 + 3.0 * se);
}

TEST_CASE("mean covariance increment is eps/Phi times the identity") {
    const auto sc = ws_basis(4);
    Rng warm(21);
    const QueryState s = advance(sc.basis, 3, warm);
    const double phi = potential(s);
    const Vector p = sampling_probs(s, sc.basis);
    const CategoricalSampler sampler(p);
    Rng rng(22);
    const int draws = 20000;
    Matrix mean = Matrix::Zero(sc.rank, sc.rank);
    for (int j = 0; j < draws; ++j) {
        const NodeId i = sampler(rng);
        const RowVector v = sc.basis.row(i);
        mean += (s.epsilon / (p(i) * phi)) * v.transpose() * v;
    }
    mean /= draws;
    const Matrix expected = (s.epsilon / phi) * Matrix::Identity(sc.rank, sc.rank);
    CHECK((mean - expected).norm() / expected.norm() <= 0.05);
}
