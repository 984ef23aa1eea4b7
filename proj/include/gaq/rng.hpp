#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "gaq/types.hpp"

namespace gaq {

/// Deterministic sub-stream seed: folds each component through SplitMix64.
/// All randomness in a run derives from one base seed this way.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

/// Random stream with a fixed, documented generator family.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the C++
/// standard. Distributions are implemented here instead of using the
/// <random> distribution classes, whose algorithms differ between standard
/// library implementations:
///  - uniform():    (x >> 11) * 2^-53, in [0, 1)
///  - below(n):     rejection sampling on the 64-bit output, unbiased
///  - normal():     Marsaglia polar method, spare value cached
///  - categorical: inverse CDF by binary search over the cumulative sum
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform();
    std::uint64_t below(std::uint64_t n);
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Inverse-CDF categorical sampler over non-negative weights.
class CategoricalSampler {
public:
    explicit CategoricalSampler(const Vector& weights);
    Index operator()(Rng& rng) const;

private:
    std::vector<double> cumulative_;
};

}  // namespace gaq
