#include "gaq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t component : path) h = splitmix64(h ^ splitmix64(component + 0x632be59bd9b4e019ULL));
    return h;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

CategoricalSampler::CategoricalSampler(const Vector& weights) {
    cumulative_.resize(static_cast<std::size_t>(weights.size()));
    double acc = 0.0;
    for (Index i = 0; i < weights.size(); ++i) {
        if (!(weights(i) >= 0.0)) throw std::invalid_argument("categorical weights must be non-negative");
        acc += weights(i);
        cumulative_[static_cast<std::size_t>(i)] = acc;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("categorical weights sum to zero");
}

Index CategoricalSampler::operator()(Rng& rng) const {
    const double target = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    auto idx = static_cast<Index>(it - cumulative_.begin());
    // upper_bound never lands on a zero-weight entry except past the end
    // through rounding; step back to the last positive-weight entry then.
    const auto last = static_cast<Index>(cumulative_.size()) - 1;
    if (idx > last) idx = last;
    while (idx > 0 && cumulative_[static_cast<std::size_t>(idx)] == cumulative_[static_cast<std::size_t>(idx - 1)]) --idx;
    return idx;
}

}  // namespace gaq
